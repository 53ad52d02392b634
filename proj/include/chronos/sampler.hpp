// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHRONOS_SAMPLER_HPP
#define CHRONOS_SAMPLER_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "chronos/collapse_distribution.hpp"
#include "chronos/propagator.hpp"
#include "chronos/random_stream.hpp"
#include "chronos/spacetime.hpp"

namespace chronos {

/// One simulated measurement: a collapse time and the outcome it produced.
struct MeasurementRecord {
  std::uint64_t record_id;
  double t;                   ///< drawn collapse time
  std::size_t node;           ///< trajectory slice used (nearest to t)
  std::size_t outcome_index;  ///< grid node or basis index
  double outcome;             ///< position x_i on a grid, the index on a basis
  std::uint64_t stream_seed;  ///< seed of the substream the record was drawn from

  bool operator==(const MeasurementRecord&) const = default;
};

/// Draws t ~ f, then an outcome from the Born weights of the nearest slice.
///
/// Record r uses rng.substream(r), so the output is a pure function of
/// (rng lineage, n) regardless of thread count. Throws DomainError for
/// n == 0 and CoverageError if f extends past the trajectory.
std::vector<MeasurementRecord> sample_measurements(const Trajectory& traj,
                                                   const CollapseDistribution& dist, std::size_t n,
                                                   const RandomStream& rng);

/// Columns record_id,t,outcome.
void write_records_csv(std::span<const MeasurementRecord> records, const std::filesystem::path& path);

/// Bin edges of a 2D (t, outcome) histogram, each strictly increasing.
struct HistogramAxes {
  std::vector<double> t_edges;
  std::vector<double> outcome_edges;

  std::size_t n_t() const noexcept { return t_edges.size() - 1; }
  std::size_t n_outcome() const noexcept { return outcome_edges.size() - 1; }
};

/// Axes whose edges fall halfway between trajectory nodes and grid nodes,
/// so every node lies inside exactly one bin. `n_t_bins` and `n_x_bins`
/// are upper bounds on the number of bins.
HistogramAxes aligned_axes(const JointDensity& joint, std::size_t n_t_bins, std::size_t n_x_bins);

/// Normalized 2D histogram of records; counts are kept so the total mass
/// is exactly one.
class JointHistogram {
 public:
  JointHistogram(HistogramAxes axes, std::vector<std::uint64_t> counts);

  const HistogramAxes& axes() const noexcept { return axes_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t count(std::size_t it, std::size_t ix) const { return counts_.at(it * axes_.n_outcome() + ix); }
  double mass(std::size_t it, std::size_t ix) const;
  double total_mass() const noexcept;
  /// Row-major masses, n_t x n_outcome.
  RMatrix masses() const;

 private:
  HistogramAxes axes_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Throws DomainError for empty records or fewer than 4 bins per axis.
/// Records outside the edges are counted in the nearest edge bin.
JointHistogram empirical_joint_histogram(std::span<const MeasurementRecord> records,
                                         const HistogramAxes& axes);

/// Probability the joint density assigns to each bin of `axes`, with time
/// node k carrying f(t_k) times the width of its cell (clipped to the
/// support). Normalized to total one.
RMatrix expected_bin_masses(const JointDensity& joint, const HistogramAxes& axes);

/// Root-mean-square of (empirical - expected) over all bins.
double rms_deviation(const JointHistogram& hist, const RMatrix& expected);

}  // namespace chronos

#endif  // CHRONOS_SAMPLER_HPP
