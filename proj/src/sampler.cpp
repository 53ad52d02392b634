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

#include "chronos/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "chronos/parallel.hpp"

namespace chronos {

namespace {

std::size_t inverse_cdf(const RVector& weights, double u) {
  const double total = weights.sum();
  const double target = u * total;
  double acc = 0.0;
  const auto n = static_cast<std::size_t>(weights.size());
  for (std::size_t i = 0; i < n; ++i) {
    acc += weights[static_cast<Eigen::Index>(i)];
    if (target < acc) return i;
  }
  // Round-off at the top end; fall back to the last bin with weight.
  for (std::size_t i = n; i-- > 0;) {
    if (weights[static_cast<Eigen::Index>(i)] > 0.0) return i;
  }
  return n - 1;
}

std::size_t locate(const std::vector<double>& edges, double v) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  if (it == edges.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - edges.begin()) - 1;
  return std::min(idx, edges.size() - 2);
}

// Edges between groups of consecutive nodes, halfway between neighbours.
std::vector<double> grouped_edges(const std::vector<double>& nodes, std::size_t max_bins) {
  const std::size_t n = nodes.size();
  const std::size_t group = (n + max_bins - 1) / max_bins;
  const double lo_gap = n >= 2 ? nodes[1] - nodes[0] : 1.0;
  const double hi_gap = n >= 2 ? nodes[n - 1] - nodes[n - 2] : 1.0;
  std::vector<double> edges{nodes.front() - 0.5 * lo_gap};
  for (std::size_t j = group; j < n; j += group) edges.push_back(0.5 * (nodes[j - 1] + nodes[j]));
  edges.push_back(nodes.back() + 0.5 * hi_gap);
  return edges;
}

}  // namespace

std::vector<MeasurementRecord> sample_measurements(const Trajectory& traj,
                                                   const CollapseDistribution& dist, std::size_t n,
                                                   const RandomStream& rng) {
  if (n == 0) throw DomainError("sample count must be positive");
  const TimeGrid& tg = traj.time_grid();
  if (dist.t_max() > tg.t_max() * (1.0 + 1e-12)) {
    throw CoverageError("collapse support ends at " + format_double(dist.t_max()) +
                        " but the trajectory stops at " + format_double(tg.t_max()));
  }
  const bool on_grid = is_grid(traj.representation());
  std::vector<MeasurementRecord> out(n);
  parallel_for(n, [&](std::size_t r) {
    RandomStream sub = rng.substream(r);
    MeasurementRecord rec{};
    rec.record_id = r;
    rec.stream_seed = sub.seed();
    rec.t = dist.sample(sub);
    rec.node = tg.nearest_node(rec.t);
    const RVector w = traj.slices().col(static_cast<Eigen::Index>(rec.node)).cwiseAbs2();
    rec.outcome_index = inverse_cdf(w, sub.uniform());
    rec.outcome = on_grid ? grid_of(traj.representation()).x(rec.outcome_index)
                          : static_cast<double>(rec.outcome_index);
    out[r] = rec;
  });
  return out;
}

void write_records_csv(std::span<const MeasurementRecord> records, const std::filesystem::path& path) {
  CsvWriter out(path, {"record_id", "t", "outcome"});
  for (const auto& r : records) out.row({static_cast<double>(r.record_id), r.t, r.outcome});
}

HistogramAxes aligned_axes(const JointDensity& joint, std::size_t n_t_bins, std::size_t n_x_bins) {
  if (n_t_bins < 4 || n_x_bins < 4) throw DomainError("histogram needs at least 4 bins per axis");
  if (joint.n_times() < 4 || joint.n_points() < 4) throw DomainError("joint density too coarse to bin");
  std::vector<double> t(joint.times().data(), joint.times().data() + joint.times().size());
  const RVector xs = joint.grid().positions();
  std::vector<double> x(xs.data(), xs.data() + xs.size());
  return {grouped_edges(t, n_t_bins), grouped_edges(x, n_x_bins)};
}

JointHistogram::JointHistogram(HistogramAxes axes, std::vector<std::uint64_t> counts)
    : axes_(std::move(axes)), counts_(std::move(counts)) {
  if (counts_.size() != axes_.n_t() * axes_.n_outcome()) {
    throw DomainError("histogram counts do not match its axes");
  }
  for (auto c : counts_) total_ += c;
  if (total_ == 0) throw DomainError("histogram is empty");
}

double JointHistogram::mass(std::size_t it, std::size_t ix) const {
  return static_cast<double>(count(it, ix)) / static_cast<double>(total_);
}

double JointHistogram::total_mass() const noexcept {
  std::uint64_t s = 0;
  for (auto c : counts_) s += c;
  return static_cast<double>(s) / static_cast<double>(total_);
}

RMatrix JointHistogram::masses() const {
  RMatrix m(axes_.n_t(), axes_.n_outcome());
  for (std::size_t i = 0; i < axes_.n_t(); ++i) {
    for (std::size_t j = 0; j < axes_.n_outcome(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mass(i, j);
    }
  }
  return m;
}

JointHistogram empirical_joint_histogram(std::span<const MeasurementRecord> records,
                                         const HistogramAxes& axes) {
  if (records.empty()) throw DomainError("no records to bin");
  if (axes.t_edges.size() < 5 || axes.outcome_edges.size() < 5) {
    throw DomainError("histogram needs at least 4 bins per axis");
  }
  std::vector<std::uint64_t> counts(axes.n_t() * axes.n_outcome(), 0);
  for (const auto& r : records) {
    ++counts[locate(axes.t_edges, r.t) * axes.n_outcome() + locate(axes.outcome_edges, r.outcome)];
  }
  return JointHistogram(axes, std::move(counts));
}

RMatrix expected_bin_masses(const JointDensity& joint, const HistogramAxes& axes) {
  RMatrix m = RMatrix::Zero(axes.n_t(), axes.n_outcome());
  const RVector& t = joint.times();
  const RVector& f = joint.collapse_density();
  const RMatrix& psi_sq = joint.position_density();
  const double t_lo = t[0];
  const double t_hi = t[t.size() - 1];
  const double dt = joint.dt();
  const double dx = joint.dx();
  std::vector<std::size_t> x_bin(joint.n_points());
  for (std::size_t i = 0; i < joint.n_points(); ++i) x_bin[i] = locate(axes.outcome_edges, joint.grid().x(i));
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    const double a = std::max(t_lo, t[k] - 0.5 * dt);
    const double b = std::min(t_hi, t[k] + 0.5 * dt);
    const double w = f[k] * (b - a) * dx;
    const auto it = static_cast<Eigen::Index>(locate(axes.t_edges, t[k]));
    for (std::size_t i = 0; i < joint.n_points(); ++i) {
      m(it, static_cast<Eigen::Index>(x_bin[i])) += w * psi_sq(k, static_cast<Eigen::Index>(i));
    }
  }
  const double total = m.sum();
  if (!(total > 0.0)) throw DomainError("joint density has no mass in the histogram range");
  return m / total;
}

double rms_deviation(const JointHistogram& hist, const RMatrix& expected) {
  const RMatrix emp = hist.masses();
  if (emp.rows() != expected.rows() || emp.cols() != expected.cols()) {
    throw DomainError("histogram shapes differ");
  }
  return std::sqrt((emp - expected).array().square().mean());
}

}  // namespace chronos
