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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "chronos/hamiltonian.hpp"
#include "chronos/smear.hpp"
#include "chronos/spacetime.hpp"

using namespace chronos;
using doctest::Approx;

namespace {

Trajectory free_packet(std::size_t n_steps = 400) {
  const SpatialGrid g(-20.0, 20.0, 256);
  const LinearOperator h = build_hamiltonian(g, [](double) { return 0.0; });
  return evolve_split_operator(gaussian_packet(g, 0.0, 1.0, 2.0), h, TimeGrid(2.0, n_steps));
}

}  // namespace

TEST_CASE("joint density normalization and marginals") {
  const Trajectory traj = free_packet();
  for (const auto& f : {CollapseDistribution::uniform(0.0, 2.0, 2.0), CollapseDistribution::exponential(1.5, 2.0),
                        CollapseDistribution::truncated_gaussian(1.0, 0.4, 2.0)}) {
    const JointDensity j = joint_density(traj, f);
    CHECK(j.total_mass() == Approx(1.0).epsilon(1e-8));
    const RVector m = j.time_marginal();
    CHECK((m - j.collapse_density()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(j.spatial_marginal().sum() * j.dx() == Approx(1.0).epsilon(1e-8));
    CHECK(j.n_times() == 401);
    CHECK(j.n_points() == 256);
  }
}

TEST_CASE("support shorter than the run uses only covered nodes") {
  const Trajectory traj = free_packet();
  const JointDensity j = joint_density(traj, CollapseDistribution::uniform(0.0, 1.0, 1.0));
  CHECK(j.n_times() == 201);
  CHECK(j.total_mass() == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bayes symmetry") {
  const Trajectory traj = free_packet();
  const JointDensity j = joint_density(traj, CollapseDistribution::exponential(1.5, 2.0));
  const BayesReport b = bayes_consistency(j);
  CHECK(b.max_residual() < 1e-10);
  CHECK(b.checked_points + b.skipped_points == 256);
  CHECK(b.checked_points > 100);
}

TEST_CASE("conditional time density") {
  const Trajectory traj = free_packet();
  const JointDensity j = joint_density(traj, CollapseDistribution::uniform(0.0, 2.0, 2.0));
  const RVector c = conditional_time_density(j, 2.0);
  CHECK(j.time_weights().dot(c) == Approx(1.0).epsilon(1e-12));
  // Far in the tail the marginal underflows below the floor.
  const JointDensity strict = joint_density(traj, CollapseDistribution::uniform(0.0, 2.0, 2.0), 1e-3);
  CHECK_THROWS_AS(strict.conditional_time_density(0), UndefinedConditionalError);
  CHECK_THROWS_AS(j.conditional_time_density(999), DomainError);
}

TEST_CASE("delta and basis cases") {
  const Trajectory traj = free_packet();
  CHECK_THROWS_AS(joint_density(traj, CollapseDistribution::delta(1.0, 2.0)), VariantError);
  const RVector g = delta_spatial_density(traj, CollapseDistribution::delta(1.0, 2.0));
  CHECK(g.sum() * grid_of(traj.representation()).dx() == Approx(1.0).epsilon(1e-12));

  const LinearOperator h = LinearOperator::dense(0.5 * pauli_x(), true);
  const Trajectory q = evolve_exact(StateVector::basis(2, 0), h, TimeGrid(1.0, 10));
  CHECK_THROWS_AS(joint_density(q, CollapseDistribution::uniform(0.0, 1.0, 1.0)), RepresentationError);
}

TEST_CASE("binary and csv exports") {
  const Trajectory traj = free_packet(40);
  const JointDensity j = joint_density(traj, CollapseDistribution::uniform(0.0, 2.0, 2.0));
  const auto dir = std::filesystem::temp_directory_path() / "chronos_spacetime_test";
  std::filesystem::create_directories(dir);

  write_joint_binary(j, dir / "p.pxt");
  CHECK(std::filesystem::file_size(dir / "p.pxt") == 32 + 41 * 256 * 8);
  const auto [h, p] = read_joint_binary(dir / "p.pxt");
  CHECK(h.n_times == 41);
  CHECK(h.n_points == 256);
  CHECK(h.dx == j.dx());
  CHECK(h.dt == Approx(0.05));
  CHECK(p == j.p());

  write_joint_csv(j, dir / "p.csv");
  const auto rows = read_numeric_csv(dir / "p.csv", {"x", "t", "p"});
  CHECK(rows.size() == 41 * 256);
  CHECK(rows[300][2] == j.p()(1, 44));

  write_joint_csv(j, dir / "p.csv.gz");
  CHECK(read_numeric_csv(dir / "p.csv.gz", {"x", "t", "p"}) == rows);

  std::ofstream(dir / "junk.pxt") << "NOPE";
  CHECK_THROWS_AS(read_joint_binary(dir / "junk.pxt"), ParseError);
}
