// Copyright 2026 The entwit Authors.
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

#include <doctest.h>

#include <cmath>
#include <random>

#include "entwit/open_system.hpp"
#include "entwit/spin_models.hpp"
#include "entwit/work_stats.hpp"
#include "oracles.hpp"

using namespace entwit;

namespace {

// Two subsystem qubits (sites 1, 2), one bath qubit (site 3).
const Partition kLayout{{1, 2}, {3}};

HermitianOperator subsystem_xxz(double jz, double b) {
  return build_xxz({2, 1.0, jz, b, Boundary::open});
}

HermitianOperator zz_coupling(double g) {
  return {QubitRegister(3), g * oracle::site_op(3, 2, oracle::sz()) * oracle::site_op(3, 3, oracle::sz())};
}

HermitianOperator bath_field(double h) {
  return {QubitRegister(1), -h * oracle::sz()};
}

CompositeSystem composite(const HermitianOperator &h_s, double g, double beta = 1.0) {
  return {kLayout, h_s, zz_coupling(g), bath_field(0.7), beta};
}

// -(1/beta) ln[tr_B exp(-beta H) / tr exp(-beta H_B)] with the bath trailing.
Matrix eq5_oracle(const Matrix &h_full, const Matrix &h_b, int n_sub, int n_bath, double beta) {
  const Matrix reduced = oracle::trace_out_trailing(oracle::expm_hermitian(h_full, -beta),
                                                    n_sub + n_bath, n_bath);
  const double z_b = oracle::partition_function(h_b, beta);
  return -oracle::logm_hermitian(reduced / z_b) / beta;
}

}  // namespace

TEST_SUITE("open_system") {

TEST_CASE("partition validation") {
  CHECK_THROWS_AS((Partition{{}, {1}}.validate()), InvalidArgument);
  CHECK_THROWS_AS((Partition{{1, 1}, {2}}.validate()), InvalidArgument);
  CHECK_THROWS_AS((Partition{{1}, {3}}.validate()), InvalidArgument);
  CHECK_THROWS_AS((Partition{{1, 2, 3, 4, 5, 6}, {7, 8, 9, 10, 11}}.validate()), InvalidArgument);
  CHECK_NOTHROW((Partition{{3, 1}, {2}}.validate()));

  CHECK_THROWS_AS(CompositeSystem(kLayout, subsystem_xxz(0, 0), zz_coupling(0.1), std::nullopt, 1.0),
                  InvalidArgument);
  CHECK_THROWS_AS(CompositeSystem(kLayout, subsystem_xxz(0, 0), zz_coupling(0.1), bath_field(1), 0.0),
                  InvalidArgument);
  CHECK_THROWS_AS(CompositeSystem(kLayout, build_xxz({3}), zz_coupling(0.1), bath_field(1), 1.0),
                  InvalidArgument);
}

TEST_CASE("decoupled effective Hamiltonian equals H_S") {
  const auto h_s = subsystem_xxz(0.3, 0.4);
  CHECK(max_abs(effective_hamiltonian(composite(h_s, 0.0)).matrix() - h_s.matrix()) <= 1e-10);
  const auto p = subsystem_partition(composite(h_s, 0.0));
  CHECK(p.y() == doctest::Approx(p.z_s() * p.z_b()).epsilon(1e-12));
  CHECK(p.z_s() == doctest::Approx(oracle::partition_function(h_s.matrix(), 1.0)).epsilon(1e-12));
}

TEST_CASE("trivial bath") {
  const auto h_s = subsystem_xxz(0.3, 0.4);
  const CompositeSystem c({{1, 2}, {}}, h_s, HermitianOperator::zero(QubitRegister(2)),
                          std::nullopt, 0.8);
  CHECK(max_abs(effective_hamiltonian(c).matrix() - h_s.matrix()) <= 1e-10);
  CHECK(subsystem_partition(c).log_z_b == 0.0);
}

TEST_CASE("all-zero Hamiltonians count states") {
  const CompositeSystem c(kLayout, HermitianOperator::zero(QubitRegister(2)),
                          HermitianOperator::zero(QubitRegister(3)),
                          HermitianOperator::zero(QubitRegister(1)), 1.3);
  const auto p = subsystem_partition(c);
  CHECK(p.y() == doctest::Approx(8.0));
  CHECK(p.z_b() == doctest::Approx(2.0));
  CHECK(p.z_s() == doctest::Approx(4.0));
}

TEST_CASE("effective Hamiltonian matches the dense formula") {
  SUBCASE("one subsystem qubit, one bath qubit") {
    const double g = 0.2;
    const HermitianOperator h_s(QubitRegister(1), -0.4 * oracle::sz() - 0.3 * oracle::sx());
    const HermitianOperator h_sb(QubitRegister(2), g * oracle::kron(oracle::sz(), oracle::sz()));
    const HermitianOperator h_b(QubitRegister(1), -0.6 * oracle::sz());
    const CompositeSystem c({{1}, {2}}, h_s, h_sb, h_b, 1.0);
    const Matrix full = oracle::kron(h_s.matrix(), Matrix::Identity(2, 2)) + h_sb.matrix() +
                        oracle::kron(Matrix::Identity(2, 2), h_b.matrix());
    const Matrix expected = eq5_oracle(full, h_b.matrix(), 1, 1, 1.0);
    CHECK(max_abs(effective_hamiltonian(c).matrix() - expected) <= 1e-10);
    // the coupling moves H_eff away from H_S
    CHECK(max_abs(expected - h_s.matrix()) > 1e-3);
  }
  SUBCASE("two subsystem qubits with a random coupling") {
    std::mt19937_64 rng(83);
    const HermitianOperator h_sb(QubitRegister(3), oracle::random_hermitian(8, rng, 0.3));
    const auto h_s = subsystem_xxz(0.2, 0.5);
    const CompositeSystem c(kLayout, h_s, h_sb, bath_field(0.7), 2.0);
    const Matrix full = oracle::kron(h_s.matrix(), Matrix::Identity(2, 2)) + h_sb.matrix() +
                        oracle::kron(Matrix::Identity(4, 4), bath_field(0.7).matrix());
    CHECK(max_abs(effective_hamiltonian(c).matrix() -
                  eq5_oracle(full, bath_field(0.7).matrix(), 2, 1, 2.0)) <= 1e-10);
  }
  SUBCASE("bath placed on the first site") {
    // same physics with the bath relabelled to site 1
    const auto h_s = subsystem_xxz(0.2, 0.5);
    const CompositeSystem a = composite(h_s, 0.2);
    const HermitianOperator h_sb(QubitRegister(3), 0.2 * oracle::site_op(3, 3, oracle::sz()) *
                                                       oracle::site_op(3, 1, oracle::sz()));
    const CompositeSystem b({{2, 3}, {1}}, h_s, h_sb, bath_field(0.7), 1.0);
    CHECK(max_abs(effective_hamiltonian(a).matrix() - effective_hamiltonian(b).matrix()) <= 1e-10);
  }
}

TEST_CASE("subsystem partition function consistency") {
  for (double beta : {0.3, 1.0, 5.0}) {
    for (double g : {0.0, 0.1, 0.5}) {
      const auto c = composite(subsystem_xxz(0.4, 0.2), g, beta);
      const auto p = subsystem_partition(c);
      const double from_eff = oracle::partition_function(effective_hamiltonian(c).matrix(), beta);
      CHECK(std::abs(from_eff / p.z_s() - 1.0) <= 1e-9);
      CHECK(p.y() == doctest::Approx(oracle::partition_function(c.total().matrix(), beta)).epsilon(1e-12));
      CHECK(p.z_s() == doctest::Approx(p.y() / p.z_b()).epsilon(1e-12));
    }
  }
}

TEST_CASE("drive keeps the environment fixed") {
  const auto i = composite(subsystem_xxz(0.5, 0.0), 0.1);
  const CompositeDrive drive(i, subsystem_xxz(0.0, 0.5), 1.0, 10);
  CHECK(drive.final().shares_environment(i));
  CHECK(max_abs(drive.at(0).total().matrix() - i.total().matrix()) <= 1e-15);
  CHECK(max_abs(effective_hamiltonian(drive, 5).matrix() -
                effective_hamiltonian(composite(subsystem_xxz(0.25, 0.25), 0.1)).matrix()) <= 1e-10);
  CHECK_THROWS_AS(drive.at(10), InvalidArgument);
  const auto other = composite(subsystem_xxz(0.5, 0.0), 0.2);
  CHECK_FALSE(other.shares_environment(i));
}

TEST_CASE("full-system Jarzynski average gives the subsystem free energy") {
  const double g = 0.1;
  const auto i = composite(subsystem_xxz(0.5, 0.0), g);
  const CompositeDrive drive(i, subsystem_xxz(0.0, 0.5), 1.0, 1000);
  const auto f = drive.final();
  const auto u = trotter_evolution(drive.full_path());
  const double avg = open_jarzynski_average(i, f, u);
  const double y_ratio = oracle::partition_function(f.total().matrix(), 1.0) /
                         oracle::partition_function(i.total().matrix(), 1.0);
  CHECK(avg == doctest::Approx(y_ratio).epsilon(1e-10));
  const double zs_ratio = subsystem_partition(f).z_s() / subsystem_partition(i).z_s();
  CHECK(avg == doctest::Approx(zs_ratio).epsilon(1e-10));

  std::mt19937_64 rng(89);
  for (int k = 0; k < 5; ++k) {
    const UnitaryOperator r(QubitRegister(3), oracle::random_unitary(8, rng));
    CHECK(open_jarzynski_average(i, f, r) == doctest::Approx(y_ratio).epsilon(1e-10));
  }
  CHECK_THROWS_AS(open_jarzynski_average(i, composite(subsystem_xxz(0, 0.5), 0.3), u),
                  InvalidArgument);
}

namespace {

struct OpenSetup {
  CompositeSystem reference, final, star;
  UnitaryOperator u_ref, u_star;
};

OpenSetup open_setup(double g, double beta) {
  const auto ref = composite(subsystem_xxz(0.45, 0.05), g, beta);
  const auto fin = composite(subsystem_xxz(0.0, 0.5), g, beta);
  const auto star = composite(subsystem_xxz(0.2, 0.4), g, beta);
  WorkProtocol p;
  return {ref, fin, star, protocol_unitary(ref.total(), fin.total(), p),
          protocol_unitary(star.total(), fin.total(), p)};
}

double margin(double g, Route route) {
  const auto s = open_setup(g, 2.0);
  return open_witness(s.reference, s.final, s.star, s.u_ref, s.u_star, route).margin;
}

}  // namespace

TEST_CASE("open witness routes agree") {
  for (double g : {0.0, 0.1, 0.4}) {
    for (double beta : {0.5, 2.0, 8.0}) {
      const auto s = open_setup(g, beta);
      const auto d = open_witness(s.reference, s.final, s.star, s.u_ref, s.u_star, Route::direct);
      const auto w = open_witness(s.reference, s.final, s.star, s.u_ref, s.u_star, Route::via_work);
      CHECK(std::abs(d.margin - w.margin) <= 1e-6);
      CHECK(std::abs(d.s_left - w.s_left) <= 1e-6);
    }
  }
}

TEST_CASE("open witness reduces to the closed witness when decoupled") {
  const auto s = open_setup(0.0, 2.0);
  const auto open = open_witness(s.reference, s.final, s.star, s.u_ref, s.u_star, Route::direct);
  const ThermalSpec rho(subsystem_xxz(0.0, 0.5), 2.0);
  const ThermalSpec ref(subsystem_xxz(0.45, 0.05), 2.0);
  const ThermalSpec star(subsystem_xxz(0.2, 0.4), 2.0);
  const auto closed = witness_evaluate(rho, ref, star);
  CHECK(open.s_left == doctest::Approx(closed.s_left).epsilon(1e-10));
  CHECK(open.s_right == doctest::Approx(closed.s_right).epsilon(1e-10));
  CHECK(open.detected == closed.detected);
}

TEST_CASE("margins converge to the closed value as the coupling vanishes") {
  const double closed = margin(0.0, Route::direct);
  const double d1 = std::abs(margin(0.1, Route::direct) - closed);
  const double d2 = std::abs(margin(0.01, Route::direct) - closed);
  const double d3 = std::abs(margin(0.001, Route::direct) - closed);
  CHECK(d1 > d2);
  CHECK(d2 > d3);
  // at least linear: deviation / g does not grow as g shrinks
  CHECK(d2 / 0.01 <= 1.5 * d1 / 0.1 + 1e-9);
  CHECK(d3 / 0.001 <= 1.5 * d2 / 0.01 + 1e-9);
}

TEST_CASE("open witness rejects mismatched environments") {
  const auto s = open_setup(0.1, 1.0);
  const auto other = composite(subsystem_xxz(0.2, 0.4), 0.2, 1.0);
  CHECK_THROWS_AS(open_witness(s.reference, s.final, other, s.u_ref, s.u_star, Route::direct),
                  InvalidArgument);
}

}  // TEST_SUITE
