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

#include "entwit/spin_models.hpp"
#include "entwit/thermo.hpp"
#include "oracles.hpp"

using namespace entwit;

namespace {

constexpr double kT = 0.01;
constexpr double kBeta = 1.0 / kT;

XXZParams reference_initial_3() {
  return {3, 1.0, (2.0 - kT * std::log(3.0)) / 4.0, kT * std::log(2.0) / 2.0};
}
XXZParams reference_final_3() { return {3, 1.0, 0.0, 0.5}; }

// Relative entropy from plain matrix logarithms; full-rank states only.
double relative_entropy_oracle(const Matrix &rho, const Matrix &sigma) {
  return (rho * (oracle::logm_hermitian(rho) - oracle::logm_hermitian(sigma))).trace().real();
}

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("thermal state of the zero Hamiltonian is maximally mixed") {
  for (int n = 1; n <= 4; ++n) {
    const QubitRegister reg(n);
    const auto rho = thermal_state(ThermalSpec(HermitianOperator::zero(reg), 3.0));
    CHECK(max_abs(rho.matrix() - DensityMatrix::maximally_mixed(reg).matrix()) <= 1e-15);
  }
}

TEST_CASE("low temperature approaches the ground projector") {
  Matrix h = Matrix::Zero(2, 2);
  const double gap = 0.5, beta = 40.0;
  h(1, 1) = gap;
  const auto rho = thermal_state(ThermalSpec(HermitianOperator(QubitRegister(1), h), beta));
  CHECK(std::abs(rho.matrix()(1, 1).real() - std::exp(-beta * gap) / (1 + std::exp(-beta * gap))) <= 1e-15);
  CHECK(std::abs(rho.matrix()(0, 0).real() - 1.0) <= std::exp(-beta * gap) + 1e-15);
}

TEST_CASE("no overflow at large beta") {
  const auto spec = ThermalSpec(build_xxz({3, 1.0, 0.0, 0.5}), 1e4);
  CHECK(std::isfinite(spec.log_partition()));
  CHECK(spec.log_partition() == doctest::Approx(1e4 * 2.5).epsilon(1e-12));
  const auto rho = spec.state();
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-12);
}

TEST_CASE("thermal state commutes with H and is PSD") {
  std::mt19937_64 rng(31);
  const HermitianOperator h(QubitRegister(3), oracle::random_hermitian(8, rng));
  const auto rho = ThermalSpec(h, 2.0).state();
  CHECK(max_abs(commutator(rho.matrix(), h.matrix())) <= 1e-10);
  CHECK(spectral_decompose(rho).eigenvalues(0) >= 0.0);
}

TEST_CASE("beta validation") {
  const auto h = HermitianOperator::zero(QubitRegister(1));
  CHECK_THROWS_AS(ThermalSpec(h, 0.0), InvalidArgument);
  CHECK_THROWS_AS(ThermalSpec(h, -1.0), InvalidArgument);
  CHECK_THROWS_AS(ThermalSpec(h, INFINITY), InvalidArgument);
  CHECK_THROWS_AS(ThermalSpec(h, NAN), InvalidArgument);
}

TEST_CASE("high-temperature limit") {
  std::mt19937_64 rng(37);
  const HermitianOperator h(QubitRegister(2), oracle::random_hermitian(4, rng));
  const double norm = operator_norm(h.matrix());
  for (double beta : {1e-2, 1e-3, 1e-4}) {
    const auto rho = ThermalSpec(h, beta).state();
    CHECK(max_abs(rho.matrix() - 0.25 * Matrix::Identity(4, 4)) <= 2.0 * beta * norm / 4.0);
  }
}

TEST_CASE("relative entropy basic values") {
  std::mt19937_64 rng(41);
  const DensityMatrix rho(QubitRegister(3), oracle::random_density(8, rng));
  CHECK(relative_entropy(rho, rho) <= 1e-12);

  const auto pure = DensityMatrix::pure(QubitRegister(3), dicke_state(QubitRegister(3), 2));
  CHECK(negentropy(pure) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(relative_entropy(pure, DensityMatrix::maximally_mixed(QubitRegister(3))) ==
        doctest::Approx(std::log(8.0)).epsilon(1e-12));
}

TEST_CASE("relative entropy is infinite outside the support") {
  const QubitRegister reg(1);
  Vector zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  const auto p0 = DensityMatrix::pure(reg, zero);
  const auto p1 = DensityMatrix::pure(reg, one);
  CHECK(std::isinf(relative_entropy(p0, p1)));
  CHECK(relative_entropy(p0, p0) == 0.0);
  CHECK_THROWS_AS(relative_entropy(p0, DensityMatrix::maximally_mixed(QubitRegister(2))), InvalidArgument);
}

TEST_CASE("W state against the 3-qubit closest separable state") {
  // sigma built as the phase-averaged product mixture, diagonalized here,
  // then -<W| ln sigma |W> on the support.
  const QubitRegister reg(3);
  const Matrix sigma = oracle::phase_averaged_product_mixture(3);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  const Vector w = dicke_state(reg, 1);
  double cross = 0.0;
  for (Eigen::Index j = 0; j < 8; ++j) {
    const double lam = es.eigenvalues()(j);
    if (lam > 1e-12) cross -= std::norm(es.eigenvectors().col(j).dot(w)) * std::log(lam);
  }
  const double closed_form = -std::log(std::pow(2.0, 2) * 3.0 / std::pow(3.0, 3));
  CHECK(cross == doctest::Approx(closed_form).epsilon(1e-12));
  CHECK(closed_form == doctest::Approx(std::log(9.0 / 4.0)).epsilon(1e-15));

  const auto rho = DensityMatrix::pure(reg, w);
  CHECK(std::abs(relative_entropy(rho, DensityMatrix(reg, sigma)) - std::log(9.0 / 4.0)) <= 1e-9);
}

TEST_CASE("Klein inequality on random pairs") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix a(QubitRegister(2), oracle::random_density(4, rng));
    const DensityMatrix b(QubitRegister(2), oracle::random_density(4, rng));
    const double s = relative_entropy(a, b);
    CHECK(s >= 0.0);
    CHECK(s == doctest::Approx(relative_entropy_oracle(a.matrix(), b.matrix())).epsilon(1e-9));
    CHECK(s > 1e-9);
  }
}

TEST_CASE("Gibbs-form relative entropy against direct evaluation") {
  SUBCASE("identical specs") {
    const ThermalSpec s(build_xxz(reference_final_3()), 2.0);
    CHECK(std::abs(gibbs_relative_entropy(s, s)) <= 1e-12);
    CHECK(delta_beta_f(s, s) == 0.0);
  }
  SUBCASE("zero Hamiltonian") {
    const auto z = HermitianOperator::zero(QubitRegister(3));
    CHECK(delta_beta_f(ThermalSpec(z, 0.5), ThermalSpec(z, 7.0)) == doctest::Approx(0.0));
  }
  SUBCASE("single qubit sigma^z at two temperatures") {
    const auto h = embed_pauli(QubitRegister(1), 1, PauliAxis::z);
    const ThermalSpec i(h, 0.7), f(h, 1.9);
    const Matrix rho_i = oracle::expm_hermitian(h.matrix(), -0.7) / (2 * std::cosh(0.7));
    const Matrix rho_f = oracle::expm_hermitian(h.matrix(), -1.9) / (2 * std::cosh(1.9));
    const double direct = relative_entropy_oracle(rho_f, rho_i);
    CHECK(gibbs_relative_entropy(i, f) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(relative_entropy(f.state(), i.state()) == doctest::Approx(direct).epsilon(1e-12));
  }
  SUBCASE("3-qubit reference endpoints") {
    const ThermalSpec i(build_xxz(reference_initial_3()), kBeta);
    const ThermalSpec f(build_xxz(reference_final_3()), kBeta);
    const double log_ratio = oracle::log_partition_function(build_xxz(reference_final_3()).matrix(), kBeta) -
                             oracle::log_partition_function(build_xxz(reference_initial_3()).matrix(), kBeta);
    CHECK(delta_beta_f(i, f) == doctest::Approx(-log_ratio).epsilon(1e-12));
    CHECK(std::abs(gibbs_relative_entropy(i, f) - relative_entropy(f.state(), i)) <= 1e-9);
  }
}

TEST_CASE("routes agree across a random thermal sweep") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> coupling(-1.5, 1.5);
  std::uniform_real_distribution<double> beta(0.2, 3.0);
  int cases = 0;
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto bc = trial % 2 ? Boundary::open : Boundary::periodic;
      const ThermalSpec i(build_xxz({n, coupling(rng), coupling(rng), coupling(rng), bc}), beta(rng));
      const ThermalSpec f(build_xxz({n, coupling(rng), coupling(rng), coupling(rng), bc}), beta(rng));
      const double gibbs = gibbs_relative_entropy(i, f);
      CHECK(std::abs(gibbs - relative_entropy(f.state(), i.state())) <= 1e-9);
      CHECK(std::abs(gibbs - relative_entropy(f.state(), i)) <= 1e-9);
      ++cases;
    }
  }
  CHECK(cases >= 100);
}

TEST_CASE("Gibbs log is exact where Boltzmann weights underflow") {
  // At T = 0.01 the excited weights of the initial state are ~e^-300 and the
  // matrix route loses them; the Gibbs-form log keeps the distance finite.
  const ThermalSpec i(build_xxz(reference_initial_3()), kBeta);
  const auto w = DensityMatrix::pure(QubitRegister(3), dicke_state(QubitRegister(3), 1));
  const double s = relative_entropy(w, i);
  CHECK(std::isfinite(s));
  CHECK(s == doctest::Approx(std::log(9.0 / 4.0)).epsilon(1e-6));
}

}  // TEST_SUITE
