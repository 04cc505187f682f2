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

#include "entwit/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entwit {

namespace {

double checked_beta(double beta) {
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    std::ostringstream os;
    os << "inverse temperature must be positive and finite, got " << beta;
    throw InvalidArgument(os.str());
  }
  return beta;
}

double shifted_log_sum(const RealVector &energies, double beta) {
  const double e0 = energies.minCoeff();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < energies.size(); ++i) {
    acc += std::exp(-beta * (energies(i) - e0));
  }
  return -beta * e0 + std::log(acc);
}

// Klein's inequality guarantees S >= 0; rounding can produce -1e-16.
double clamp_entropy(double s) { return std::max(0.0, s); }

}  // namespace

ThermalSpec::ThermalSpec(HermitianOperator hamiltonian, double beta)
    : ThermalSpec(hamiltonian, spectral_decompose(hamiltonian), beta) {}

ThermalSpec::ThermalSpec(HermitianOperator hamiltonian,
                         SpectralDecomposition spectrum, double beta)
    : h_(std::move(hamiltonian)),
      spectrum_(std::move(spectrum)),
      beta_(checked_beta(beta)),
      log_z_(0.0) {
  if (spectrum_.dim() != h_.dim()) {
    throw InvalidArgument("ThermalSpec: spectrum does not match Hamiltonian");
  }
  log_z_ = shifted_log_sum(spectrum_.eigenvalues, beta_);
}

double ThermalSpec::partition_function() const { return std::exp(log_z_); }

RealVector ThermalSpec::populations() const {
  const RealVector &e = spectrum_.eigenvalues;
  RealVector p = (-beta_ * (e.array() - e(0))).exp();
  return p / p.sum();
}

DensityMatrix ThermalSpec::state() const {
  return density_from_spectrum(reg(), spectrum_.eigenvectors, populations());
}

HermitianOperator ThermalSpec::log_state() const {
  const double beta = beta_;
  const double log_z = log_z_;
  return hermitian_function(reg(), spectrum_,
                            [=](double e) { return -beta * e - log_z; });
}

DensityMatrix thermal_state(const ThermalSpec &spec) { return spec.state(); }

double negentropy(const DensityMatrix &rho, double floor) {
  const SpectralDecomposition s = spectral_decompose(rho);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    const double p = s.eigenvalues(i);
    if (p > floor) acc += p * std::log(p);
  }
  return acc;
}

double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma,
                        double floor) {
  require_same_register(rho.reg(), sigma.reg(), "relative_entropy");
  const SpectralDecomposition s = spectral_decompose(sigma);
  const Matrix &w = s.eigenvectors;
  // <w_j| rho |w_j> for every eigenvector of sigma.
  const RealVector weights =
      (w.adjoint() * rho.matrix() * w).diagonal().real();
  double cross = 0.0;
  double leak = 0.0;
  for (Eigen::Index j = 0; j < s.dim(); ++j) {
    if (s.eigenvalues(j) > floor) {
      cross -= weights(j) * std::log(s.eigenvalues(j));
    } else {
      leak += std::max(0.0, weights(j));
    }
  }
  if (leak > floor) return kInfiniteEntropy;
  return clamp_entropy(negentropy(rho, floor) + cross);
}

double gibbs_cross_entropy(const DensityMatrix &rho, const ThermalSpec &sigma) {
  require_same_register(rho.reg(), sigma.reg(), "gibbs_cross_entropy");
  return sigma.beta() * expectation(rho, sigma.hamiltonian()) +
         sigma.log_partition();
}

double relative_entropy(const DensityMatrix &rho, const ThermalSpec &sigma) {
  return clamp_entropy(negentropy(rho) + gibbs_cross_entropy(rho, sigma));
}

double delta_beta_f(const ThermalSpec &initial, const ThermalSpec &final) {
  require_same_register(initial.reg(), final.reg(), "delta_beta_f");
  return initial.log_partition() - final.log_partition();
}

double gibbs_relative_entropy(const ThermalSpec &initial,
                              const ThermalSpec &final) {
  const DensityMatrix rho_f = final.state();
  const double delta_beta_h = final.beta() * expectation(rho_f, final.hamiltonian()) -
                              initial.beta() * expectation(rho_f, initial.hamiltonian());
  return delta_beta_f(initial, final) - delta_beta_h;
}

}  // namespace entwit
