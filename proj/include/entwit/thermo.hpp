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

#ifndef ENTWIT_THERMO_HPP
#define ENTWIT_THERMO_HPP

#include <limits>

#include "entwit/operator_core.hpp"

namespace entwit {

/// Eigenvalues at or below this are outside the support of a state; they
/// contribute 0 ln 0 = 0 to tr(rho ln rho).
inline constexpr double kEigenvalueFloor = 1e-14;

inline constexpr double kInfiniteEntropy = std::numeric_limits<double>::infinity();

/// A Gibbs state exp(-beta H) / Z described by its Hamiltonian and inverse
/// temperature. All exponentials are taken relative to the ground energy, so
/// large beta * |E| never overflows.
class ThermalSpec {
 public:
  ThermalSpec(HermitianOperator hamiltonian, double beta);
  /// Reuses an existing spectrum of `hamiltonian`.
  ThermalSpec(HermitianOperator hamiltonian, SpectralDecomposition spectrum,
              double beta);

  const HermitianOperator &hamiltonian() const noexcept { return h_; }
  const SpectralDecomposition &spectrum() const noexcept { return spectrum_; }
  const QubitRegister &reg() const noexcept { return h_.reg(); }
  double beta() const noexcept { return beta_; }
  double temperature() const noexcept { return 1.0 / beta_; }
  double ground_energy() const noexcept { return spectrum_.eigenvalues(0); }

  double log_partition() const noexcept { return log_z_; }
  /// May overflow to +inf for large beta; prefer log_partition().
  double partition_function() const;
  /// beta F = -ln Z.
  double beta_free_energy() const noexcept { return -log_z_; }
  double free_energy() const noexcept { return -log_z_ / beta_; }

  /// Boltzmann weights in the eigenvalue order of spectrum().
  RealVector populations() const;

  DensityMatrix state() const;

  /// ln(exp(-beta H) / Z) = -beta H - ln Z, exact for every beta.
  HermitianOperator log_state() const;

 private:
  HermitianOperator h_;
  SpectralDecomposition spectrum_;
  double beta_;
  double log_z_;
};

DensityMatrix thermal_state(const ThermalSpec &spec);

/// tr(rho ln rho) under the support convention.
double negentropy(const DensityMatrix &rho, double floor = kEigenvalueFloor);

/// S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma) in nats.
///
/// ln sigma is taken on the support of sigma (eigenvalues above `floor`).
/// When rho places more than `floor` weight outside that support the result
/// is kInfiniteEntropy.
double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma,
                        double floor = kEigenvalueFloor);

/// -tr(rho ln sigma) for a Gibbs sigma: beta tr(rho H) + ln Z.
double gibbs_cross_entropy(const DensityMatrix &rho, const ThermalSpec &sigma);

/// S(rho || sigma) with ln sigma taken exactly from the Gibbs form, so it stays
/// finite and accurate even when sigma's Boltzmann weights underflow.
double relative_entropy(const DensityMatrix &rho, const ThermalSpec &sigma);

/// beta_f F_f - beta_i F_i = ln Z_i - ln Z_f.
double delta_beta_f(const ThermalSpec &initial, const ThermalSpec &final);

/// Delta(beta F) - tr(rho_f (beta_f H_f - beta_i H_i)), which equals
/// S(rho_f || rho_i) for Gibbs states rho_i, rho_f.
double gibbs_relative_entropy(const ThermalSpec &initial,
                              const ThermalSpec &final);

}  // namespace entwit

#endif  // ENTWIT_THERMO_HPP
