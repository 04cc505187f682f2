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

#include "entwit/open_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entwit {

void Partition::validate() const {
  const int total = total_sites();
  if (subsystem.empty()) throw InvalidArgument("partition: subsystem is empty");
  if (total > kMaxCompositeQubits) {
    std::ostringstream os;
    os << "partition: " << total << " qubits exceeds the composite ceiling of "
       << kMaxCompositeQubits;
    throw InvalidArgument(os.str());
  }
  std::vector<int> all(subsystem);
  all.insert(all.end(), bath.begin(), bath.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < total; ++i) {
    if (all[i] != i + 1) {
      throw InvalidArgument("partition: subsystem and bath must be disjoint and cover sites 1..N");
    }
  }
}

CompositeSystem::CompositeSystem(Partition partition, HermitianOperator h_s,
                                 HermitianOperator h_sb,
                                 std::optional<HermitianOperator> h_b,
                                 double beta)
    : partition_(std::move(partition)),
      h_s_(std::move(h_s)),
      h_sb_(std::move(h_sb)),
      h_b_(std::move(h_b)),
      beta_(beta) {
  partition_.validate();
  if (h_s_.reg().size() != static_cast<int>(partition_.subsystem.size())) {
    throw InvalidArgument("composite system: H_S does not act on the subsystem sites");
  }
  if (h_sb_.reg().size() != partition_.total_sites()) {
    throw InvalidArgument("composite system: H_SB does not act on the full register");
  }
  if (partition_.bath.empty() == h_b_.has_value()) {
    throw InvalidArgument("composite system: H_B must be given exactly when the bath is non-empty");
  }
  if (h_b_ && h_b_->reg().size() != static_cast<int>(partition_.bath.size())) {
    throw InvalidArgument("composite system: H_B does not act on the bath sites");
  }
  if (!std::isfinite(beta_) || !(beta_ > 0.0)) {
    throw InvalidArgument("composite system: beta must be positive and finite");
  }
}

CompositeSystem CompositeSystem::with_subsystem(HermitianOperator h_s) const {
  return {partition_, std::move(h_s), h_sb_, h_b_, beta_};
}

HermitianOperator CompositeSystem::total() const {
  const QubitRegister reg = full_register();
  Matrix h = embed_operator(reg, h_s_.matrix(), partition_.subsystem) + h_sb_.matrix();
  if (h_b_) h += embed_operator(reg, h_b_->matrix(), partition_.bath);
  return {reg, std::move(h)};
}

bool CompositeSystem::shares_environment(const CompositeSystem &other) const {
  if (partition_.subsystem != other.partition_.subsystem ||
      partition_.bath != other.partition_.bath || beta_ != other.beta_) {
    return false;
  }
  constexpr double tol = 1e-12;
  if (max_abs(h_sb_.matrix() - other.h_sb_.matrix()) > tol) return false;
  if (h_b_.has_value() != other.h_b_.has_value()) return false;
  return !h_b_ || max_abs(h_b_->matrix() - other.h_b_->matrix()) <= tol;
}

// ---------------------------------------------------------------------------

CompositeDrive::CompositeDrive(CompositeSystem initial,
                               HermitianOperator final_subsystem, double t_f,
                               int steps, Interpolation interpolation)
    : initial_(std::move(initial)),
      subsystem_path_(initial_.subsystem_hamiltonian(), std::move(final_subsystem),
                      t_f, steps, interpolation) {}

CompositeSystem CompositeDrive::final() const {
  return initial_.with_subsystem(subsystem_path_.end());
}

CompositeSystem CompositeDrive::at(int step) const {
  if (step < 0 || step >= subsystem_path_.steps()) {
    std::ostringstream os;
    os << "composite drive step " << step << " outside 0.." << subsystem_path_.steps() - 1;
    throw InvalidArgument(os.str());
  }
  return initial_.with_subsystem(subsystem_path_.at_time(step * subsystem_path_.dt()));
}

OperatorPath CompositeDrive::full_path() const {
  return {initial_.total(), final().total(), subsystem_path_.t_f(),
          subsystem_path_.steps(), subsystem_path_.interpolation()};
}

// ---------------------------------------------------------------------------

namespace {

// ln tr exp(-beta A) with the ground-energy shift.
double log_trace_exp(const SpectralDecomposition &s, double beta) {
  const double e0 = s.eigenvalues(0);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.dim(); ++i) acc += std::exp(-beta * (s.eigenvalues(i) - e0));
  return -beta * e0 + std::log(acc);
}

}  // namespace

HermitianOperator effective_hamiltonian(const CompositeSystem &c) {
  const double beta = c.beta();
  const HermitianOperator h = c.total();
  const SpectralDecomposition s = spectral_decompose(h);
  const double e0 = s.eigenvalues(0);

  // tr_B exp(-beta (H - E0)), positive definite for finite beta.
  const HermitianOperator boltzmann = hermitian_function(
      h.reg(), s, [=](double e) { return std::exp(-beta * (e - e0)); });
  const HermitianOperator reduced(
      c.subsystem_register(),
      partial_trace(h.reg(), boltzmann.matrix(), c.partition().subsystem));

  double log_z_b = 0.0;
  if (const auto &h_b = c.bath_hamiltonian()) log_z_b = log_trace_exp(spectral_decompose(*h_b), beta);

  const SpectralDecomposition rs = spectral_decompose(reduced);
  if (!(rs.eigenvalues(0) > 0.0)) {
    std::ostringstream os;
    os << "effective_hamiltonian: reduced Boltzmann operator is rank deficient (smallest eigenvalue "
       << rs.eigenvalues(0) << ")";
    throw NumericalError("rank", os.str());
  }
  // -(1/beta) [ln M + (-beta E0) - ln Z_B]
  return hermitian_function(c.subsystem_register(), rs, [=](double m) {
    return -(std::log(m) - beta * e0 - log_z_b) / beta;
  });
}

HermitianOperator effective_hamiltonian(const CompositeDrive &drive, int step) {
  return effective_hamiltonian(drive.at(step));
}

double SubsystemPartition::y() const { return std::exp(log_y); }
double SubsystemPartition::z_b() const { return std::exp(log_z_b); }
double SubsystemPartition::z_s() const { return std::exp(log_z_s); }

SubsystemPartition subsystem_partition(const CompositeSystem &c) {
  SubsystemPartition p;
  p.log_y = log_trace_exp(spectral_decompose(c.total()), c.beta());
  if (const auto &h_b = c.bath_hamiltonian()) {
    p.log_z_b = log_trace_exp(spectral_decompose(*h_b), c.beta());
  }
  p.log_z_s = p.log_y - p.log_z_b;
  return p;
}

SubsystemPartition subsystem_partition(const CompositeDrive &drive, int step) {
  return subsystem_partition(drive.at(step));
}

ThermalSpec subsystem_equilibrium(const CompositeSystem &c) {
  return {effective_hamiltonian(c), c.beta()};
}

double open_jarzynski_average(const CompositeSystem &initial,
                              const CompositeSystem &final,
                              const UnitaryOperator &u) {
  if (!initial.shares_environment(final)) {
    throw InvalidArgument("open_jarzynski_average: systems must share partition, bath, coupling and beta");
  }
  return jarzynski_average(initial.beta(), initial.total(), final.total(), u);
}

namespace {

double open_distance_via_work(const CompositeSystem &from,
                              const CompositeSystem &to,
                              const DensityMatrix &rho_s,
                              const HermitianOperator &h_eff_from,
                              const HermitianOperator &h_eff_to,
                              const UnitaryOperator &u) {
  const double beta = to.beta();
  const TransitionMatrix t(spectral_decompose(from.total()),
                           spectral_decompose(to.total()), u);
  return -beta * expectation(rho_s, h_eff_to - h_eff_from) -
         log_tasaki_average(beta, beta, t);
}

}  // namespace

WitnessReport open_witness(const CompositeSystem &reference,
                           const CompositeSystem &final,
                           const CompositeSystem &star,
                           const UnitaryOperator &u_reference,
                           const UnitaryOperator &u_star, Route route,
                           double strictness_epsilon) {
  if (!reference.shares_environment(final) || !star.shares_environment(final)) {
    throw InvalidArgument("open_witness: mismatched partitions, bath, coupling or beta");
  }
  require_same_register(u_reference.reg(), final.full_register(), "open_witness");
  require_same_register(u_star.reg(), final.full_register(), "open_witness");

  const ThermalSpec rho_spec = subsystem_equilibrium(final);
  const ThermalSpec ref_spec = subsystem_equilibrium(reference);
  const ThermalSpec star_spec = subsystem_equilibrium(star);
  const DensityMatrix rho_s = rho_spec.state();

  double left = 0.0;
  double right = 0.0;
  if (route == Route::direct) {
    left = relative_entropy(rho_s, ref_spec);
    right = relative_entropy(rho_s, star_spec);
  } else {
    left = open_distance_via_work(reference, final, rho_s, ref_spec.hamiltonian(),
                                  rho_spec.hamiltonian(), u_reference);
    right = open_distance_via_work(star, final, rho_s, star_spec.hamiltonian(),
                                   rho_spec.hamiltonian(), u_star);
  }
  return make_report(left, right, route, strictness_epsilon);
}

}  // namespace entwit
