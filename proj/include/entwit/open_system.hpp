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

#ifndef ENTWIT_OPEN_SYSTEM_HPP
#define ENTWIT_OPEN_SYSTEM_HPP

#include <optional>
#include <vector>

#include "entwit/operator_core.hpp"
#include "entwit/spin_models.hpp"
#include "entwit/thermo.hpp"
#include "entwit/witness.hpp"
#include "entwit/work_stats.hpp"

namespace entwit {

/// Sites of the full register split into a driven subsystem S and a bath B.
/// The two lists are disjoint and together cover 1..|S|+|B|. The bath may
/// be empty.
struct Partition {
  std::vector<int> subsystem;
  std::vector<int> bath;

  int total_sites() const noexcept {
    return static_cast<int>(subsystem.size() + bath.size());
  }
  void validate() const;
};

inline constexpr int kMaxCompositeQubits = 10;

/// H = H_S (x) 1_B + H_SB + 1_S (x) H_B at inverse temperature beta.
///
/// H_S acts on the |S| subsystem qubits in the order of Partition::subsystem,
/// H_B likewise on the bath qubits, H_SB on the full register. Only H_S is
/// ever driven; bath and coupling stay fixed.
class CompositeSystem {
 public:
  CompositeSystem(Partition partition, HermitianOperator h_s,
                  HermitianOperator h_sb, std::optional<HermitianOperator> h_b,
                  double beta);

  const Partition &partition() const noexcept { return partition_; }
  const QubitRegister &full_register() const noexcept { return h_sb_.reg(); }
  const QubitRegister &subsystem_register() const noexcept { return h_s_.reg(); }
  const HermitianOperator &subsystem_hamiltonian() const noexcept { return h_s_; }
  const HermitianOperator &coupling() const noexcept { return h_sb_; }
  const std::optional<HermitianOperator> &bath_hamiltonian() const noexcept { return h_b_; }
  double beta() const noexcept { return beta_; }

  /// Same bath, coupling and beta with a new subsystem Hamiltonian.
  CompositeSystem with_subsystem(HermitianOperator h_s) const;

  /// Full-register Hamiltonian H_S + H_SB + H_B.
  HermitianOperator total() const;

  /// True when partition, coupling, bath and beta agree with `other`.
  bool shares_environment(const CompositeSystem &other) const;

 private:
  Partition partition_;
  HermitianOperator h_s_;
  HermitianOperator h_sb_;
  std::optional<HermitianOperator> h_b_;
  double beta_;
};

/// Drive of the subsystem Hamiltonian from `initial` to `final_subsystem`
/// over a linear or quench path; bath and coupling are held fixed.
class CompositeDrive {
 public:
  CompositeDrive(CompositeSystem initial, HermitianOperator final_subsystem,
                 double t_f, int steps,
                 Interpolation interpolation = Interpolation::linear);

  const CompositeSystem &initial() const noexcept { return initial_; }
  CompositeSystem final() const;
  CompositeSystem at(int step) const;

  /// The full-register path H(t) = H_S(t) + H_SB + H_B.
  OperatorPath full_path() const;

 private:
  CompositeSystem initial_;
  OperatorPath subsystem_path_;
};

/// H_eff = -(1/beta) ln[ tr_B exp(-beta H) / Z_B ] on the subsystem register.
HermitianOperator effective_hamiltonian(const CompositeSystem &c);
HermitianOperator effective_hamiltonian(const CompositeDrive &drive, int step);

struct SubsystemPartition {
  double log_y = 0.0;    // ln tr exp(-beta H) over the full register
  double log_z_b = 0.0;  // ln tr exp(-beta H_B), 0 for an empty bath
  double log_z_s = 0.0;  // ln(Y / Z_B)

  double y() const;
  double z_b() const;
  double z_s() const;
};

SubsystemPartition subsystem_partition(const CompositeSystem &c);
SubsystemPartition subsystem_partition(const CompositeDrive &drive, int step);

/// Gibbs state exp(-beta H_eff) / Z_S of the subsystem.
ThermalSpec subsystem_equilibrium(const CompositeSystem &c);

/// <exp(-beta W)> of the full closed system evolving under `u`.
double open_jarzynski_average(const CompositeSystem &initial,
                              const CompositeSystem &final,
                              const UnitaryOperator &u);

/// Open-system witness S(rho_S || sigma_S) > S(rho_S || rho*_S) for the
/// equilibrium subsystem states of `final`, `reference` and `star`.
///
/// On the via_work route each side is
///   -beta tr[rho_S (H_f^eff - H_x^eff)] - ln <exp(-beta W)>,
/// where the work average is taken over the full system driven by
/// `u_reference` (reference -> final) or `u_star` (star -> final). The
/// soundness of a detection rests on `reference` being a valid
/// closest-separable or equal-distance choice.
WitnessReport open_witness(const CompositeSystem &reference,
                           const CompositeSystem &final,
                           const CompositeSystem &star,
                           const UnitaryOperator &u_reference,
                           const UnitaryOperator &u_star, Route route,
                           double strictness_epsilon = 1e-9);

}  // namespace entwit

#endif  // ENTWIT_OPEN_SYSTEM_HPP
