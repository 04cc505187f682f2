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

#ifndef ENTWIT_WORK_STATS_HPP
#define ENTWIT_WORK_STATS_HPP

#include <cstdint>
#include <vector>

#include "entwit/operator_core.hpp"
#include "entwit/spin_models.hpp"
#include "entwit/thermo.hpp"

namespace entwit {

/// Where inside each Trotter slice H(t) is sampled. `left` reproduces the
/// product prod_n exp(-i H(n dt) dt) literally and is first order; `midpoint`
/// is second order.
enum class SamplePoint { left, midpoint };

enum class EvolutionMethod { automatic, exact, trotter };

/// Straight-line operator path H(t) = start + (t / t_f) (end - start), or a
/// sudden switch to `end` for every t > 0. An XXZ parameter schedule maps
/// onto this exactly because the Hamiltonian is linear in its parameters.
class OperatorPath {
 public:
  OperatorPath(HermitianOperator start, HermitianOperator end, double t_f,
               int steps, Interpolation interpolation = Interpolation::linear);

  static OperatorPath from_schedule(const DrivingSchedule &s);

  const HermitianOperator &start() const noexcept { return start_; }
  const HermitianOperator &end() const noexcept { return end_; }
  const QubitRegister &reg() const noexcept { return start_.reg(); }
  double t_f() const noexcept { return t_f_; }
  int steps() const noexcept { return steps_; }
  double dt() const noexcept { return t_f_ / steps_; }
  Interpolation interpolation() const noexcept { return interpolation_; }

  HermitianOperator at_time(double t) const;

  /// Integral of H(t) over [0, t_f].
  HermitianOperator integral() const;

  /// max |[H(a), H(b)]| over the path, which for a two-point path is
  /// max |[start, end]|.
  double commutator_norm() const;

 private:
  HermitianOperator start_;
  HermitianOperator end_;
  double t_f_;
  int steps_;
  Interpolation interpolation_;
};

inline constexpr double kCommutationTolerance = 1e-9;

/// exp(-i integral H) for a path whose Hamiltonians commute. Throws
/// InvalidArgument naming trotter_evolution when they do not.
UnitaryOperator exact_evolution(const OperatorPath &path);
UnitaryOperator exact_evolution(const DrivingSchedule &s);

/// prod_{k=0}^{M-1} exp(-i H(t_k) dt), step 0 applied first.
UnitaryOperator trotter_evolution(const OperatorPath &path,
                                  SamplePoint point = SamplePoint::left);
UnitaryOperator trotter_evolution(const DrivingSchedule &s,
                                  SamplePoint point = SamplePoint::left);

struct WorkProtocol {
  double t_f = 1.0;
  int steps = 1000;
  Interpolation interpolation = Interpolation::linear;
  SamplePoint sample_point = SamplePoint::left;
  EvolutionMethod method = EvolutionMethod::automatic;
};

/// Evolution operator driving `from` into `to`. `automatic` picks the exact
/// propagator when the path commutes and Trotter otherwise.
UnitaryOperator protocol_unitary(const HermitianOperator &from,
                                 const HermitianOperator &to,
                                 const WorkProtocol &protocol);

/// q(m, n) = |<phi_m^f| U |phi_n^i>|^2 in the eigenbases of the given spectra.
class TransitionMatrix {
 public:
  TransitionMatrix(SpectralDecomposition initial, SpectralDecomposition final,
                   const UnitaryOperator &u);

  const RealMatrix &q() const noexcept { return q_; }
  const SpectralDecomposition &initial_spectrum() const noexcept { return initial_; }
  const SpectralDecomposition &final_spectrum() const noexcept { return final_; }

  /// Largest deviation of any row or column sum from one.
  double stochasticity_error() const;

 private:
  SpectralDecomposition initial_;
  SpectralDecomposition final_;
  RealMatrix q_;
};

TransitionMatrix transition_matrix(const HermitianOperator &h_i,
                                   const HermitianOperator &h_f,
                                   const UnitaryOperator &u);

/// ln of sum_n p_n sum_m q(m,n) exp(-(beta_f E_m^f - beta_i E_n^i)) with
/// p_n = exp(-beta_i E_n^i) / Z_i, evaluated as a log-sum-exp.
double log_tasaki_average(double beta_i, double beta_f,
                          const TransitionMatrix &q);

/// <exp(-(beta_f E_f - beta_i E_i))> over two-point measurement outcomes.
double tasaki_average(double beta_i, double beta_f, const HermitianOperator &h_i,
                      const HermitianOperator &h_f, const UnitaryOperator &u);

/// <exp(-beta W)> with W = E_m^f - E_n^i.
double jarzynski_average(double beta, const HermitianOperator &h_i,
                         const HermitianOperator &h_f, const UnitaryOperator &u);

/// S(rho_f || rho_i) = -tr(rho_f Delta(beta H)) - ln <exp(-(beta_f E_f - beta_i E_i))>.
double relative_entropy_via_work(const ThermalSpec &initial,
                                 const ThermalSpec &final,
                                 const UnitaryOperator &u);

struct WorkOutcome {
  Eigen::Index n_index = 0;
  Eigen::Index m_index = 0;
  double E_i = 0.0;
  double E_f = 0.0;
  double work = 0.0;
  double probability = 0.0;
};

struct WorkDistribution {
  std::vector<WorkOutcome> outcomes;  // every (n, m) pair, n-major
  double beta_i = 1.0;
  double beta_f = 1.0;

  double total_probability() const;
  double mean_work() const;
  /// sum p exp(-(beta_f E_f - beta_i E_i)); reduces to <exp(-beta W)> when
  /// the two temperatures agree.
  double exponential_average() const;
  /// Outcomes merged by work value (within `tolerance`), ascending.
  /// Outcomes with probability <= `floor` are not part of the support.
  std::vector<std::pair<double, double>> by_work(double tolerance = 1e-9,
                                                 double floor = 1e-14) const;
};

WorkDistribution work_distribution(const ThermalSpec &initial,
                                   const ThermalSpec &final,
                                   const UnitaryOperator &u);

struct TrajectorySample {
  Eigen::Index n_index = 0;
  Eigen::Index m_index = 0;
  double E_i = 0.0;
  double E_f = 0.0;
  double work = 0.0;
  double generalized_exponent = 0.0;  // beta_f E_f - beta_i E_i
};

struct EstimatorSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double exact = 0.0;
  double z_score = 0.0;
};

struct SampleResult {
  std::vector<TrajectorySample> samples;
  EstimatorSummary summary;
};

/// Trajectories are generated in fixed blocks of this many samples, each
/// block with its own generator seeded from (seed, block index); the output
/// therefore does not depend on the worker count.
inline constexpr std::uint64_t kSampleBlock = 4096;

/// Monte Carlo emulation of the two-point measurement protocol: n from the
/// initial Gibbs weights, m from column n of q. The estimator is the sample
/// mean of exp(-(beta_f E_m - beta_i E_n)).
SampleResult sample_tpm(const ThermalSpec &initial, const ThermalSpec &final,
                        const UnitaryOperator &u, std::uint64_t count,
                        std::uint64_t seed, int workers = 1,
                        bool keep_samples = true);

}  // namespace entwit

#endif  // ENTWIT_WORK_STATS_HPP
