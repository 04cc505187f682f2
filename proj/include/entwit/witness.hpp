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

#ifndef ENTWIT_WITNESS_HPP
#define ENTWIT_WITNESS_HPP

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entwit/operator_core.hpp"
#include "entwit/spin_models.hpp"
#include "entwit/thermo.hpp"
#include "entwit/work_stats.hpp"

namespace entwit {

// Reference states -----------------------------------------------------------

/// Projector onto the one-excitation Dicke (W) state.
DensityMatrix build_w_state(int n);

/// Closest separable state of the n-qubit W state:
///   sum_k C(n,k) (n-1)^k / n^n |D_k><D_k|,
/// where |D_k> is the normalized Dicke state with k zeros.
DensityMatrix build_css(int n);

/// [(7^7 - 7 * 6^6) |0000000><0000000| + 7 * 6^6 |W_7><W_7|] / 7^7, an
/// equilibrium-compatible state at the same relative-entropy distance from
/// the 7-qubit W state as build_css(7).
DensityMatrix build_sigma_prime_7();

/// XXZ parameters whose low-temperature Gibbs state reproduces build_css(3):
/// B = T ln 2 / 2, Jz = (2J - T ln 3) / 4, periodic, n = 3.
XXZParams css_thermal_params_3(double beta, double J);

/// XXZ parameters whose low-temperature Gibbs state reproduces
/// build_sigma_prime_7(): Jz = 0, B = T ln(70993 / 46656) / 2 + J, n = 7.
XXZParams sigma_prime_thermal_params_7(double beta, double J);

/// Driving from the thermal reference state (css for n = 3, sigma' for
/// n = 7) to the thermal W state at temperature T.
struct ReferenceProtocol {
  XXZParams initial;
  XXZParams final;
  double beta = 100.0;

  ThermalSpec sigma() const;  // Gibbs state of `initial`
  ThermalSpec rho() const;    // Gibbs state of `final`
  DrivingSchedule schedule(double t_f = 1.0, int steps = 1000) const;
};

/// n = 3: B 0.5, Jz 0 at the end; n = 7: B 0.92, Jz 0.
ReferenceProtocol reference_protocol(int n, double T = 0.01, double J = 1.0);

// Witness --------------------------------------------------------------------

enum class Route { direct, via_work };

Route parse_route(std::string_view s);
std::string_view to_string(Route r);

/// Either an explicit density matrix or a Gibbs state given by (H, beta).
/// The via_work route needs every operand in Gibbs form.
using WitnessState = std::variant<DensityMatrix, ThermalSpec>;

DensityMatrix as_density(const WitnessState &s);
const QubitRegister &register_of(const WitnessState &s);

struct WitnessOptions {
  Route route = Route::direct;
  double strictness_epsilon = 1e-9;
  WorkProtocol protocol{};
};

struct WitnessReport {
  double s_left = 0.0;   // S(rho || sigma_ref), nats, may be +inf
  double s_right = 0.0;  // S(rho || rho*), nats, may be +inf
  double margin = 0.0;   // s_left - s_right
  bool detected = false;
  Route route = Route::direct;
  std::map<std::string, double> metadata;
};

/// Builds a report from the two distances. Detection requires
/// s_right < s_left - epsilon; an infinite s_left with finite s_right
/// detects, two infinite sides do not (margin reported as 0).
WitnessReport make_report(double s_left, double s_right, Route route,
                          double strictness_epsilon);

/// S(rho || sigma) along the chosen route. via_work drives sigma's
/// Hamiltonian into rho's with `protocol` and applies the work identity.
double witness_distance(const WitnessState &rho, const WitnessState &sigma,
                        Route route, const WorkProtocol &protocol);

/// Relative-entropy witness: rho* is certified entangled when
/// S(rho || rho*) < S(rho || sigma_ref).
WitnessReport witness_evaluate(const WitnessState &rho,
                               const WitnessState &sigma_ref,
                               const WitnessState &rho_star,
                               const WitnessOptions &options = {});

// Sweeps ---------------------------------------------------------------------

struct Axis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  void validate(const char *name) const;
  std::size_t count() const;
  std::vector<double> values() const;
};

/// (B, Jz, T) grid of XXZ Gibbs states rho* at fixed J, n and boundary.
struct SweepGrid {
  int n = 3;
  double J = 1.0;
  Boundary boundary = Boundary::periodic;
  Axis B{0.0, 1.2, 0.02};
  Axis Jz{0.0, 1.0, 0.02};
  Axis T{0.02, 2.0, 0.02};

  void validate() const;
  std::size_t size() const;
};

struct SweepReference {
  WitnessState rho;
  WitnessState sigma_ref;
};

struct SweepPoint {
  double B = 0.0;
  double Jz = 0.0;
  double T = 0.0;
  WitnessReport report;
};

struct SweepResult {
  SweepGrid grid;
  std::vector<SweepPoint> points;  // B outermost, then Jz, then T
};

/// Evaluates the witness at every grid point. Each (B, Jz) Hamiltonian is
/// diagonalized once and reused along the T axis. Output order is fixed by
/// the grid, independent of `workers`.
SweepResult sweep_detection(const SweepGrid &grid, const SweepReference &ref,
                            const WitnessOptions &options, int workers = 1);

}  // namespace entwit

#endif  // ENTWIT_WITNESS_HPP
