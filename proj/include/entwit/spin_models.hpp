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

#ifndef ENTWIT_SPIN_MODELS_HPP
#define ENTWIT_SPIN_MODELS_HPP

#include <array>
#include <string_view>

#include "entwit/operator_core.hpp"

namespace entwit {

enum class Boundary { periodic, open };

Boundary parse_boundary(std::string_view s);
std::string_view to_string(Boundary b);

/// Parameters of the XXZ chain
///   H = -sum_l [ J/2 (X_l X_{l+1} + Y_l Y_{l+1}) + Jz Z_l Z_{l+1} + B Z_l ].
struct XXZParams {
  int n = 2;
  double J = 1.0;
  double Jz = 0.0;
  double B = 0.0;
  Boundary boundary = Boundary::periodic;

  void validate() const;
};

/// Dzyaloshinskii-Moriya vector D for the term sum_l D . (sigma_l x sigma_{l+1}).
struct DMParams {
  std::array<double, 3> D{0.0, 0.0, 0.0};
};

HermitianOperator build_xxz(const XXZParams &p);

HermitianOperator build_dm_term(QubitRegister reg, const DMParams &d,
                                Boundary boundary);

/// sum_l Z_l.
HermitianOperator total_magnetization(QubitRegister reg);

/// Permutation moving the state of site l to site l+1 (cyclically).
Matrix cyclic_shift(QubitRegister reg);

enum class Interpolation { linear, quench_at_start };

Interpolation parse_interpolation(std::string_view s);
std::string_view to_string(Interpolation i);

/// Parameter path between two XXZ endpoints over [0, t_f] in `steps` slices
/// of width dt = t_f / steps.
class DrivingSchedule {
 public:
  DrivingSchedule(XXZParams initial, XXZParams final, double t_f, int steps,
                  Interpolation interpolation = Interpolation::linear);

  const XXZParams &initial() const noexcept { return initial_; }
  const XXZParams &final() const noexcept { return final_; }
  double t_f() const noexcept { return t_f_; }
  int steps() const noexcept { return steps_; }
  double dt() const noexcept { return t_f_ / steps_; }
  Interpolation interpolation() const noexcept { return interpolation_; }

  XXZParams params_at_time(double t) const;
  XXZParams params_at(int step) const;

 private:
  XXZParams initial_;
  XXZParams final_;
  double t_f_;
  int steps_;
  Interpolation interpolation_;
};

/// H(t_step) with t_step = step * dt.
HermitianOperator hamiltonian_at(const DrivingSchedule &s, int step);

}  // namespace entwit

#endif  // ENTWIT_SPIN_MODELS_HPP
