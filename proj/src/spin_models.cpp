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

#include "entwit/spin_models.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace entwit {

Boundary parse_boundary(std::string_view s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "open") return Boundary::open;
  throw InvalidArgument("unknown boundary \"" + std::string(s) +
                        "\" (expected periodic or open)");
}

std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "open";
}

Interpolation parse_interpolation(std::string_view s) {
  if (s == "linear") return Interpolation::linear;
  if (s == "quench-at-start" || s == "quench_at_start") return Interpolation::quench_at_start;
  throw InvalidArgument("unknown interpolation \"" + std::string(s) +
                        "\" (expected linear or quench-at-start)");
}

std::string_view to_string(Interpolation i) {
  return i == Interpolation::linear ? "linear" : "quench-at-start";
}

void XXZParams::validate() const {
  if (n < 2) {
    std::ostringstream os;
    os << "XXZ chain needs n >= 2 sites, got " << n;
    throw InvalidArgument(os.str());
  }
  if (n > QubitRegister::kMaxQubits) {
    std::ostringstream os;
    os << "XXZ chain of " << n << " sites exceeds the dense ceiling of "
       << QubitRegister::kMaxQubits;
    throw InvalidArgument(os.str());
  }
  if (!std::isfinite(J) || !std::isfinite(Jz) || !std::isfinite(B)) {
    throw InvalidArgument("XXZ couplings must be finite");
  }
}

namespace {

// Bonds (l, l+1); the wrap-around bond (n, 1) only for periodic chains.
// A 2-site periodic chain has both bonds on the same pair, as the sum over
// l = 1..n prescribes.
std::vector<std::pair<int, int>> bonds(int n, Boundary boundary) {
  std::vector<std::pair<int, int>> out;
  for (int l = 1; l < n; ++l) out.emplace_back(l, l + 1);
  if (boundary == Boundary::periodic) out.emplace_back(n, 1);
  return out;
}

Matrix two_site(QubitRegister reg, PauliAxis a, int i, PauliAxis b, int j) {
  return embed_pauli(reg, i, a).matrix() * embed_pauli(reg, j, b).matrix();
}

}  // namespace

HermitianOperator build_xxz(const XXZParams &p) {
  p.validate();
  const QubitRegister reg(p.n);
  Matrix h = Matrix::Zero(reg.dim(), reg.dim());
  for (auto [l, m] : bonds(p.n, p.boundary)) {
    h -= 0.5 * p.J *
         (two_site(reg, PauliAxis::x, l, PauliAxis::x, m) +
          two_site(reg, PauliAxis::y, l, PauliAxis::y, m));
    h -= p.Jz * two_site(reg, PauliAxis::z, l, PauliAxis::z, m);
  }
  for (int l = 1; l <= p.n; ++l) {
    h -= p.B * embed_pauli(reg, l, PauliAxis::z).matrix();
  }
  return {reg, std::move(h)};
}

HermitianOperator build_dm_term(QubitRegister reg, const DMParams &d,
                                Boundary boundary) {
  for (double x : d.D) {
    if (!std::isfinite(x)) throw InvalidArgument("DM vector must be finite");
  }
  if (reg.size() < 2) throw InvalidArgument("DM term needs at least two sites");
  using enum PauliAxis;
  Matrix h = Matrix::Zero(reg.dim(), reg.dim());
  for (auto [l, m] : bonds(reg.size(), boundary)) {
    // (sigma_l x sigma_m)_k = eps_kab sigma_l^a sigma_m^b
    h += d.D[0] * (two_site(reg, y, l, z, m) - two_site(reg, z, l, y, m));
    h += d.D[1] * (two_site(reg, z, l, x, m) - two_site(reg, x, l, z, m));
    h += d.D[2] * (two_site(reg, x, l, y, m) - two_site(reg, y, l, x, m));
  }
  return {reg, std::move(h)};
}

HermitianOperator total_magnetization(QubitRegister reg) {
  Matrix m = Matrix::Zero(reg.dim(), reg.dim());
  for (int l = 1; l <= reg.size(); ++l) m += embed_pauli(reg, l, PauliAxis::z).matrix();
  return {reg, std::move(m)};
}

Matrix cyclic_shift(QubitRegister reg) {
  const int n = reg.size();
  Matrix p = Matrix::Zero(reg.dim(), reg.dim());
  for (Eigen::Index i = 0; i < reg.dim(); ++i) {
    Eigen::Index j = 0;
    for (int site = 1; site <= n; ++site) {
      const int target = site % n + 1;
      if ((i >> reg.bit(site)) & 1) j |= Eigen::Index{1} << reg.bit(target);
    }
    p(j, i) = 1.0;
  }
  return p;
}

DrivingSchedule::DrivingSchedule(XXZParams initial, XXZParams final,
                                 double t_f, int steps,
                                 Interpolation interpolation)
    : initial_(initial),
      final_(final),
      t_f_(t_f),
      steps_(steps),
      interpolation_(interpolation) {
  initial_.validate();
  final_.validate();
  if (initial_.n != final_.n) throw InvalidArgument("schedule endpoints differ in n");
  if (initial_.boundary != final_.boundary) {
    throw InvalidArgument("schedule endpoints differ in boundary");
  }
  if (steps_ < 1) throw InvalidArgument("schedule needs at least one step");
  if (!std::isfinite(t_f_) || t_f_ < 0.0) {
    throw InvalidArgument("schedule duration t_f must be finite and non-negative");
  }
}

XXZParams DrivingSchedule::params_at_time(double t) const {
  if (interpolation_ == Interpolation::quench_at_start) {
    return t > 0.0 ? final_ : initial_;
  }
  const double s = t_f_ > 0.0 ? t / t_f_ : 0.0;
  XXZParams p = initial_;
  p.J = initial_.J + s * (final_.J - initial_.J);
  p.Jz = initial_.Jz + s * (final_.Jz - initial_.Jz);
  p.B = initial_.B + s * (final_.B - initial_.B);
  return p;
}

XXZParams DrivingSchedule::params_at(int step) const {
  if (step < 0 || step >= steps_) {
    std::ostringstream os;
    os << "schedule step " << step << " outside 0.." << steps_ - 1;
    throw InvalidArgument(os.str());
  }
  return params_at_time(step * dt());
}

HermitianOperator hamiltonian_at(const DrivingSchedule &s, int step) {
  return build_xxz(s.params_at(step));
}

}  // namespace entwit
