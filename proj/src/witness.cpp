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

#include "entwit/witness.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "entwit/parallel.hpp"

namespace entwit {

namespace {

void require_chain(int n, const char *what) {
  if (n < 2) {
    std::ostringstream os;
    os << what << ": needs n >= 2, got " << n;
    throw InvalidArgument(os.str());
  }
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return std::round(c);
}

double checked_beta(double beta, const char *what) {
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    std::ostringstream os;
    os << what << ": inverse temperature must be positive and finite";
    throw InvalidArgument(os.str());
  }
  if (1.0 / beta > 0.1) {
    std::clog << "warning: " << what << " at T = " << 1.0 / beta
              << " only approximates its target state at low temperature\n";
  }
  return beta;
}

}  // namespace

DensityMatrix build_w_state(int n) {
  require_chain(n, "build_w_state");
  const QubitRegister reg(n);
  return DensityMatrix::pure(reg, dicke_state(reg, 1));
}

DensityMatrix build_css(int n) {
  require_chain(n, "build_css");
  const QubitRegister reg(n);
  const double norm = std::pow(static_cast<double>(n), n);
  Matrix m = Matrix::Zero(reg.dim(), reg.dim());
  for (int zeros = 0; zeros <= n; ++zeros) {
    const double w = binomial(n, zeros) * std::pow(n - 1.0, zeros) / norm;
    const Vector d = dicke_state(reg, n - zeros);
    m += w * d * d.adjoint();
  }
  return {reg, std::move(m)};
}

DensityMatrix build_sigma_prime_7() {
  const QubitRegister reg(7);
  const double total = std::pow(7.0, 7);          // 823543
  const double excited = 7.0 * std::pow(6.0, 6);  // 326592
  Matrix m = Matrix::Zero(reg.dim(), reg.dim());
  m(0, 0) = (total - excited) / total;
  const Vector w = dicke_state(reg, 1);
  m += (excited / total) * w * w.adjoint();
  return {reg, std::move(m)};
}

XXZParams css_thermal_params_3(double beta, double J) {
  const double t = 1.0 / checked_beta(beta, "css_thermal_params_3");
  XXZParams p;
  p.n = 3;
  p.J = J;
  p.Jz = (2.0 * J - t * std::log(3.0)) / 4.0;
  p.B = t * std::log(2.0) / 2.0;
  p.boundary = Boundary::periodic;
  p.validate();
  return p;
}

XXZParams sigma_prime_thermal_params_7(double beta, double J) {
  const double t = 1.0 / checked_beta(beta, "sigma_prime_thermal_params_7");
  XXZParams p;
  p.n = 7;
  p.J = J;
  p.Jz = 0.0;
  p.B = t * std::log(70993.0 / 46656.0) / 2.0 + J;
  p.boundary = Boundary::periodic;
  p.validate();
  return p;
}

ThermalSpec ReferenceProtocol::sigma() const { return {build_xxz(initial), beta}; }
ThermalSpec ReferenceProtocol::rho() const { return {build_xxz(final), beta}; }

DrivingSchedule ReferenceProtocol::schedule(double t_f, int steps) const {
  return {initial, final, t_f, steps};
}

ReferenceProtocol reference_protocol(int n, double T, double J) {
  if (!std::isfinite(T) || !(T > 0.0)) {
    throw InvalidArgument("reference_protocol: temperature must be positive and finite");
  }
  ReferenceProtocol p;
  p.beta = 1.0 / T;
  if (n == 3) {
    p.initial = css_thermal_params_3(p.beta, J);
    p.final = {3, J, 0.0, 0.5};
  } else if (n == 7) {
    p.initial = sigma_prime_thermal_params_7(p.beta, J);
    p.final = {7, J, 0.0, 0.92};
  } else {
    throw InvalidArgument("reference_protocol: only n = 3 and n = 7 are defined, got n = " +
                          std::to_string(n));
  }
  return p;
}

// ---------------------------------------------------------------------------

Route parse_route(std::string_view s) {
  if (s == "direct") return Route::direct;
  if (s == "via-work" || s == "via_work") return Route::via_work;
  throw InvalidArgument("unknown route \"" + std::string(s) +
                        "\" (expected direct or via-work)");
}

std::string_view to_string(Route r) {
  return r == Route::direct ? "direct" : "via-work";
}

DensityMatrix as_density(const WitnessState &s) {
  if (const auto *d = std::get_if<DensityMatrix>(&s)) return *d;
  return std::get<ThermalSpec>(s).state();
}

const QubitRegister &register_of(const WitnessState &s) {
  return std::visit([](const auto &v) -> const QubitRegister & { return v.reg(); }, s);
}

WitnessReport make_report(double s_left, double s_right, Route route,
                          double strictness_epsilon) {
  WitnessReport r;
  r.s_left = s_left;
  r.s_right = s_right;
  r.route = route;
  const bool left_inf = std::isinf(s_left);
  const bool right_inf = std::isinf(s_right);
  if (left_inf && right_inf) {
    r.margin = 0.0;
    r.detected = false;
  } else {
    r.margin = s_left - s_right;
    r.detected = !right_inf && (left_inf || s_right < s_left - strictness_epsilon);
  }
  return r;
}

double witness_distance(const WitnessState &rho, const WitnessState &sigma,
                        Route route, const WorkProtocol &protocol) {
  require_same_register(register_of(rho), register_of(sigma), "witness_distance");
  if (route == Route::direct) {
    const DensityMatrix r = as_density(rho);
    if (const auto *gibbs = std::get_if<ThermalSpec>(&sigma)) {
      return relative_entropy(r, *gibbs);
    }
    return relative_entropy(r, std::get<DensityMatrix>(sigma));
  }
  const auto *final = std::get_if<ThermalSpec>(&rho);
  const auto *initial = std::get_if<ThermalSpec>(&sigma);
  if (final == nullptr || initial == nullptr) {
    throw InvalidArgument("via-work route needs Gibbs states (Hamiltonian and beta) on both sides");
  }
  const UnitaryOperator u =
      protocol_unitary(initial->hamiltonian(), final->hamiltonian(), protocol);
  return relative_entropy_via_work(*initial, *final, u);
}

WitnessReport witness_evaluate(const WitnessState &rho,
                               const WitnessState &sigma_ref,
                               const WitnessState &rho_star,
                               const WitnessOptions &options) {
  const double left = witness_distance(rho, sigma_ref, options.route, options.protocol);
  const double right = witness_distance(rho, rho_star, options.route, options.protocol);
  return make_report(left, right, options.route, options.strictness_epsilon);
}

// ---------------------------------------------------------------------------

void Axis::validate(const char *name) const {
  std::ostringstream os;
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
    os << "grid axis " << name << ": bounds and step must be finite";
  } else if (!(step > 0.0)) {
    os << "grid axis " << name << ": step must be positive";
  } else if (max < min) {
    os << "grid axis " << name << ": empty range (max < min)";
  }
  if (!os.str().empty()) throw InvalidArgument(os.str());
}

std::size_t Axis::count() const {
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

std::vector<double> Axis::values() const {
  std::vector<double> v(count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = min + static_cast<double>(i) * step;
  return v;
}

void SweepGrid::validate() const {
  XXZParams probe{n, J, 0.0, 0.0, boundary};
  probe.validate();
  B.validate("B");
  Jz.validate("Jz");
  T.validate("T");
  if (!(T.min > 0.0)) throw InvalidArgument("grid axis T: temperatures must be positive");
}

std::size_t SweepGrid::size() const { return B.count() * Jz.count() * T.count(); }

SweepResult sweep_detection(const SweepGrid &grid, const SweepReference &ref,
                            const WitnessOptions &options, int workers) {
  grid.validate();
  const QubitRegister reg(grid.n);
  require_same_register(reg, register_of(ref.rho), "sweep_detection");
  require_same_register(reg, register_of(ref.sigma_ref), "sweep_detection");

  const auto bs = grid.B.values();
  const auto jzs = grid.Jz.values();
  const auto ts = grid.T.values();

  const double s_left = witness_distance(ref.rho, ref.sigma_ref, options.route, options.protocol);
  const DensityMatrix rho = as_density(ref.rho);
  const double rho_negentropy = negentropy(rho);

  SweepResult result;
  result.grid = grid;
  result.points.resize(bs.size() * jzs.size() * ts.size());

  parallel_for(bs.size() * jzs.size(), workers, [&](std::size_t pair) {
    const double b = bs[pair / jzs.size()];
    const double jz = jzs[pair % jzs.size()];
    const HermitianOperator h = build_xxz({grid.n, grid.J, jz, b, grid.boundary});
    const SpectralDecomposition spectrum = spectral_decompose(h);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const ThermalSpec star(h, spectrum, 1.0 / ts[k]);
      double s_right = 0.0;
      if (options.route == Route::direct) {
        s_right = std::max(0.0, rho_negentropy + gibbs_cross_entropy(rho, star));
      } else {
        s_right = witness_distance(ref.rho, star, Route::via_work, options.protocol);
      }
      SweepPoint &pt = result.points[pair * ts.size() + k];
      pt.B = b;
      pt.Jz = jz;
      pt.T = ts[k];
      pt.report = make_report(s_left, s_right, options.route, options.strictness_epsilon);
    }
  });
  return result;
}

}  // namespace entwit
