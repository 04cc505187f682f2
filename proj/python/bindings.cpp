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

#include <cmath>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entwit/open_system.hpp"
#include "entwit/spin_models.hpp"
#include "entwit/thermo.hpp"
#include "entwit/witness.hpp"
#include "entwit/work_stats.hpp"

namespace py = pybind11;
using namespace entwit;

namespace {

// Register implied by a square matrix of power-of-two size.
QubitRegister register_for(const Matrix &m) {
  if (m.rows() != m.cols() || m.rows() < 2 || (m.rows() & (m.rows() - 1)) != 0) {
    throw InvalidArgument("expected a square matrix of size 2^n");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < m.rows()) ++n;
  return QubitRegister(n);
}

HermitianOperator hermitian(const Matrix &m) { return {register_for(m), m}; }
DensityMatrix density(const Matrix &m) { return {register_for(m), m}; }
UnitaryOperator unitary(const Matrix &m) { return {register_for(m), m}; }

SamplePoint sample_point(const std::string &s) {
  if (s == "left") return SamplePoint::left;
  if (s == "midpoint") return SamplePoint::midpoint;
  throw InvalidArgument("sample_point must be left or midpoint");
}

py::dict params_dict(const XXZParams &p) {
  py::dict d;
  d["n"] = p.n;
  d["J"] = p.J;
  d["Jz"] = p.Jz;
  d["B"] = p.B;
  d["boundary"] = std::string(to_string(p.boundary));
  return d;
}

py::dict report_dict(const WitnessReport &r) {
  py::dict d;
  d["s_left"] = r.s_left;
  d["s_right"] = r.s_right;
  d["margin"] = r.margin;
  d["detected"] = r.detected;
  d["route"] = std::string(to_string(r.route));
  return d;
}

Axis axis(const std::tuple<double, double, double> &t) {
  return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relative-entropy entanglement witness and quantum work statistics";

  static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericalError &e) {
      py::set_error(numerical, ("[" + e.check() + "] " + e.what()).c_str());
    } catch (const InvalidArgument &e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  // states and Hamiltonians
  m.def(
      "build_xxz",
      [](int n, double J, double Jz, double B, const std::string &boundary) {
        return build_xxz({n, J, Jz, B, parse_boundary(boundary)}).matrix();
      },
      py::arg("n"), py::arg("J") = 1.0, py::arg("Jz") = 0.0, py::arg("B") = 0.0,
      py::arg("boundary") = "periodic");
  m.def("build_w_state", [](int n) { return build_w_state(n).matrix(); }, py::arg("n"));
  m.def("build_css", [](int n) { return build_css(n).matrix(); }, py::arg("n"));
  m.def("build_sigma_prime_7", [] { return build_sigma_prime_7().matrix(); });
  m.def("css_thermal_params_3", [](double beta, double J) { return params_dict(css_thermal_params_3(beta, J)); },
        py::arg("beta"), py::arg("J") = 1.0);
  m.def("sigma_prime_thermal_params_7",
        [](double beta, double J) { return params_dict(sigma_prime_thermal_params_7(beta, J)); },
        py::arg("beta"), py::arg("J") = 1.0);

  // thermodynamics
  m.def("thermal_state", [](const Matrix &h, double beta) { return thermal_state(ThermalSpec(hermitian(h), beta)).matrix(); },
        py::arg("H"), py::arg("beta"));
  m.def("log_partition", [](const Matrix &h, double beta) { return ThermalSpec(hermitian(h), beta).log_partition(); },
        py::arg("H"), py::arg("beta"));
  m.def("relative_entropy", [](const Matrix &rho, const Matrix &sigma) { return relative_entropy(density(rho), density(sigma)); },
        py::arg("rho"), py::arg("sigma"), "S(rho||sigma) in nats; inf outside the support");
  m.def(
      "thermal_relative_entropy",
      [](const Matrix &rho, const Matrix &h, double beta) {
        return relative_entropy(density(rho), ThermalSpec(hermitian(h), beta));
      },
      py::arg("rho"), py::arg("H"), py::arg("beta"), "S(rho||exp(-beta H)/Z) using the exact logarithm");

  // evolution and work statistics
  m.def(
      "exact_evolution",
      [](const Matrix &h_i, const Matrix &h_f, double t_f, int steps) {
        return exact_evolution(OperatorPath(hermitian(h_i), hermitian(h_f), t_f, steps)).matrix();
      },
      py::arg("H_i"), py::arg("H_f"), py::arg("t_f") = 1.0, py::arg("steps") = 1000);
  m.def(
      "trotter_evolution",
      [](const Matrix &h_i, const Matrix &h_f, double t_f, int steps, const std::string &point) {
        return trotter_evolution(OperatorPath(hermitian(h_i), hermitian(h_f), t_f, steps), sample_point(point))
            .matrix();
      },
      py::arg("H_i"), py::arg("H_f"), py::arg("t_f") = 1.0, py::arg("steps") = 1000,
      py::arg("sample_point") = "left");
  m.def(
      "transition_matrix",
      [](const Matrix &h_i, const Matrix &h_f, const Matrix &u) {
        return transition_matrix(hermitian(h_i), hermitian(h_f), unitary(u)).q();
      },
      py::arg("H_i"), py::arg("H_f"), py::arg("U"));
  m.def(
      "jarzynski_average",
      [](double beta, const Matrix &h_i, const Matrix &h_f, const Matrix &u) {
        return jarzynski_average(beta, hermitian(h_i), hermitian(h_f), unitary(u));
      },
      py::arg("beta"), py::arg("H_i"), py::arg("H_f"), py::arg("U"));
  m.def(
      "tasaki_average",
      [](double beta_i, double beta_f, const Matrix &h_i, const Matrix &h_f, const Matrix &u) {
        return tasaki_average(beta_i, beta_f, hermitian(h_i), hermitian(h_f), unitary(u));
      },
      py::arg("beta_i"), py::arg("beta_f"), py::arg("H_i"), py::arg("H_f"), py::arg("U"));
  m.def(
      "relative_entropy_via_work",
      [](const Matrix &h_i, double beta_i, const Matrix &h_f, double beta_f, const Matrix &u) {
        return relative_entropy_via_work(ThermalSpec(hermitian(h_i), beta_i), ThermalSpec(hermitian(h_f), beta_f),
                                         unitary(u));
      },
      py::arg("H_i"), py::arg("beta_i"), py::arg("H_f"), py::arg("beta_f"), py::arg("U"),
      "S(rho_f||rho_i) for the Gibbs states, from the work statistics of U");
  m.def(
      "sample_tpm",
      [](const Matrix &h_i, const Matrix &h_f, double beta, const Matrix &u, std::uint64_t count,
         std::uint64_t seed, int workers) {
        const ThermalSpec i(hermitian(h_i), beta), f(hermitian(h_f), beta);
        const UnitaryOperator op = unitary(u);
        SampleResult r;
        {
          py::gil_scoped_release release;
          r = sample_tpm(i, f, op, count, seed, workers, false);
        }
        py::dict d;
        d["count"] = r.summary.count;
        d["mean"] = r.summary.mean;
        d["stderr"] = r.summary.std_error;
        d["exact"] = r.summary.exact;
        d["z_score"] = r.summary.z_score;
        return d;
      },
      py::arg("H_i"), py::arg("H_f"), py::arg("beta"), py::arg("U"), py::arg("count"), py::arg("seed") = 0,
      py::arg("workers") = 1);

  // witness
  m.def(
      "witness_evaluate",
      [](const Matrix &rho, const Matrix &sigma_ref, const Matrix &rho_star, double eps) {
        WitnessOptions o;
        o.strictness_epsilon = eps;
        return report_dict(witness_evaluate(density(rho), density(sigma_ref), density(rho_star), o));
      },
      py::arg("rho"), py::arg("sigma_ref"), py::arg("rho_star"), py::arg("strictness_epsilon") = 1e-9);
  m.def(
      "witness_thermal",
      [](int n, double B, double Jz, double T, const std::string &route, double reference_T, double J) {
        const auto ref = reference_protocol(n, reference_T, J);
        WitnessOptions o;
        o.route = parse_route(route);
        const ThermalSpec star(build_xxz({n, J, Jz, B}), 1.0 / T);
        return report_dict(witness_evaluate(ref.rho(), ref.sigma(), star, o));
      },
      py::arg("n"), py::arg("B"), py::arg("Jz"), py::arg("T"), py::arg("route") = "direct",
      py::arg("reference_T") = 0.01, py::arg("J") = 1.0,
      "Witness for rho* = thermal XXZ state against the n = 3 or n = 7 reference pair");
  m.def(
      "sweep",
      [](int n, std::tuple<double, double, double> B, std::tuple<double, double, double> Jz,
         std::tuple<double, double, double> T, const std::string &route, int workers, double reference_T) {
        const auto ref = reference_protocol(n, reference_T, 1.0);
        SweepGrid g;
        g.n = n;
        g.B = axis(B);
        g.Jz = axis(Jz);
        g.T = axis(T);
        WitnessOptions o;
        o.route = parse_route(route);
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = sweep_detection(g, {ref.rho(), ref.sigma()}, o, workers);
        }
        const auto k = static_cast<Eigen::Index>(r.points.size());
        Eigen::VectorXd b(k), jz(k), t(k), margin(k);
        Eigen::Matrix<bool, Eigen::Dynamic, 1> detected(k);
        for (Eigen::Index i = 0; i < k; ++i) {
          const auto &p = r.points[static_cast<std::size_t>(i)];
          b(i) = p.B;
          jz(i) = p.Jz;
          t(i) = p.T;
          margin(i) = p.report.margin;
          detected(i) = p.report.detected;
        }
        py::dict d;
        d["B"] = b;
        d["Jz"] = jz;
        d["T"] = t;
        d["margin"] = margin;
        d["detected"] = detected;
        d["shape"] = py::make_tuple(g.B.count(), g.Jz.count(), g.T.count());
        return d;
      },
      py::arg("n"), py::arg("B"), py::arg("Jz"), py::arg("T"), py::arg("route") = "direct",
      py::arg("workers") = 1, py::arg("reference_T") = 0.01,
      "Detection map over (min, max, step) axes; flat arrays in B, Jz, T order");

  // open systems
  m.def(
      "effective_hamiltonian",
      [](std::vector<int> subsystem, std::vector<int> bath, const Matrix &h_s, const Matrix &h_sb,
         std::optional<Matrix> h_b, double beta) {
        std::optional<HermitianOperator> hb;
        if (h_b) hb = hermitian(*h_b);
        const CompositeSystem c({std::move(subsystem), std::move(bath)}, hermitian(h_s), hermitian(h_sb), hb, beta);
        return effective_hamiltonian(c).matrix();
      },
      py::arg("subsystem"), py::arg("bath"), py::arg("H_S"), py::arg("H_SB"), py::arg("H_B"), py::arg("beta"));
}
