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

#include "commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "config.hpp"
#include "entwit/matrix_io.hpp"
#include "entwit/parallel.hpp"
#include "entwit/spin_models.hpp"
#include "entwit/thermo.hpp"
#include "entwit/work_stats.hpp"

namespace entwit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// formatting

std::string g17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no infinity; +inf is written as the string "inf".
json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

std::string fnv1a64(const Matrix &m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](double d) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &d, sizeof d);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ull;
    }
  };
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      mix(m(r, c).real());
      mix(m(r, c).imag());
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
  return buf;
}

void write_text(const fs::path &file, const std::string &text) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write " + file.string());
  os << text;
  if (!os) throw InvalidArgument("write failed for " + file.string());
}

void write_json(const fs::path &file, const json &j) { write_text(file, j.dump(2) + "\n"); }

fs::path prepare_out(const GlobalOptions &g) {
  std::error_code ec;
  fs::create_directories(g.out, ec);
  if (ec) throw InvalidArgument("cannot create output directory " + g.out.string() + ": " + ec.message());
  return g.out;
}

int workers_of(const GlobalOptions &g) {
  if (g.workers) {
    if (*g.workers < 1) throw InvalidArgument("--workers must be at least 1");
    return *g.workers;
  }
  return default_workers();
}

// ---------------------------------------------------------------------------
// config blocks

struct Model {
  int n = 3;
  double J = 1.0;
  Boundary boundary = Boundary::periodic;
};

Model parse_model(const ConfigNode &c) {
  Model m;
  const auto n = c.integer("n");
  if (n < 2 || n > QubitRegister::kMaxQubits) {
    c.fail("n", "must lie in 2.." + std::to_string(QubitRegister::kMaxQubits));
  }
  m.n = static_cast<int>(n);
  m.J = c.number_or("J", 1.0);
  try {
    m.boundary = parse_boundary(c.string_or("boundary", "periodic"));
  } catch (const InvalidArgument &e) {
    c.fail("boundary", e.what());
  }
  return m;
}

void put_model(json &j, const Model &m) {
  j["n"] = m.n;
  j["J"] = m.J;
  j["boundary"] = std::string(to_string(m.boundary));
}

double parse_temperature(const ConfigNode &c, const std::string &key, double fallback) {
  const double t = c.number_or(key, fallback);
  if (!(t > 0.0)) c.fail(key, "temperature must be positive");
  return t;
}

WorkProtocol parse_protocol(const ConfigNode &parent) {
  WorkProtocol p;
  if (!parent.has("protocol")) return p;
  const auto c = parent.child("protocol");
  c.allow_only({"t_f", "steps", "interpolation", "sample_point", "method"});
  p.t_f = c.number_or("t_f", p.t_f);
  if (p.t_f < 0.0) c.fail("t_f", "must be non-negative");
  const auto steps = c.integer_or("steps", p.steps);
  if (steps < 1 || steps > 100000000) c.fail("steps", "must lie in 1..1e8");
  p.steps = static_cast<int>(steps);
  try {
    p.interpolation = parse_interpolation(c.string_or("interpolation", "linear"));
  } catch (const InvalidArgument &e) {
    c.fail("interpolation", e.what());
  }
  const auto point = c.string_or("sample_point", "left");
  if (point == "left") {
    p.sample_point = SamplePoint::left;
  } else if (point == "midpoint") {
    p.sample_point = SamplePoint::midpoint;
  } else {
    c.fail("sample_point", "expected left or midpoint");
  }
  const auto method = c.string_or("method", "automatic");
  if (method == "automatic") {
    p.method = EvolutionMethod::automatic;
  } else if (method == "exact") {
    p.method = EvolutionMethod::exact;
  } else if (method == "trotter") {
    p.method = EvolutionMethod::trotter;
  } else {
    c.fail("method", "expected automatic, exact or trotter");
  }
  return p;
}

json protocol_json(const WorkProtocol &p) {
  static const char *methods[] = {"automatic", "exact", "trotter"};
  return {{"t_f", p.t_f},
          {"steps", p.steps},
          {"interpolation", std::string(to_string(p.interpolation))},
          {"sample_point", p.sample_point == SamplePoint::left ? "left" : "midpoint"},
          {"method", methods[static_cast<int>(p.method)]}};
}

Route resolve_route(const GlobalOptions &g, const ConfigNode &c) {
  if (g.route) return *g.route;
  try {
    return parse_route(c.string_or("route", "direct"));
  } catch (const InvalidArgument &e) {
    c.fail("route", e.what());
  }
}

std::uint64_t resolve_seed(const GlobalOptions &g, const ConfigNode &c) {
  if (g.seed) return *g.seed;
  const auto s = c.integer_or("seed", 0);
  if (s < 0) c.fail("seed", "must be non-negative");
  return static_cast<std::uint64_t>(s);
}

double parse_epsilon(const ConfigNode &c) {
  const double eps = c.number_or("strictness_epsilon", 1e-9);
  if (eps < 0.0) c.fail("strictness_epsilon", "must be non-negative");
  return eps;
}

// A state given either by name or as {"file": path}.
struct StateSource {
  std::string name;  // empty when loaded from file
  fs::path file;

  json to_json() const { return name.empty() ? json{{"file", file.string()}} : json(name); }
};

StateSource parse_state_source(const ConfigNode &c, const std::string &key, const std::string &fallback,
                               std::initializer_list<std::string_view> names) {
  StateSource s;
  if (!c.has(key)) {
    s.name = fallback;
    return s;
  }
  if (c.raw(key).is_object()) {
    const auto f = c.child(key);
    f.allow_only({"file"});
    s.file = f.path("file");
    return s;
  }
  s.name = c.string(key);
  if (std::find(names.begin(), names.end(), s.name) == names.end()) {
    std::string list;
    for (auto n : names) list += (list.empty() ? "" : ", ") + std::string(n);
    c.fail(key, "expected one of " + list + " or {\"file\": path}");
  }
  return s;
}

DensityMatrix load_density(const fs::path &file) { return io::density_from_json(io::read_json_file(file)); }

struct References {
  StateSource rho_source;
  StateSource sigma_source;
  double temperature = 0.01;
  WitnessState rho;
  WitnessState sigma;
};

References parse_references(const ConfigNode &root, const Model &m) {
  References r{{}, {}, 0.01, DensityMatrix::maximally_mixed(QubitRegister(1)),
               DensityMatrix::maximally_mixed(QubitRegister(1))};
  ConfigNode c = root;
  const bool present = root.has("reference");
  if (present) {
    c = root.child("reference");
    c.allow_only({"rho", "sigma", "temperature"});
  }
  r.rho_source = present ? parse_state_source(c, "rho", "thermal", {"thermal", "w_state"})
                         : StateSource{"thermal", {}};
  r.sigma_source = present ? parse_state_source(c, "sigma", "thermal", {"thermal", "css", "sigma_prime"})
                           : StateSource{"thermal", {}};
  r.temperature = present ? parse_temperature(c, "temperature", 0.01) : 0.01;

  const bool thermal = r.rho_source.name == "thermal" || r.sigma_source.name == "thermal";
  if (thermal && m.n != 3 && m.n != 7) {
    root.fail("n", "thermal reference states are defined for n = 3 and n = 7 only");
  }
  if (thermal && m.boundary != Boundary::periodic) {
    root.fail("boundary", "thermal reference states use the periodic chain");
  }
  if (r.sigma_source.name == "sigma_prime" && m.n != 7) {
    c.fail("sigma", "sigma_prime is defined for n = 7 only");
  }

  if (r.rho_source.name == "thermal") {
    r.rho = reference_protocol(m.n, r.temperature, m.J).rho();
  } else if (r.rho_source.name == "w_state") {
    r.rho = build_w_state(m.n);
  } else {
    r.rho = load_density(r.rho_source.file);
  }
  if (r.sigma_source.name == "thermal") {
    r.sigma = reference_protocol(m.n, r.temperature, m.J).sigma();
  } else if (r.sigma_source.name == "css") {
    r.sigma = build_css(m.n);
  } else if (r.sigma_source.name == "sigma_prime") {
    r.sigma = build_sigma_prime_7();
  } else {
    r.sigma = load_density(r.sigma_source.file);
  }
  for (const auto *s : {&r.rho, &r.sigma}) {
    if (register_of(*s).size() != m.n) {
      root.fail("reference", "reference state does not act on n = " + std::to_string(m.n) + " qubits");
    }
  }
  return r;
}

json references_json(const References &r) {
  return {{"rho", r.rho_source.to_json()},
          {"sigma", r.sigma_source.to_json()},
          {"temperature", r.temperature}};
}

// ---------------------------------------------------------------------------
// helpers shared by verify and sample

Matrix haar_unitary(Eigen::Index d, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Matrix z(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

struct ReferenceSetup {
  Model model;
  double temperature = 0.01;
  ReferenceProtocol protocol;
};

ReferenceSetup parse_reference_setup(const ConfigNode &c) {
  ReferenceSetup s;
  s.model = parse_model(c);
  if (s.model.n != 3 && s.model.n != 7) c.fail("n", "the driving protocol is defined for n = 3 and n = 7 only");
  if (s.model.boundary != Boundary::periodic) c.fail("boundary", "the driving protocol uses the periodic chain");
  s.temperature = parse_temperature(c, "temperature", 0.01);
  s.protocol = reference_protocol(s.model.n, s.temperature, s.model.J);
  return s;
}

}  // namespace

// ===========================================================================

int cmd_witness(const GlobalOptions &g, std::ostream &log) {
  const auto c = ConfigNode::load(g.config);
  c.allow_only({"n", "J", "boundary", "reference", "rho_star", "protocol", "strictness_epsilon", "route"});
  const Model m = parse_model(c);
  const References refs = parse_references(c, m);
  WitnessOptions opts;
  opts.route = resolve_route(g, c);
  opts.protocol = parse_protocol(c);
  opts.strictness_epsilon = parse_epsilon(c);

  const auto star_node = c.child("rho_star");
  json star_json;
  std::optional<WitnessState> star;
  std::map<std::string, double> meta;
  if (star_node.has("file")) {
    star_node.allow_only({"file"});
    const auto file = star_node.path("file");
    star = load_density(file);
    star_json = {{"file", file.string()}};
  } else {
    star_node.allow_only({"B", "Jz", "T"});
    const double b = star_node.number("B");
    const double jz = star_node.number("Jz");
    const double t = parse_temperature(star_node, "T", 1.0);
    star = ThermalSpec(build_xxz({m.n, m.J, jz, b, m.boundary}), 1.0 / t);
    star_json = {{"B", b}, {"Jz", jz}, {"T", t}};
    meta = {{"B", b}, {"Jz", jz}, {"T", t}, {"J", m.J}, {"n", m.n}};
  }
  if (register_of(*star).size() != m.n) star_node.fail_here("rho_star does not act on n qubits");

  WitnessReport report = witness_evaluate(refs.rho, refs.sigma, *star, opts);
  report.metadata = meta;

  json config;
  put_model(config, m);
  config["reference"] = references_json(refs);
  config["rho_star"] = star_json;
  config["protocol"] = protocol_json(opts.protocol);
  config["strictness_epsilon"] = opts.strictness_epsilon;
  config["route"] = std::string(to_string(opts.route));

  json out = {{"s_left", number_json(report.s_left)},
              {"s_right", number_json(report.s_right)},
              {"margin", number_json(report.margin)},
              {"detected", report.detected},
              {"route", std::string(to_string(report.route))},
              {"metadata", report.metadata},
              {"config", config}};
  write_json(prepare_out(g) / "witness.json", out);
  log << "s_left=" << g17(report.s_left) << " s_right=" << g17(report.s_right)
      << " margin=" << g17(report.margin) << " detected=" << (report.detected ? "true" : "false") << "\n";
  return report.detected ? kOk : kNotDetected;
}

// ---------------------------------------------------------------------------

namespace {

Axis parse_axis(const ConfigNode &grid, const std::string &key, Axis fallback) {
  if (!grid.has(key)) return fallback;
  const auto a = grid.child(key);
  a.allow_only({"min", "max", "step"});
  Axis axis{a.number_or("min", fallback.min), a.number_or("max", fallback.max),
            a.number_or("step", fallback.step)};
  try {
    axis.validate(key.c_str());
  } catch (const InvalidArgument &e) {
    a.fail_here(e.what());
  }
  return axis;
}

json axis_json(const Axis &a) {
  return {{"min", a.min}, {"max", a.max}, {"step", a.step}};
}

}  // namespace

int cmd_sweep(const GlobalOptions &g, std::ostream &log) {
  const auto c = ConfigNode::load(g.config);
  c.allow_only({"n", "J", "boundary", "reference", "grid", "protocol", "strictness_epsilon", "route"});
  const Model m = parse_model(c);
  const References refs = parse_references(c, m);
  WitnessOptions opts;
  opts.route = resolve_route(g, c);
  opts.protocol = parse_protocol(c);
  opts.strictness_epsilon = parse_epsilon(c);

  // finer default grid for n = 3, coarser for larger chains
  const double step = m.n <= 3 ? 0.02 : 0.05;
  SweepGrid grid;
  grid.n = m.n;
  grid.J = m.J;
  grid.boundary = m.boundary;
  grid.B = {0.0, 1.2, step};
  grid.Jz = {0.0, 1.0, step};
  grid.T = {step, 2.0, step};
  if (c.has("grid")) {
    const auto gn = c.child("grid");
    gn.allow_only({"B", "Jz", "T"});
    grid.B = parse_axis(gn, "B", grid.B);
    grid.Jz = parse_axis(gn, "Jz", grid.Jz);
    grid.T = parse_axis(gn, "T", grid.T);
    if (!(grid.T.min > 0.0)) gn.child("T").fail("min", "temperatures must be positive");
  }

  const SweepResult result = sweep_detection(grid, {refs.rho, refs.sigma}, opts, workers_of(g));

  std::string csv = "B,Jz,T,s_left,s_right,margin,detected\n";
  std::size_t detected = 0;
  for (const auto &p : result.points) {
    detected += p.report.detected;
    csv += g17(p.B) + "," + g17(p.Jz) + "," + g17(p.T) + "," + g17(p.report.s_left) + "," +
           g17(p.report.s_right) + "," + g17(p.report.margin) + "," + (p.report.detected ? "1" : "0") + "\n";
  }

  json config;
  put_model(config, m);
  config["reference"] = references_json(refs);
  config["grid"] = {{"B", axis_json(grid.B)}, {"Jz", axis_json(grid.Jz)}, {"T", axis_json(grid.T)}};
  config["protocol"] = protocol_json(opts.protocol);
  config["strictness_epsilon"] = opts.strictness_epsilon;
  config["route"] = std::string(to_string(opts.route));

  auto axis_meta = [](const Axis &a) {
    auto j = axis_json(a);
    j["count"] = a.count();
    return j;
  };
  json meta = {{"csv", "sweep.csv"},
               {"columns", {"B", "Jz", "T", "s_left", "s_right", "margin", "detected"}},
               {"order", "B outermost, then Jz, then T"},
               {"grid",
                {{"n", m.n},
                 {"J", m.J},
                 {"boundary", std::string(to_string(m.boundary))},
                 {"B", axis_meta(grid.B)},
                 {"Jz", axis_meta(grid.Jz)},
                 {"T", axis_meta(grid.T)},
                 {"points", result.points.size()}}},
               {"detected_points", detected},
               {"checksums",
                {{"rho", fnv1a64(as_density(refs.rho).matrix())},
                 {"sigma_ref", fnv1a64(as_density(refs.sigma).matrix())}}},
               {"config", config}};

  const fs::path out = prepare_out(g);
  write_text(out / "sweep.csv", csv);
  write_json(out / "sweep.json", meta);
  log << "points=" << result.points.size() << " detected=" << detected << "\n";
  return detected > 0 ? kOk : kNotDetected;
}

// ---------------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool skipped = false;
  std::string note;

  bool pass() const { return skipped || deviation <= tolerance; }
};

double rel_dev(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

int cmd_verify(const GlobalOptions &g, std::ostream &log) {
  const auto c = ConfigNode::load(g.config);
  c.allow_only({"n", "J", "boundary", "temperature", "beta_f", "protocol", "random_unitaries",
                "unitary_file", "seed"});
  const ReferenceSetup setup = parse_reference_setup(c);
  const WorkProtocol protocol = parse_protocol(c);
  const std::uint64_t seed = resolve_seed(g, c);
  const double beta = setup.protocol.beta;
  const double beta_f = c.number_or("beta_f", beta / 2.0);
  if (!(beta_f > 0.0)) c.fail("beta_f", "must be positive");
  const auto random_unitaries = c.integer_or("random_unitaries", 20);
  if (random_unitaries < 0 || random_unitaries > 10000) c.fail("random_unitaries", "must lie in 0..10000");

  const ThermalSpec initial = setup.protocol.sigma();
  const ThermalSpec final = setup.protocol.rho();
  const auto &h_i = initial.hamiltonian();
  const auto &h_f = final.hamiltonian();
  const OperatorPath path(h_i, h_f, protocol.t_f, protocol.steps, protocol.interpolation);

  std::optional<fs::path> unitary_file;
  bool exact_u = false;
  std::optional<UnitaryOperator> u;
  if (c.has("unitary_file")) {
    unitary_file = c.path("unitary_file");
    u = io::unitary_from_json(io::read_json_file(*unitary_file));
    require_same_register(u->reg(), h_i.reg(), "unitary_file");
  } else {
    u = protocol_unitary(h_i, h_f, protocol);
    exact_u = protocol.method == EvolutionMethod::exact ||
              (protocol.method == EvolutionMethod::automatic &&
               path.commutator_norm() <= kCommutationTolerance);
  }

  std::vector<Check> checks;
  checks.push_back({"unitarity", u->unitarity_error(), 1e-10, false, {}});

  const double z_ratio = std::exp(final.log_partition() - initial.log_partition());
  checks.push_back({"jarzynski", rel_dev(jarzynski_average(beta, h_i, h_f, *u), z_ratio), 1e-9, false, {}});

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (long long k = 0; k < random_unitaries; ++k) {
    const UnitaryOperator r(h_i.reg(), haar_unitary(h_i.reg().dim(), rng));
    worst = std::max(worst, rel_dev(jarzynski_average(beta, h_i, h_f, r), z_ratio));
  }
  checks.push_back({"jarzynski_random_unitaries", worst, 1e-9, random_unitaries == 0,
                    std::to_string(random_unitaries) + " Haar unitaries"});

  const ThermalSpec final_cross(h_f, final.spectrum(), beta_f);
  const double z_cross = std::exp(final_cross.log_partition() - initial.log_partition());
  checks.push_back({"tasaki", rel_dev(tasaki_average(beta, beta_f, h_i, h_f, *u), z_cross), 1e-9, false, {}});

  const double direct = relative_entropy(final.state(), initial);
  const double via = relative_entropy_via_work(initial, final, *u);
  checks.push_back({"routes", std::abs(direct - via), exact_u ? 1e-8 : 1e-6, false,
                    exact_u ? "exact evolution" : "Trotter or supplied unitary"});

  Check trotter{"exact_vs_trotter", 0.0, 0.0, false, {}};
  if (path.commutator_norm() <= kCommutationTolerance) {
    const Matrix d = exact_evolution(path).matrix() - trotter_evolution(path, protocol.sample_point).matrix();
    trotter.deviation = operator_norm(d);
    if (protocol.sample_point == SamplePoint::midpoint || protocol.interpolation != Interpolation::linear) {
      trotter.tolerance = 1e-4;
    } else {
      // left endpoints lag the linear ramp by dt/2 (H_f - H_i)
      trotter.tolerance = 0.5 * path.dt() * operator_norm(h_f.matrix() - h_i.matrix()) * (1 + 1e-6) + 1e-12;
      trotter.note = "first-order bound dt/2 |H_f - H_i|";
    }
  } else {
    trotter.skipped = true;
    trotter.note = "path does not commute; no exact reference";
  }
  checks.push_back(trotter);

  json config;
  put_model(config, setup.model);
  config["temperature"] = setup.temperature;
  config["beta_f"] = beta_f;
  config["protocol"] = protocol_json(protocol);
  config["random_unitaries"] = random_unitaries;
  config["seed"] = seed;
  if (unitary_file) config["unitary_file"] = unitary_file->string();

  json list = json::array();
  const Check *failed = nullptr;
  for (const auto &k : checks) {
    json e = {{"name", k.name}, {"deviation", k.deviation}, {"tolerance", k.tolerance},
              {"pass", k.pass()}, {"skipped", k.skipped}};
    if (!k.note.empty()) e["note"] = k.note;
    list.push_back(e);
    if (!k.pass() && failed == nullptr) failed = &k;
    log << (k.skipped ? "skip " : k.pass() ? "ok   " : "FAIL ") << k.name << " deviation=" << g17(k.deviation)
        << " tolerance=" << g17(k.tolerance) << "\n";
  }
  write_json(prepare_out(g) / "verify.json",
             {{"checks", list}, {"passed", failed == nullptr}, {"config", config}});
  if (failed != nullptr) {
    throw NumericalError(failed->name, "identity check failed: " + failed->name + " (deviation " +
                                           g17(failed->deviation) + " > " + g17(failed->tolerance) + ")");
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_sample(const GlobalOptions &g, std::ostream &log) {
  const auto c = ConfigNode::load(g.config);
  c.allow_only({"n", "J", "boundary", "temperature", "count", "protocol", "keep_trajectories", "seed"});
  const ReferenceSetup setup = parse_reference_setup(c);
  const WorkProtocol protocol = parse_protocol(c);
  const std::uint64_t seed = resolve_seed(g, c);
  const auto count = c.integer_or("count", 100000);
  if (count < 1) c.fail("count", "must be at least 1");
  const bool keep = c.boolean_or("keep_trajectories", true);

  const ThermalSpec initial = setup.protocol.sigma();
  const ThermalSpec final = setup.protocol.rho();
  const auto u = protocol_unitary(initial.hamiltonian(), final.hamiltonian(), protocol);
  const auto result = sample_tpm(initial, final, u, static_cast<std::uint64_t>(count), seed, workers_of(g), keep);
  const auto dist = work_distribution(initial, final, u);

  const fs::path out = prepare_out(g);
  if (keep) {
    std::string csv = "index,n_index,m_index,E_i,E_f,work\n";
    for (std::size_t k = 0; k < result.samples.size(); ++k) {
      const auto &s = result.samples[k];
      csv += std::to_string(k) + "," + std::to_string(s.n_index) + "," + std::to_string(s.m_index) + "," +
             g17(s.E_i) + "," + g17(s.E_f) + "," + g17(s.work) + "\n";
    }
    write_text(out / "trajectories.csv", csv);
  }
  std::string wd = "n_index,m_index,E_i,E_f,work,probability\n";
  for (const auto &o : dist.outcomes) {
    wd += std::to_string(o.n_index) + "," + std::to_string(o.m_index) + "," + g17(o.E_i) + "," + g17(o.E_f) +
          "," + g17(o.work) + "," + g17(o.probability) + "\n";
  }
  write_text(out / "work_distribution.csv", wd);

  json config;
  put_model(config, setup.model);
  config["temperature"] = setup.temperature;
  config["count"] = count;
  config["protocol"] = protocol_json(protocol);
  config["keep_trajectories"] = keep;
  config["seed"] = seed;
  const auto &s = result.summary;
  write_json(out / "summary.json", {{"count", s.count},
                                    {"mean", s.mean},
                                    {"stderr", s.std_error},
                                    {"exact", s.exact},
                                    {"z_score", s.z_score},
                                    {"mean_work", dist.mean_work()},
                                    {"seed", seed},
                                    {"config", config}});
  log << "mean=" << g17(s.mean) << " stderr=" << g17(s.std_error) << " exact=" << g17(s.exact)
      << " z=" << g17(s.z_score) << "\n";
  return kOk;
}

}  // namespace entwit::cli
