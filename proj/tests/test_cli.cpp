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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "entwit");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = entwit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("entwit_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path &file, const std::string &text) {
  std::ofstream(file) << text;
  return file;
}

std::string slurp(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path &file) { return json::parse(slurp(file)); }

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("witness exit codes") {
  const auto dir = scratch("witness");
  const auto cold = write(dir / "cold.json", R"({"n": 3, "rho_star": {"B": 0.5, "Jz": 0, "T": 0.01}})");
  auto r = cli({"witness", "--config", cold.string(), "--out", (dir / "a").string()});
  CHECK(r.code == 0);
  const auto report = read_json(dir / "a" / "witness.json");
  CHECK(report["detected"] == true);
  CHECK(report["s_left"].get<double>() == doctest::Approx(std::log(9.0 / 4.0)).epsilon(1e-6));
  CHECK(report["route"] == "direct");
  CHECK(report["metadata"]["B"] == 0.5);

  const auto hot = write(dir / "hot.json", R"({"n": 3, "rho_star": {"B": 0.5, "Jz": 0, "T": 1e6}})");
  r = cli({"witness", "--config", hot.string(), "--out", (dir / "b").string()});
  CHECK(r.code == 3);
  CHECK(read_json(dir / "b" / "witness.json")["detected"] == false);

  r = cli({"witness", "--config", cold.string(), "--out", (dir / "c").string(), "--route", "via-work"});
  CHECK(r.code == 0);
  CHECK(read_json(dir / "c" / "witness.json")["margin"].get<double>() ==
        doctest::Approx(report["margin"].get<double>()).epsilon(1e-6));
}

TEST_CASE("witness with exact reference states and a file rho*") {
  const auto dir = scratch("witness_file");
  // completely mixed 3-qubit state
  json mixed = {{"n", 3}, {"re", json::array()}};
  for (int i = 0; i < 8; ++i) {
    json row = json::array();
    for (int j = 0; j < 8; ++j) row.push_back(i == j ? 0.125 : 0.0);
    mixed["re"].push_back(row);
  }
  write(dir / "mixed.json", mixed.dump());
  const auto cfg = write(dir / "cfg.json", R"({
  "n": 3,
  "reference": {"rho": "w_state", "sigma": "css"},
  "rho_star": {"file": "mixed.json"}
})");
  const auto r = cli({"witness", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == 3);
  const auto report = read_json(dir / "witness.json");
  CHECK(report["s_right"].get<double>() == doctest::Approx(std::log(8.0)));
  CHECK(report["s_left"].get<double>() == doctest::Approx(std::log(9.0 / 4.0)));

  // via-work needs Gibbs states
  CHECK(cli({"witness", "--config", cfg.string(), "--out", dir.string(), "--route", "via-work"}).code == 1);
}

TEST_CASE("config errors are line-anchored") {
  const auto dir = scratch("config");
  const auto missing = write(dir / "missing.json", "{\n  \"J\": 1,\n  \"rho_star\": {\"B\": 0.5, \"Jz\": 0, \"T\": 0.01}\n}\n");
  auto r = cli({"witness", "--config", missing.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing.json:1:") != std::string::npos);
  CHECK(r.err.find("missing required key \"n\"") != std::string::npos);

  const auto unknown = write(dir / "unknown.json", "{\n  \"n\": 3,\n  \"rho_star\": {\"B\": 0.5, \"Jz\": 0, \"T\": 0.01},\n  \"colour\": \"red\"\n}\n");
  r = cli({"witness", "--config", unknown.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("unknown.json:4:") != std::string::npos);
  CHECK(r.err.find("colour") != std::string::npos);

  const auto nested = write(dir / "nested.json", "{\n  \"n\": 3,\n  \"rho_star\": {\n    \"B\": 0.5,\n    \"T\": 0.01\n  }\n}\n");
  r = cli({"witness", "--config", nested.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("nested.json:3:") != std::string::npos);
  CHECK(r.err.find("\"Jz\"") != std::string::npos);

  const auto typed = write(dir / "typed.json", "{\n  \"n\": \"three\"\n}\n");
  r = cli({"sample", "--config", typed.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("typed.json:2:") != std::string::npos);

  const auto broken = write(dir / "broken.json", "{\n  \"n\": 3,\n  \"count\": \n}\n");
  r = cli({"sample", "--config", broken.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("broken.json:4:") != std::string::npos);

  const auto seven = write(dir / "n5.json", R"({"n": 5})");
  CHECK(cli({"verify", "--config", seven.string(), "--out", dir.string()}).code == 1);
}

TEST_CASE("command-line errors") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"witness", "--config", "/nonexistent/entwit.json"}).code == 1);
  const auto dir = scratch("flags");
  const auto cfg = write(dir / "cfg.json", R"({"n": 3})");
  CHECK(cli({"sample", "--config", cfg.string(), "--workers", "0"}).code == 1);
  CHECK(cli({"sweep", "--config", cfg.string(), "--route", "sideways"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("sweep output") {
  const auto dir = scratch("sweep");
  const auto cfg = write(dir / "cfg.json", R"({
  "n": 3,
  "grid": {"B": {"min": 0.4, "max": 0.6, "step": 0.1},
           "Jz": {"min": 0.0, "max": 0.1, "step": 0.1},
           "T": {"min": 0.01, "max": 0.41, "step": 0.2}}
})");
  auto r = cli({"sweep", "--config", cfg.string(), "--out", (dir / "one").string(), "--workers", "1"});
  CHECK(r.code == 0);
  const auto csv = lines(slurp(dir / "one" / "sweep.csv"));
  REQUIRE(csv.size() == 1 + 3 * 2 * 3);
  CHECK(csv[0] == "B,Jz,T,s_left,s_right,margin,detected");
  // B = 0.5, Jz = 0, T = 0.01 is row 1 + 1*6
  CHECK(csv[7].rfind("0.5,0,0.01,", 0) == 0);
  CHECK(csv[7].back() == '1');
  // 17 significant digits
  CHECK(csv[1].find("0.81093021621629258") != std::string::npos);

  const auto meta = read_json(dir / "one" / "sweep.json");
  CHECK(meta["grid"]["points"] == 18);
  CHECK(meta["grid"]["T"]["count"] == 3);
  CHECK(meta["checksums"]["rho"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(meta["config"]["grid"]["B"]["step"] == 0.1);

  r = cli({"sweep", "--config", cfg.string(), "--out", (dir / "three").string(), "--workers", "3"});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "one" / "sweep.csv") == slurp(dir / "three" / "sweep.csv"));
  CHECK(slurp(dir / "one" / "sweep.json") == slurp(dir / "three" / "sweep.json"));

  // round trip through the embedded config
  write(dir / "embedded.json", meta["config"].dump());
  r = cli({"sweep", "--config", (dir / "embedded.json").string(), "--out", (dir / "again").string()});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "one" / "sweep.csv") == slurp(dir / "again" / "sweep.csv"));
  CHECK(slurp(dir / "one" / "sweep.json") == slurp(dir / "again" / "sweep.json"));
}

TEST_CASE("sweep rejects empty axes and reports an empty region") {
  const auto dir = scratch("sweep_bad");
  const auto zero = write(dir / "zero.json", R"({"n": 3, "grid": {"B": {"min": 0, "max": 1, "step": 0}}})");
  CHECK(cli({"sweep", "--config", zero.string(), "--out", dir.string()}).code == 1);
  const auto empty = write(dir / "empty.json", R"({"n": 3, "grid": {"B": {"min": 1, "max": 0, "step": 0.1}}})");
  CHECK(cli({"sweep", "--config", empty.string(), "--out", dir.string()}).code == 1);
  const auto t0 = write(dir / "t0.json", R"({"n": 3, "grid": {"T": {"min": 0, "max": 1, "step": 0.5}}})");
  CHECK(cli({"sweep", "--config", t0.string(), "--out", dir.string()}).code == 1);
  const auto hot = write(dir / "hot.json", R"({"n": 3, "grid": {"T": {"min": 1000, "max": 2000, "step": 1000}}})");
  CHECK(cli({"sweep", "--config", hot.string(), "--out", dir.string()}).code == 3);
}

TEST_CASE("n=3 default sweep detects at low temperature") {
  const auto dir = scratch("sweep_default");
  const auto cfg = write(dir / "cfg.json", R"({"n": 3})");
  CHECK(cli({"sweep", "--config", cfg.string(), "--out", dir.string()}).code == 0);
  const auto meta = read_json(dir / "sweep.json");
  CHECK(meta["grid"]["points"] == 61 * 51 * 100);
  CHECK(meta["detected_points"].get<int>() > 0);
  const auto csv = lines(slurp(dir / "sweep.csv"));
  // the lowest-temperature row at B = 0.5, Jz = 0: index (25 * 51) * 100
  CHECK(csv[1 + 25 * 51 * 100].rfind("0.5,0,0.02,", 0) == 0);
  CHECK(csv[1 + 25 * 51 * 100].back() == '1');
}

TEST_CASE("verify") {
  const auto dir = scratch("verify");
  const auto cfg = write(dir / "cfg.json", R"({"n": 3})");
  auto r = cli({"verify", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == 0);
  const auto report = read_json(dir / "verify.json");
  CHECK(report["passed"] == true);
  double worst = 0.0;
  for (const auto &c : report["checks"]) {
    if (c["name"] != "exact_vs_trotter" && c["name"] != "unitarity") worst = std::max(worst, c["deviation"].get<double>());
  }
  CHECK(worst <= 1e-8);

  json bad = {{"n", 3}, {"re", json::array()}};
  for (int i = 0; i < 8; ++i) {
    json row = json::array();
    for (int j = 0; j < 8; ++j) row.push_back(i == j ? 1.0 : (j == i + 1 ? 0.5 : 0.0));
    bad["re"].push_back(row);
  }
  write(dir / "bad_u.json", bad.dump());
  const auto inj = write(dir / "inj.json", R"({"n": 3, "unitary_file": "bad_u.json"})");
  r = cli({"verify", "--config", inj.string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("unitarity") != std::string::npos);
}

TEST_CASE("verify fails loudly on a broken identity") {
  // a left-endpoint product compared against a bound far below its error
  const auto dir = scratch("verify_fail");
  const auto cfg = write(dir / "cfg.json", R"({"n": 3, "protocol": {"steps": 1, "interpolation": "quench-at-start"}})");
  const auto r = cli({"verify", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("exact_vs_trotter") != std::string::npos);
  CHECK(read_json(dir / "verify.json")["passed"] == false);
}

TEST_CASE("sample outputs") {
  const auto dir = scratch("sample");
  const auto cfg = write(dir / "cfg.json", R"({"n": 3, "count": 20000})");
  auto r = cli({"sample", "--config", cfg.string(), "--out", (dir / "a").string(), "--seed", "11"});
  CHECK(r.code == 0);
  r = cli({"sample", "--config", cfg.string(), "--out", (dir / "b").string(), "--seed", "11", "--workers", "4"});
  CHECK(r.code == 0);
  for (const char *f : {"trajectories.csv", "summary.json", "work_distribution.csv"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  const auto traj = lines(slurp(dir / "a" / "trajectories.csv"));
  CHECK(traj.size() == 20001);
  CHECK(traj[0] == "index,n_index,m_index,E_i,E_f,work");
  const auto dist = lines(slurp(dir / "a" / "work_distribution.csv"));
  CHECK(dist.size() == 1 + 64);
  CHECK(dist[0] == "n_index,m_index,E_i,E_f,work,probability");
  const auto summary = read_json(dir / "a" / "summary.json");
  CHECK(summary["seed"] == 11);
  CHECK(std::abs(summary["z_score"].get<double>()) <= 3.0);
  CHECK(summary["config"]["seed"] == 11);

  const auto one = write(dir / "one.json", R"({"n": 3, "count": 1})");
  CHECK(cli({"sample", "--config", one.string(), "--out", (dir / "one").string()}).code == 0);
  CHECK(lines(slurp(dir / "one" / "trajectories.csv")).size() == 2);
}

TEST_CASE("sample z-scores over many seeds") {
  const auto dir = scratch("sample_seeds");
  const auto cfg = write(dir / "cfg.json", R"({"n": 3, "count": 1000, "keep_trajectories": false})");
  int within = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto r = cli({"sample", "--config", cfg.string(), "--out", dir.string(), "--seed", std::to_string(seed)});
    REQUIRE(r.code == 0);
    within += std::abs(read_json(dir / "summary.json")["z_score"].get<double>()) <= 3.0;
  }
  CHECK(within >= 99);
  CHECK_FALSE(fs::exists(dir / "trajectories.csv"));
}

}  // TEST_SUITE

TEST_SUITE("cli_slow") {

TEST_CASE("n=7 coarse sweep detects at low temperature") {
  const auto dir = scratch("sweep7");
  const auto cfg = write(dir / "cfg.json", R"({"n": 7})");
  CHECK(cli({"sweep", "--config", cfg.string(), "--out", dir.string()}).code == 0);
  const auto meta = read_json(dir / "sweep.json");
  CHECK(meta["grid"]["points"] == 25 * 21 * 40);
  CHECK(meta["detected_points"].get<int>() > 0);
}

TEST_CASE("n=7 verify with Trotter steps") {
  const auto dir = scratch("verify7");
  const auto cfg = write(dir / "cfg.json", R"({"n": 7, "protocol": {"method": "trotter", "steps": 1000}, "random_unitaries": 3})");
  CHECK(cli({"verify", "--config", cfg.string(), "--out", dir.string()}).code == 0);
  for (const auto &c : read_json(dir / "verify.json")["checks"]) {
    if (c["name"] == "routes") {
      CHECK(c["deviation"].get<double>() <= 1e-6);
    }
  }
}

}  // TEST_SUITE
