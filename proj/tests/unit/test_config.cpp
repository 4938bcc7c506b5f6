/*
 * Copyright 2026 The gqpe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gqpe/config.hpp"
#include "gqpe/grid.hpp"
#include "gqpe/random.hpp"
#include "gqpe/run.hpp"

using namespace gqpe;
using namespace gqpe::cli;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return ErrorCode::kInternal;
}

const char* kMinimal = R"({
  "mode": "oracle",
  "system": {"hamiltonian": [[0.5, 0.1], [0.1, -0.5]]},
  "operators": [{"label": "mu", "matrix": [[0, 1], [1, 0]]}],
  "dipole": "mu"
})";

const char* kCompare = R"({
  "mode": "compare",
  "system": {"hamiltonian": [[1.0, 0.3, 0.0], [0.3, 0.0, [0.1, 0.2]], [0.0, [0.1, -0.2], -0.8]]},
  "operators": [
    {"label": "A", "matrix": [[0, 1, 0], [1, 0, 1], [0, 1, 0]]},
    {"label": "B", "matrix": [[0.5, 0, 0.2], [0, -0.5, 0], [0.2, 0, 0.1]], "norm": 2.0}
  ],
  "state": {"mixed": [0.6, 0.3, 0.1]},
  "chain": ["A", "B", "A"],
  "lineshapes": [{"kind": "lorentzian", "eta": 0.2}, {"kind": "kaiser", "shape": 3}],
  "N": 8,
  "seed": 5
})";

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("gqpe_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("grid layout and csv") {
  ResponseGrid g(2, 4, 0.5);
  const std::array<std::size_t, 2> idx{1, 3};
  CHECK(g.flatten(idx) == 7);
  CHECK(g.unflatten(7) == std::vector<std::size_t>{1, 3});
  g[7] = Complex(-0.0, 2.0);
  CHECK(g.argmax_abs() == 7);
  CHECK(g.at(idx) == Complex(0.0, 2.0));

  std::ostringstream os;
  write_grid_csv(g, FileStamp{0xabcULL, 9}, os);
  const std::string csv = os.str();
  CHECK(csv.find("index_1,index_2,omega_1,omega_2,re,im") != std::string::npos);
  CHECK(csv.find("-0,") == std::string::npos);
  CHECK(hex64(0xabc) == "0000000000000abc");

  ResponseGrid other(1, 4);
  CHECK(code_of([&] { (void)max_abs_diff(g, other); }) == ErrorCode::kDimensionMismatch);
  CHECK(code_of([] { (void)checked_power(16, 10, 1u << 22); }) == ErrorCode::kResourceLimit);
  CHECK(checked_power(4, 3, 64) == 64);

  std::ostringstream hs;
  write_histogram_csv(1, 2, {3, 4}, 1, FileStamp{}, hs);
  CHECK(hs.str().find("failure,1") != std::string::npos);
}

TEST_CASE("rng is reproducible") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  Rng r(3);
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    CHECK_FALSE((u < 0.0 || u >= 1.0));
    mean += u / 100000.0;
  }
  CHECK(std::abs(mean - 0.5) < 4 * std::sqrt(1.0 / 12 / 100000));
  const std::array<double, 3> cdf{0.0, 0.0, 1.0};
  for (int i = 0; i < 50; ++i) CHECK(r.from_cdf(cdf) == 2);
}

TEST_CASE("minimal config fills defaults") {
  const auto c = parse_config(kMinimal);
  CHECK(c.mode == Mode::kOracle);
  CHECK(c.chain == std::vector<std::string>{"mu", "mu"});
  CHECK(c.order == 1);
  CHECK(c.n == kDefaultN);
  CHECK(c.seed == kDefaultSeed);
  CHECK(c.lineshapes.size() == 1);
  CHECK_FALSE(c.tau.has_value());
}

TEST_CASE("resolved json round-trips") {
  for (const char* text : {kMinimal, kCompare}) {
    const auto c = parse_config(text);
    const auto j = resolved_json(c);
    const auto c2 = parse_config(j);
    CHECK(resolved_json(c2) == j);
    CHECK(config_hash(c2) == config_hash(c));
  }
  auto c = parse_config(kCompare);
  const auto h = config_hash(c);
  c.output = "elsewhere";
  CHECK(config_hash(c) == h);
  c.seed = 6;
  CHECK(config_hash(c) != h);
}

TEST_CASE("config errors name the problem") {
  std::string msg;
  CHECK(code_of([] { parse_config("{\n  \"mode\": \"oracle\",\n  oops\n}"); }, &msg) == ErrorCode::kParseError);
  CHECK(msg.find("line 3") != std::string::npos);

  CHECK(code_of([] { parse_config(R"({"mode": "oracle", "bogus": 1})"); }, &msg) == ErrorCode::kParseError);
  CHECK(msg.find("bogus") != std::string::npos);

  const std::string raman = R"({
    "mode": "raman",
    "system": {"hamiltonian": [[0.5, 0], [0, -0.5]]},
    "operators": [{"label": "mu", "matrix": [[0, 1], [1, 0]]}],
    "dipole": "mu",
    "lineshapes": [{"kind": "rectangular"}]
  })";
  CHECK(code_of([&] { parse_config(raman); }, &msg) == ErrorCode::kValidationError);
  CHECK(msg.find("lineshapes[1]") != std::string::npos);

  const std::string bad_n = std::string(kMinimal).replace(1, 0, "\"N\": 12,");
  CHECK(code_of([&] { parse_config(bad_n); }, &msg) == ErrorCode::kValidationError);
  CHECK(msg.find("N") != std::string::npos);

  const std::string bad_weights = std::string(kCompare).replace(std::string(kCompare).find("0.6"), 3, "0.7");
  CHECK(code_of([&] { parse_config(bad_weights); }) == ErrorCode::kValidationError);

  const std::string bad_label = std::string(kCompare).replace(std::string(kCompare).find("\"B\", \"A\"]"), 3, "\"C\"");
  CHECK(code_of([&] { parse_config(bad_label); }) == ErrorCode::kValidationError);

  const std::string kk = R"({"mode": "kk-check", "system": {"hamiltonian": [[1]]},
    "operators": [{"label": "mu", "matrix": [[1]]}], "dipole": "mu", "N": 16, "kk_eta": 0.3})";
  CHECK(code_of([&] { parse_config(kk); }, &msg) == ErrorCode::kValidationError);
  CHECK(msg.find("kk_eta") != std::string::npos);

  CHECK(code_of([] { load_config("/nonexistent/config.json"); }) == ErrorCode::kIoError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::kValidationError) == kExitValidation);
  CHECK(exit_code_for(ErrorCode::kParseError) == kExitValidation);
  CHECK(exit_code_for(ErrorCode::kResourceLimit) == kExitValidation);
  CHECK(exit_code_for(ErrorCode::kToleranceExceeded) == kExitTolerance);
  CHECK(exit_code_for(ErrorCode::kIoError) == kExitIo);
}

TEST_CASE("runs are deterministic and byte identical") {
  auto c = parse_config(kCompare);
  const auto d1 = scratch("run1");
  const auto d2 = scratch("run2");
  c.output = d1.string();
  const auto r1 = run(c);
  c.output = d2.string();
  const auto r2 = run(c);
  CHECK(r1.exit_code == kExitOk);
  REQUIRE(r1.max_deviation.has_value());
  CHECK(*r1.max_deviation <= kDefaultTolerance);
  REQUIRE(r1.files.size() == r2.files.size());
  for (const auto& f : r1.files) {
    CHECK(fs::exists(d1 / f.name));
    CHECK(slurp(d1 / f.name) == slurp(d2 / f.name));
  }
  for (const auto& e : fs::directory_iterator(d1)) CHECK(e.path().extension() != ".tmp");

  c.tolerance = 1e-30;
  c.output = scratch("run3").string();
  const auto r3 = run(c);
  CHECK(r3.exit_code == kExitTolerance);
  fs::remove_all(d1);
  fs::remove_all(d2);
  fs::remove_all(c.output);
}

TEST_CASE("guardrail leaves no partial output") {
  auto c = parse_config(kCompare);
  c.n = 2048;
  const auto d = scratch("guard");
  c.output = d.string();
  CHECK(code_of([&] { run(c); }) == ErrorCode::kResourceLimit);
  CHECK_FALSE(fs::exists(d));
}

TEST_CASE("every mode produces its products") {
  // Levels on the 2 pi / 16 grid so the Raman relabelling stays on grid.
  const std::string base = R"({
    "system": {"hamiltonian": [[-1.9634954084936207, 0, 0, 0], [0, -0.7853981633974483, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1.1780972450961724]], "scaling": 1},
    "operators": [{"label": "mu", "matrix": [[0, 1, 0, 0], [1, 0, 0.5, 0], [0, 0.5, 0, 0.25], [0, 0, 0.25, 0]]}],
    "dipole": "mu",
    "N": 16,
    "shots": 200,
    "seed": 3)";
  struct Case {
    std::string mode, extra, product;
  };
  const std::vector<Case> cases = {
      {"oracle", "", "oracle_response.csv"},
      {"gqpe", "", "histogram.csv"},
      {"complete-square", "", "probability.json"},
      {"raman",
       R"(, "lineshapes": [{"kind": "rectangular"}, {"kind": "lorentzian", "eta": 0.3}], "raman": {"energy_shift": false})",
       "raman_chi3.csv"},
      {"single-ancilla", "", "single_ancilla_estimate.csv"},
      {"kk-check", R"(, "kk_eta": 0.5)", "kk.json"},
  };
  for (const auto& [mode, extra, product] : cases) {
    CAPTURE(mode);
    ExperimentConfig c;
    try {
      c = parse_config(base + ", \"mode\": \"" + mode + "\"" + extra + "}");
    } catch (const Error& e) {
      FAIL(std::string(e.what()));
    }
    const auto r = compute(c);
    bool found = false;
    for (const auto& f : r.files) found |= f.name == product;
    CHECK(found);
    CHECK(r.summary.find(mode_name(c.mode)) != std::string::npos);
  }
}

TEST_CASE("plot renders svg and pgm") {
  auto c = parse_config(kCompare);
  const auto d = scratch("plot");
  c.output = d.string();
  run(c);
  plot((d / "oracle_response.csv").string(), (d / "heat.pgm").string());
  CHECK(slurp(d / "heat.pgm").rfind("P5", 0) == 0);

  auto m = parse_config(kMinimal);
  m.output = d.string();
  run(m);
  plot((d / "oracle_response.csv").string(), (d / "line.svg").string());
  CHECK(slurp(d / "line.svg").find("<svg") != std::string::npos);
  CHECK(code_of([&] { plot((d / "missing.csv").string(), (d / "x.svg").string()); }) == ErrorCode::kIoError);
  fs::remove_all(d);
}
