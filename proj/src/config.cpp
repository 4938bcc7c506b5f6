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

#include "gqpe/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace gqpe::cli {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  fail(ErrorCode::kParseError, "field '" + field + "': " + what);
}

[[noreturn]] void rule_error(const std::string& field, const std::string& what) {
  fail(ErrorCode::kValidationError, "field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  return j.get<double>();
}

std::uint64_t get_unsigned(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
    field_error(field, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& field) {
  if (!j.is_boolean()) field_error(field, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) field_error(field, "expected a string");
  return j.get<std::string>();
}

Complex get_entry(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  field_error(field, "expected a number or a [re, im] pair");
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) field_error(field + "[0]", "expected a non-empty row");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) field_error(rf, "rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = get_entry(row[static_cast<std::size_t>(c)], rf + "[" + std::to_string(c) + "]");
  }
  return m;
}

json entry_to_json(const Complex& z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

ComplexMatrix matrix_from_file(const std::string& path, const std::string& base_dir, const std::string& field) {
  std::filesystem::path p(path);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  std::ifstream in(p);
  if (!in) fail(ErrorCode::kIoError, "cannot open matrix file " + p.string() + " (" + field + ")");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json j = json::parse(text, nullptr, false, true);
  if (!j.is_discarded()) return matrix_from_json(j, field);
  // Plain whitespace-separated real rows.
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) field_error(field, "unreadable number in " + p.string());
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) field_error(field, "empty matrix file " + p.string());
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) field_error(field, "ragged rows in " + p.string());
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

ComplexMatrix read_matrix_source(const json& obj, const std::string& key, const std::string& base_dir,
                                 const std::string& field) {
  const bool inline_m = obj.contains(key);
  const bool file_m = obj.contains("file");
  if (inline_m == file_m) field_error(field, "give exactly one of '" + key + "' or 'file'");
  if (inline_m) return matrix_from_json(obj.at(key), field + "." + key);
  return matrix_from_file(get_string(obj.at("file"), field + ".file"), base_dir, field + ".file");
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) field_error(prefix + it.key(), "unknown key");
}

lineshape::Kind lineshape_from_json(const json& j, const std::string& field, std::size_t n) {
  if (!j.is_object()) field_error(field, "expected an object");
  if (!j.contains("kind")) field_error(field + ".kind", "missing");
  const std::string kind = get_string(j.at("kind"), field + ".kind");
  auto num = [&](const char* key, double fallback) {
    return j.contains(key) ? get_number(j.at(key), field + "." + key) : fallback;
  };
  if (kind == "rectangular") {
    reject_unknown(j, {"kind", "width"}, field + ".");
    return lineshape::Rectangular{num("width", 0.0)};
  }
  if (kind == "lorentzian") {
    reject_unknown(j, {"kind", "eta"}, field + ".");
    if (!j.contains("eta")) field_error(field + ".eta", "missing");
    return lineshape::Lorentzian{num("eta", 0.0)};
  }
  if (kind == "gaussian") {
    reject_unknown(j, {"kind", "sigma"}, field + ".");
    if (!j.contains("sigma")) field_error(field + ".sigma", "missing");
    return lineshape::Gaussian{num("sigma", 0.0)};
  }
  if (kind == "kaiser") {
    reject_unknown(j, {"kind", "shape", "length", "band"}, field + ".");
    if (j.contains("band") == j.contains("shape")) field_error(field, "kaiser needs exactly one of 'shape' or 'band'");
    lineshape::Kaiser k{0.0, num("length", 0.0)};
    k.shape = j.contains("band") ? lineshape::kaiser_for_band(num("band", 0.0), n).shape : num("shape", 0.0);
    return k;
  }
  if (kind == "causality") {
    reject_unknown(j, {"kind"}, field + ".");
    return lineshape::Causality{};
  }
  if (kind == "custom") {
    reject_unknown(j, {"kind", "coefficients"}, field + ".");
    if (!j.contains("coefficients") || !j.at("coefficients").is_array())
      field_error(field + ".coefficients", "expected an array");
    lineshape::Custom c;
    std::size_t i = 0;
    for (const auto& e : j.at("coefficients"))
      c.coefficients.push_back(get_entry(e, field + ".coefficients[" + std::to_string(i++) + "]"));
    return c;
  }
  field_error(field + ".kind", "unknown lineshape kind '" + kind + "'");
}

json lineshape_to_json(const lineshape::Kind& kind) {
  return std::visit(Overloaded{
                        [](const lineshape::Rectangular& r) {
                          return json{{"kind", "rectangular"}, {"width", r.width}};
                        },
                        [](const lineshape::Lorentzian& l) { return json{{"kind", "lorentzian"}, {"eta", l.eta}}; },
                        [](const lineshape::Gaussian& g) { return json{{"kind", "gaussian"}, {"sigma", g.sigma}}; },
                        [](const lineshape::Kaiser& k) {
                          return json{{"kind", "kaiser"}, {"shape", k.shape}, {"length", k.length}};
                        },
                        [](const lineshape::Causality&) { return json{{"kind", "causality"}}; },
                        [](const lineshape::Custom& c) {
                          json a = json::array();
                          for (const auto& z : c.coefficients) a.push_back(entry_to_json(z));
                          return json{{"kind", "custom"}, {"coefficients", a}};
                        },
                    },
                    kind);
}

bool uses_chain(Mode m) { return m != Mode::kRaman && m != Mode::kKkCheck; }

json to_json(const ExperimentConfig& c, bool with_output) {
  json j;
  j["mode"] = mode_name(c.mode);
  json sys;
  sys["hamiltonian"] = matrix_to_json(c.hamiltonian);
  if (c.tau) {
    sys["scaling"] = *c.tau;
  } else {
    sys["scaling"] = "auto";
  }
  j["system"] = sys;
  json ops = json::array();
  for (const auto& op : c.operators) {
    json o;
    o["label"] = op.label;
    o["matrix"] = matrix_to_json(op.matrix);
    if (op.norm == NormKind::kGiven) {
      o["norm"] = op.given;
    } else {
      o["norm"] = op.norm == NormKind::kPauli ? "pauli" : "spectral";
    }
    ops.push_back(std::move(o));
  }
  j["operators"] = ops;
  if (c.mixed.empty()) {
    j["state"] = json{{"pure", c.pure_index}};
  } else {
    j["state"] = json{{"mixed", c.mixed}};
  }
  j["chain"] = c.chain;
  j["dipole"] = c.dipole;
  json shapes = json::array();
  for (const auto& k : c.lineshapes) shapes.push_back(lineshape_to_json(k));
  j["lineshapes"] = shapes;
  j["N"] = c.n;
  j["D"] = c.order;
  j["epsilon"] = c.epsilon;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  j["raman"] = json{{"energy_shift", c.raman_energy_shift}, {"prepared_dipole", c.raman_prepared_dipole}};
  j["kk_eta"] = c.kk_eta;
  if (with_output) j["output"] = c.output;
  return j;
}

}  // namespace

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kOracle: return "oracle";
    case Mode::kGqpe: return "gqpe";
    case Mode::kCompleteSquare: return "complete-square";
    case Mode::kRaman: return "raman";
    case Mode::kSingleAncilla: return "single-ancilla";
    case Mode::kKkCheck: return "kk-check";
    case Mode::kCompare: return "compare";
  }
  return "unknown";
}

std::optional<Mode> mode_from_name(const std::string& name) {
  for (Mode m : {Mode::kOracle, Mode::kGqpe, Mode::kCompleteSquare, Mode::kRaman, Mode::kSingleAncilla,
                 Mode::kKkCheck, Mode::kCompare})
    if (name == mode_name(m)) return m;
  return std::nullopt;
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParseError, "line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::kParseError, "line 1: top level must be an object");
  reject_unknown(j,
                 {"mode", "system", "operators", "state", "chain", "dipole", "lineshapes", "N", "D", "epsilon",
                  "shots", "seed", "tolerance", "raman", "kk_eta", "output"},
                 "");

  ExperimentConfig c;
  if (j.contains("mode")) {
    const std::string m = get_string(j["mode"], "mode");
    auto mode = mode_from_name(m);
    if (!mode) field_error("mode", "unknown mode '" + m + "'");
    c.mode = *mode;
  }

  if (!j.contains("system")) rule_error("system", "missing");
  const json& sys = j["system"];
  if (!sys.is_object()) field_error("system", "expected an object");
  reject_unknown(sys, {"hamiltonian", "file", "scaling"}, "system.");
  c.hamiltonian = read_matrix_source(sys, "hamiltonian", base_dir, "system");
  if (sys.contains("scaling")) {
    const json& s = sys["scaling"];
    if (s.is_string()) {
      if (s.get<std::string>() != "auto") field_error("system.scaling", "expected \"auto\" or a number tau");
    } else {
      c.tau = get_number(s, "system.scaling");
    }
  }

  if (j.contains("operators")) {
    const json& ops = j["operators"];
    if (!ops.is_array()) field_error("operators", "expected an array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const std::string f = "operators[" + std::to_string(i) + "]";
      const json& o = ops[i];
      if (!o.is_object()) field_error(f, "expected an object");
      reject_unknown(o, {"label", "matrix", "file", "norm"}, f + ".");
      OperatorSpec op;
      if (!o.contains("label")) field_error(f + ".label", "missing");
      op.label = get_string(o["label"], f + ".label");
      op.matrix = read_matrix_source(o, "matrix", base_dir, f);
      if (o.contains("norm")) {
        const json& nrm = o["norm"];
        if (nrm.is_string()) {
          const std::string s = nrm.get<std::string>();
          if (s == "spectral") {
            op.norm = NormKind::kSpectral;
          } else if (s == "pauli") {
            op.norm = NormKind::kPauli;
          } else {
            field_error(f + ".norm", "expected \"spectral\", \"pauli\" or a number");
          }
        } else {
          op.norm = NormKind::kGiven;
          op.given = get_number(nrm, f + ".norm");
        }
      }
      c.operators.push_back(std::move(op));
    }
  }

  if (j.contains("state")) {
    const json& st = j["state"];
    if (!st.is_object() || st.size() != 1 || !(st.contains("pure") || st.contains("mixed")))
      field_error("state", "expected {\"pure\": index} or {\"mixed\": [weights]}");
    if (st.contains("pure")) {
      c.pure_index = static_cast<std::size_t>(get_unsigned(st["pure"], "state.pure"));
    } else {
      if (!st["mixed"].is_array()) field_error("state.mixed", "expected an array");
      for (std::size_t i = 0; i < st["mixed"].size(); ++i)
        c.mixed.push_back(get_number(st["mixed"][i], "state.mixed[" + std::to_string(i) + "]"));
    }
  }

  if (j.contains("dipole")) c.dipole = get_string(j["dipole"], "dipole");
  if (j.contains("chain")) {
    if (!j["chain"].is_array()) field_error("chain", "expected an array of operator labels");
    for (std::size_t i = 0; i < j["chain"].size(); ++i)
      c.chain.push_back(get_string(j["chain"][i], "chain[" + std::to_string(i) + "]"));
  }
  if (c.chain.empty() && !c.dipole.empty() && uses_chain(c.mode)) c.chain = {c.dipole, c.dipole};

  if (j.contains("N")) c.n = static_cast<std::size_t>(get_unsigned(j["N"], "N"));
  if (j.contains("epsilon")) c.epsilon = get_number(j["epsilon"], "epsilon");
  if (j.contains("shots")) c.shots = get_unsigned(j["shots"], "shots");
  if (j.contains("seed")) c.seed = get_unsigned(j["seed"], "seed");
  if (j.contains("tolerance")) c.tolerance = get_number(j["tolerance"], "tolerance");
  if (j.contains("kk_eta")) c.kk_eta = get_number(j["kk_eta"], "kk_eta");
  if (j.contains("output")) c.output = get_string(j["output"], "output");
  if (j.contains("raman")) {
    const json& r = j["raman"];
    if (!r.is_object()) field_error("raman", "expected an object");
    reject_unknown(r, {"energy_shift", "prepared_dipole"}, "raman.");
    if (r.contains("energy_shift")) c.raman_energy_shift = get_bool(r["energy_shift"], "raman.energy_shift");
    if (r.contains("prepared_dipole"))
      c.raman_prepared_dipole = get_bool(r["prepared_dipole"], "raman.prepared_dipole");
  }

  if (c.mode == Mode::kRaman) {
    c.order = 2;
  } else if (c.mode == Mode::kKkCheck) {
    c.order = 1;
  } else {
    c.order = static_cast<int>(c.chain.size()) - 1;
  }
  if (j.contains("D")) {
    const auto d = get_unsigned(j["D"], "D");
    if (static_cast<long long>(d) != c.order)
      rule_error("D", "declared " + std::to_string(d) + " but the mode and chain imply " + std::to_string(c.order));
  }

  if (j.contains("lineshapes")) {
    const json& ls = j["lineshapes"];
    if (!ls.is_array()) field_error("lineshapes", "expected an array");
    for (std::size_t i = 0; i < ls.size(); ++i)
      c.lineshapes.push_back(lineshape_from_json(ls[i], "lineshapes[" + std::to_string(i) + "]", c.n));
  } else if (c.mode == Mode::kKkCheck) {
    c.lineshapes = {lineshape::Lorentzian{c.kk_eta}};
  } else if (c.mode != Mode::kRaman && c.order >= 1) {
    c.lineshapes.assign(static_cast<std::size_t>(c.order), lineshape::Rectangular{});
  }

  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto parent = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), parent.empty() ? "." : parent.string());
}

void validate_config(const ExperimentConfig& c) {
  const auto dim = c.hamiltonian.rows();
  if (dim == 0 || c.hamiltonian.cols() != dim) rule_error("system.hamiltonian", "must be square and non-empty");
  if (c.tau && !(*c.tau > 0)) rule_error("system.scaling", "tau must be > 0");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < c.operators.size(); ++i) {
    const auto& op = c.operators[i];
    const std::string f = "operators[" + std::to_string(i) + "]";
    if (op.label.empty()) rule_error(f + ".label", "must be non-empty");
    if (!labels.insert(op.label).second) rule_error(f + ".label", "duplicate label '" + op.label + "'");
    if (op.matrix.rows() != dim || op.matrix.cols() != dim)
      rule_error(f + ".matrix", "must be " + std::to_string(dim) + "x" + std::to_string(dim));
    if (op.norm == NormKind::kGiven && !(op.given > 0)) rule_error(f + ".norm", "given norm must be > 0");
    if (op.norm == NormKind::kPauli && !is_power_of_two(static_cast<std::size_t>(dim)))
      rule_error(f + ".norm", "pauli norm needs a power-of-two dimension");
  }
  if (c.mixed.empty()) {
    if (c.pure_index >= static_cast<std::size_t>(dim)) rule_error("state.pure", "index out of range");
  } else {
    if (c.mixed.size() != static_cast<std::size_t>(dim)) rule_error("state.mixed", "needs one weight per level");
    double s = 0.0;
    for (double w : c.mixed) {
      if (!(w >= 0)) rule_error("state.mixed", "weights must be >= 0");
      s += w;
    }
    if (std::abs(s - 1.0) > 1e-12) rule_error("state.mixed", "weights must sum to 1");
  }
  if (c.n < 2 || !is_power_of_two(c.n)) rule_error("N", "must be a power of two >= 2");
  if (!(c.tolerance > 0)) rule_error("tolerance", "must be > 0");

  auto need_label = [&](const std::string& label, const std::string& field) {
    if (label.empty()) rule_error(field, "required for mode " + std::string(mode_name(c.mode)));
    if (!labels.count(label)) rule_error(field, "unknown operator label '" + label + "'");
  };
  auto need_hermitian = [&](const std::string& label, const std::string& field) {
    for (const auto& op : c.operators)
      if (op.label == label && (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        rule_error(field, "operator '" + label + "' must be Hermitian");
  };

  if (uses_chain(c.mode)) {
    if (c.chain.size() < 2) rule_error("chain", "needs at least two operators (D >= 1)");
    for (std::size_t i = 0; i < c.chain.size(); ++i) need_label(c.chain[i], "chain[" + std::to_string(i) + "]");
  } else {
    need_label(c.dipole, "dipole");
    need_hermitian(c.dipole, "dipole");
  }
  if (c.mode == Mode::kRaman) {
    for (std::size_t i = c.lineshapes.size(); i < 2; ++i)
      rule_error("lineshapes[" + std::to_string(i) + "]", "raman needs two lineshapes (L_delta, L_int)");
    if (c.lineshapes.size() > 2) rule_error("lineshapes", "raman takes exactly two lineshapes");
  } else if (c.lineshapes.size() != static_cast<std::size_t>(c.order)) {
    rule_error("lineshapes", "expected " + std::to_string(c.order) + " lineshapes, got " +
                                 std::to_string(c.lineshapes.size()));
  }
  if (c.mode == Mode::kKkCheck) {
    if (!std::holds_alternative<lineshape::Lorentzian>(c.lineshapes[0]))
      rule_error("lineshapes[0].kind", "kk-check needs a causal lorentzian lineshape");
    if (!(c.kk_eta > kTwoPi / static_cast<double>(c.n)))
      rule_error("kk_eta", "must exceed the grid spacing 2 pi / N");
  }
  if (c.mode == Mode::kSingleAncilla) {
    if (!(c.epsilon > 0 && c.epsilon < 1)) rule_error("epsilon", "must lie in (0, 1)");
    for (std::size_t i = 0; i < c.lineshapes.size(); ++i)
      if (const auto* cu = std::get_if<lineshape::Custom>(&c.lineshapes[i]))
        for (const auto& z : cu->coefficients)
          if (z.imag() != 0.0 || z.real() < 0.0)
            rule_error("lineshapes[" + std::to_string(i) + "]", "single-ancilla needs real nonnegative weights");
  }
}

std::string resolved_json(const ExperimentConfig& config, int indent, bool with_output) {
  return to_json(config, with_output).dump(indent) + (indent >= 0 ? "\n" : "");
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string s = to_json(config, false).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Experiment build_experiment(const ExperimentConfig& c) {
  spectral::Scaling scaling = spectral::AutoScale{};
  if (c.tau) scaling = spectral::FixedScale{*c.tau};
  auto system = spectral::build_system(c.hamiltonian, scaling);
  auto state = c.mixed.empty() ? spectral::EquilibriumState::pure(system.dim(), c.pure_index)
                               : spectral::EquilibriumState::mixed(c.mixed);
  std::vector<spectral::PerturbationOperator> ops;
  for (const auto& op : c.operators) {
    spectral::NormPolicy policy = spectral::SpectralNorm{};
    if (op.norm == NormKind::kPauli) policy = spectral::PauliNorm{};
    if (op.norm == NormKind::kGiven) policy = spectral::GivenNorm{op.given};
    ops.push_back(spectral::to_eigenbasis(op.matrix, system, policy, op.label));
  }
  std::vector<lineshape::Lineshape> shapes;
  for (const auto& k : c.lineshapes) shapes.push_back(lineshape::make_lineshape(k, c.n));
  return Experiment{std::move(system), std::move(state), std::move(ops), std::move(shapes)};
}

const spectral::PerturbationOperator& find_operator(const Experiment& e, const std::string& label) {
  for (const auto& op : e.operators)
    if (op.label() == label) return op;
  fail(ErrorCode::kValidationError, "unknown operator label '" + label + "'");
}

}  // namespace gqpe::cli
