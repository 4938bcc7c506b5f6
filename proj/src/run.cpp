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

#include "gqpe/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gqpe/circuit.hpp"
#include "gqpe/grid.hpp"
#include "gqpe/lineshape.hpp"
#include "gqpe/oracle.hpp"
#include "gqpe/sampling.hpp"

namespace gqpe::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "gqpe-grid-1";

struct Context {
  const ExperimentConfig& config;
  Experiment exp;
  FileStamp stamp;
  RunResult result;
};

spectral::OperatorChain chain_of(const Context& ctx) {
  std::vector<spectral::PerturbationOperator> ops;
  for (const auto& label : ctx.config.chain) ops.push_back(find_operator(ctx.exp, label));
  return spectral::OperatorChain(std::move(ops));
}

spectral::OperatorChain raman_chain(const Context& ctx) {
  const auto& mu = find_operator(ctx.exp, ctx.config.dipole);
  return spectral::OperatorChain({mu, mu});
}

sim::CircuitSpec spec_of(const Context& ctx, spectral::OperatorChain chain, sim::CircuitMode mode) {
  sim::CircuitSpec spec{.system = ctx.exp.system,
                        .chain = std::move(chain),
                        .shapes = ctx.exp.shapes,
                        .initial = 0,
                        .mode = mode,
                        .energy_shift = std::nullopt,
                        .conjugate = false,
                        .prepared_dipole = false};
  const auto support = ctx.exp.state.support();
  spec.initial = support.front();
  return spec;
}

ordered_json header(const Context& ctx, const std::string& product, int order, double omega_product,
                    const std::string& csv) {
  ordered_json j;
  j["format"] = kFormat;
  j["product"] = product;
  j["mode"] = mode_name(ctx.config.mode);
  j["D"] = order;
  j["N"] = ctx.config.n;
  j["omega_product"] = omega_product;
  j["convention"] = kOmegaConvention;
  j["config_hash"] = hex64(ctx.stamp.config_hash);
  j["seed"] = ctx.stamp.seed;
  if (!csv.empty()) j["csv"] = csv;
  return j;
}

void add(Context& ctx, std::string name, std::string content) {
  ctx.result.files.push_back({std::move(name), std::move(content)});
}

void add_json(Context& ctx, const std::string& name, const ordered_json& j) { add(ctx, name, j.dump(2) + "\n"); }

template <class Grid>
void add_grid(Context& ctx, const std::string& stem, const Grid& grid) {
  std::ostringstream os;
  write_grid_csv(grid, ctx.stamp, os);
  add(ctx, stem + ".csv", os.str());
}

void add_histogram(Context& ctx, const sim::ProbabilityGrid& p) {
  const auto h = sim::sample_frequencies(p, ctx.config.shots, ctx.config.seed);
  std::ostringstream os;
  write_histogram_csv(h.order, h.n, h.counts, h.failures, ctx.stamp, os);
  add(ctx, "histogram.csv", os.str());
}

void line(Context& ctx, const std::string& key, const std::string& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-22s", key.c_str());
  ctx.result.summary += buf + value + "\n";
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::size_t> peak_point(const ResponseGrid& g) { return g.unflatten(g.argmax_abs()); }

json index_json(const std::vector<std::size_t>& idx, std::size_t n) {
  json j = json::array();
  for (std::size_t k : idx) j.push_back({{"index", k}, {"omega", wrapped_omega(k, n)}});
  return j;
}

ResponseGrid oracle_grid(const Context& ctx, const spectral::OperatorChain& chain) {
  const auto comb = oracle::delta_comb(ctx.exp.system, ctx.exp.state, chain);
  return oracle::broadened_response(comb, ctx.exp.shapes, ctx.config.n, chain.omega_product());
}

void run_oracle(Context& ctx) {
  const auto chain = chain_of(ctx);
  const auto grid = oracle_grid(ctx, chain);
  add_grid(ctx, "oracle_response", grid);
  auto j = header(ctx, "oracle_response", grid.order(), grid.omega_product(), "oracle_response.csv");
  j["peak"] = index_json(peak_point(grid), ctx.config.n);
  j["peak_abs"] = std::abs(grid[grid.argmax_abs()]);
  add_json(ctx, "oracle_response.json", j);
  line(ctx, "oracle_response", "D=" + std::to_string(grid.order()) + " points=" +
                                   std::to_string(grid.point_count()) + " peak|R|=" + num(j["peak_abs"]));
}

sim::ProbabilityGrid general_probabilities(const Context& ctx, const sim::CircuitSpec& spec) {
  sim::ProbabilityGrid out;
  out.omega_product = spec.chain.omega_product();
  out.p = RealGrid{spec.registers(), spec.grid_size(), {}};
  double total = 0.0;
  for (std::size_t n0 : ctx.exp.state.support()) {
    auto s = spec;
    s.initial = n0;
    const auto st = sim::run_circuit(s);
    if (out.p.values.empty()) out.p.values.assign(st.branch_count(), 0.0);
    const double rho = ctx.exp.state.weight(n0);
    for (std::size_t f = 0; f < st.branch_count(); ++f) {
      const double p = rho * std::norm(st.amplitudes()[f * st.sys_dim() + n0]);
      out.p.values[f] += p;
      total += p;
    }
  }
  out.leaked_norm = std::max(0.0, 1.0 - total);
  return out;
}

void run_gqpe(Context& ctx) {
  const auto spec = spec_of(ctx, chain_of(ctx), sim::CircuitMode::kGeneral);
  sim::validate(spec);
  const auto grid = sim::response_grid(spec, ctx.exp.state);
  add_grid(ctx, "circuit_response", grid);
  auto j = header(ctx, "circuit_response", grid.order(), grid.omega_product(), "circuit_response.csv");
  j["peak"] = index_json(peak_point(grid), ctx.config.n);
  j["peak_abs"] = std::abs(grid[grid.argmax_abs()]);
  if (ctx.config.shots > 0) {
    const auto p = general_probabilities(ctx, spec);
    add_histogram(ctx, p);
    j["shots"] = ctx.config.shots;
    j["histogram"] = "histogram.csv";
    j["outcome_leaked_norm"] = p.leaked_norm;
  }
  add_json(ctx, "circuit_response.json", j);
  line(ctx, "circuit_response", "D=" + std::to_string(grid.order()) + " points=" +
                                    std::to_string(grid.point_count()) + " peak|R|=" + num(j["peak_abs"]));
}

void run_complete_square(Context& ctx) {
  const auto chain = chain_of(ctx);
  const auto spec = spec_of(ctx, chain, sim::CircuitMode::kCompleteSquare);
  sim::validate(spec);
  const auto p = sim::run_complete_square(spec, ctx.exp.state);
  auto target =
      oracle::complete_square_response(ctx.exp.system, ctx.exp.state, chain, ctx.exp.shapes, ctx.config.n);
  const double w2 = chain.omega_product() * chain.omega_product();
  for (double& v : target.values) v /= w2;
  double total = 0.0;
  for (double v : p.p.values) total += v;
  const double dev = max_abs_diff(p.p, target);

  add_grid(ctx, "probability", p.p);
  auto j = header(ctx, "probability", p.p.order, p.omega_product, "probability.csv");
  j["leaked_norm"] = p.leaked_norm;
  j["probability_sum"] = total;
  j["oracle_max_deviation"] = dev;
  j["peak"] = index_json(ResponseGrid(p.p.order, p.p.n).unflatten(p.p.argmax()), ctx.config.n);
  if (ctx.config.shots > 0) {
    add_histogram(ctx, p);
    j["shots"] = ctx.config.shots;
    j["histogram"] = "histogram.csv";
  }
  add_json(ctx, "probability.json", j);
  line(ctx, "probability", "sum=" + num(total) + " leaked=" + num(p.leaked_norm) + " max|dP|=" + num(dev));
}

void run_raman(Context& ctx) {
  auto spec = spec_of(ctx, raman_chain(ctx), sim::CircuitMode::kRaman);
  spec.prepared_dipole = ctx.config.raman_prepared_dipole;
  if (ctx.config.raman_energy_shift) spec.energy_shift = ctx.exp.system.eigenvalue(spec.initial);
  sim::validate(spec);
  const auto r = sim::run_raman(spec, ctx.exp.state);
  const auto& mu = find_operator(ctx.exp, ctx.config.dipole);
  const auto target =
      oracle::raman_chi3(ctx.exp.system, ctx.exp.state, mu, ctx.exp.shapes[1], ctx.exp.shapes[0], ctx.config.n);
  const double dev = max_abs_diff(r.chi3, target);
  const ResponseGrid layout(2, ctx.config.n);
  const auto circuit_peak = layout.unflatten(r.chi3.argmax());
  const auto oracle_peak = layout.unflatten(target.argmax());

  add_grid(ctx, "raman_raw", r.raw.p);
  add_grid(ctx, "raman_chi3", r.chi3);
  add_grid(ctx, "raman_oracle", target);
  auto j = header(ctx, "raman", 2, r.raw.omega_product, "raman_chi3.csv");
  j["raw_csv"] = "raman_raw.csv";
  j["oracle_csv"] = "raman_oracle.csv";
  j["axes"] = {"omega_I", "omega_S"};
  j["leaked_norm"] = r.raw.leaked_norm;
  j["energy_shift"] = ctx.config.raman_energy_shift;
  j["prepared_dipole"] = ctx.config.raman_prepared_dipole;
  j["circuit_peak"] = index_json(circuit_peak, ctx.config.n);
  j["oracle_peak"] = index_json(oracle_peak, ctx.config.n);
  j["peaks_match"] = circuit_peak == oracle_peak;
  j["oracle_max_deviation"] = dev;
  if (ctx.config.shots > 0) {
    add_histogram(ctx, r.raw);
    j["shots"] = ctx.config.shots;
    j["histogram"] = "histogram.csv";
  }
  add_json(ctx, "raman.json", j);
  line(ctx, "raman", std::string("peaks_match=") + (circuit_peak == oracle_peak ? "yes" : "no") +
                         " max|dchi3|=" + num(dev));
}

void run_single_ancilla(Context& ctx) {
  const auto chain = chain_of(ctx);
  sampling::SingleAncillaOptions opt;
  if (ctx.config.shots > 0) opt.rounds = ctx.config.shots;
  const auto rep = sampling::single_ancilla_estimate(ctx.exp.system, ctx.exp.state, chain, ctx.exp.shapes,
                                                     ctx.config.n, ctx.config.epsilon, ctx.config.seed, opt);
  const auto target = oracle_grid(ctx, chain);
  const double err = max_abs_diff(rep.estimate, target);

  add_grid(ctx, "single_ancilla_estimate", rep.estimate);
  auto j = header(ctx, "single_ancilla_estimate", rep.estimate.order(), rep.omega_product,
                  "single_ancilla_estimate.csv");
  j["epsilon"] = rep.accuracy;
  j["rounds"] = rep.samples;
  j["p_tot"] = rep.p_tot;
  j["block_encoding_queries"] = rep.block_encoding_queries;
  j["evolution_queries"] = rep.evolution_queries;
  j["mean_evolution_length"] = rep.mean_evolution_length;
  j["oracle_max_error"] = err;
  j["within_epsilon"] = err <= rep.accuracy;
  add_json(ctx, "single_ancilla.json", j);
  line(ctx, "single_ancilla", "M=" + std::to_string(rep.samples) + " eps=" + num(rep.accuracy) +
                                  " max|err|=" + num(err));
}

void run_kk(Context& ctx) {
  const auto& mu = find_operator(ctx.exp, ctx.config.dipole);
  const auto grid = oracle::linear_absorption(ctx.exp.system, ctx.exp.state, mu, ctx.exp.shapes[0], ctx.config.n);
  const double eta = std::get<lineshape::Lorentzian>(ctx.config.lineshapes[0]).eta;
  const double residual = oracle::kk_residual(grid, eta);
  add_grid(ctx, "kk_response", grid);
  auto j = header(ctx, "kk", 1, grid.omega_product(), "kk_response.csv");
  j["eta"] = eta;
  j["residual"] = residual;
  add_json(ctx, "kk.json", j);
  line(ctx, "kk_check", "eta=" + num(eta) + " residual=" + num(residual));
}

void run_compare(Context& ctx) {
  const auto chain = chain_of(ctx);
  const auto spec = spec_of(ctx, chain, sim::CircuitMode::kGeneral);
  sim::validate(spec);
  const auto circuit = sim::response_grid(spec, ctx.exp.state);
  const auto target = oracle_grid(ctx, chain);
  const double dev = max_abs_diff(circuit, target);
  const bool pass = dev <= ctx.config.tolerance;
  ctx.result.max_deviation = dev;
  if (!pass) ctx.result.exit_code = kExitTolerance;

  add_grid(ctx, "oracle_response", target);
  add_grid(ctx, "circuit_response", circuit);
  auto j = header(ctx, "compare", circuit.order(), circuit.omega_product(), "");
  j["oracle_csv"] = "oracle_response.csv";
  j["circuit_csv"] = "circuit_response.csv";
  j["max_deviation"] = dev;
  const auto worst = std::max_element(circuit.values().begin(), circuit.values().end(), [&](auto& a, auto& b) {
    const auto ia = static_cast<std::size_t>(&a - circuit.values().data());
    const auto ib = static_cast<std::size_t>(&b - circuit.values().data());
    return std::abs(a - target[ia]) < std::abs(b - target[ib]);
  });
  j["worst_point"] = index_json(
      circuit.unflatten(static_cast<std::size_t>(worst - circuit.values().begin())), ctx.config.n);
  j["tolerance"] = ctx.config.tolerance;
  j["pass"] = pass;
  add_json(ctx, "compare.json", j);
  line(ctx, "compare", "max|dR|=" + num(dev) + " tol=" + num(ctx.config.tolerance) + (pass ? " PASS" : " FAIL"));
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kToleranceExceeded: return kExitTolerance;
    case ErrorCode::kIoError: return kExitIo;
    default: return kExitValidation;
  }
}

RunResult compute(const ExperimentConfig& config) {
  validate_config(config);
  Context ctx{config, build_experiment(config), {config_hash(config), config.seed}, {}};
  add(ctx, "config.resolved.json", resolved_json(config, 2, false));
  for (std::size_t i = 0; i < ctx.exp.shapes.size(); ++i) {
    std::ostringstream os;
    lineshape::write_coefficients_csv(ctx.exp.shapes[i], os);
    add(ctx, "lineshape_" + std::to_string(i + 1) + ".csv", os.str());
  }
  line(ctx, "mode", mode_name(config.mode));
  line(ctx, "config_hash", hex64(ctx.stamp.config_hash));
  line(ctx, "seed", std::to_string(config.seed));
  switch (config.mode) {
    case Mode::kOracle: run_oracle(ctx); break;
    case Mode::kGqpe: run_gqpe(ctx); break;
    case Mode::kCompleteSquare: run_complete_square(ctx); break;
    case Mode::kRaman: run_raman(ctx); break;
    case Mode::kSingleAncilla: run_single_ancilla(ctx); break;
    case Mode::kKkCheck: run_kk(ctx); break;
    case Mode::kCompare: run_compare(ctx); break;
  }
  return std::move(ctx.result);
}

void write_artifacts(const std::string& dir, const std::vector<Artifact>& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create " + dir + ": " + ec.message());
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& f : files) {
    const fs::path tmp = fs::path(dir) / (f.name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary);
    out.write(f.content.data(), static_cast<std::streamsize>(f.content.size()));
    out.close();
    if (!out) {
      cleanup();
      fail(ErrorCode::kIoError, "cannot write " + tmp.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(temps[i], fs::path(dir) / files[i].name, ec);
    if (ec) {
      cleanup();
      fail(ErrorCode::kIoError, "cannot rename " + temps[i].string() + ": " + ec.message());
    }
  }
}

RunResult run(const ExperimentConfig& config) {
  RunResult r = compute(config);
  write_artifacts(config.output, r.files);
  return r;
}

namespace {

struct CsvGrid {
  int order = 0;
  std::vector<std::vector<double>> omega;
  std::vector<double> re;
  std::vector<double> im;
};

CsvGrid read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  CsvGrid g;
  std::string row;
  bool header_seen = false;
  while (std::getline(in, row)) {
    if (row.empty() || row[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      header_seen = true;
      g.order = static_cast<int>(std::count_if(cells.begin(), cells.end(),
                                               [](const std::string& c) { return c.rfind("omega_", 0) == 0; }));
      if (g.order < 1 || cells.size() != static_cast<std::size_t>(2 * g.order + 2))
        fail(ErrorCode::kParseError, path + ": not a grid CSV");
      continue;
    }
    if (cells.size() != static_cast<std::size_t>(2 * g.order + 2))
      fail(ErrorCode::kParseError, path + ": ragged row");
    std::vector<double> w;
    for (int a = 0; a < g.order; ++a) w.push_back(std::stod(cells[static_cast<std::size_t>(g.order + a)]));
    g.omega.push_back(std::move(w));
    g.re.push_back(std::stod(cells[cells.size() - 2]));
    g.im.push_back(std::stod(cells.back()));
  }
  if (g.re.empty()) fail(ErrorCode::kParseError, path + ": no data rows");
  return g;
}

void plot_1d(const CsvGrid& g, std::ostream& out) {
  std::vector<std::size_t> order(g.re.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.omega[a][0] < g.omega[b][0]; });
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < g.re.size(); ++i) {
    lo = std::min({lo, g.re[i], g.im[i]});
    hi = std::max({hi, g.re[i], g.im[i]});
  }
  if (hi - lo <= 0) hi = lo + 1.0;
  const double w = 640, h = 400, m = 40;
  auto px = [&](double omega) { return m + (omega + kPi) / kTwoPi * (w - 2 * m); };
  auto py = [&](double v) { return h - m - (v - lo) / (hi - lo) * (h - 2 * m); };
  auto poly = [&](const std::vector<double>& v, const char* colour) {
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i : order) out << px(g.omega[i][0]) << ',' << py(v[i]) << ' ';
    out << "\"/>\n";
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << m << "\" y1=\"" << py(0) << "\" x2=\"" << w - m << "\" y2=\"" << py(0)
      << "\" stroke=\"grey\"/>\n";
  poly(g.re, "black");
  poly(g.im, "red");
  out << "<text x=\"" << m << "\" y=\"20\" font-size=\"12\">re (black), im (red) vs omega in [-pi, pi)</text>\n";
  out << "</svg>\n";
}

void plot_2d(const CsvGrid& g, std::ostream& out) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(g.re.size()))));
  if (n * n != g.re.size()) fail(ErrorCode::kParseError, "2-D grid is not square");
  std::vector<double> mag(g.re.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < mag.size(); ++i) peak = std::max(peak, mag[i] = std::hypot(g.re[i], g.im[i]));
  if (peak <= 0) peak = 1.0;
  // Rows follow omega_1 descending, columns omega_2 ascending, both wrapped.
  auto pos = [n](double omega) {
    return static_cast<std::size_t>(std::llround((omega + kPi) / kTwoPi * static_cast<double>(n))) % n;
  };
  std::vector<unsigned char> pixels(n * n, 0);
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const std::size_t r = n - 1 - pos(g.omega[i][0]);
    const std::size_t c = pos(g.omega[i][1]);
    pixels[r * n + c] = static_cast<unsigned char>(std::lround(255.0 * mag[i] / peak));
  }
  out << "P5\n" << n << ' ' << n << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace

void plot(const std::string& csv_path, const std::string& image_path) {
  const CsvGrid g = read_csv(csv_path);
  if (g.order > 2) fail(ErrorCode::kInvalidParameter, "plot handles 1-D and 2-D grids only");
  std::ostringstream os;
  if (g.order == 1) {
    plot_1d(g, os);
  } else {
    plot_2d(g, os);
  }
  const auto parent = std::filesystem::path(image_path).parent_path();
  write_artifacts(parent.empty() ? "." : parent.string(),
                  {{std::filesystem::path(image_path).filename().string(), os.str()}});
}

}  // namespace gqpe::cli
