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

#include "gqpe/gqpe.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "gqpe/circuit.hpp"
#include "gqpe/config.hpp"
#include "gqpe/oracle.hpp"
#include "gqpe/run.hpp"
#include "gqpe/sampling.hpp"

struct gqpe_config {
  gqpe::cli::ExperimentConfig value;
};
struct gqpe_system {
  gqpe::spectral::QuantumSystem value;
};
struct gqpe_operator {
  gqpe::spectral::PerturbationOperator value;
};
struct gqpe_state {
  gqpe::spectral::EquilibriumState value;
};
struct gqpe_lineshape {
  gqpe::lineshape::Lineshape value;
};
struct gqpe_grid {
  gqpe::ResponseGrid value;
};

namespace {

using gqpe::Complex;
using gqpe::ComplexMatrix;
using gqpe::ErrorCode;

thread_local std::string last_error;

template <class F>
int guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return GQPE_OK;
  } catch (const gqpe::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GQPE_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GQPE_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) gqpe::fail(ErrorCode::kInvalidParameter, what);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ComplexMatrix read_matrix(const double* data, std::size_t dim) {
  ComplexMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t i = 2 * (r * dim + c);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(data[i], data[i + 1]);
    }
  return m;
}

gqpe::spectral::OperatorChain make_chain(const gqpe_operator* const* chain, std::size_t len) {
  require(chain != nullptr && len >= 2, "chain needs at least two operators");
  std::vector<gqpe::spectral::PerturbationOperator> ops;
  for (std::size_t i = 0; i < len; ++i) {
    require(chain[i] != nullptr, "null operator in chain");
    ops.push_back(chain[i]->value);
  }
  return gqpe::spectral::OperatorChain(std::move(ops));
}

std::vector<gqpe::lineshape::Lineshape> make_shapes(const gqpe_lineshape* const* shapes, std::size_t count) {
  require(shapes != nullptr, "null lineshape array");
  std::vector<gqpe::lineshape::Lineshape> out;
  for (std::size_t i = 0; i < count; ++i) {
    require(shapes[i] != nullptr, "null lineshape");
    out.push_back(shapes[i]->value);
  }
  return out;
}

gqpe::sim::CircuitSpec make_spec(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                                 std::size_t len, const gqpe_lineshape* const* shapes, gqpe::sim::CircuitMode mode) {
  require(sys && st, "null system or state");
  gqpe::sim::CircuitSpec spec{.system = sys->value,
                              .chain = make_chain(chain, len),
                              .shapes = make_shapes(shapes, len - 1),
                              .initial = 0,
                              .mode = mode,
                              .energy_shift = std::nullopt,
                              .conjugate = false,
                              .prepared_dipole = false};
  spec.initial = st->value.support().front();
  gqpe::sim::validate(spec);
  return spec;
}

}  // namespace

extern "C" {

const char* gqpe_last_error_message(void) { return last_error.c_str(); }

const char* gqpe_status_name(int status) {
  if (status == GQPE_OK) return "Ok";
  return gqpe::error_name(static_cast<ErrorCode>(status));
}

void gqpe_string_free(char* s) { std::free(s); }

int gqpe_config_from_file(const char* path, gqpe_config** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new gqpe_config{gqpe::cli::load_config(path)};
  });
}

int gqpe_config_from_string(const char* text, const char* base_dir, gqpe_config** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new gqpe_config{gqpe::cli::parse_config(text, base_dir ? base_dir : ".")};
  });
}

void gqpe_config_destroy(gqpe_config* cfg) { delete cfg; }

int gqpe_config_set_seed(gqpe_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg, "null config");
    cfg->value.seed = seed;
  });
}

int gqpe_config_set_output(gqpe_config* cfg, const char* dir) {
  return guarded([&] {
    require(cfg && dir, "null argument");
    cfg->value.output = dir;
  });
}

int gqpe_config_set_tolerance(gqpe_config* cfg, double tolerance) {
  return guarded([&] {
    require(cfg, "null config");
    auto copy = cfg->value;
    copy.tolerance = tolerance;
    gqpe::cli::validate_config(copy);
    cfg->value = std::move(copy);
  });
}

int gqpe_config_set_mode(gqpe_config* cfg, const char* mode) {
  return guarded([&] {
    require(cfg && mode, "null argument");
    const auto m = gqpe::cli::mode_from_name(mode);
    if (!m) gqpe::fail(ErrorCode::kValidationError, std::string("field 'mode': unknown mode '") + mode + "'");
    auto copy = cfg->value;
    copy.mode = *m;
    gqpe::cli::validate_config(copy);
    cfg->value = std::move(copy);
  });
}

int gqpe_config_resolved_json(const gqpe_config* cfg, char** json) {
  return guarded([&] {
    require(cfg && json, "null argument");
    *json = dup_string(gqpe::cli::resolved_json(cfg->value));
  });
}

int gqpe_config_hash(const gqpe_config* cfg, uint64_t* hash) {
  return guarded([&] {
    require(cfg && hash, "null argument");
    *hash = gqpe::cli::config_hash(cfg->value);
  });
}

int gqpe_run(const gqpe_config* cfg, int* exit_code, char** summary) {
  if (exit_code) *exit_code = gqpe::cli::kExitValidation;
  const int status = guarded([&] {
    require(cfg, "null config");
    const auto r = gqpe::cli::run(cfg->value);
    if (exit_code) *exit_code = r.exit_code;
    if (summary) *summary = dup_string(r.summary);
  });
  if (status != GQPE_OK && exit_code) *exit_code = gqpe::cli::exit_code_for(static_cast<ErrorCode>(status));
  return status;
}

int gqpe_plot(const char* csv_path, const char* image_path) {
  return guarded([&] {
    require(csv_path && image_path, "null argument");
    gqpe::cli::plot(csv_path, image_path);
  });
}

int gqpe_system_create(const double* hamiltonian, size_t dim, double tau, gqpe_system** out) {
  return guarded([&] {
    require(hamiltonian && out && dim > 0, "invalid argument");
    gqpe::spectral::Scaling scaling = gqpe::spectral::AutoScale{};
    if (tau > 0) scaling = gqpe::spectral::FixedScale{tau};
    *out = new gqpe_system{gqpe::spectral::build_system(read_matrix(hamiltonian, dim), scaling)};
  });
}

void gqpe_system_destroy(gqpe_system* sys) { delete sys; }
size_t gqpe_system_dim(const gqpe_system* sys) { return sys ? sys->value.dim() : 0; }
double gqpe_system_scale(const gqpe_system* sys) { return sys ? sys->value.scale_factor() : 0.0; }

int gqpe_system_eigenvalues(const gqpe_system* sys, double* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    for (std::size_t i = 0; i < sys->value.dim(); ++i) out[i] = sys->value.eigenvalue(i);
  });
}

int gqpe_operator_create(const gqpe_system* sys, const double* matrix, int norm_policy, double given_norm,
                         gqpe_operator** out) {
  return guarded([&] {
    require(sys && matrix && out, "null argument");
    gqpe::spectral::NormPolicy policy = gqpe::spectral::SpectralNorm{};
    if (norm_policy == GQPE_NORM_PAULI) {
      policy = gqpe::spectral::PauliNorm{};
    } else if (norm_policy == GQPE_NORM_GIVEN) {
      policy = gqpe::spectral::GivenNorm{given_norm};
    } else {
      require(norm_policy == GQPE_NORM_SPECTRAL, "unknown norm policy");
    }
    *out = new gqpe_operator{gqpe::spectral::to_eigenbasis(read_matrix(matrix, sys->value.dim()), sys->value, policy)};
  });
}

void gqpe_operator_destroy(gqpe_operator* op) { delete op; }
double gqpe_operator_one_norm(const gqpe_operator* op) { return op ? op->value.one_norm() : 0.0; }

int gqpe_state_pure(size_t dim, size_t index, gqpe_state** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new gqpe_state{gqpe::spectral::EquilibriumState::pure(dim, index)};
  });
}

int gqpe_state_mixed(const double* weights, size_t dim, gqpe_state** out) {
  return guarded([&] {
    require(weights && out, "null argument");
    *out = new gqpe_state{gqpe::spectral::EquilibriumState::mixed(std::vector<double>(weights, weights + dim))};
  });
}

void gqpe_state_destroy(gqpe_state* st) { delete st; }

int gqpe_lineshape_create(const char* kind, double p0, double p1, size_t n, gqpe_lineshape** out) {
  return guarded([&] {
    require(kind && out, "null argument");
    const std::string k = kind;
    gqpe::lineshape::Kind v;
    if (k == "rectangular") {
      v = gqpe::lineshape::Rectangular{p0};
    } else if (k == "lorentzian") {
      v = gqpe::lineshape::Lorentzian{p0};
    } else if (k == "gaussian") {
      v = gqpe::lineshape::Gaussian{p0};
    } else if (k == "kaiser") {
      v = gqpe::lineshape::Kaiser{p0, p1};
    } else if (k == "causality") {
      v = gqpe::lineshape::Causality{};
    } else {
      gqpe::fail(ErrorCode::kInvalidParameter, "unknown lineshape kind '" + k + "'");
    }
    *out = new gqpe_lineshape{gqpe::lineshape::make_lineshape(v, n)};
  });
}

int gqpe_lineshape_custom(const double* coefficients, size_t n, gqpe_lineshape** out) {
  return guarded([&] {
    require(coefficients && out, "null argument");
    gqpe::lineshape::Custom c;
    for (std::size_t i = 0; i < n; ++i) c.coefficients.emplace_back(coefficients[2 * i], coefficients[2 * i + 1]);
    *out = new gqpe_lineshape{gqpe::lineshape::make_lineshape(c, n)};
  });
}

void gqpe_lineshape_destroy(gqpe_lineshape* ls) { delete ls; }

int gqpe_lineshape_evaluate(const gqpe_lineshape* ls, double omega, double* re, double* im) {
  return guarded([&] {
    require(ls && re && im, "null argument");
    const Complex z = ls->value.evaluate(omega);
    *re = z.real();
    *im = z.imag();
  });
}

int gqpe_oracle_response(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                         size_t chain_len, const gqpe_lineshape* const* shapes, gqpe_grid** out) {
  return guarded([&] {
    require(sys && st && out, "null argument");
    const auto c = make_chain(chain, chain_len);
    const auto s = make_shapes(shapes, chain_len - 1);
    const auto comb = gqpe::oracle::delta_comb(sys->value, st->value, c);
    *out = new gqpe_grid{gqpe::oracle::broadened_response(comb, s, s.front().size(), c.omega_product())};
  });
}

int gqpe_circuit_response(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                          size_t chain_len, const gqpe_lineshape* const* shapes, gqpe_grid** out) {
  return guarded([&] {
    require(out, "null argument");
    const auto spec = make_spec(sys, st, chain, chain_len, shapes, gqpe::sim::CircuitMode::kGeneral);
    *out = new gqpe_grid{gqpe::sim::response_grid(spec, st->value)};
  });
}

int gqpe_complete_square_probability(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                                     size_t chain_len, const gqpe_lineshape* const* shapes, gqpe_grid** out,
                                     double* leaked_norm) {
  return guarded([&] {
    require(out, "null argument");
    const auto spec = make_spec(sys, st, chain, chain_len, shapes, gqpe::sim::CircuitMode::kCompleteSquare);
    const auto p = gqpe::sim::run_complete_square(spec, st->value);
    gqpe::ResponseGrid g(p.p.order, p.p.n, p.omega_product);
    for (std::size_t i = 0; i < p.p.values.size(); ++i) g[i] = p.p.values[i];
    if (leaked_norm) *leaked_norm = p.leaked_norm;
    *out = new gqpe_grid{std::move(g)};
  });
}

int gqpe_single_ancilla(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                        size_t chain_len, const gqpe_lineshape* const* shapes, double eps, uint64_t seed,
                        uint64_t rounds, gqpe_grid** out, uint64_t* rounds_used) {
  return guarded([&] {
    require(sys && st && out, "null argument");
    const auto c = make_chain(chain, chain_len);
    const auto s = make_shapes(shapes, chain_len - 1);
    gqpe::sampling::SingleAncillaOptions opt;
    if (rounds > 0) opt.rounds = rounds;
    auto rep = gqpe::sampling::single_ancilla_estimate(sys->value, st->value, c, s, s.front().size(), eps, seed, opt);
    if (rounds_used) *rounds_used = rep.samples;
    *out = new gqpe_grid{std::move(rep.estimate)};
  });
}

int gqpe_kk_residual(const gqpe_grid* grid, double axis_eta, double* residual) {
  return guarded([&] {
    require(grid && residual, "null argument");
    *residual = gqpe::oracle::kk_residual(grid->value, axis_eta);
  });
}

void gqpe_grid_destroy(gqpe_grid* grid) { delete grid; }
int gqpe_grid_order(const gqpe_grid* grid) { return grid ? grid->value.order() : 0; }
size_t gqpe_grid_size_per_axis(const gqpe_grid* grid) { return grid ? grid->value.size_per_axis() : 0; }
size_t gqpe_grid_point_count(const gqpe_grid* grid) { return grid ? grid->value.point_count() : 0; }
double gqpe_grid_omega_product(const gqpe_grid* grid) { return grid ? grid->value.omega_product() : 0.0; }

int gqpe_grid_value(const gqpe_grid* grid, size_t flat, double* re, double* im) {
  return guarded([&] {
    require(grid && re && im, "null argument");
    if (flat >= grid->value.point_count()) gqpe::fail(ErrorCode::kIndexOutOfRange, "grid index out of range");
    *re = grid->value[flat].real();
    *im = grid->value[flat].imag();
  });
}

int gqpe_grid_max_abs_diff(const gqpe_grid* a, const gqpe_grid* b, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = gqpe::max_abs_diff(a->value, b->value);
  });
}

}  // extern "C"
