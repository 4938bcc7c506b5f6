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

// Command-line front end; talks to the library only through the C API.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "gqpe/gqpe.h"

namespace {

int exit_for(int status) {
  if (status == GQPE_OK) return 0;
  if (status == GQPE_IO_ERROR) return 4;
  if (status == GQPE_TOLERANCE_EXCEEDED) return 3;
  return 2;
}

int report(int status) {
  std::fprintf(stderr, "error: %s\n", gqpe_last_error_message());
  return exit_for(status);
}

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> tolerance;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "experiment config (JSON)")->required();
  cmd->add_option("--seed", o.seed, "override the config seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--tolerance", o.tolerance, "compare-mode tolerance");
}

// Loads the config and applies overrides; returns a status code.
int load(const Overrides& o, const char* mode, gqpe_config** cfg) {
  int st = gqpe_config_from_file(o.config.c_str(), cfg);
  if (st != GQPE_OK) return st;
  if (o.seed) st = gqpe_config_set_seed(*cfg, *o.seed);
  if (st == GQPE_OK && o.out) st = gqpe_config_set_output(*cfg, o.out->c_str());
  if (st == GQPE_OK && o.tolerance) st = gqpe_config_set_tolerance(*cfg, *o.tolerance);
  if (st == GQPE_OK && mode) st = gqpe_config_set_mode(*cfg, mode);
  return st;
}

int do_run(const Overrides& o, const char* mode) {
  gqpe_config* cfg = nullptr;
  int st = load(o, mode, &cfg);
  if (st != GQPE_OK) {
    gqpe_config_destroy(cfg);
    return report(st);
  }
  int code = 0;
  char* summary = nullptr;
  st = gqpe_run(cfg, &code, &summary);
  gqpe_config_destroy(cfg);
  if (st != GQPE_OK) {
    report(st);
    return code;
  }
  std::fputs(summary, stdout);
  gqpe_string_free(summary);
  return code;
}

int do_validate(const Overrides& o) {
  gqpe_config* cfg = nullptr;
  int st = load(o, nullptr, &cfg);
  char* json = nullptr;
  if (st == GQPE_OK) st = gqpe_config_resolved_json(cfg, &json);
  gqpe_config_destroy(cfg);
  if (st != GQPE_OK) return report(st);
  std::fputs(json, stdout);
  gqpe_string_free(json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gqpe: generalized quantum phase estimation spectra, circuits and estimators"};
  app.require_subcommand(1);

  Overrides run_o, cmp_o, val_o;
  auto* run = app.add_subcommand("run", "run the mode named in the config");
  add_common(run, run_o);
  auto* cmp = app.add_subcommand("compare", "run oracle and circuit, report the max deviation");
  add_common(cmp, cmp_o);
  auto* val = app.add_subcommand("validate", "print the resolved config");
  add_common(val, val_o);

  std::string csv, image;
  auto* plt = app.add_subcommand("plot", "render a 1-D (SVG) or 2-D (PGM) grid CSV");
  plt->add_option("csv", csv, "grid CSV")->required();
  plt->add_option("--out", image, "image path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*run) return do_run(run_o, nullptr);
  if (*cmp) return do_run(cmp_o, "compare");
  if (*val) return do_validate(val_o);
  const int st = gqpe_plot(csv.c_str(), image.c_str());
  return st == GQPE_OK ? 0 : report(st);
}
