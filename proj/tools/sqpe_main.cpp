// Copyright 2026 The sqpe authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqpe/run.hpp"

namespace {

void add_common_options(CLI::App* app, sqpe::RunConfig& cfg,
                        std::string& config_path, bool& exact) {
  app->add_option("--config", config_path, "key = value config file");
  app->add_option("-H,--hamiltonian", cfg.hamiltonian_path,
                  "Hamiltonian file (one `<coeff> <letters>` per line)");
  app->add_option("--delta", cfg.delta_precision, "target precision Delta");
  app->add_option("--eta", cfg.eta, "overlap lower bound eta in (0,1]");
  app->add_option("--epsilon", cfg.epsilon,
                  "threshold margin epsilon in (0, eta/2); default eta/4");
  app->add_option("--nu", cfg.nu, "per-query failure probability in (0,1)");
  app->add_option("--delta-band", cfg.delta_band,
                  "band margin delta; default min(pi/2, tau*Delta)");
  app->add_option("--epsilon-q", cfg.epsilon_q, "sampler tail cutoff");
  app->add_option("--epsilon-c", cfg.epsilon_c,
                  "normalization-sum truncation tolerance");
  app->add_option("--seed", cfg.seed, "master RNG seed");
  app->add_option("--threads", cfg.threads, "sampling worker threads");
  app->add_option("--samples", cfg.sample_override,
                  "override the sample-count formula (0 = formula)");
  app->add_flag("--exact", exact,
                "exact expectations instead of single-shot Hadamard outcomes");
  app->add_option("-o,--out", cfg.output_prefix, "output file prefix");
  app->add_flag("--dump-samples", cfg.dump_samples, "write the sample set CSV");
  app->add_flag("--dump-series", cfg.dump_series,
                "write the Fourier coefficient CSV");
}

sqpe::RunConfig finalize(const CLI::App* app, sqpe::RunConfig cli_cfg,
                         const std::string& config_path, bool exact) {
  sqpe::RunConfig cfg;
  if (!config_path.empty()) cfg = sqpe::load_config_file(config_path);
  // flags override config-file values
  auto taken = [&](const std::string& name) { return app->count(name) > 0; };
  if (taken("--hamiltonian") || cfg.hamiltonian_path.empty())
    cfg.hamiltonian_path = cli_cfg.hamiltonian_path;
  if (taken("--delta")) cfg.delta_precision = cli_cfg.delta_precision;
  if (taken("--eta")) cfg.eta = cli_cfg.eta;
  if (taken("--epsilon")) cfg.epsilon = cli_cfg.epsilon;
  if (taken("--nu")) cfg.nu = cli_cfg.nu;
  if (taken("--delta-band")) cfg.delta_band = cli_cfg.delta_band;
  if (taken("--epsilon-q")) cfg.epsilon_q = cli_cfg.epsilon_q;
  if (taken("--epsilon-c")) cfg.epsilon_c = cli_cfg.epsilon_c;
  if (taken("--seed")) cfg.seed = cli_cfg.seed;
  if (taken("--threads")) cfg.threads = cli_cfg.threads;
  if (taken("--samples")) cfg.sample_override = cli_cfg.sample_override;
  if (taken("--out")) cfg.output_prefix = cli_cfg.output_prefix;
  if (cli_cfg.dump_samples) cfg.dump_samples = true;
  if (cli_cfg.dump_series) cfg.dump_series = true;
  if (exact) cfg.shot_mode = sqpe::ShotMode::exact;
  return cfg;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k)
    xs[k] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) /
                              static_cast<double>(n - 1);
  return xs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistical phase estimation on a statevector emulator"};
  app.require_subcommand(1);

  sqpe::RunConfig cli_cfg;
  std::string config_path;
  bool exact = false;

  // gse
  auto* gse = app.add_subcommand("gse", "estimate the ground-state energy");
  add_common_options(gse, cli_cfg, config_path, exact);
  std::string solver = "binary";
  bool resample = false;
  double grid_resolution = 0.057, delta_c = 0.01, b_g = 0.0;
  std::string runtime_mode = "quadratic";
  gse->add_option("--solver", solver, "binary | changepoint");
  gse->add_option("--grid-resolution", grid_resolution,
                  "changepoint grid spacing (x units)");
  gse->add_option("--delta-c", delta_c, "changepoint significance floor");
  gse->add_option("--runtime", runtime_mode, "quadratic | optimized");
  gse->add_option("--bg", b_g, "gate bound for --runtime optimized");
  gse->add_flag("--resample-per-iteration", resample,
                "redraw samples at every search query instead of reusing");

  // acdf
  auto* acdf = app.add_subcommand("acdf", "sweep the estimated ACDF over x");
  sqpe::RunConfig acdf_cfg;
  std::string acdf_config_path;
  bool acdf_exact = false;
  add_common_options(acdf, acdf_cfg, acdf_config_path, acdf_exact);
  double x_min = -1.5707963267948966, x_max = 1.5707963267948966;
  std::size_t x_points = 101;
  acdf->add_option("--x-min", x_min, "sweep start");
  acdf->add_option("--x-max", x_max, "sweep end");
  acdf->add_option("--points", x_points, "number of grid points");

  // tradeoff
  auto* toff = app.add_subcommand("tradeoff", "sample/gate trade-off curve");
  sqpe::RunConfig toff_cfg;
  std::string toff_config_path;
  bool toff_exact = false;
  add_common_options(toff, toff_cfg, toff_config_path, toff_exact);
  double bg_min = 1.0, bg_max = 0.0;
  std::size_t bg_points = 24;
  toff->add_option("--bg-min", bg_min, "smallest gate bound");
  toff->add_option("--bg-max", bg_max, "largest gate bound (default: bg-min + 63)");
  toff->add_option("--bg-points", bg_points, "number of curve points");

  // spectrum
  auto* spectrum_cmd = app.add_subcommand("spectrum", "dump exact eigenvalues and CDF");
  sqpe::RunConfig spec_cfg;
  std::string spec_config_path;
  bool spec_exact = false;
  add_common_options(spectrum_cmd, spec_cfg, spec_config_path, spec_exact);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gse->parsed()) {
      sqpe::RunConfig cfg = finalize(gse, cli_cfg, config_path, exact);
      if (solver == "changepoint")
        cfg.solver = sqpe::RunConfig::Solver::changepoint;
      else if (solver != "binary")
        throw std::invalid_argument("--solver must be binary|changepoint");
      cfg.grid_resolution = grid_resolution;
      cfg.delta_c = delta_c;
      cfg.resample_per_iteration = resample;
      if (runtime_mode == "optimized") {
        cfg.runtime_mode = sqpe::RunConfig::RuntimeMode::optimized;
        cfg.b_g = b_g;
      } else if (runtime_mode != "quadratic") {
        throw std::invalid_argument("--runtime must be quadratic|optimized");
      }
      const sqpe::GseReport rep = sqpe::run_gse(cfg);
      std::cout << rep.to_json() << std::endl;
    } else if (acdf->parsed()) {
      sqpe::RunConfig cfg = finalize(acdf, acdf_cfg, acdf_config_path, acdf_exact);
      if (cfg.output_prefix.empty()) cfg.output_prefix = "acdf";
      sqpe::run_acdf_sweep(cfg, linspace(x_min, x_max, x_points));
      std::cout << "wrote " << cfg.output_prefix << "_acdf.csv" << std::endl;
    } else if (toff->parsed()) {
      sqpe::RunConfig cfg = finalize(toff, toff_cfg, toff_config_path, toff_exact);
      if (cfg.output_prefix.empty()) cfg.output_prefix = "tradeoff";
      std::vector<double> grid;
      if (bg_max > bg_min)
        grid = linspace(bg_min, bg_max, bg_points);
      else
        grid = linspace(bg_min, bg_min + 63.0, bg_points);
      sqpe::run_tradeoff(cfg, grid);
      std::cout << "wrote " << cfg.output_prefix << "_tradeoff.csv" << std::endl;
    } else if (spectrum_cmd->parsed()) {
      sqpe::RunConfig cfg = finalize(spectrum_cmd, spec_cfg, spec_config_path, spec_exact);
      if (cfg.output_prefix.empty()) cfg.output_prefix = "spectrum";
      const auto rows = sqpe::run_spectrum(cfg);
      std::printf("k,eigenvalue,scaled_eigenvalue,overlap,cdf\n");
      for (const auto& r : rows)
        std::printf("%zu,%.17g,%.17g,%.17g,%.17g\n", r.k, r.eigenvalue,
                    r.scaled_eigenvalue, r.overlap, r.cdf);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sqpe: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
