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

#include "sqpe/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqpe/hamiltonian_io.hpp"
#include "sqpe/rng.hpp"

namespace sqpe {

namespace {

constexpr double kPi = 3.14159265358979323846;

// seed tags for independent sub-streams
constexpr std::uint64_t kTrialTag = 0x747269616cULL;
constexpr std::uint64_t kSamplesTag = 0x73616d70ULL;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& name, const std::string& constraint) {
  if (!ok)
    throw std::invalid_argument("config: parameter '" + name + "' must " +
                                constraint);
}

struct ResolvedRun {
  PauliSum h;
  EigenSystem eig;
  StateVector trial = StateVector(1);
  SpectralReference ref;
  FourierSeries series;
  RuntimeVector rv;
  double epsilon = 0.0;
  double delta_band = 0.0;
  double a_value = 0.0;
  double a_legacy = 0.0;
  long n_samples = 0;
  long n_samples_legacy = 0;
  double n_g = 0.0;
  std::vector<std::string> warnings;
  EstimatorConfig ecfg{};

  explicit ResolvedRun(PauliSum hamiltonian) : h(std::move(hamiltonian)) {}
};

/// Shared front half of every pipeline entry point.
ResolvedRun resolve(const RunConfig& cfg) {
  require(!cfg.hamiltonian_path.empty(), "hamiltonian", "be set");
  require(cfg.delta_precision > 0.0, "delta", "be > 0");
  require(cfg.eta > 0.0 && cfg.eta <= 1.0, "eta", "be in (0, 1]");
  require(cfg.nu > 0.0 && cfg.nu < 1.0, "nu", "be in (0, 1)");
  require(cfg.epsilon_q > 0.0 && cfg.epsilon_q < 1.0, "epsilon_q",
          "be in (0, 1)");
  require(cfg.epsilon_c > 0.0, "epsilon_c", "be > 0");
  require(cfg.threads >= 1, "threads", "be >= 1");
  require(cfg.sample_override >= 0, "samples", "be >= 0");

  PauliSum h = parse_hamiltonian(cfg.hamiltonian_path, cfg.delta_precision);
  const double tau = h.tau();

  const double epsilon = cfg.epsilon < 0.0 ? cfg.eta / 4.0 : cfg.epsilon;
  require(epsilon > 0.0 && epsilon < cfg.eta / 2.0, "epsilon",
          "be in (0, eta/2)");
  const double auto_delta = std::min(kPi / 2.0, tau * cfg.delta_precision);
  const double delta_band = cfg.delta_band < 0.0 ? auto_delta : cfg.delta_band;
  require(delta_band > 0.0 && delta_band <= auto_delta, "delta_band",
          "be in (0, min(pi/2, tau*Delta)]");

  ResolvedRun run(std::move(h));
  run.epsilon = epsilon;
  run.delta_band = delta_band;
  run.ecfg = {cfg.eta, epsilon, cfg.nu, cfg.shot_mode};

  run.eig = diagonalize(run.h);
  TrialStateInfo tinfo;
  run.trial = make_trial_state(run.eig, cfg.eta,
                               derive_seed(cfg.seed, kTrialTag), &tinfo);
  if (tinfo.ground_degenerate)
    run.warnings.push_back(
        "ground state degenerate (multiplicity " +
        std::to_string(tinfo.ground_multiplicity) +
        "); trial built on the first sorted eigenvector");
  run.ref = spectral_reference(run.eig, run.trial);

  run.series = build_series(choose_params(epsilon, delta_band));
  if (run.series.dropped_count() > 0)
    run.warnings.push_back(std::to_string(run.series.dropped_count()) +
                           " coefficients below 1e-300 dropped");

  if (cfg.runtime_mode == RunConfig::RuntimeMode::quadratic) {
    run.rv = default_runtime(run.series, tau, run.h.lambda());
  } else {
    require(cfg.b_g >= 1.0, "b_g", "be >= 1 for runtime = optimized");
    run.rv = optimize_runtime(run.series, run.ecfg,
                              OptimizeMode::min_samples_bounded, tau,
                              run.h.lambda(), cfg.b_g, {cfg.epsilon_c})
                 .r;
  }

  run.a_value = compute_a(run.series, run.rv, cfg.epsilon_c);
  run.a_legacy = legacy_a(run.series, run.rv, cfg.epsilon_c);
  const auto count = sample_count_detail(run.a_value, run.ecfg);
  if (count.clamped) run.warnings.push_back("sample count clamped to 1");
  run.n_samples = cfg.sample_override > 0 ? cfg.sample_override : count.n_s;
  if (cfg.sample_override > 0)
    run.warnings.push_back("sample count overridden to " +
                           std::to_string(cfg.sample_override) + " (formula: " +
                           std::to_string(count.n_s) + ")");
  run.n_samples_legacy = legacy_sample_count(run.a_legacy, run.ecfg);
  run.n_g = gate_cost(run.series, run.rv, cfg.epsilon_c);
  return run;
}

void fill_report_common(GseReport& rep, const ResolvedRun& run,
                        const RunConfig& cfg) {
  rep.beta0_reference = run.eig.eigenvalues.front();
  rep.n_samples = run.n_samples;
  rep.n_samples_legacy = run.n_samples_legacy;
  rep.a_value = run.a_value;
  rep.a_legacy = run.a_legacy;
  rep.n_g = run.n_g;
  rep.seed = cfg.seed;
  rep.lambda = run.h.lambda();
  rep.tau = run.h.tau();
  rep.delta_band = run.delta_band;
  rep.fourier_d = run.series.d();
  rep.fourier_beta = run.series.params().beta;
  rep.magnitude_sum = run.series.magnitude_sum();
  rep.warnings = run.warnings;
  rep.config_echo = cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
}

}  // namespace

std::uint64_t config_hash(const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.hamiltonian_path << '|' << format_double(cfg.delta_precision) << '|'
     << format_double(cfg.eta) << '|' << format_double(cfg.epsilon) << '|'
     << format_double(cfg.nu) << '|' << format_double(cfg.delta_band) << '|'
     << format_double(cfg.epsilon_q) << '|' << format_double(cfg.epsilon_c)
     << '|' << (cfg.runtime_mode == RunConfig::RuntimeMode::quadratic ? "quadratic" : "opt")
     << '|' << format_double(cfg.b_g) << '|'
     << (cfg.shot_mode == ShotMode::single_shot ? "single" : "exact") << '|'
     << cfg.seed << '|' << cfg.sample_override;
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : os.str()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

void save_sample_set(const AcdfSampleSet& set, std::uint64_t seed,
                     std::uint64_t cfg_hash, const std::string& path) {
  std::ostringstream os;
  os << "# a_value=" << format_double(set.a_value) << " seed=" << seed
     << " config_hash=" << cfg_hash << "\n";
  os << "n,j,z_re,z_im\n";
  for (std::size_t n = 0; n < set.records.size(); ++n) {
    const auto& r = set.records[n];
    os << n << ',' << r.j << ',' << format_double(r.z_re) << ','
       << format_double(r.z_im) << "\n";
  }
  write_file(path, os.str());
}

AcdfSampleSet load_sample_set(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  AcdfSampleSet set;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("a_value=");
      if (pos != std::string::npos)
        set.a_value = std::stod(line.substr(pos + 8));
      continue;
    }
    if (line.rfind("n,", 0) == 0) continue;
    std::istringstream ls(line);
    std::string tok;
    SampleRecord rec{};
    std::getline(ls, tok, ',');
    std::getline(ls, tok, ',');
    rec.j = std::stoi(tok);
    std::getline(ls, tok, ',');
    rec.z_re = std::stod(tok);
    std::getline(ls, tok, ',');
    rec.z_im = std::stod(tok);
    set.records.push_back(rec);
  }
  set.count = static_cast<long>(set.records.size());
  return set;
}

void save_series_csv(const FourierSeries& series, const std::string& path) {
  std::ostringstream os;
  os << "k,magnitude\n";
  const auto mags = series.magnitudes();
  for (std::size_t j = 0; j < mags.size(); ++j)
    os << (2 * j + 1) << ',' << format_double(mags[j]) << "\n";
  write_file(path, os.str());
}

GseReport run_gse(const RunConfig& cfg) {
  ResolvedRun run = resolve(cfg);
  GseReport rep;
  fill_report_common(rep, run, cfg);

  const std::uint64_t sample_seed = derive_seed(cfg.seed, kSamplesTag);
  long collections = 0;
  AcdfSampleSet shared;
  auto collect = [&](std::uint64_t salt) {
    ++collections;
    return collect_samples(run.h, run.trial, run.series, run.rv, run.ecfg,
                           run.n_samples, derive_seed(sample_seed, salt),
                           cfg.threads, cfg.epsilon_q, cfg.epsilon_c);
  };

  if (cfg.solver == RunConfig::Solver::binary) {
    rep.solver = "binary";
    if (!cfg.resample_per_iteration) shared = collect(0);
    int query_index = 0;
    auto query = [&](double x) {
      if (cfg.resample_per_iteration) {
        AcdfSampleSet fresh = collect(static_cast<std::uint64_t>(++query_index));
        return estimate_at(fresh, x).value;
      }
      return estimate_at(shared, x).value;
    };
    SearchConfig scfg{cfg.eta, run.delta_band, run.h.tau(), 1.0 - cfg.nu, 64};
    const SearchTrace trace = binary_search_gse(query, scfg);
    rep.gse_estimate = trace.result;
    rep.n_iters = static_cast<int>(trace.iterations.size());

    if (!cfg.output_prefix.empty()) {
      std::ostringstream os;
      os << "iteration,x,estimate,flag,x0,x1\n";
      for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
        const auto& it = trace.iterations[i];
        os << i << ',' << format_double(it.x) << ','
           << format_double(it.estimate) << ',' << it.flag << ','
           << format_double(it.x0) << ',' << format_double(it.x1) << "\n";
      }
      write_file(cfg.output_prefix + "_trace.csv", os.str());
    }
  } else {
    rep.solver = "changepoint";
    require(cfg.grid_resolution > 0.0, "grid_resolution", "be > 0");
    require(cfg.delta_c > 0.0, "delta_c", "be > 0");
    ChangepointConfig ccfg;
    ccfg.delta_c = cfg.delta_c;
    ccfg.resolution = cfg.grid_resolution;
    const std::size_t points =
        static_cast<std::size_t>(std::floor(kPi / cfg.grid_resolution)) + 1;
    require(points >= 3, "grid_resolution",
            "be fine enough for at least 3 grid points");
    for (std::size_t k = 0; k < points; ++k)
      ccfg.grid.push_back(-kPi / 2.0 +
                          cfg.grid_resolution * static_cast<double>(k));
    shared = collect(0);
    std::vector<double> y(points);
    for (std::size_t k = 0; k < points; ++k)
      y[k] = estimate_at(shared, ccfg.grid[k]).value;
    const ChangepointResult res = changepoint_gse(y, ccfg, run.h.tau());
    rep.gse_estimate = res.gse;
    rep.n_iters = res.passes;

    if (!cfg.output_prefix.empty()) {
      std::ostringstream os;
      os << "pass,split,deviation_drop,accepted\n";
      for (const auto& s : res.trace)
        os << s.pass << ',' << s.split << ','
           << format_double(s.deviation_drop) << ',' << (s.accepted ? 1 : 0)
           << "\n";
      write_file(cfg.output_prefix + "_trace.csv", os.str());
    }
  }

  rep.delta0 = std::abs(rep.gse_estimate - rep.beta0_reference);
  rep.hadamard_shots = 2 * run.n_samples * collections;

  if (!cfg.output_prefix.empty()) {
    if (cfg.dump_samples && !shared.records.empty())
      save_sample_set(shared, cfg.seed, config_hash(cfg),
                      cfg.output_prefix + "_samples.csv");
    if (cfg.dump_series)
      save_series_csv(run.series, cfg.output_prefix + "_series.csv");
    write_file(cfg.output_prefix + "_report.json", rep.to_json() + "\n");
  }
  return rep;
}

std::vector<SweepRow> run_acdf_sweep(const RunConfig& cfg,
                                     const std::vector<double>& x_grid) {
  if (x_grid.empty())
    throw std::invalid_argument("run_acdf_sweep: empty x grid");
  ResolvedRun run = resolve(cfg);
  const std::uint64_t sample_seed = derive_seed(cfg.seed, kSamplesTag);
  const AcdfSampleSet set =
      collect_samples(run.h, run.trial, run.series, run.rv, run.ecfg,
                      run.n_samples, derive_seed(sample_seed, 0), cfg.threads,
                      cfg.epsilon_q, cfg.epsilon_c);
  std::vector<SweepRow> rows;
  rows.reserve(x_grid.size());
  for (double x : x_grid) {
    const AcdfEstimate est = estimate_at(set, x);
    rows.push_back({x, est.value, est.std_error,
                    exact_cdf(run.ref, run.h.tau(), x),
                    acdf_closed_form(run.ref, run.series, run.h.tau(), x)});
  }
  if (!cfg.output_prefix.empty()) {
    std::ostringstream os;
    os << "x,estimate,std_error,exact_cdf,closed_form_acdf\n";
    for (const auto& r : rows)
      os << format_double(r.x) << ',' << format_double(r.estimate) << ','
         << format_double(r.std_error) << ',' << format_double(r.exact_cdf)
         << ',' << format_double(r.closed_form_acdf) << "\n";
    write_file(cfg.output_prefix + "_acdf.csv", os.str());
    if (cfg.dump_samples)
      save_sample_set(set, cfg.seed, config_hash(cfg),
                      cfg.output_prefix + "_samples.csv");
  }
  return rows;
}

std::vector<CostPoint> run_tradeoff(const RunConfig& cfg,
                                    const std::vector<double>& b_g_grid) {
  ResolvedRun run = resolve(cfg);
  OptimizerOptions opts;
  opts.epsilon_c = cfg.epsilon_c;
  const auto curve = tradeoff_curve(run.series, run.ecfg, run.h.tau(),
                                    run.h.lambda(), b_g_grid, opts);
  if (!cfg.output_prefix.empty()) {
    std::ostringstream os;
    os << "b_g,n_g,n_s_scaled,c\n";
    for (const auto& p : curve)
      os << format_double(p.b_g) << ',' << format_double(p.n_g) << ','
         << format_double(p.n_s_scaled) << ',' << format_double(p.c_param)
         << "\n";
    write_file(cfg.output_prefix + "_tradeoff.csv", os.str());
  }
  return curve;
}

std::vector<SpectrumRow> run_spectrum(const RunConfig& cfg) {
  ResolvedRun run = resolve(cfg);
  std::vector<SpectrumRow> rows;
  double cum = 0.0;
  for (std::size_t k = 0; k < run.ref.eigenvalues.size(); ++k) {
    cum += run.ref.overlaps[k];
    rows.push_back({k, run.ref.eigenvalues[k],
                    run.h.tau() * run.ref.eigenvalues[k], run.ref.overlaps[k],
                    cum});
  }
  if (!cfg.output_prefix.empty()) {
    std::ostringstream os;
    os << "k,eigenvalue,scaled_eigenvalue,overlap,cdf\n";
    for (const auto& r : rows)
      os << r.k << ',' << format_double(r.eigenvalue) << ','
         << format_double(r.scaled_eigenvalue) << ','
         << format_double(r.overlap) << ',' << format_double(r.cdf) << "\n";
    write_file(cfg.output_prefix + "_spectrum.csv", os.str());
  }
  return rows;
}

void apply_config_line(RunConfig& cfg, const std::string& key,
                       const std::string& value) {
  auto as_double = [&] { return std::stod(value); };
  if (key == "hamiltonian") cfg.hamiltonian_path = value;
  else if (key == "delta") cfg.delta_precision = as_double();
  else if (key == "eta") cfg.eta = as_double();
  else if (key == "epsilon") cfg.epsilon = as_double();
  else if (key == "nu") cfg.nu = as_double();
  else if (key == "delta_band") cfg.delta_band = value == "auto" ? -1.0 : as_double();
  else if (key == "epsilon_q") cfg.epsilon_q = as_double();
  else if (key == "epsilon_c") cfg.epsilon_c = as_double();
  else if (key == "runtime") {
    if (value == "quadratic") cfg.runtime_mode = RunConfig::RuntimeMode::quadratic;
    else if (value == "optimized") cfg.runtime_mode = RunConfig::RuntimeMode::optimized;
    else throw std::invalid_argument("config: runtime must be quadratic|optimized");
  } else if (key == "b_g") cfg.b_g = as_double();
  else if (key == "shots") {
    if (value == "single") cfg.shot_mode = ShotMode::single_shot;
    else if (value == "exact") cfg.shot_mode = ShotMode::exact;
    else throw std::invalid_argument("config: shots must be single|exact");
  } else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "threads") cfg.threads = std::stoi(value);
  else if (key == "solver") {
    if (value == "binary") cfg.solver = RunConfig::Solver::binary;
    else if (value == "changepoint") cfg.solver = RunConfig::Solver::changepoint;
    else throw std::invalid_argument("config: solver must be binary|changepoint");
  } else if (key == "grid_resolution") cfg.grid_resolution = as_double();
  else if (key == "delta_c") cfg.delta_c = as_double();
  else if (key == "resample_per_iteration") cfg.resample_per_iteration = value == "true" || value == "1";
  else if (key == "samples") cfg.sample_override = std::stol(value);
  else if (key == "output_prefix") cfg.output_prefix = value;
  else if (key == "dump_samples") cfg.dump_samples = value == "true" || value == "1";
  else if (key == "dump_series") cfg.dump_series = value == "true" || value == "1";
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open '" + path + "'");
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(line_no) +
                               ": expected `key = value`");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string GseReport::to_json() const {
  nlohmann::json j;
  j["gse_estimate"] = gse_estimate;
  j["beta0_reference"] = beta0_reference;
  j["delta0"] = delta0;
  j["n_iters"] = n_iters;
  j["n_samples"] = n_samples;
  j["n_samples_legacy"] = n_samples_legacy;
  j["a_value"] = a_value;
  j["a_legacy"] = a_legacy;
  j["n_g"] = n_g;
  j["seed"] = seed;
  j["lambda"] = lambda;
  j["tau"] = tau;
  j["delta_band"] = delta_band;
  j["fourier_d"] = fourier_d;
  j["fourier_beta"] = fourier_beta;
  j["magnitude_sum"] = magnitude_sum;
  j["hadamard_shots"] = hadamard_shots;
  j["solver"] = solver;
  j["warnings"] = warnings;

  nlohmann::json echo;
  echo["hamiltonian"] = config_echo.hamiltonian_path;
  echo["delta"] = config_echo.delta_precision;
  echo["eta"] = config_echo.eta;
  echo["epsilon"] = config_echo.epsilon;
  echo["nu"] = config_echo.nu;
  echo["delta_band"] =
      config_echo.delta_band < 0.0 ? "auto" : format_double(config_echo.delta_band);
  echo["epsilon_q"] = config_echo.epsilon_q;
  echo["epsilon_c"] = config_echo.epsilon_c;
  echo["runtime"] =
      config_echo.runtime_mode == RunConfig::RuntimeMode::quadratic ? "quadratic" : "optimized";
  echo["b_g"] = config_echo.b_g;
  echo["shots"] =
      config_echo.shot_mode == ShotMode::single_shot ? "single" : "exact";
  echo["seed"] = config_echo.seed;
  echo["threads"] = config_echo.threads;
  echo["solver"] =
      config_echo.solver == RunConfig::Solver::binary ? "binary" : "changepoint";
  echo["grid_resolution"] = config_echo.grid_resolution;
  echo["delta_c"] = config_echo.delta_c;
  echo["resample_per_iteration"] = config_echo.resample_per_iteration;
  echo["samples"] = config_echo.sample_override;
  j["config_echo"] = echo;
  return j.dump(2);
}

}  // namespace sqpe
