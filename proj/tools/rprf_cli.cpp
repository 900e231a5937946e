// Command-line front end: sampling, profiles, hybrid chains, bias runs,
// sweeps, exponent fits and the claims check.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rprf/collision_profile.hpp"
#include "rprf/harness.hpp"
#include "rprf/hybrids.hpp"

using namespace rprf;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open `" + path + "`");
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random function vs random permutation query experiments"};
  app.require_subcommand(1);

  // sample-function
  auto* sample = app.add_subcommand("sample-function", "Print a sampled function table");
  std::size_t sample_n = 0;
  std::string sample_dist;
  std::uint64_t sample_seed = 0;
  sample->add_option("--n", sample_n, "Domain size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--dist", sample_dist, "rf or rp")->required()->check(CLI::IsMember({"rf", "rp"}));
  sample->add_option("--seed", sample_seed, "Random seed")->required();

  // profile
  auto* profile = app.add_subcommand("profile", "Collision profile, maxload and goodness of a function table");
  std::string profile_in;
  profile->add_option("--in", profile_in, "Function table file")->required();

  // hybrids
  auto* hybrids = app.add_subcommand("hybrids", "Hybrid profile chain for a target profile");
  std::string hybrids_in;
  std::string hybrids_d = "3/5";
  hybrids->add_option("--in", hybrids_in, "Profile file")->required();
  hybrids->add_option("--d", hybrids_d, "Threshold exponent in (0,1)");

  // run
  auto* run = app.add_subcommand("run", "Estimate the bias of one distinguisher configuration");
  ExperimentConfig run_cfg;
  std::string run_dist;
  std::size_t run_n = 0;
  std::uint64_t run_budget = 0;
  std::optional<std::size_t> run_k;
  std::uint64_t run_seed = 0;
  std::string run_backend = "statevector";
  run->add_option("--distinguisher", run_dist, "birthday or bht")->required()->check(CLI::IsMember({"birthday", "bht"}));
  run->add_option("--n", run_n, "Domain size")->required();
  run->add_option("--budget", run_budget, "Queries (birthday) or Grover oracle budget (bht)")->required();
  run->add_option("--k", run_k, "Table size for bht (default ceil(n^(1/3)))");
  run->add_option("--trials", run_cfg.trials, "Trials per distribution")->required();
  run->add_option("--seed", run_seed, "Random seed")->required();
  run->add_option("--backend", run_backend, "statevector or subspace")->check(CLI::IsMember({"statevector", "subspace"}));
  run->add_option("--workers", run_cfg.workers, "Worker threads (0 = hardware)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a configured sweep and write CSV");
  std::string sweep_config;
  std::string sweep_output;
  std::optional<std::uint64_t> sweep_seed;
  sweep->add_option("--config", sweep_config, "key = value config file")->required();
  sweep->add_option("--output", sweep_output, "CSV path (overrides config; '-' for stdout)");
  sweep->add_option("--seed", sweep_seed, "Seed (overrides config)");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit log2(budget) against log2(n) from a CSV");
  std::string fit_in;
  fit->add_option("--in", fit_in, "CSV with the sweep header")->required();

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Smallest budget reaching bias 0.5, one CSV row per n (input for fit)");
  std::string thr_dist, thr_sizes;
  std::size_t thr_trials = 0;
  std::uint64_t thr_seed = 0;
  threshold->add_option("--distinguisher", thr_dist, "birthday (budget q) or bht (budget k + Grover budget)")
      ->required()
      ->check(CLI::IsMember({"birthday", "bht"}));
  threshold->add_option("--n-values", thr_sizes, "Comma list, e.g. 2^10,2^12")->required();
  threshold->add_option("--trials", thr_trials, "Trials per distribution and budget")->required();
  threshold->add_option("--seed", thr_seed, "Random seed")->required();

  // verify-claims
  auto* verify = app.add_subcommand("verify-claims", "Check load statistics, goodness, hybrids and conjugation");
  std::size_t verify_n = 0, verify_trials = 0;
  std::uint64_t verify_seed = 0;
  verify->add_option("--n", verify_n, "Domain size (>= 16)")->required();
  verify->add_option("--trials", verify_trials, "Sampled functions")->required();
  verify->add_option("--seed", verify_seed, "Random seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      Rng rng(sample_seed);
      write_function(std::cout, sample_dist == "rf" ? sample_uniform_function(sample_n, rng)
                                                    : sample_uniform_permutation(sample_n, rng));
    } else if (*profile) {
      auto in = open_input(profile_in);
      const auto c = profile_of(read_function(in));
      write_profile(std::cout, c);
      std::cout << "maxload " << maxload(c) << '\n';
      if (c.n() >= 4) {
        const GoodnessRule rule;
        std::cout << "threshold " << rule.threshold(c.n()) << '\n'
                  << "good " << (is_good(c, rule) ? "yes" : "no") << '\n';
      } else {
        std::cout << "good undefined (n < 4)\n";
      }
    } else if (*hybrids) {
      auto in = open_input(hybrids_in);
      const auto c = read_profile(in);
      ExperimentConfig tmp;
      apply_config_key(tmp, "d", hybrids_d);
      const auto hs = build_hybrids(c, tmp.d);
      for (std::size_t j = 0; j < hs.profiles.size(); ++j) {
        if (j) std::cout << '\n';
        write_profile(std::cout, hs.profiles[j]);
      }
    } else if (*run) {
      run_cfg.distinguisher = parse_distinguisher(run_dist);
      run_cfg.n_values = {run_n};
      run_cfg.budgets = {run_budget};
      run_cfg.k = run_k;
      run_cfg.seed = run_seed;
      run_cfg.backend = parse_backend(run_backend);
      write_csv(std::cout, {run_point(run_cfg, run_n, run_budget)});
    } else if (*sweep) {
      auto in = open_input(sweep_config);
      auto cfg = parse_config(in);
      if (sweep_seed) cfg.seed = *sweep_seed;
      if (!sweep_output.empty()) cfg.output = sweep_output;
      cfg.validate();
      const auto rows = run_sweep(cfg);
      if (cfg.output.empty() || cfg.output == "-") {
        write_csv(std::cout, rows);
      } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write `" + cfg.output + "`");
        write_csv(out, rows);
        if (!out) throw std::runtime_error("write failed for `" + cfg.output + "`");
      }
    } else if (*fit) {
      auto in = open_input(fit_in);
      std::vector<std::pair<double, double>> pts;
      for (const auto& r : read_csv(in)) pts.emplace_back(static_cast<double>(r.n), static_cast<double>(r.budget));
      const auto f = fit_exponent(pts);
      std::cout << "slope " << f.slope << "\nintercept " << f.intercept << "\nr2 " << f.r_squared << '\n';
    } else if (*threshold) {
      std::vector<SweepRow> rows;
      for (auto n : parse_size_list(thr_sizes)) {
        const auto t = parse_distinguisher(thr_dist) == DistinguisherKind::birthday
                           ? birthday_threshold(n, thr_trials, thr_seed)
                           : bht_threshold(n, thr_trials, thr_seed);
        const auto& e = t.estimate;
        rows.push_back({n, t.budget, e.p_function, e.p_permutation, e.bias, e.ci_halfwidth, thr_trials, thr_seed});
      }
      write_csv(std::cout, rows);
    } else if (*verify) {
      const auto report = verify_claims(verify_n, verify_trials, verify_seed);
      write_report(std::cout, report);
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
