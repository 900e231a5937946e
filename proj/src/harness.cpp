#include "rprf/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rprf/collision_profile.hpp"
#include "rprf/hybrids.hpp"
#include "rprf/stats.hpp"

namespace rprf {

DistinguisherKind parse_distinguisher(const std::string& name) {
  if (name == "birthday") return DistinguisherKind::birthday;
  if (name == "bht") return DistinguisherKind::bht;
  throw std::invalid_argument("unknown distinguisher `" + name + "` (expected birthday or bht)");
}

GroverBackend parse_backend(const std::string& name) {
  if (name == "statevector") return GroverBackend::statevector;
  if (name == "subspace") return GroverBackend::subspace;
  throw std::invalid_argument("unknown backend `" + name + "` (expected statevector or subspace)");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || value.front() == '-') {
    throw std::invalid_argument(key + ": expected a non-negative integer, got `" + value + "`");
  }
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  // Accept simple fractions such as 3/5.
  const auto slash = value.find('/');
  try {
    if (slash != std::string::npos) {
      return std::stod(value.substr(0, slash)) / std::stod(value.substr(slash + 1));
    }
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(key + ": expected a real number, got `" + value + "`");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<std::uint64_t> parse_size_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (auto caret = item.find('^'); caret != std::string::npos) {
      const auto base = parse_u64("size", trim(item.substr(0, caret)));
      const auto exp = parse_u64("size", trim(item.substr(caret + 1)));
      std::uint64_t v = 1;
      for (std::uint64_t i = 0; i < exp; ++i) v *= base;
      out.push_back(v);
    } else {
      out.push_back(parse_u64("size", item));
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (!seed) throw std::invalid_argument("config: seed is required");
  if (trials == 0) throw std::invalid_argument("config: trials must be >= 1");
  if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("config: d must lie in (0, 1)");
  for (auto n : n_values) {
    if (n < 2) throw std::invalid_argument("config: every n must be >= 2");
    const std::size_t table = k.value_or(default_table_size(n));
    if (distinguisher == DistinguisherKind::bht && (table == 0 || table > n)) {
      throw std::invalid_argument("config: k must lie in [1, n] for n = " + std::to_string(n));
    }
    for (auto b : budgets) {
      if (distinguisher == DistinguisherKind::birthday && (b == 0 || b > n)) {
        throw std::invalid_argument("config: birthday budget " + std::to_string(b) + " outside [1, n] for n = " +
                                    std::to_string(n));
      }
    }
  }
  if (!n_values.empty() && budgets.empty()) throw std::invalid_argument("config: budgets must not be empty");
}

void apply_config_key(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
  const auto value = trim(raw);
  if (key == "n_values" || key == "n") {
    cfg.n_values.clear();
    for (auto v : parse_size_list(value)) cfg.n_values.push_back(static_cast<std::size_t>(v));
  } else if (key == "distinguisher") {
    cfg.distinguisher = parse_distinguisher(value);
  } else if (key == "budgets" || key == "budget") {
    cfg.budgets = parse_size_list(value);
  } else if (key == "k") {
    cfg.k = static_cast<std::size_t>(parse_u64(key, value));
  } else if (key == "trials") {
    cfg.trials = static_cast<std::size_t>(parse_u64(key, value));
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "d") {
    cfg.d = parse_double(key, value);
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "backend") {
    cfg.backend = parse_backend(value);
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(parse_u64(key, value));
  } else {
    throw std::invalid_argument("config: unknown key `" + key + "`");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_config_key(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

std::size_t default_table_size(std::size_t n) {
  auto k = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-9));
  return std::max<std::size_t>(k, 1);
}

SweepRow run_point(const ExperimentConfig& cfg, std::size_t n, std::uint64_t budget) {
  cfg.validate();
  Distinguisher d;
  bool lazy = false;
  if (cfg.distinguisher == DistinguisherKind::birthday) {
    d = make_birthday(static_cast<std::size_t>(budget));
    lazy = true;
  } else {
    BhtParams p;
    p.k = cfg.k.value_or(default_table_size(n));
    p.grover_budget = budget;
    p.search.backend = cfg.backend;
    d = make_bht(p);
  }
  // Budgets at the same n share input draws (common random numbers).
  const auto e = estimate_bias(d, uniform_function_sampler(n, lazy), uniform_permutation_sampler(n, lazy),
                               cfg.trials, derive_seed(*cfg.seed, n), cfg.workers);
  return {n, budget, e.p_function, e.p_permutation, e.bias, e.ci_halfwidth, cfg.trials, *cfg.seed};
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<SweepRow> rows;
  for (auto n : cfg.n_values) {
    for (auto b : cfg.budgets) rows.push_back(run_point(cfg, n, b));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.budget << ',' << format_double(r.p_function) << ',' << format_double(r.p_permutation)
        << ',' << format_double(r.bias) << ',' << format_double(r.ci_halfwidth) << ',' << r.trials << ','
        << r.seed << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw std::runtime_error("csv: header must be `" + std::string(kCsvHeader) + "`");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(trim(cell));
    if (f.size() != 8) throw std::runtime_error("csv: expected 8 fields in `" + line + "`");
    SweepRow r;
    r.n = static_cast<std::size_t>(parse_u64("n", f[0]));
    r.budget = parse_u64("budget", f[1]);
    r.p_function = parse_double("p_function", f[2]);
    r.p_permutation = parse_double("p_permutation", f[3]);
    r.bias = parse_double("bias", f[4]);
    r.ci_halfwidth = parse_double("ci_halfwidth", f[5]);
    r.trials = static_cast<std::size_t>(parse_u64("trials", f[6]));
    r.seed = parse_u64("seed", f[7]);
    rows.push_back(r);
  }
  return rows;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit: need at least 3 points");
  double sx = 0, sy = 0;
  std::vector<std::pair<double, double>> logs;
  for (auto [n, b] : points) {
    if (!(n > 0 && b > 0)) throw std::invalid_argument("fit: points must be positive");
    logs.emplace_back(std::log2(n), std::log2(b));
    sx += logs.back().first;
    sy += logs.back().second;
  }
  const double m = static_cast<double>(logs.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx <= 0) throw std::invalid_argument("fit: all points share the same n");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

ThresholdSearch find_threshold_budget(const std::function<BiasEstimate(std::uint64_t)>& measure,
                                      std::uint64_t lo, std::uint64_t limit, double target) {
  if (lo == 0 || lo > limit) throw std::invalid_argument("threshold search: need 1 <= lo <= limit");
  std::map<std::uint64_t, BiasEstimate> memo;
  auto eval = [&](std::uint64_t b) -> const BiasEstimate& {
    auto it = memo.find(b);
    if (it == memo.end()) it = memo.emplace(b, measure(b)).first;
    return it->second;
  };
  std::uint64_t failing = 0;  // largest budget known to miss the target; 0 = none
  std::uint64_t hit = lo;
  while (eval(hit).bias < target) {
    if (hit == limit) throw std::runtime_error("threshold search: target bias not reached by the budget limit");
    failing = hit;
    hit = std::min(limit, hit * 2);
  }
  if (failing == 0) failing = lo - 1;
  while (hit - failing > 1) {
    const auto mid = failing + (hit - failing) / 2;
    if (eval(mid).bias >= target) {
      hit = mid;
    } else {
      failing = mid;
    }
  }
  return {hit, eval(hit), memo.size()};
}

ThresholdSearch birthday_threshold(std::size_t n, std::size_t trials, std::uint64_t seed, unsigned workers) {
  const auto point_seed = derive_seed(seed, n);
  auto measure = [&](std::uint64_t q) {
    return estimate_bias(make_birthday(static_cast<std::size_t>(q)), uniform_function_sampler(n, true),
                         uniform_permutation_sampler(n, true), trials, point_seed, workers);
  };
  return find_threshold_budget(measure, 2, n);
}

ThresholdSearch bht_threshold(std::size_t n, std::size_t trials, std::uint64_t seed, GroverBackend backend,
                              unsigned workers) {
  const auto k = default_table_size(n);
  const auto point_seed = derive_seed(seed, n);
  auto measure = [&](std::uint64_t total) {
    BhtParams p;
    p.k = k;
    p.grover_budget = total - k;
    p.search.backend = backend;
    return estimate_bias(make_bht(p), uniform_function_sampler(n), uniform_permutation_sampler(n), trials,
                         point_seed, workers);
  };
  return find_threshold_budget(measure, k + 1, static_cast<std::uint64_t>(k + 64 * std::sqrt(double(n))));
}

bool ClaimsReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClaimCheck& c) { return c.pass; });
}

ClaimsReport verify_claims(std::size_t n, std::size_t trials, std::uint64_t seed, double d) {
  if (n < 16) throw std::invalid_argument("verify-claims: n must be >= 16");
  if (trials == 0) throw std::invalid_argument("verify-claims: trials must be >= 1");
  ClaimsReport report;
  const GoodnessRule rule;
  const double threshold = rule.threshold(n);
  std::ostringstream detail;

  // (a) good-profile frequency and (c) maxload distribution share samples.
  Rng rng(derive_seed(seed, 1));
  std::size_t good = 0;
  std::vector<std::size_t> loads;
  std::vector<CollisionProfile> good_profiles;
  loads.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    auto c = profile_of(sample_uniform_function(n, rng));
    loads.push_back(maxload(c));
    if (is_good(c, rule)) {
      ++good;
      if (good_profiles.size() < 1000) good_profiles.push_back(std::move(c));
    }
  }
  const double good_fraction = static_cast<double>(good) / static_cast<double>(trials);
  const double good_floor = 1.0 - 1.0 / static_cast<double>(n) - 0.004;
  detail << "fraction good = " << good_fraction << " (floor " << good_floor << ", guarantee "
         << 1.0 - 1.0 / static_cast<double>(n) << ")";
  report.checks.push_back({"good-profile frequency", detail.str(), good_fraction >= good_floor});

  // (b) load statistics vs the Poisson(1) limit, both readings reported.
  {
    // Ten samples at n = 2^16; proportionally more below that.
    const std::size_t kSamples = std::max<std::size_t>(10, (std::size_t{10} << 16) / n);
    constexpr unsigned kMaxK = 4;
    Rng brng(derive_seed(seed, 2));
    std::vector<double> range_fraction(kMaxK + 1, 0.0);
    for (std::size_t s = 0; s < kSamples; ++s) {
      auto f = sample_uniform_function(n, brng);
      std::vector<std::size_t> pre(n, 0);
      for (auto y : f.values()) ++pre[y];
      for (auto c : pre) {
        if (c <= kMaxK) range_fraction[c] += 1.0 / static_cast<double>(n * kSamples);
      }
    }
    for (unsigned k = 0; k <= kMaxK; ++k) {
      const double poisson = stats::poisson_pmf(1.0, k);
      const double finite = std::abs(stats::binomial_pmf(n, 1.0 / static_cast<double>(n), k) - poisson);
      const double tol = (k <= 2 ? 0.01 : 0.005) + finite;
      std::ostringstream ds;
      ds << "range fraction = " << range_fraction[k] << " vs e^-1/" << k << "! = " << poisson << " (tol " << tol
         << "); domain fraction = " << k * range_fraction[k] << " vs " << k * poisson;
      report.checks.push_back({"load statistics k=" + std::to_string(k), ds.str(),
                               std::abs(range_fraction[k] - poisson) <= tol});
    }
  }

  // (c) the 99th percentile of maxload sits below the goodness threshold.
  {
    auto sorted = loads;
    std::sort(sorted.begin(), sorted.end());
    const auto p99 = sorted[std::min(sorted.size() - 1, (sorted.size() * 99) / 100)];
    std::ostringstream ds;
    ds << "max observed maxload = " << sorted.back() << ", 99th percentile = " << p99 << ", threshold = "
       << threshold;
    report.checks.push_back({"maxload vs threshold", ds.str(), static_cast<double>(p99) < threshold});
  }

  // (d) hybrid chain length and endpoints on sampled good profiles.
  {
    const double bound = threshold + 2.0;
    std::size_t longest = 0;
    bool ok = true;
    for (const auto& c : good_profiles) {
      const auto hs = build_hybrids(c, d);
      longest = std::max(longest, hs.profiles.size());
      ok = ok && static_cast<double>(hs.profiles.size()) <= bound &&
           hs.profiles.front() == CollisionProfile::permutation(n) && hs.profiles.back() == c;
    }
    std::ostringstream ds;
    ds << good_profiles.size() << " profiles, longest chain = " << longest << ", bound = " << bound;
    report.checks.push_back({"hybrid chain length", ds.str(), ok && !good_profiles.empty()});
  }

  // (e) conjugation uniformity on the 144-member class {1:2, 2:2} at n = 4.
  {
    const CollisionProfile c(4, {{1, 2}, {2, 2}});
    std::map<std::vector<Index>, std::size_t> cell;
    for (std::size_t code = 0; code < 256; ++code) {
      std::vector<Index> v{code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3};
      FunctionTable f(v);
      if (profile_of(f) == c) cell.emplace(v, cell.size());
    }
    std::vector<std::size_t> observed(cell.size(), 0);
    Rng crng(derive_seed(seed, 5));
    const std::size_t draws = 200 * cell.size();
    for (std::size_t i = 0; i < draws; ++i) {
      const auto f = sample_from_profile(c, crng);
      ++observed.at(cell.at(std::vector<Index>(f.values().begin(), f.values().end())));
    }
    const double chi = stats::chi_square_uniform(observed);
    const double p = stats::chi_square_pvalue(chi, static_cast<double>(observed.size() - 1));
    std::ostringstream ds;
    ds << cell.size() << " class members, " << draws << " draws, chi2 = " << chi << ", p = " << p;
    report.checks.push_back({"conjugation uniformity", ds.str(), cell.size() == 144 && p > 0.001});
  }
  return report;
}

void write_report(std::ostream& out, const ClaimsReport& report) {
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << '\n';
  }
  out << (report.all_pass() ? "all checks passed" : "some checks failed") << '\n';
}

}  // namespace rprf
