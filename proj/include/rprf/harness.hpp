#pragma once

// Experiment orchestration: sweep configuration, CSV rows, threshold-budget
// search, exponent fits, and the self-contained claims check.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rprf/distinguishers.hpp"

namespace rprf {

enum class DistinguisherKind { birthday, bht };

DistinguisherKind parse_distinguisher(const std::string& name);
GroverBackend parse_backend(const std::string& name);

struct ExperimentConfig {
  std::vector<std::size_t> n_values;
  DistinguisherKind distinguisher = DistinguisherKind::birthday;
  /// birthday: classical query count q; bht: Grover oracle budget.
  std::vector<std::uint64_t> budgets;
  /// bht table size; defaults to ceil(n^(1/3)).
  std::optional<std::size_t> k;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  double d = 0.6;
  std::string output;
  GroverBackend backend = GroverBackend::statevector;
  unsigned workers = 0;

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

/// Parses `key = value` lines (`#` starts a comment). Unknown keys are errors.
ExperimentConfig parse_config(std::istream& in);
/// Applies one key; shared by the config file reader and CLI overrides.
void apply_config_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// "1024", "2^10" and comma-separated lists of either.
std::vector<std::uint64_t> parse_size_list(const std::string& text);

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t budget = 0;
  double p_function = 0.0;
  double p_permutation = 0.0;
  double bias = 0.0;
  double ci_halfwidth = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader = "n,budget,p_function,p_permutation,bias,ci_halfwidth,trials,seed";

std::size_t default_table_size(std::size_t n);

/// One row: the configured distinguisher at (n, budget).
SweepRow run_point(const ExperimentConfig& cfg, std::size_t n, std::uint64_t budget);
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log2(budget) against log2(n).
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);

/// Smallest budget in [lo, limit] whose measured bias reaches `target`,
/// located by doubling then bisection. Evaluations are memoised.
struct ThresholdSearch {
  std::uint64_t budget = 0;
  BiasEstimate estimate;
  std::size_t evaluations = 0;
};
ThresholdSearch find_threshold_budget(const std::function<BiasEstimate(std::uint64_t)>& measure,
                                      std::uint64_t lo, std::uint64_t limit, double target = 0.5);

/// Threshold of classical_birthday at size n (budget = q).
ThresholdSearch birthday_threshold(std::size_t n, std::size_t trials, std::uint64_t seed, unsigned workers = 0);
/// Threshold of bht_distinguisher at size n in total queries k + grover budget,
/// with k = default_table_size(n).
ThresholdSearch bht_threshold(std::size_t n, std::size_t trials, std::uint64_t seed,
                              GroverBackend backend = GroverBackend::subspace, unsigned workers = 0);

struct ClaimCheck {
  std::string name;
  std::string detail;
  bool pass = false;
};

struct ClaimsReport {
  std::vector<ClaimCheck> checks;
  bool all_pass() const;
};

/// Good-profile frequency, load statistics, maxload vs threshold, hybrid
/// chain length, and conjugation uniformity. Requires n >= 16.
ClaimsReport verify_claims(std::size_t n, std::size_t trials, std::uint64_t seed, double d = 0.6);
void write_report(std::ostream& out, const ClaimsReport& report);

}  // namespace rprf
