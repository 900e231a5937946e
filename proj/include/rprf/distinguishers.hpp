#pragma once

// Random-function vs random-permutation distinguishers and the machinery to
// measure their bias.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rprf/function_model.hpp"
#include "rprf/grover.hpp"

namespace rprf {

struct DistinguisherReport {
  int output_bit = 0;
  std::uint64_t classical_queries = 0;
  std::uint64_t oracle_queries = 0;  // quantum oracle applications
  std::vector<std::pair<Index, Index>> transcript;
};

/// A distinguisher run: reads its input only through the oracle; all internal
/// randomness comes from the supplied engine. Must be callable concurrently.
using Distinguisher = std::function<DistinguisherReport(CountingOracle&, Rng&)>;

/// Query q distinct uniform points; output 1 iff two answers collide.
DistinguisherReport classical_birthday(CountingOracle& oracle, std::size_t q, Rng& rng);

/// H(x) = 1 iff f(x) = f(s) for some table entry s != x. Materialised through
/// the oracle's uncounted view; the returned oracle counts its own applications.
BooleanOracle build_marked_oracle(std::span<const std::pair<Index, Index>> table, const CountingOracle& oracle);

struct BhtParams {
  std::size_t k = 0;                  // table size |T|
  std::uint64_t grover_budget = 0;    // quantum oracle applications allowed
  BbhtConfig search{};
};

/// Table of k random evaluations, then an unknown-count Grover search for an
/// element colliding with the table.
DistinguisherReport bht_distinguisher(CountingOracle& oracle, const BhtParams& params, Rng& rng);

/// Runs `inner` against x -> pi(f(sigma(x))) with fresh uniform pi, sigma.
DistinguisherReport conjugated_distinguisher(const Distinguisher& inner, CountingOracle& oracle, Rng& rng);

/// Majority-style vote: 1 iff the acceptance fraction over `reps` runs is >= threshold.
DistinguisherReport amplify(const Distinguisher& inner, std::size_t reps, double threshold,
                            CountingOracle& oracle, Rng& rng);

Distinguisher make_birthday(std::size_t q);
Distinguisher make_bht(BhtParams params);
Distinguisher make_conjugated(Distinguisher inner);
Distinguisher make_amplified(Distinguisher inner, std::size_t reps, double threshold);

/// Produces a fresh input oracle from a seed.
using OracleSampler = std::function<CountingOracle(std::uint64_t seed)>;

OracleSampler uniform_function_sampler(std::size_t n, bool lazy = false);
OracleSampler uniform_permutation_sampler(std::size_t n, bool lazy = false);

struct BiasEstimate {
  double p_function = 0.0;
  double p_permutation = 0.0;
  double bias = 0.0;  // signed: p_function - p_permutation
  std::size_t trials = 0;
  double ci_halfwidth = 0.0;  // 95%, normal approximation
  std::uint64_t classical_queries = 0;
  std::uint64_t oracle_queries = 0;

  double abs_bias() const { return bias < 0 ? -bias : bias; }
};

/// 1.96 * sqrt(p1(1-p1)/t + p2(1-p2)/t).
double two_proportion_halfwidth(double p1, double p2, std::size_t trials);

/// `trials` runs on each distribution. Trial t draws its input and its
/// algorithm randomness from separate streams derived from (seed, t), so the
/// result is independent of worker count.
BiasEstimate estimate_bias(const Distinguisher& d, const OracleSampler& one, const OracleSampler& zero,
                           std::size_t trials, std::uint64_t seed, unsigned workers = 0);

}  // namespace rprf
