#include "rprf/distinguishers.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "rprf/parallel.hpp"

namespace rprf {

namespace {

// q distinct uniform points, in draw order.
std::vector<Index> distinct_points(std::size_t n, std::size_t q, Rng& rng) {
  std::vector<Index> pts;
  pts.reserve(q);
  if (2 * q > n) {
    std::vector<Index> all(n);
    for (Index x = 0; x < n; ++x) all[x] = x;
    for (std::size_t i = 0; i < q; ++i) {
      std::swap(all[i], all[i + uniform_index(rng, n - i)]);
      pts.push_back(all[i]);
    }
    return pts;
  }
  std::unordered_set<Index> seen;
  seen.reserve(2 * q);
  while (pts.size() < q) {
    const Index x = uniform_index(rng, n);
    if (seen.insert(x).second) pts.push_back(x);
  }
  return pts;
}

}  // namespace

DistinguisherReport classical_birthday(CountingOracle& oracle, std::size_t q, Rng& rng) {
  if (q == 0 || q > oracle.size()) throw std::invalid_argument("birthday: need 1 <= q <= n");
  DistinguisherReport r;
  std::unordered_set<Index> answers;
  answers.reserve(2 * q);
  for (auto x : distinct_points(oracle.size(), q, rng)) {
    const Index y = oracle.query(x);
    r.transcript.emplace_back(x, y);
    if (!answers.insert(y).second) r.output_bit = 1;
  }
  r.classical_queries = q;
  return r;
}

BooleanOracle build_marked_oracle(std::span<const std::pair<Index, Index>> table, const CountingOracle& oracle) {
  // value -> table points holding it (at most two distinct points matter).
  std::unordered_map<Index, std::vector<Index>> lookup;
  for (auto [s, y] : table) lookup[y].push_back(s);
  return BooleanOracle(oracle.size(), [&](Index x) {
    auto it = lookup.find(oracle.peek(x));
    if (it == lookup.end()) return false;
    for (auto s : it->second) {
      if (s != x) return true;
    }
    return false;
  });
}

DistinguisherReport bht_distinguisher(CountingOracle& oracle, const BhtParams& params, Rng& rng) {
  if (params.k == 0 || params.k > oracle.size()) throw std::invalid_argument("bht: need 1 <= k <= n");
  DistinguisherReport r;
  std::unordered_set<Index> seen;
  for (auto x : distinct_points(oracle.size(), params.k, rng)) {
    const Index y = oracle.query(x);
    r.transcript.emplace_back(x, y);
    if (!seen.insert(y).second) r.output_bit = 1;
  }
  r.classical_queries = params.k;
  if (r.output_bit || params.grover_budget == 0) return r;

  auto marked = build_marked_oracle(r.transcript, oracle);
  const auto hit = bbht_search(marked, params.grover_budget, rng, params.search);
  r.output_bit = hit.found ? 1 : 0;
  r.oracle_queries = marked.query_count();
  return r;
}

DistinguisherReport conjugated_distinguisher(const Distinguisher& inner, CountingOracle& oracle, Rng& rng) {
  const auto n = oracle.size();
  const auto pi = sample_uniform_permutation(n, rng);
  const auto sigma = sample_uniform_permutation(n, rng);
  CountingOracle virtual_oracle(
      n, [&](Index x) { return pi(oracle.query(sigma(x))); },
      [&](Index x) { return pi(oracle.peek(sigma(x))); });
  const auto before = oracle.query_count();
  auto r = inner(virtual_oracle, rng);
  if (oracle.query_count() - before != virtual_oracle.query_count()) {
    throw std::logic_error("conjugation: query accounting mismatch");
  }
  return r;
}

DistinguisherReport amplify(const Distinguisher& inner, std::size_t reps, double threshold,
                            CountingOracle& oracle, Rng& rng) {
  if (reps == 0) throw std::invalid_argument("amplify: reps must be >= 1");
  DistinguisherReport r;
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < reps; ++i) {
    const auto run = inner(oracle, rng);
    accepted += run.output_bit;
    r.classical_queries += run.classical_queries;
    r.oracle_queries += run.oracle_queries;
  }
  r.output_bit = static_cast<double>(accepted) >= threshold * static_cast<double>(reps) ? 1 : 0;
  return r;
}

Distinguisher make_birthday(std::size_t q) {
  return [q](CountingOracle& o, Rng& rng) { return classical_birthday(o, q, rng); };
}

Distinguisher make_bht(BhtParams params) {
  return [params](CountingOracle& o, Rng& rng) { return bht_distinguisher(o, params, rng); };
}

Distinguisher make_conjugated(Distinguisher inner) {
  return [inner = std::move(inner)](CountingOracle& o, Rng& rng) {
    return conjugated_distinguisher(inner, o, rng);
  };
}

Distinguisher make_amplified(Distinguisher inner, std::size_t reps, double threshold) {
  return [inner = std::move(inner), reps, threshold](CountingOracle& o, Rng& rng) {
    return amplify(inner, reps, threshold, o, rng);
  };
}

OracleSampler uniform_function_sampler(std::size_t n, bool lazy) {
  if (lazy) return [n](std::uint64_t seed) { return lazy_uniform_function(n, seed); };
  return [n](std::uint64_t seed) {
    Rng rng(seed);
    return CountingOracle(sample_uniform_function(n, rng));
  };
}

OracleSampler uniform_permutation_sampler(std::size_t n, bool lazy) {
  if (lazy) return [n](std::uint64_t seed) { return lazy_uniform_permutation(n, seed); };
  return [n](std::uint64_t seed) {
    Rng rng(seed);
    return CountingOracle(sample_uniform_permutation(n, rng));
  };
}

double two_proportion_halfwidth(double p1, double p2, std::size_t trials) {
  const double t = static_cast<double>(trials);
  return 1.96 * std::sqrt(p1 * (1.0 - p1) / t + p2 * (1.0 - p2) / t);
}

BiasEstimate estimate_bias(const Distinguisher& d, const OracleSampler& one, const OracleSampler& zero,
                           std::size_t trials, std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw std::invalid_argument("estimate_bias: trials must be >= 1");
  struct Outcome {
    int bit = 0;
    std::uint64_t classical = 0;
    std::uint64_t quantum = 0;
  };
  std::vector<Outcome> outcomes(2 * trials);
  parallel_for(
      2 * trials,
      [&](std::size_t i) {
        const std::size_t trial = i / 2;
        const bool function_side = (i % 2) == 0;
        const std::uint64_t base = 4 * trial + (function_side ? 0 : 2);
        auto oracle = (function_side ? one : zero)(derive_seed(seed, base));
        Rng rng(derive_seed(seed, base + 1));
        const auto r = d(oracle, rng);
        if (oracle.query_count() != r.classical_queries) {
          throw std::logic_error("estimate_bias: reported classical queries differ from oracle counter");
        }
        outcomes[i] = {r.output_bit, r.classical_queries, r.oracle_queries};
      },
      workers);

  BiasEstimate e;
  e.trials = trials;
  std::size_t acc_one = 0, acc_zero = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    (i % 2 == 0 ? acc_one : acc_zero) += outcomes[i].bit;
    e.classical_queries += outcomes[i].classical;
    e.oracle_queries += outcomes[i].quantum;
  }
  e.p_function = static_cast<double>(acc_one) / static_cast<double>(trials);
  e.p_permutation = static_cast<double>(acc_zero) / static_cast<double>(trials);
  e.bias = e.p_function - e.p_permutation;
  e.ci_halfwidth = two_proportion_halfwidth(e.p_function, e.p_permutation, trials);
  return e;
}

}  // namespace rprf
