#pragma once

// Total functions [n] -> [n], query-counting oracles, and samplers for the
// uniform-function and uniform-permutation distributions. Indices are 0-based.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rprf/random.hpp"

namespace rprf {

using Index = std::size_t;

/// Immutable dense table of a function [n] -> [n].
class FunctionTable {
 public:
  /// Throws std::invalid_argument if empty or any entry is >= size.
  explicit FunctionTable(std::vector<Index> values);

  static FunctionTable identity(std::size_t n);

  std::size_t size() const { return values_.size(); }
  Index operator()(Index x) const { return values_[x]; }
  Index at(Index x) const;
  std::span<const Index> values() const { return values_; }

  bool is_bijection() const;

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::vector<Index> values_;
};

/// Point-evaluation oracle with an exact query counter.
///
/// The oracle either owns a table or wraps evaluators (used for virtual
/// oracles such as conjugations and lazily sampled functions). `query` is the
/// only counted access. `peek` is the simulator's uncounted view of the same
/// function, needed to materialise a quantum marking oracle. A virtual oracle
/// over another oracle passes `query` through to the inner `query` and `peek`
/// to the inner `peek`, so accounting stays exact at every layer.
class CountingOracle {
 public:
  using Evaluator = std::function<Index(Index)>;

  explicit CountingOracle(FunctionTable table);
  CountingOracle(std::size_t n, Evaluator eval);
  CountingOracle(std::size_t n, Evaluator on_query, Evaluator on_peek);

  std::size_t size() const { return n_; }

  /// Throws std::out_of_range for x >= size(); the counter is untouched then.
  Index query(Index x);
  Index peek(Index x) const;

  std::uint64_t query_count() const { return count_; }
  void reset() { count_ = 0; }

 private:
  std::size_t n_;
  Evaluator eval_;
  Evaluator peek_;
  std::uint64_t count_ = 0;
};

FunctionTable sample_uniform_function(std::size_t n, Rng& rng);
FunctionTable sample_uniform_permutation(std::size_t n, Rng& rng);

/// r(x) = pi(f(sigma(x))). Throws on size mismatch or non-bijective pi/sigma.
FunctionTable conjugate(const FunctionTable& f, const FunctionTable& pi,
                        const FunctionTable& sigma);

// Lazily sampled oracles. Values are drawn on first touch (query or peek) from
// a private engine, so a run that touches q points costs O(q) rather than
// O(n). The induced distribution over full tables is exactly uniform.
CountingOracle lazy_uniform_function(std::size_t n, std::uint64_t seed);
CountingOracle lazy_uniform_permutation(std::size_t n, std::uint64_t seed);

// Text format: first line n, second line n space-separated 0-based values.
void write_function(std::ostream& out, const FunctionTable& f);
FunctionTable read_function(std::istream& in);

}  // namespace rprf
