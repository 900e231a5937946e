#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>

#include "rprf/function_model.hpp"

namespace rprf {

/// Sparse collision profile: counts[i] = number of domain elements whose
/// preimage class has size i. Only non-zero counts are stored.
class CollisionProfile {
 public:
  using Counts = std::map<std::size_t, std::size_t>;

  /// Validates: keys in [1, n], values > 0 and divisible by their key, sum n.
  CollisionProfile(std::size_t n, Counts counts);

  static CollisionProfile permutation(std::size_t n) { return CollisionProfile(n, {{1, n}}); }

  std::size_t n() const { return n_; }
  const Counts& counts() const { return counts_; }
  /// b_i, zero when absent.
  std::size_t count(std::size_t multiplicity) const;
  /// Number of distinct range values any member of the class uses.
  std::size_t image_size() const;

  friend bool operator==(const CollisionProfile&, const CollisionProfile&) = default;

 private:
  std::size_t n_;
  Counts counts_;
};

std::size_t multiplicity(const FunctionTable& f, Index x);
CollisionProfile profile_of(const FunctionTable& f);
std::size_t maxload(const CollisionProfile& c);

/// Threshold rule factor * log(n) / log(log(n)) with a configurable log base.
struct GoodnessRule {
  double factor = 3.0;
  double log_base = 2.0;

  /// Throws std::invalid_argument for n < log_base^2 (n < 4 for base 2).
  double threshold(std::size_t n) const;
};

/// maxload(c) < threshold(n).
bool is_good(const CollisionProfile& c, const GoodnessRule& rule = {});

bool collision_equivalent(const FunctionTable& f, const FunctionTable& g);

/// Deterministic member of the class: blocks in ascending multiplicity over
/// consecutive domain segments, each block mapping to its own first element.
FunctionTable canonical_function(const CollisionProfile& c);

/// Uniform over the class, via conjugating the canonical member.
FunctionTable sample_from_profile(const CollisionProfile& c, Rng& rng);

// Text format: a line `n`, then `i b_i` lines in increasing i.
void write_profile(std::ostream& out, const CollisionProfile& c);
CollisionProfile read_profile(std::istream& in);

}  // namespace rprf
