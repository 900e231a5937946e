#include "rprf/hybrids.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rprf {

IndexPartition partition_indices(const CollisionProfile& c, double d) {
  if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("partition: d must lie in (0, 1)");
  IndexPartition p;
  p.n = c.n();
  p.d = d;
  p.threshold = std::pow(static_cast<double>(c.n()), d);
  for (std::size_t i = 2; i <= c.n(); ++i) {
    const auto ci = c.count(i);
    if (ci == 0) {
      p.empty.push_back(i);
    } else if (static_cast<double>(ci) < p.threshold) {
      p.small.push_back(i);
    } else {
      p.large.push_back(i);
    }
  }
  return p;
}

HybridSequence build_hybrids(const CollisionProfile& c, double d) {
  HybridSequence hs{c, partition_indices(c, d), {}, {0}};
  const auto n = c.n();
  hs.profiles.push_back(CollisionProfile::permutation(n));
  if (c == hs.profiles.front()) return hs;

  CollisionProfile::Counts counts;
  std::size_t g = 0;
  for (auto i : hs.partition.large) {
    g += c.count(i);
    hs.offsets.push_back(g);
    counts[i] = c.count(i);
    auto step = counts;
    if (n > g) step[1] = n - g;
    hs.profiles.emplace_back(n, std::move(step));
  }
  hs.profiles.push_back(c);
  return hs;
}

namespace {

void require_embedding_context(std::size_t j, const HybridSequence& hs) {
  if (j == 0 || j > hs.q()) {
    throw std::invalid_argument("embedding: hybrid index must be in [1, q], got " + std::to_string(j));
  }
}

// Rule (1): fixed i_k-to-1 self-map on each earlier block.
Index earlier_block_value(Index x, std::size_t j, const HybridSequence& hs) {
  for (std::size_t k = 1; k < j; ++k) {
    if (x < hs.offsets[k]) {
      const auto i = hs.partition.large[k - 1];
      const auto start = hs.offsets[k - 1];
      return start + ((x - start) / i) * i;
    }
  }
  throw std::logic_error("embedding: index not in an earlier block");
}

}  // namespace

FunctionTable embed_collision_instance(const FunctionTable& f, std::size_t j, const HybridSequence& hs) {
  require_embedding_context(j, hs);
  const auto lo = hs.offsets[j - 1];
  const auto hi = hs.offsets[j];
  if (f.size() != hi - lo) {
    throw std::invalid_argument("embedding: instance size " + std::to_string(f.size()) + " != c_{i_j} = " +
                                std::to_string(hi - lo));
  }
  std::vector<Index> h(hs.target.n());
  for (Index x = 0; x < h.size(); ++x) {
    if (x < lo) {
      h[x] = earlier_block_value(x, j, hs);
    } else if (x < hi) {
      h[x] = f(x - lo) + lo;
    } else {
      h[x] = x;
    }
  }
  return FunctionTable(std::move(h));
}

CountingOracle embedded_oracle(CountingOracle& f, std::size_t j, const HybridSequence& hs) {
  require_embedding_context(j, hs);
  const auto lo = hs.offsets[j - 1];
  const auto hi = hs.offsets[j];
  if (f.size() != hi - lo) throw std::invalid_argument("embedding: instance size mismatch");
  auto rule = [&f, j, &hs, lo, hi](Index x, bool counted) -> Index {
    if (x < lo) return earlier_block_value(x, j, hs);
    if (x < hi) return (counted ? f.query(x - lo) : f.peek(x - lo)) + lo;
    return x;
  };
  return CountingOracle(
      hs.target.n(), [rule](Index x) { return rule(x, true); }, [rule](Index x) { return rule(x, false); });
}

std::pair<FunctionTable, RelationWitness> build_related_pair(const FunctionTable& f1,
                                                             const HybridSequence& hs, Rng& rng) {
  const auto n = f1.size();
  if (n != hs.target.n() || profile_of(f1) != hs.target) {
    throw std::invalid_argument("related pair: f1 must have the last hybrid profile H_{q+1}");
  }
  const auto& small = hs.partition.small;
  if (small.empty()) return {f1, {}};

  std::vector<std::size_t> preimages(n, 0);
  for (auto y : f1.values()) ++preimages[y];
  auto is_small = [&](std::size_t m) { return std::binary_search(small.begin(), small.end(), m); };

  RelationWitness w;
  std::vector<Index> ones;
  for (Index x = 0; x < n; ++x) {
    const auto m = preimages[f1(x)];
    if (is_small(m)) {
      w.s_set.push_back(x);
    } else if (m == 1) {
      ones.push_back(x);
    }
  }
  const auto v = w.s_set.size();
  if (n - v < v) {
    throw std::invalid_argument("related pair: n - v >= v violated (v = " + std::to_string(v) + ")");
  }

  // Allowed images on S: values hit only from S, plus values f1 never hits.
  std::vector<Index> images;
  for (Index y = 0; y < n; ++y) {
    if (preimages[y] == 0 || is_small(preimages[y])) images.push_back(y);
  }
  if (images.size() < v) {
    throw std::invalid_argument("related pair: only " + std::to_string(images.size()) +
                                " range values available for an injective image of |S| = " + std::to_string(v));
  }
  if (ones.size() < v) {
    throw std::invalid_argument("related pair: only " + std::to_string(ones.size()) +
                                " multiplicity-1 partners outside S for |S| = " + std::to_string(v));
  }

  std::shuffle(images.begin(), images.end(), rng);
  std::shuffle(ones.begin(), ones.end(), rng);

  std::vector<Index> f2(f1.values().begin(), f1.values().end());
  for (std::size_t t = 0; t < v; ++t) {
    const Index x = w.s_set[t];
    const Index y = ones[t];
    // tilde(x) = images[t]; tilde(y) = f1(y); step 3 swaps them.
    f2[y] = images[t];
    f2[x] = f1(y);
    w.pairs.emplace_back(x, y);
  }
  return {FunctionTable(std::move(f2)), std::move(w)};
}

bool check_relation_witness(const FunctionTable& f1, const FunctionTable& f2, const RelationWitness& w) {
  const auto n = f1.size();
  if (f2.size() != n) throw std::invalid_argument("relation check: size mismatch");
  if (w.pairs.size() != w.s_set.size()) throw std::invalid_argument("relation witness: pairing does not cover S");

  std::vector<char> role(n, 0);  // 1 = in S, 2 = partner
  for (auto x : w.s_set) {
    if (x >= n || role[x]) throw std::invalid_argument("relation witness: bad or repeated S element");
    role[x] = 1;
  }
  for (auto [x, y] : w.pairs) {
    if (x >= n || y >= n || role[x] != 1) throw std::invalid_argument("relation witness: pair does not start in S");
    if (role[y]) throw std::invalid_argument("relation witness: partner repeated or inside S");
    role[y] = 2;
  }

  std::vector<std::size_t> preimages(n, 0);
  for (auto y : f1.values()) ++preimages[y];
  std::vector<std::size_t> in_s(n, 0);
  for (auto x : w.s_set) ++in_s[f1(x)];

  // S must be a union of whole preimage classes of f1.
  for (auto x : w.s_set) {
    if (in_s[f1(x)] != preimages[f1(x)]) return false;
  }
  for (Index z = 0; z < n; ++z) {
    if (role[z] == 0 && f2(z) != f1(z)) return false;
  }
  std::vector<char> used(n, 0);
  for (auto [x, y] : w.pairs) {
    if (f2(x) != f1(y)) return false;
    const Index tilde_x = f2(y);
    if (used[tilde_x]) return false;
    used[tilde_x] = 1;
    if (preimages[tilde_x] != in_s[tilde_x]) return false;
  }
  return true;
}

std::size_t small_mass(const CollisionProfile& c, double d) {
  const auto p = partition_indices(c, d);
  std::size_t v = 0;
  for (auto i : p.small) v += c.count(i);
  if (c.n() >= 4 && is_good(c) && !(static_cast<double>(v) < static_cast<double>(maxload(c)) * p.threshold)) {
    throw std::logic_error("small mass bound v < maxload * n^d violated");
  }
  return v;
}

}  // namespace rprf
