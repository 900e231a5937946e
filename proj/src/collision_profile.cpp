#include "rprf/collision_profile.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rprf {

CollisionProfile::CollisionProfile(std::size_t n, Counts counts) : n_(n), counts_(std::move(counts)) {
  if (n_ == 0) throw std::invalid_argument("profile: n must be >= 1");
  std::size_t total = 0;
  for (auto [i, b] : counts_) {
    if (i == 0 || i > n_) throw std::invalid_argument("profile: multiplicity " + std::to_string(i) + " outside [1, n]");
    if (b == 0) throw std::invalid_argument("profile: stored counts must be positive");
    if (b % i != 0) {
      throw std::invalid_argument("profile: b_" + std::to_string(i) + " = " + std::to_string(b) +
                                  " is not a multiple of " + std::to_string(i));
    }
    total += b;
  }
  if (total != n_) {
    throw std::invalid_argument("profile: counts sum to " + std::to_string(total) + ", expected " +
                                std::to_string(n_));
  }
}

std::size_t CollisionProfile::count(std::size_t multiplicity) const {
  auto it = counts_.find(multiplicity);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t CollisionProfile::image_size() const {
  std::size_t values = 0;
  for (auto [i, b] : counts_) values += b / i;
  return values;
}

namespace {

std::vector<std::size_t> preimage_sizes(const FunctionTable& f) {
  std::vector<std::size_t> sizes(f.size(), 0);
  for (auto y : f.values()) ++sizes[y];
  return sizes;
}

}  // namespace

std::size_t multiplicity(const FunctionTable& f, Index x) {
  const Index y = f.at(x);
  std::size_t m = 0;
  for (auto v : f.values()) m += (v == y);
  return m;
}

CollisionProfile profile_of(const FunctionTable& f) {
  CollisionProfile::Counts counts;
  for (auto s : preimage_sizes(f)) {
    if (s) counts[s] += s;
  }
  return CollisionProfile(f.size(), std::move(counts));
}

std::size_t maxload(const CollisionProfile& c) { return c.counts().rbegin()->first; }

double GoodnessRule::threshold(std::size_t n) const {
  const double base = std::log(log_base);
  const double log_n = std::log(static_cast<double>(n)) / base;
  // Defined from n = base^2 upward (n >= 4 for base 2).
  if (!(log_n >= 2.0 - 1e-12)) {
    throw std::invalid_argument("goodness threshold undefined for n = " + std::to_string(n));
  }
  return factor * log_n / (std::log(log_n) / base);
}

bool is_good(const CollisionProfile& c, const GoodnessRule& rule) {
  return static_cast<double>(maxload(c)) < rule.threshold(c.n());
}

bool collision_equivalent(const FunctionTable& f, const FunctionTable& g) {
  if (f.size() != g.size()) throw std::invalid_argument("collision_equivalent: size mismatch");
  return profile_of(f) == profile_of(g);
}

FunctionTable canonical_function(const CollisionProfile& c) {
  std::vector<Index> v(c.n());
  Index next = 0;
  for (auto [i, b] : c.counts()) {
    for (std::size_t block = 0; block < b / i; ++block) {
      const Index first = next;
      for (std::size_t t = 0; t < i; ++t) v[next++] = first;
    }
  }
  return FunctionTable(std::move(v));
}

FunctionTable sample_from_profile(const CollisionProfile& c, Rng& rng) {
  auto pi = sample_uniform_permutation(c.n(), rng);
  auto sigma = sample_uniform_permutation(c.n(), rng);
  return conjugate(canonical_function(c), pi, sigma);
}

void write_profile(std::ostream& out, const CollisionProfile& c) {
  out << c.n() << '\n';
  for (auto [i, b] : c.counts()) out << i << ' ' << b << '\n';
}

CollisionProfile read_profile(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (!(ls >> n)) throw std::runtime_error("profile file: bad size line");
    break;
  }
  if (n == 0) throw std::runtime_error("profile file: missing size line");
  CollisionProfile::Counts counts;
  std::size_t prev = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) break;
    std::istringstream ls(line);
    std::size_t i = 0, b = 0;
    if (!(ls >> i >> b)) throw std::runtime_error("profile file: expected `i b_i`, got `" + line + "`");
    if (i <= prev) throw std::runtime_error("profile file: multiplicities must increase");
    prev = i;
    if (b) counts[i] = b;
  }
  return CollisionProfile(n, std::move(counts));
}

}  // namespace rprf
