#include "rprf/function_model.hpp"

#include <algorithm>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace rprf {

FunctionTable::FunctionTable(std::vector<Index> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("function table must have n >= 1");
  const auto n = values_.size();
  for (auto v : values_) {
    if (v >= n) {
      throw std::invalid_argument("function value " + std::to_string(v) +
                                  " outside [0, " + std::to_string(n) + ")");
    }
  }
}

FunctionTable FunctionTable::identity(std::size_t n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return FunctionTable(std::move(v));
}

Index FunctionTable::at(Index x) const {
  if (x >= values_.size()) throw std::out_of_range("domain index out of range");
  return values_[x];
}

bool FunctionTable::is_bijection() const {
  std::vector<char> hit(values_.size(), 0);
  for (auto v : values_) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

CountingOracle::CountingOracle(FunctionTable table) : n_(table.size()) {
  auto shared = std::make_shared<const FunctionTable>(std::move(table));
  eval_ = [shared](Index x) { return (*shared)(x); };
  peek_ = eval_;
}

CountingOracle::CountingOracle(std::size_t n, Evaluator eval) : CountingOracle(n, eval, eval) {}

CountingOracle::CountingOracle(std::size_t n, Evaluator on_query, Evaluator on_peek)
    : n_(n), eval_(std::move(on_query)), peek_(std::move(on_peek)) {
  if (n_ == 0) throw std::invalid_argument("oracle domain must be non-empty");
}

Index CountingOracle::query(Index x) {
  if (x >= n_) throw std::out_of_range("query index out of range");
  Index y = eval_(x);
  ++count_;
  return y;
}

Index CountingOracle::peek(Index x) const {
  if (x >= n_) throw std::out_of_range("peek index out of range");
  return peek_(x);
}

FunctionTable sample_uniform_function(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  std::uniform_int_distribution<Index> dist(0, n - 1);
  std::vector<Index> v(n);
  for (auto& y : v) y = dist(rng);
  return FunctionTable(std::move(v));
}

FunctionTable sample_uniform_permutation(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  std::shuffle(v.begin(), v.end(), rng);
  return FunctionTable(std::move(v));
}

FunctionTable conjugate(const FunctionTable& f, const FunctionTable& pi,
                        const FunctionTable& sigma) {
  if (pi.size() != f.size() || sigma.size() != f.size()) {
    throw std::invalid_argument("conjugate: size mismatch");
  }
  if (!pi.is_bijection() || !sigma.is_bijection()) {
    throw std::invalid_argument("conjugate: pi and sigma must be bijections");
  }
  std::vector<Index> r(f.size());
  for (Index x = 0; x < r.size(); ++x) r[x] = pi(f(sigma(x)));
  return FunctionTable(std::move(r));
}

CountingOracle lazy_uniform_function(std::size_t n, std::uint64_t seed) {
  struct State {
    Rng rng;
    std::uniform_int_distribution<Index> dist;
    std::unordered_map<Index, Index> values;
  };
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  auto st = std::make_shared<State>(State{Rng(seed), std::uniform_int_distribution<Index>(0, n - 1), {}});
  return CountingOracle(n, [st](Index x) {
    auto [it, fresh] = st->values.try_emplace(x, 0);
    if (fresh) it->second = st->dist(st->rng);
    return it->second;
  });
}

CountingOracle lazy_uniform_permutation(std::size_t n, std::uint64_t seed) {
  // Fisher-Yates run on demand: the i-th distinct point touched receives the
  // element swapped into slot i of a virtual identity array.
  struct State {
    Rng rng;
    std::size_t n;
    std::size_t filled = 0;
    std::unordered_map<Index, Index> slots;
    std::unordered_map<Index, Index> values;
    Index slot(Index i) const {
      auto it = slots.find(i);
      return it == slots.end() ? i : it->second;
    }
  };
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  auto st = std::make_shared<State>(State{Rng(seed), n, 0, {}, {}});
  return CountingOracle(n, [st](Index x) {
    auto [it, fresh] = st->values.try_emplace(x, 0);
    if (fresh) {
      const Index i = st->filled++;
      const Index j = i + uniform_index(st->rng, st->n - i);
      const Index vi = st->slot(i);
      const Index vj = st->slot(j);
      st->slots[j] = vi;
      st->slots[i] = vj;
      it->second = vj;
    }
    return it->second;
  });
}

void write_function(std::ostream& out, const FunctionTable& f) {
  out << f.size() << '\n';
  for (Index x = 0; x < f.size(); ++x) {
    if (x) out << ' ';
    out << f(x);
  }
  out << '\n';
}

FunctionTable read_function(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw std::runtime_error("function file: bad size line");
  std::vector<Index> v(n);
  for (auto& y : v) {
    long long raw = 0;
    if (!(in >> raw)) throw std::runtime_error("function file: expected " + std::to_string(n) + " values");
    if (raw < 0) throw std::runtime_error("function file: negative value");
    y = static_cast<Index>(raw);
  }
  return FunctionTable(std::move(v));
}

}  // namespace rprf
