#include "rprf/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rprf {

BooleanOracle::BooleanOracle(std::vector<char> marks) : marks_(std::move(marks)) {
  if (marks_.empty()) throw std::invalid_argument("boolean oracle: empty domain");
  for (Index x = 0; x < marks_.size(); ++x) {
    if (marks_[x]) marked_.push_back(x);
  }
}

BooleanOracle::BooleanOracle(std::size_t n, const std::function<bool(Index)>& predicate)
    : BooleanOracle([&] {
        std::vector<char> m(n);
        for (Index x = 0; x < n; ++x) m[x] = predicate(x) ? 1 : 0;
        return m;
      }()) {}

bool BooleanOracle::evaluate(Index x) {
  if (x >= marks_.size()) throw std::out_of_range("boolean oracle: index out of range");
  ++count_;
  return marks_[x] != 0;
}

StateVector StateVector::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("state vector: n must be >= 1");
  return StateVector(std::vector<Amplitude>(n, Amplitude(1.0 / std::sqrt(static_cast<double>(n)), 0.0)));
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::marked_probability(const BooleanOracle& o) const {
  double p = 0.0;
  for (auto x : o.marked_indices()) p += std::norm(amps_[x]);
  return p;
}

Index StateVector::measure(Rng& rng) const {
  const double u = uniform_unit(rng) * norm_squared();
  double acc = 0.0;
  for (Index x = 0; x < amps_.size(); ++x) {
    acc += std::norm(amps_[x]);
    if (u < acc) return x;
  }
  // Rounding left u at the very top of the CDF; take the last non-zero entry.
  for (Index x = amps_.size(); x-- > 0;) {
    if (std::norm(amps_[x]) > 0.0) return x;
  }
  return amps_.size() - 1;
}

void apply_phase_oracle(StateVector& s, BooleanOracle& o) {
  if (s.size() != o.size()) throw std::invalid_argument("phase oracle: size mismatch");
  auto amps = s.amplitudes();
  for (auto x : o.marked_indices()) amps[x] = -amps[x];
  o.record_application();
}

void apply_diffusion(StateVector& s) {
  auto amps = s.amplitudes();
  StateVector::Amplitude sum{0.0, 0.0};
  for (const auto& a : amps) sum += a;
  const auto twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (auto& a : amps) a = twice_mean - a;
}

double grover_success_probability(std::size_t n, std::size_t m, std::size_t k) {
  if (m == 0) return 0.0;
  if (n == 0 || m > n) throw std::invalid_argument("grover_success_probability: need 1 <= m <= n");
  const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double s = std::sin(static_cast<double>(2 * k + 1) * theta);
  return s * s;
}

namespace {

Index measure_subspace(const BooleanOracle& o, std::size_t k, Rng& rng) {
  const auto n = o.size();
  const auto m = o.marked_count();
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  double marked = 1.0 / std::sqrt(dn);
  double unmarked = marked;
  for (std::size_t it = 0; it < k; ++it) {
    marked = -marked;
    const double twice_mean = 2.0 * (dm * marked + (dn - dm) * unmarked) / dn;
    marked = twice_mean - marked;
    unmarked = twice_mean - unmarked;
  }
  const double p_marked = dm * marked * marked;
  const double total = p_marked + (dn - dm) * unmarked * unmarked;
  if (m > 0 && (m == n || uniform_unit(rng) * total < p_marked)) {
    return o.marked_indices()[uniform_index(rng, m)];
  }
  if (m == 0) return uniform_index(rng, n);
  for (;;) {
    const Index x = uniform_index(rng, n);
    if (!o.is_marked(x)) return x;
  }
}

}  // namespace

SearchResult grover_search(BooleanOracle& o, std::size_t k, Rng& rng, GroverBackend backend) {
  Index x = 0;
  if (backend == GroverBackend::statevector) {
    auto s = StateVector::uniform(o.size());
    for (std::size_t it = 0; it < k; ++it) {
      apply_phase_oracle(s, o);
      apply_diffusion(s);
    }
    x = s.measure(rng);
  } else {
    for (std::size_t it = 0; it < k; ++it) o.record_application();
    x = measure_subspace(o, k, rng);
  }
  return {x, o.evaluate(x)};
}

SearchResult bbht_search(BooleanOracle& o, std::uint64_t budget, Rng& rng, const BbhtConfig& cfg) {
  if (budget == 0) throw std::invalid_argument("bbht: budget must be >= 1");
  if (!(cfg.growth > 1.0)) throw std::invalid_argument("bbht: growth must exceed 1");
  const double cap = std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(o.size())));
  double bound = 1.0;
  std::uint64_t spent = 0;
  SearchResult last;
  while (spent < budget) {
    const bool capped = bound >= cap;
    auto k = static_cast<std::uint64_t>(uniform_index(rng, static_cast<std::size_t>(std::ceil(bound))));
    k = std::min(k, budget - spent - 1);
    last = grover_search(o, static_cast<std::size_t>(k), rng, cfg.backend);
    spent += k + 1;
    if (last.found) return last;
    if (capped && cfg.stop_at_cap) break;
    bound = std::min(bound * cfg.growth, cap);
  }
  return last;
}

}  // namespace rprf
