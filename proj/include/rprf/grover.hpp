#pragma once

// Exact simulation of Grover search over an n-element register with a
// classical marking predicate applied as a phase oracle.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rprf/function_model.hpp"

namespace rprf {

/// Static marking predicate H over [n] with an application counter.
class BooleanOracle {
 public:
  explicit BooleanOracle(std::vector<char> marks);
  BooleanOracle(std::size_t n, const std::function<bool(Index)>& predicate);

  std::size_t size() const { return marks_.size(); }
  std::size_t marked_count() const { return marked_.size(); }
  /// Simulator-side view; uncounted.
  bool is_marked(Index x) const { return marks_[x] != 0; }
  const std::vector<Index>& marked_indices() const { return marked_; }

  /// Classical evaluation of H at one point; counted.
  bool evaluate(Index x);
  /// Counts one application of the phase oracle to a full state.
  void record_application() { ++count_; }
  std::uint64_t query_count() const { return count_; }

 private:
  std::vector<char> marks_;
  std::vector<Index> marked_;
  std::uint64_t count_ = 0;
};

class StateVector {
 public:
  using Amplitude = std::complex<double>;

  static StateVector uniform(std::size_t n);

  std::size_t size() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  double norm_squared() const;
  double probability(Index x) const { return std::norm(amps_[x]); }
  /// Total probability on marked elements of `o`.
  double marked_probability(const BooleanOracle& o) const;
  /// Inverse-CDF measurement in the computational basis.
  Index measure(Rng& rng) const;

 private:
  explicit StateVector(std::vector<Amplitude> amps) : amps_(std::move(amps)) {}
  std::vector<Amplitude> amps_;
};

/// Negates marked amplitudes; one oracle application is recorded.
void apply_phase_oracle(StateVector& s, BooleanOracle& o);
/// Inversion about the mean: a_x -> 2 mean(a) - a_x.
void apply_diffusion(StateVector& s);

/// sin^2((2k+1) theta), theta = arcsin(sqrt(m/n)); 0 when m == 0.
double grover_success_probability(std::size_t n, std::size_t m, std::size_t k);

enum class GroverBackend {
  /// Full n-amplitude state vector.
  statevector,
  /// Two amplitudes (common marked / common unmarked value). The uniform start
  /// and both reflections keep the state in that plane, so this is exact.
  subspace,
};

struct SearchResult {
  Index x = 0;
  bool found = false;
};

/// k Grover iterations from the uniform state, one measurement, and one
/// counted classical check of the outcome: k + 1 oracle queries in total.
SearchResult grover_search(BooleanOracle& o, std::size_t k, Rng& rng,
                           GroverBackend backend = GroverBackend::statevector);

/// Unknown-marked-count schedule: iteration counts drawn uniformly below a
/// stage bound growing by `growth` per failed stage, capped at ceil(pi/4 sqrt n).
struct BbhtConfig {
  double growth = 6.0 / 5.0;
  /// Stop after the first failed run at the capped stage instead of spending
  /// the remaining budget.
  bool stop_at_cap = false;
  GroverBackend backend = GroverBackend::statevector;
};

/// Never uses more than `budget` oracle queries; the counter on `o` reflects
/// exactly what was spent.
SearchResult bbht_search(BooleanOracle& o, std::uint64_t budget, Rng& rng, const BbhtConfig& cfg = {});

}  // namespace rprf
