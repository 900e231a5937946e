#pragma once

// Hybrid profile chain between the permutation profile and a target profile,
// the collision-instance embedding into adjacent hybrids, and the explicit
// pair transformation between the last two hybrids.

#include <cstddef>
#include <utility>
#include <vector>

#include "rprf/collision_profile.hpp"

namespace rprf {

/// Multiplicities > 1 split by their count against threshold = n^d.
struct IndexPartition {
  std::size_t n = 0;
  double d = 0.0;
  double threshold = 0.0;
  std::vector<std::size_t> empty;  // c_i == 0
  std::vector<std::size_t> small;  // 0 < c_i < threshold
  std::vector<std::size_t> large;  // c_i >= threshold, ascending
};

IndexPartition partition_indices(const CollisionProfile& c, double d);

struct HybridSequence {
  CollisionProfile target;
  IndexPartition partition;
  /// H_0 .. H_{q+1}; a single entry when the target is the permutation profile.
  std::vector<CollisionProfile> profiles;
  /// g_0 .. g_q, cumulative sizes of the large blocks.
  std::vector<std::size_t> offsets;

  std::size_t q() const { return partition.large.size(); }
};

HybridSequence build_hybrids(const CollisionProfile& c, double d);

/// h_f for a collision instance f on [c_{i_j}], 1 <= j <= q. The result lies
/// in H_{j-1} when f is 1-to-1 and in H_j when f is i_j-to-1.
FunctionTable embed_collision_instance(const FunctionTable& f, std::size_t j, const HybridSequence& hs);

/// Same map as a virtual oracle over `f`; each query costs at most one query to f.
CountingOracle embedded_oracle(CountingOracle& f, std::size_t j, const HybridSequence& hs);

struct RelationWitness {
  std::vector<Index> s_set;                    // ascending
  std::vector<std::pair<Index, Index>> pairs;  // (x in S, partner y outside S)
};

/// Builds f2 in H_q related to f1 in H_{q+1}. Throws std::invalid_argument
/// naming the violated precondition.
std::pair<FunctionTable, RelationWitness> build_related_pair(const FunctionTable& f1,
                                                             const HybridSequence& hs, Rng& rng);

bool check_relation_witness(const FunctionTable& f1, const FunctionTable& f2, const RelationWitness& w);

/// v = sum of c_i over the small multiplicities.
std::size_t small_mass(const CollisionProfile& c, double d);

}  // namespace rprf
