#include <map>
#include <sstream>

#include <stdexcept>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "rprf/collision_profile.hpp"
#include "rprf/stats.hpp"

using namespace rprf;

TEST_CASE("profile invariants are enforced") {
  CHECK_NOTHROW(CollisionProfile(4, {{1, 2}, {2, 2}}));
  CHECK_THROWS_AS(CollisionProfile(4, {{1, 3}}), std::invalid_argument);        // sum
  CHECK_NOTHROW(CollisionProfile(4, {{1, 1}, {3, 3}}));
  CHECK_THROWS_AS(CollisionProfile(5, {{2, 3}, {1, 2}}), std::invalid_argument);  // 2 does not divide 3
  CHECK_THROWS_AS(CollisionProfile(4, {{1, 4}, {2, 0}}), std::invalid_argument);  // zero stored
  CHECK_THROWS_AS(CollisionProfile(4, {{5, 5}}), std::invalid_argument);
}

TEST_CASE("multiplicity") {
  const FunctionTable f({0, 0, 1, 2});
  CHECK(multiplicity(f, 0) == 2);
  CHECK(multiplicity(f, 3) == 1);
  CHECK(multiplicity(FunctionTable({2, 0, 3, 1}), 1) == 1);
  CHECK(multiplicity(FunctionTable({1, 1, 1, 1}), 2) == 4);
  CHECK_THROWS_AS(multiplicity(f, 4), std::out_of_range);
}

TEST_CASE("profile_of") {
  CHECK(profile_of(FunctionTable({2, 0, 3, 1})) == CollisionProfile(4, {{1, 4}}));
  CHECK(profile_of(FunctionTable({0, 0, 1, 1})) == CollisionProfile(4, {{2, 4}}));
  CHECK(profile_of(FunctionTable({0, 0, 1, 2})) == CollisionProfile(4, {{1, 2}, {2, 2}}));
}

TEST_CASE("maxload") {
  CHECK(maxload(CollisionProfile(4, {{1, 4}})) == 1);
  CHECK(maxload(CollisionProfile(4, {{1, 2}, {2, 2}})) == 2);
  CHECK(maxload(CollisionProfile(16, {{1, 10}, {3, 6}})) == 3);
}

TEST_CASE("goodness threshold") {
  const GoodnessRule rule;
  CHECK(rule.threshold(256) == doctest::Approx(8.0));
  CHECK(is_good(CollisionProfile(256, {{1, 249}, {7, 7}})));
  CHECK_FALSE(is_good(CollisionProfile(256, {{1, 248}, {8, 8}})));
  CHECK_THROWS_AS(is_good(CollisionProfile(3, {{1, 3}})), std::invalid_argument);
  CHECK_NOTHROW(is_good(CollisionProfile(4, {{1, 4}})));
  // Other bases are a configuration choice; natural log gives a different cut.
  GoodnessRule natural{3.0, std::exp(1.0)};
  CHECK(natural.threshold(1024) != doctest::Approx(rule.threshold(1024)));
}

TEST_CASE("random functions at n=1024 are good with frequency >= 1 - 1/n (with sampling slack)") {
  Rng rng(31337);
  std::size_t good = 0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) good += is_good(profile_of(sample_uniform_function(1024, rng)));
  CHECK(static_cast<double>(good) / trials >= 0.995);
}

TEST_CASE("collision_equivalent") {
  Rng rng(1);
  auto f = sample_uniform_function(20, rng);
  CHECK(collision_equivalent(f, conjugate(f, sample_uniform_permutation(20, rng), sample_uniform_permutation(20, rng))));
  CHECK_FALSE(collision_equivalent(FunctionTable({0, 1}), FunctionTable({0, 0})));
  CHECK(collision_equivalent(FunctionTable({0, 0, 1, 1}), FunctionTable({2, 3, 2, 3})));
  CHECK_THROWS_AS(collision_equivalent(FunctionTable({0}), FunctionTable({0, 0})), std::invalid_argument);
}

TEST_CASE("canonical_function") {
  CHECK(canonical_function(CollisionProfile(5, {{1, 5}})) == FunctionTable::identity(5));
  CHECK(canonical_function(CollisionProfile(4, {{2, 4}})) == FunctionTable({0, 0, 2, 2}));
  CHECK(canonical_function(CollisionProfile(7, {{1, 1}, {3, 6}})) == FunctionTable({0, 1, 1, 1, 4, 4, 4}));

  SUBCASE("round trip on profiles of random functions") {
    Rng rng(8);
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 1 + uniform_index(rng, 80);
      const auto c = profile_of(sample_uniform_function(n, rng));
      CHECK(profile_of(canonical_function(c)) == c);
      CHECK(c.image_size() <= n);
    }
  }
}

TEST_CASE("sample_from_profile") {
  Rng rng(12);
  SUBCASE("stays in class") {
    for (int i = 0; i < 200; ++i) {
      const auto c = profile_of(sample_uniform_function(40, rng));
      CHECK(profile_of(sample_from_profile(c, rng)) == c);
    }
  }
  SUBCASE("permutation profile yields bijections") {
    CHECK(sample_from_profile(CollisionProfile::permutation(30), rng).is_bijection());
  }
  SUBCASE("n=3, {1:1,2:2} is uniform over its 18 members") {
    const CollisionProfile c(3, {{1, 1}, {2, 2}});
    const auto members = oracle::class_members({0, 0, 1});
    REQUIRE(members.size() == 18);
    std::map<std::vector<Index>, std::size_t> seen;
    for (const auto& m : members) seen[m] = 0;
    for (int i = 0; i < 1'000'000; ++i) {
      auto f = sample_from_profile(c, rng);
      ++seen.at(std::vector<Index>(f.values().begin(), f.values().end()));
    }
    std::vector<std::size_t> counts;
    for (auto& [k, v] : seen) counts.push_back(v);
    CHECK(stats::chi_square_pvalue(stats::chi_square_uniform(counts), 17) > 0.001);
  }
}

TEST_CASE("profile text format") {
  const CollisionProfile c(16, {{1, 6}, {2, 4}, {3, 6}});
  std::stringstream ss;
  write_profile(ss, c);
  CHECK(ss.str() == "16\n1 6\n2 4\n3 6\n");
  CHECK(read_profile(ss) == c);
  std::stringstream unordered("4\n2 2\n1 2\n");
  CHECK_THROWS(read_profile(unordered));
  std::stringstream invalid("4\n1 3\n");
  CHECK_THROWS(read_profile(invalid));
}
