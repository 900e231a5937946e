#include <cmath>
#include <sstream>

#include <stdexcept>
#include <string>

#include "doctest.h"
#include "rprf/harness.hpp"

using namespace rprf;

TEST_CASE("parse_size_list") {
  CHECK(parse_size_list("2^10, 4096,7") == std::vector<std::uint64_t>{1024, 4096, 7});
  CHECK(parse_size_list("").empty());
  CHECK_THROWS(parse_size_list("abc"));
  CHECK_THROWS(parse_size_list("-3"));
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "n_values = 2^8, 512\n"
      "distinguisher = bht\n"
      "budgets = 16,32  # trailing\n"
      "k = 4\n"
      "trials = 50\n"
      "seed = 9\n"
      "d = 3/5\n"
      "backend = subspace\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.n_values == std::vector<std::size_t>{256, 512});
  CHECK(cfg.distinguisher == DistinguisherKind::bht);
  CHECK(cfg.budgets == std::vector<std::uint64_t>{16, 32});
  CHECK(cfg.k == 4u);
  CHECK(cfg.d == doctest::Approx(0.6));
  CHECK(cfg.backend == GroverBackend::subspace);
  CHECK_NOTHROW(cfg.validate());

  std::istringstream unknown("colour = blue\n");
  CHECK_THROWS(parse_config(unknown));
  std::istringstream no_eq("seed 4\n");
  CHECK_THROWS(parse_config(no_eq));

  ExperimentConfig missing_seed;
  CHECK_THROWS(missing_seed.validate());
  ExperimentConfig bad_budget;
  bad_budget.seed = 1;
  bad_budget.n_values = {16};
  bad_budget.budgets = {17};
  CHECK_THROWS(bad_budget.validate());
}

TEST_CASE("run_sweep") {
  ExperimentConfig cfg;
  cfg.seed = 2;
  cfg.trials = 100;
  SUBCASE("empty n_values gives header only") {
    std::ostringstream out;
    write_csv(out, run_sweep(cfg));
    CHECK(out.str() == std::string(kCsvHeader) + "\n");
  }
  SUBCASE("deterministic and round-trips through CSV") {
    cfg.n_values = {128, 256};
    cfg.budgets = {5, 20};
    std::ostringstream a, b;
    write_csv(a, run_sweep(cfg));
    write_csv(b, run_sweep(cfg));
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].n == 128);
    CHECK(rows[3].budget == 20);
    CHECK(rows[1].p_permutation == 0.0);
  }
  SUBCASE("birthday rows at n=2^12 follow 1 - exp(-q(q-1)/2n)") {
    cfg.n_values = {4096};
    cfg.budgets = {20, 60, 100, 140};
    cfg.trials = 4000;
    for (const auto& r : run_sweep(cfg)) {
      const double curve = 1.0 - std::exp(-double(r.budget * (r.budget - 1)) / (2.0 * 4096));
      CHECK(std::abs(r.p_function - curve) <= 0.02);
    }
  }
  SUBCASE("bht rows") {
    cfg.distinguisher = DistinguisherKind::bht;
    cfg.backend = GroverBackend::subspace;
    cfg.n_values = {512};
    cfg.budgets = {0, 60};
    const auto rows = run_sweep(cfg);
    CHECK(rows[0].p_permutation == 0.0);
    CHECK(rows[1].p_function > rows[0].p_function);
  }
}

TEST_CASE("fit_exponent") {
  std::vector<std::pair<double, double>> sq, cube;
  for (double n : {64.0, 256.0, 1024.0, 4096.0}) {
    sq.emplace_back(n, std::sqrt(n));
    cube.emplace_back(n, std::cbrt(n));
  }
  const auto a = fit_exponent(sq);
  CHECK(a.slope == doctest::Approx(0.5));
  CHECK(a.r_squared == doctest::Approx(1.0));
  CHECK(fit_exponent(cube).slope == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(fit_exponent({{16.0, 4.0}}));
  CHECK_THROWS(fit_exponent({{16.0, 4.0}, {16.0, 5.0}, {16.0, 6.0}}));
  CHECK_THROWS(fit_exponent({{16.0, 4.0}, {0.0, 5.0}, {32.0, 6.0}}));
}

TEST_CASE("find_threshold_budget on a synthetic monotone curve") {
  std::size_t calls = 0;
  auto measure = [&](std::uint64_t b) {
    ++calls;
    BiasEstimate e;
    e.bias = b >= 37 ? 0.6 : 0.1;
    return e;
  };
  const auto t = find_threshold_budget(measure, 1, 1000);
  CHECK(t.budget == 37);
  CHECK(t.evaluations == calls);
  CHECK_THROWS(find_threshold_budget(measure, 1, 20));
}

TEST_CASE("birthday threshold is near 1.18 sqrt(n)") {
  const auto t = birthday_threshold(1 << 12, 800, 3);
  CHECK(std::abs(static_cast<double>(t.budget) / std::sqrt(4096.0) - 1.1774) < 0.15);
}

TEST_CASE("verify_claims at a small size") {
  const auto report = verify_claims(256, 2000, 5);
  CHECK(report.checks.size() == 9);
  for (const auto& c : report.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.pass);
  }
  CHECK_THROWS(verify_claims(8, 10, 1));
}
