#include "hlab/oracle.hpp"
#include "hlab/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace hlab;

namespace {

// Trials up to and including the first success.
std::vector<double> geometric_samples(double p, double scale, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::geometric_distribution<std::int64_t> geom(p);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(scale * static_cast<double>(geom(gen) + 1));
  return out;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("geometric tail values") {
    CHECK(geom_tail(0.3, 1) == 1.0);
    CHECK(geom_tail(0.3, -4) == 1.0);
    CHECK(geom_tail(1.0, 2) == 0.0);
    CHECK(geom_tail(0.5, 3) == doctest::Approx(0.25));
    CHECK(geom_tail(1e-12, 1'000'000) == doctest::Approx(std::pow(1 - 1e-12, 999'999)));
    for (std::int64_t k = 1; k < 50; ++k) {
      REQUIRE(geom_tail(0.2, k + 1) <= geom_tail(0.2, k));
      REQUIRE(geom_tail(0.4, k) <= geom_tail(0.2, k));
    }
    CHECK_THROWS_AS(geom_tail(0.0, 2), Error);
    CHECK_THROWS_AS(geom_tail(1.5, 2), Error);
  }

  TEST_CASE("band width") {
    CHECK(dkw_band_width(200, 0.99) == doctest::Approx(std::sqrt(std::log(200.0) / 400.0)));
    CHECK(dkw_band_width(10000, 0.95) < dkw_band_width(100, 0.95));
  }

  TEST_CASE("samples from the bounding law itself are accepted") {
    const auto samples = geometric_samples(0.05, 7.0, 10000, 1);
    const auto v = check_dominated_by_scaled_geom(samples, 7.0, 0.05, 0.99);
    CHECK(v.passed);
    CHECK(v.outcome == Verdict::Pass);
    CHECK(v.samples == 10000);
    CHECK(v.band_width == doctest::Approx(dkw_band_width(10000, 0.99)));
  }

  TEST_CASE("stochastically larger samples are rejected") {
    const auto samples = geometric_samples(0.5, 2.0, 1000, 2);
    const auto v = check_dominated_by_scaled_geom(samples, 1.0, 0.5, 0.99);
    CHECK_FALSE(v.passed);
    CHECK(v.outcome == Verdict::Fail);
    CHECK(v.worst_margin < 0.0);
  }

  TEST_CASE("zero samples are always dominated") {
    const std::vector<double> zeros(500, 0.0);
    CHECK(check_dominated_by_scaled_geom(zeros, 3.0, 0.01, 0.99).passed);
  }

  TEST_CASE("the band keeps its coverage across repeated trials") {
    int passes = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const auto samples = geometric_samples(0.1, 1.0, 400, 1000 + trial);
      passes += check_dominated_by_scaled_geom(samples, 1.0, 0.1, 0.99).passed ? 1 : 0;
    }
    CHECK(passes >= 99);
  }

  TEST_CASE("censored runs") {
    std::vector<HittingRecord> records;
    for (std::uint64_t i = 0; i < 200; ++i) records.push_back({i, 1 + i % 3, false, 2 + 2 * (i % 3), 1});
    CHECK(check_dominated_by_scaled_geom(records, 10.0, 0.5, 0.99).outcome == Verdict::Pass);

    // A censored run at a small budget passes when its time is taken at the
    // budget but fails when it is taken at infinity.
    for (std::size_t i = 0; i < 40; ++i) records[i] = {i, 5, true, 10, 1};
    const auto v = check_dominated_by_scaled_geom(records, 10.0, 0.5, 0.99);
    CHECK(v.outcome == Verdict::Inconclusive);
    CHECK_FALSE(v.passed);

    // Too large even at the budget.
    for (auto& r : records) r = {r.replicate_index, 1000, true, 2000, 1};
    CHECK(check_dominated_by_scaled_geom(records, 1.0, 0.5, 0.99).outcome == Verdict::Fail);
  }

  TEST_CASE("input validation") {
    const std::vector<double> empty;
    CHECK_THROWS_WITH_AS(check_dominated_by_scaled_geom(empty, 1.0, 0.5, 0.99), "empty samples", Error);
    const std::vector<double> few(99, 1.0);
    CHECK_THROWS_AS(check_dominated_by_scaled_geom(few, 1.0, 0.5, 0.99), Error);
    CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
  }

  TEST_CASE("mean confidence interval") {
    const std::vector<double> constant(10, 4.0);
    const auto c = mean_ci(constant, 0.95);
    CHECK(c.mean == 4.0);
    CHECK(c.half_width == 0.0);
    const std::vector<double> pair{0.0, 2.0};
    const auto p = mean_ci(pair, 0.95);
    CHECK(p.mean == 1.0);
    CHECK(p.standard_error == doctest::Approx(1.0));
    CHECK(p.half_width == doctest::Approx(1.959964).epsilon(1e-5));
    const std::vector<double> one{1.0};
    CHECK_THROWS_WITH_AS(mean_ci(one, 0.95), "insufficient samples", Error);
  }

  TEST_CASE("mean interval coverage on geometric samples") {
    int covered = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const auto samples = geometric_samples(0.5, 1.0, 2000, 5000 + trial);
      const auto ci = mean_ci(samples, 0.999);
      covered += std::abs(ci.mean - 2.0) <= ci.half_width ? 1 : 0;
    }
    CHECK(covered >= 99);
  }

  TEST_CASE("drift threshold") {
    CHECK(drift_threshold(100, 0.0, 1) == doctest::Approx(2 * std::exp(2.0)));
    CHECK(drift_threshold(100, 0.5, 5) == doctest::Approx(2 * std::exp(2.0) * 10.0 / 5.0));
  }

  TEST_CASE("RLS drift on OneMax at level 5 is one half") {
    const std::vector<std::size_t> levels{5};
    const auto est = estimate_drift(AlgorithmSpec::of(AlgorithmKind::RLS), BenchmarkSpec::one_max(10),
                                    NoiseSpec::none(), levels, 20000, 3);
    REQUIRE(est.per_level.size() == 1);
    CHECK(est.per_level[0].level == 5);
    CHECK(std::abs(est.per_level[0].mean - 0.5) <= 3.0 * est.per_level[0].standard_error);
  }

  TEST_CASE("comma drift changes sign between the optimum and the middle") {
    constexpr std::size_t n = 100;
    auto alg = AlgorithmSpec::of(AlgorithmKind::OneCommaLambdaEA);
    alg.lambda = 5;
    const std::vector<std::size_t> levels{1, 2, 40};
    const auto est = estimate_drift(alg, BenchmarkSpec::one_max(n), NoiseSpec::none(), levels, 50000, 77, 0.5);
    REQUIRE(est.per_level.size() == 3);
    for (const auto& level : est.per_level) {
      const auto dist = comma_best_of_lambda_distribution(n, level.level, 5, 1.0 / n);
      double exact = 0.0;
      for (std::size_t k = 0; k <= n; ++k) exact += dist[k] * (static_cast<double>(level.level) - static_cast<double>(k));
      CHECK(std::abs(level.mean - exact) <= 3.0 * level.standard_error);
    }
    CHECK(est.per_level[0].mean < 0.0);
    CHECK(est.per_level[2].mean > 0.0);
    REQUIRE(est.d0.has_value());
    CHECK(*est.d0 == doctest::Approx(drift_threshold(n, 0.5, 5)));
  }

  TEST_CASE("estimated drift agrees with the lumped chain at every level") {
    constexpr std::size_t n = 8;
    auto comma = AlgorithmSpec::of(AlgorithmKind::OneCommaLambdaEA);
    comma.lambda = 3;
    std::vector<std::size_t> levels;
    std::vector<double> potential;
    for (std::size_t d = 0; d <= n; ++d) potential.push_back(static_cast<double>(d));
    for (std::size_t d = 1; d <= n; ++d) levels.push_back(d);
    std::uint64_t seed = 40;
    for (const auto& alg : {AlgorithmSpec::of(AlgorithmKind::RLS), AlgorithmSpec::of(AlgorithmKind::OnePlusOneEA), comma}) {
      const auto spec = BenchmarkSpec::one_max(n);
      const auto m = lumped_chain(alg, spec, NoiseSpec::none());
      const auto est = estimate_drift(alg, spec, NoiseSpec::none(), levels, 20000, ++seed);
      for (const auto& level : est.per_level) {
        const double exact = exact_drift(m, potential, level.level);
        INFO(to_string(alg.kind), " d=", level.level);
        CHECK(std::abs(level.mean - exact) <= 4.0 * level.standard_error + 1e-12);
      }
    }
  }

  TEST_CASE("levels that cannot be prepared are reported") {
    const std::vector<std::size_t> levels{3};
    CHECK_THROWS_AS(estimate_drift(AlgorithmSpec::of(AlgorithmKind::RLS), BenchmarkSpec::leading_ones(8),
                                   NoiseSpec::none(), levels, 100, 1),
                    Error);
    const std::vector<std::size_t> beyond{9};
    CHECK_THROWS_AS(estimate_drift(AlgorithmSpec::of(AlgorithmKind::RLS), BenchmarkSpec::one_max(8),
                                   NoiseSpec::none(), beyond, 100, 1),
                    Error);
  }
}
