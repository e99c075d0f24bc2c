#include "hlab/harness.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>

using namespace hlab;

namespace {

ExperimentConfig rls_onemax(std::size_t n, std::uint64_t replicates, std::uint64_t seed) {
  ExperimentConfig c;
  c.algorithm = AlgorithmSpec::of(AlgorithmKind::RLS);
  c.benchmark = BenchmarkSpec::one_max(n);
  c.replicates = replicates;
  c.master_seed = seed;
  c.budget = 100000;
  return c;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config text parsing") {
    const auto map = parse_config_text(
        "# comment line\n"
        "alg.kind = ea\n"
        "\n"
        "bench.kind=onemax   # trailing comment\n"
        "bench.n=12\n"
        "noise.kind=one-bit\n"
        "noise.p=0.25\n");
    CHECK(map.at("alg.kind") == "ea");
    CHECK(map.at("bench.kind") == "onemax");
    const auto config = config_from_map(map);
    CHECK(config.algorithm.kind == AlgorithmKind::OnePlusOneEA);
    CHECK(config.benchmark.n == 12);
    CHECK(config.noise.kind == NoiseKind::OneBit);
    CHECK(config.noise.p == 0.25);
    CHECK(config.replicates == 1);
  }

  TEST_CASE("malformed settings are errors") {
    CHECK_THROWS_AS(parse_config_text("alg.kind\n"), Error);
    CHECK_THROWS_AS(config_from_map({{"alg.knid", "rls"}}), Error);
    CHECK_THROWS_AS(config_from_map({{"bench.n", "ten"}}), Error);
    CHECK_THROWS_AS(config_from_map({{"bench.kind", "jump"}, {"bench.n", "5"}, {"bench.k", "6"}}), Error);
    CHECK_THROWS_AS(config_from_map({{"run.init", "1011"}, {"bench.n", "5"}}), Error);
    CHECK_THROWS_WITH_AS(read_config_file("/nonexistent/hlab.cfg"),
                         doctest::Contains("cannot read config file"), Error);
  }

  TEST_CASE("resolved settings round-trip") {
    const auto config = config_from_map({{"alg.kind", "comma-ea"},
                                         {"alg.lambda", "6"},
                                         {"bench.kind", "jump"},
                                         {"bench.n", "9"},
                                         {"bench.k", "3"},
                                         {"noise.kind", "pq"},
                                         {"noise.p", "0.2"},
                                         {"noise.q", "0.1"},
                                         {"run.seed", "42"},
                                         {"run.init", "000111000"}});
    const auto map = config_to_map(config);
    for (const auto key : config_keys()) {
      // Weights and monomials only apply to their own benchmark kinds.
      if (key != "bench.weights" && key != "bench.monomials") CHECK(map.count(key) == 1);
    }
    const auto again = config_from_map(map);
    CHECK(config_to_map(again) == map);
    CHECK(again.algorithm.lambda == 6);
    CHECK(again.benchmark.k == 3);
    CHECK(again.init->to_string() == "000111000");
    CHECK(config_from_map(parse_config_text(config_to_text(config))).master_seed == 42);
  }

  TEST_CASE("benchmark forms") {
    const auto needle = config_from_map({{"bench.kind", "needle"}, {"bench.n", "6"}});
    CHECK(eval_benchmark(needle.benchmark, BitString::ones(6)) == 12);
    const auto linear = config_from_map({{"bench.kind", "linear"}, {"bench.weights", "1,2,3"}});
    CHECK(linear.benchmark.n == 3);
    CHECK(eval_benchmark(linear.benchmark, BitString::parse("011")) == 5);
    const auto poly = config_from_map(
        {{"bench.kind", "monotone-poly"}, {"bench.n", "3"}, {"bench.monomials", "2:1,3;1:2;0.5:"}});
    CHECK(eval_benchmark(poly.benchmark, BitString::parse("101")) == 2.5);
  }

  TEST_CASE("runs started at the optimum finish immediately") {
    auto config = rls_onemax(5, 4, 3);
    config.init = BitString::ones(5);
    const auto result = run_experiment(config, 1);
    REQUIRE(result.records.size() == 4);
    for (const auto& r : result.records) {
      CHECK(r.hitting_time == 0);
      CHECK_FALSE(r.censored);
    }
    CHECK(to_csv(result.records) ==
          "replicate_index,hitting_time,censored,evaluations,seed\n"
          "0,0,0,0,3\n1,0,0,0,3\n2,0,0,0,3\n3,0,0,0,3\n");
  }

  TEST_CASE("output does not depend on the thread count") {
    auto config = rls_onemax(12, 64, 9);
    config.noise = NoiseSpec::one_bit(0.3);
    const auto serial = run_experiment(config, 1);
    const auto parallel = run_experiment(config, 4);
    CHECK(to_csv(serial.records) == to_csv(parallel.records));
    CHECK(to_json(serial) == to_json(parallel));
  }

  TEST_CASE("JSON output layout") {
    const auto result = run_experiment(rls_onemax(4, 3, 5), 1);
    const auto json = to_json(result);
    CHECK(json.find("\"records\"") != std::string::npos);
    CHECK(json.find("\"config_echo\"") != std::string::npos);
    CHECK(json.find("\"summary\"") != std::string::npos);
    CHECK(json.find("\"alg.kind\": \"rls\"") != std::string::npos);
  }

  TEST_CASE("censoring is recorded at the budget") {
    auto config = rls_onemax(5, 5, 2);
    config.benchmark = BenchmarkSpec::jump(5, 2);
    config.init = BitString::parse("11100");
    config.budget = 30;
    const auto result = run_experiment(config, 1);
    for (const auto& r : result.records) {
      CHECK(r.censored);
      CHECK(r.hitting_time == 30);
    }
    CHECK(result.summary.censoring_rate == 1.0);
  }

  TEST_CASE("simulated mean matches the exact value for RLS on OneMax") {
    auto config = rls_onemax(3, 100000, 17);
    config.init = BitString(3);
    const auto result = run_experiment(config);
    REQUIRE(result.summary.ci.has_value());
    CHECK(std::abs(result.summary.mean - 5.5) <= 3.0 * result.summary.ci->standard_error);
    CHECK(result.summary.censoring_rate == 0.0);
    CHECK(result.summary.min >= 1);
  }

  TEST_CASE("oracle report") {
    OracleQuery from_zero;
    from_zero.start = BitString(3);
    const auto report = nlohmann::json::parse(oracle_report(rls_onemax(3, 1, 1), from_zero));
    CHECK(report.at("expected_hitting_time").get<double>() == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(report.at("target_reachable").get<bool>());
    // Uniform start: (3 * 3 + 3 * 4.5 + 5.5) / 8.
    const auto uniform = nlohmann::json::parse(oracle_report(rls_onemax(3, 1, 1), OracleQuery{}));
    CHECK(uniform.at("expected_hitting_time").get<double>() == doctest::Approx(3.5).epsilon(1e-12));
  }

  TEST_CASE("distribution report") {
    auto config = rls_onemax(6, 200, 4);
    config.noise = NoiseSpec::one_bit(0.5);
    const auto report = dist_report(run_experiment(config), 0.99);
    CHECK(report.find("\"outcome\": \"pass\"") != std::string::npos);
  }
}
