#include "hlab/noise.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <map>

using namespace hlab;

namespace {

double eval(const NoiseSpec& noise, const BenchmarkSpec& spec, const char* bits, RngStream& rng,
            EvalRole role = EvalRole::Offspring) {
  return noisy_eval(noise, spec, BitString::parse(bits), {role, 0}, rng);
}

// Reference distribution built by explicit enumeration of noisy points, keyed by value.
std::map<double, double> reference_distribution(const NoiseSpec& noise, const BenchmarkSpec& spec,
                                                const BitString& x) {
  std::map<double, double> out;
  const std::size_t n = x.size();
  const double truth = eval_benchmark(spec, x);
  const auto bitwise = [&](double weight) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      BitString y = x;
      double prob = weight;
      for (std::size_t i = 0; i < n; ++i) {
        const bool flip = (m >> i) & 1U;
        if (flip) y.flip(i);
        prob *= flip ? noise.q : 1.0 - noise.q;
      }
      out[eval_benchmark(spec, y)] += prob;
    }
  };
  switch (noise.kind) {
    case NoiseKind::OneBit:
      out[truth] += 1.0 - noise.p;
      for (std::size_t i = 0; i < n; ++i) out[eval_benchmark(spec, x.flipped(i))] += noise.p / n;
      break;
    case NoiseKind::BitWise:
      bitwise(1.0);
      break;
    case NoiseKind::PQ:
      out[truth] += 1.0 - noise.p;
      bitwise(noise.p);
      break;
    default:
      out[truth] = 1.0;
  }
  return out;
}

}  // namespace

TEST_SUITE("noise") {
  TEST_CASE("degenerate and deterministic cases") {
    RngStream rng(1, 0);
    const auto om4 = BenchmarkSpec::one_max(4);
    for (int i = 0; i < 200; ++i) {
      REQUIRE(eval(NoiseSpec::one_bit(0.0), om4, "1010", rng) == 2);
      REQUIRE(eval(NoiseSpec::bit_wise(1.0), om4, "1110", rng) == 1);
      REQUIRE(eval(NoiseSpec::one_bit(1.0), BenchmarkSpec::one_max(2), "11", rng) == 1);
      REQUIRE(eval(NoiseSpec::additive(AdditiveDist::constant(0.0)), om4, "1011", rng) == 3);
      REQUIRE(eval(NoiseSpec::pq(0.0, 0.7), om4, "1011", rng) == 3);
      REQUIRE(eval(NoiseSpec::bit_wise(0.0), om4, "1011", rng) == 3);
    }
  }

  TEST_CASE("anti-improvement adversary") {
    RngStream rng(2, 0);
    const auto noise = NoiseSpec::adversarial(1.0);
    const auto spec = BenchmarkSpec::one_max(3);
    CHECK(eval(noise, spec, "101", rng, EvalRole::Offspring) == fitness_surrogate_min());
    CHECK(eval(noise, spec, "101", rng, EvalRole::Parent) == fitness_surrogate_max());
    CHECK(std::isfinite(fitness_surrogate_max() - fitness_surrogate_min()));
    const auto constant = NoiseSpec::adversarial(1.0, AdversaryPolicy{AdversaryPolicy::Kind::Constant, -4.0});
    CHECK(eval(constant, spec, "101", rng) == -4.0);
  }

  TEST_CASE("bit-wise noise mean on OneMax") {
    constexpr std::size_t n = 30;
    constexpr double q = 0.2;
    constexpr int samples = 100000;
    RngStream rng(4, 0);
    const auto spec = BenchmarkSpec::one_max(n);
    BitString x(n);
    for (std::size_t i = 0; i < 12; ++i) x.set(i, true);
    double sum = 0.0;
    double squares = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double v = noisy_eval(NoiseSpec::bit_wise(q), spec, x, {}, rng);
      sum += v;
      squares += v * v;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((squares / samples - mean * mean) / samples);
    CHECK(std::abs(mean - ((1 - q) * 12 + q * (n - 12))) <= 3.0 * se);
  }

  TEST_CASE("no-noise probability and comparison constant") {
    CHECK(*NoiseSpec::one_bit(0.3).no_noise_probability(5) == doctest::Approx(0.7));
    CHECK(*NoiseSpec::adversarial(0.4).no_noise_probability(5) == doctest::Approx(0.6));
    CHECK(*NoiseSpec::bit_wise(0.1).no_noise_probability(3) == doctest::Approx(0.729));
    CHECK(*NoiseSpec::pq(0.5, 0.1).no_noise_probability(3) == doctest::Approx(1 - 0.5 * 0.271));
    CHECK_FALSE(NoiseSpec::additive(AdditiveDist::gaussian(0, 1)).no_noise_probability(3).has_value());

    const auto om = BenchmarkSpec::one_max(20);
    CHECK(comparison_constant(NoiseSpec::none(), om) == 1.0);
    CHECK(comparison_constant(NoiseSpec::additive(AdditiveDist::cauchy(0, 1)), om) == 0.5);
    CHECK(comparison_constant(NoiseSpec::one_bit(0.5), om) == doctest::Approx(0.25));
    CHECK(comparison_constant(NoiseSpec::bit_wise(0.9), om) == doctest::Approx(0.005));
    CHECK(comparison_constant(NoiseSpec::bit_wise(0.9), BenchmarkSpec::leading_ones(20)) ==
          doctest::Approx(std::pow(0.1, 40)));
  }

  TEST_CASE("parameter validation and text forms") {
    CHECK_THROWS_AS(NoiseSpec::one_bit(1.5).validate(), Error);
    CHECK_THROWS_AS(NoiseSpec::bit_wise(-0.1).validate(), Error);
    CHECK_THROWS_AS(NoiseSpec::additive(AdditiveDist::gaussian(0, 0)).validate(), Error);
    CHECK(AdditiveDist::parse("gaussian:0:100").b == 100.0);
    CHECK(AdditiveDist::parse("uniform:-1:2").to_string() == "uniform:-1:2");
    CHECK(AdversaryPolicy::parse("constant:2.5").value == 2.5);
    CHECK(AdversaryPolicy::parse("anti-improvement").kind == AdversaryPolicy::Kind::AntiImprovement);
    CHECK_THROWS_AS(AdditiveDist::parse("laplace:0:1"), Error);
    for (const auto kind : {NoiseKind::None, NoiseKind::OneBit, NoiseKind::BitWise, NoiseKind::PQ,
                            NoiseKind::AdditivePosterior, NoiseKind::Adversarial}) {
      CHECK(parse_noise_kind(to_string(kind)) == kind);
    }
  }

  TEST_CASE("exact value distributions match explicit enumeration") {
    const auto x = BitString::parse("10110");
    for (const auto& spec : {BenchmarkSpec::one_max(5), BenchmarkSpec::leading_ones(5), BenchmarkSpec::jump(5, 2)}) {
      for (const auto& noise : {NoiseSpec::one_bit(0.3), NoiseSpec::bit_wise(0.2), NoiseSpec::pq(0.4, 0.3)}) {
        const auto atoms = noisy_value_distribution(noise, spec, x, EvalRole::Offspring);
        const auto ref = reference_distribution(noise, spec, x);
        REQUIRE(atoms.size() == ref.size());
        double total = 0.0;
        for (const auto& a : atoms) {
          REQUIRE(ref.count(a.value) == 1);
          CHECK(a.prob == doctest::Approx(ref.at(a.value)).epsilon(1e-12));
          total += a.prob;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
    CHECK_THROWS_WITH(noisy_value_distribution(NoiseSpec::additive(AdditiveDist::gaussian(0, 1)),
                                               BenchmarkSpec::one_max(3), BitString(3), EvalRole::Parent),
                      "noise model has no finite value distribution");
  }

  TEST_CASE("empirical one-bit noise frequencies match the exact distribution") {
    constexpr int samples = 200000;
    const auto spec = BenchmarkSpec::leading_ones(6);
    const auto noise = NoiseSpec::one_bit(0.6);
    const auto x = BitString::parse("111010");
    RngStream rng(6, 0);
    std::map<double, std::size_t> counts;
    for (int i = 0; i < samples; ++i) ++counts[noisy_eval(noise, spec, x, {}, rng)];
    for (const auto& a : noisy_value_distribution(noise, spec, x, EvalRole::Offspring)) {
      CHECK(testing::within_binomial_sigma(testing::frequency(counts[a.value], samples), a.prob, samples, 4.0));
    }
  }
}
