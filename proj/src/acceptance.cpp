#include "hlab/acceptance.hpp"

#include "hlab/harness.hpp"
#include "hlab/oracle.hpp"
#include "hlab/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hlab {

namespace {

constexpr double kExactTol = 1e-9;

struct Report {
  bool ok = true;
  std::ostringstream text;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      text << "FAILED " << what << "; ";
    }
  }
  CheckOutcome done() { return {ok, text.str()}; }
};

double factorial(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

double binomial_sigma(double p, std::size_t trials) { return std::sqrt(p * (1.0 - p) / static_cast<double>(trials)); }

double worst_start_time(const TransitionMatrix& chain) {
  const auto h = hitting_times(chain);
  return *std::max_element(h.begin(), h.end());
}

// Distinct random pair (x, y) of OneMax points satisfying `accept`.
template <class Pred>
std::pair<BitString, BitString> random_pair(std::size_t n, RngStream& rng, Pred accept) {
  while (true) {
    auto x = BitString::uniform(n, rng);
    auto y = BitString::uniform(n, rng);
    if (accept(x.ones_count(), y.ones_count())) return {std::move(x), std::move(y)};
  }
}

CheckOutcome oracle_exactness() {
  Report r;
  const auto alg = AlgorithmSpec::of(AlgorithmKind::RLS);
  const auto spec = BenchmarkSpec::one_max(3);
  const double lumped = expected_hitting_time(lumped_chain(alg, spec, NoiseSpec::none()), 3);
  const auto full = full_chain(alg, spec, NoiseSpec::none());
  const double from_full = expected_hitting_time(full, full_state_index(BitString::parse("000")));
  r.require(std::abs(lumped - 5.5) <= kExactTol, "lumped E[T] = 5.5");
  r.require(std::abs(from_full - 5.5) <= kExactTol, "full E[T] = 5.5");

  ExperimentConfig config;
  config.algorithm = alg;
  config.benchmark = spec;
  config.init = BitString::parse("000");
  config.replicates = 100'000;
  config.master_seed = 101;
  const auto result = run_experiment(config);
  const auto ci = *result.summary.ci;
  r.require(std::abs(ci.mean - 5.5) <= 3.0 * ci.standard_error, "Monte Carlo mean within 3 SE of 5.5");
  r.text << "exact " << lumped << ", Monte Carlo " << ci.mean << " +- " << ci.standard_error << " (SE)";
  return r.done();
}

CheckOutcome path_probability_check() {
  Report r;
  for (const std::size_t n : {2, 3, 4}) {
    const auto res = path_probability(AlgorithmSpec::of(AlgorithmKind::RLS), BenchmarkSpec::one_max(n), NoiseSpec::none(),
                                      BitString(n), n);
    const double expected = factorial(n) / std::pow(static_cast<double>(n), static_cast<double>(n));
    const double floor = std::pow(1.0 / std::numbers::e, static_cast<double>(n));
    r.require(std::abs(res.exact_prob - expected) <= kExactTol, "n!/n^n at n=" + std::to_string(n));
    r.require(res.exact_prob > floor && std::abs(res.lower_bound - floor) <= kExactTol,
              "exceeds (1/e)^n at n=" + std::to_string(n));
    r.text << "n=" << n << ": " << res.exact_prob << " >= " << res.lower_bound << "; ";
  }
  return r.done();
}

CheckOutcome runtime_bound_check() {
  Report r;
  std::size_t configs = 0;
  double tightest = 0.0;
  for (const auto kind : {AlgorithmKind::OnePlusOneEA, AlgorithmKind::RLS}) {
    for (const bool leading : {false, true}) {
      for (const auto& noise : {NoiseSpec::none(), NoiseSpec::one_bit(0.5)}) {
        for (std::size_t n = 3; n <= 6; ++n) {
          const auto alg = AlgorithmSpec::of(kind);
          const auto spec = leading ? BenchmarkSpec::leading_ones(n) : BenchmarkSpec::one_max(n);
          const double c = *acceptance_constant(alg, spec, noise);
          const double bound = static_cast<double>(n) * std::pow(std::numbers::e / c, static_cast<double>(n));
          const double worst = worst_start_time(full_chain(alg, spec, noise));
          r.require(worst <= bound, to_string(kind) + "/" + to_string(spec.kind) + "/" + to_string(noise.kind) +
                                        " n=" + std::to_string(n));
          tightest = std::max(tightest, worst / bound);
          ++configs;
        }
      }
    }
  }
  r.text << configs << " configurations, largest E[T]/bound ratio " << tightest;
  return r.done();
}

CheckOutcome additive_comparison_check() {
  Report r;
  constexpr std::size_t n = 20;
  constexpr std::size_t trials = 100'000;
  const double threshold = 0.5 - 3.0 * std::sqrt(0.25 / trials);
  const auto spec = BenchmarkSpec::one_max(n);
  RngStream pair_rng = derive_stream(401, 0);
  double lowest = 1.0;
  const std::array noises = {NoiseSpec::additive(AdditiveDist::gaussian(0.0, 100.0)),
                             NoiseSpec::additive(AdditiveDist::cauchy(0.0, 10.0))};
  for (std::size_t pair = 0; pair < 20; ++pair) {
    const auto [x, y] = random_pair(n, pair_rng, [](std::size_t fx, std::size_t fy) { return fx > fy; });
    for (std::size_t d = 0; d < noises.size(); ++d) {
      RngStream rng = derive_stream(402 + d, pair);
      std::size_t wins = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const double fx = noisy_eval(noises[d], spec, x, {EvalRole::Parent, 0}, rng);
        const double fy = noisy_eval(noises[d], spec, y, {EvalRole::Offspring, 0}, rng);
        wins += fx > fy ? 1 : 0;
      }
      const double freq = static_cast<double>(wins) / trials;
      lowest = std::min(lowest, freq);
      r.require(freq >= threshold, "pair " + std::to_string(pair) + " " + noises[d].dist.to_string());
    }
  }
  r.text << "lowest frequency " << lowest << " vs threshold " << threshold;
  return r.done();
}

CheckOutcome one_bit_comparison_check() {
  Report r;
  constexpr std::size_t n = 20;
  constexpr std::size_t trials = 100'000;
  const double threshold = 0.25 - 3.0 * binomial_sigma(0.25, trials);
  const auto spec = BenchmarkSpec::one_max(n);
  const auto noise = NoiseSpec::one_bit(0.5);
  RngStream pair_rng = derive_stream(501, 0);
  double lowest = 1.0;
  for (std::size_t pair = 0; pair < 20; ++pair) {
    auto [x, y] = random_pair(n, pair_rng, [](std::size_t fx, std::size_t fy) { return fx <= fy; });
    if (pair == 0) y = x;  // equal fitness is the hardest case
    RngStream rng = derive_stream(502, pair);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double fx = noisy_eval(noise, spec, x, {EvalRole::Parent, 0}, rng);
      const double fy = noisy_eval(noise, spec, y, {EvalRole::Offspring, 0}, rng);
      hits += fx <= fy ? 1 : 0;
    }
    const double freq = static_cast<double>(hits) / trials;
    lowest = std::min(lowest, freq);
    r.require(freq >= threshold, "pair " + std::to_string(pair));
  }
  r.text << "lowest frequency " << lowest << " vs threshold " << threshold;
  return r.done();
}

CheckOutcome bitwise_neighbor_check() {
  Report r;
  constexpr std::size_t n = 20;
  constexpr std::size_t trials = 1'000'000;
  constexpr double q = 0.9;
  const double target = 0.5 * (1.0 - q) * (1.0 - q);
  const double threshold = target - 3.0 * binomial_sigma(target, trials);
  const auto spec = BenchmarkSpec::one_max(n);
  const auto noise = NoiseSpec::bit_wise(q);
  RngStream pair_rng = derive_stream(601, 0);
  double lowest = 1.0;
  for (std::size_t pair = 0; pair < 3; ++pair) {
    // y is x with one additional one-bit.
    BitString x = BitString::uniform(n, pair_rng);
    if (x.all_ones()) x.set(0, false);
    std::size_t zero = static_cast<std::size_t>(pair_rng.below(n));
    while (x.test(zero)) zero = (zero + 1) % n;
    const BitString y = x.flipped(zero);
    RngStream rng = derive_stream(602, pair);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double fx = noisy_eval(noise, spec, x, {EvalRole::Parent, 0}, rng);
      const double fy = noisy_eval(noise, spec, y, {EvalRole::Offspring, 0}, rng);
      hits += fx < fy ? 1 : 0;
    }
    const double freq = static_cast<double>(hits) / trials;
    lowest = std::min(lowest, freq);
    r.require(freq >= threshold, "pair " + std::to_string(pair));
  }
  r.text << "lowest frequency " << lowest << " vs threshold " << threshold;
  return r.done();
}

CheckOutcome dominance_check() {
  Report r;
  constexpr std::size_t n = 7;
  ExperimentConfig config;
  config.algorithm = AlgorithmSpec::of(AlgorithmKind::OnePlusOneEA);
  config.benchmark = BenchmarkSpec::leading_ones(n);
  config.noise = NoiseSpec::one_bit(0.9);
  config.replicates = 10'000;
  config.budget = 10'000'000;
  config.master_seed = 701;
  const auto result = run_experiment(config);
  const double c = std::pow(1.0 - 1.0 / n, n - 1.0) * 0.1 * 0.1;
  const auto documented = *acceptance_constant(config.algorithm, config.benchmark, config.noise);
  r.require(std::abs(documented - c) <= 1e-15, "acceptance constant");
  const double p = std::pow(c / std::numbers::e, static_cast<double>(n));
  const auto verdict = check_dominated_by_scaled_geom(result.records, static_cast<double>(n), p, 0.99);
  r.require(result.summary.censoring_rate == 0.0, "zero censored runs");
  r.require(verdict.passed, "dominance verdict");
  r.text << "mean T " << result.summary.mean << ", max T " << result.summary.max << ", verdict "
         << to_string(verdict.outcome) << ", worst margin " << verdict.worst_margin;
  return r.done();
}

CheckOutcome fp_bound_check() {
  Report r;
  const auto alg = AlgorithmSpec::of(AlgorithmKind::FPOnePlusOneEA);
  for (const std::size_t n : {4, 5, 6}) {
    const auto spec = BenchmarkSpec::one_max(n);
    const auto chain = full_chain(alg, spec, NoiseSpec::none());
    const double bound = std::pow(2.0 * std::numbers::e * std::numbers::e, static_cast<double>(n));
    r.require(worst_start_time(chain) <= bound, "(2e^2)^n at n=" + std::to_string(n));
    const std::vector<double> uniform(chain.size(), 1.0 / static_cast<double>(chain.size()));
    const double exact = expected_hitting_time(chain, uniform);

    ExperimentConfig config;
    config.algorithm = alg;
    config.benchmark = spec;
    config.replicates = 1000;
    config.master_seed = 800 + n;
    const auto ci = *run_experiment(config).summary.ci;
    r.require(std::abs(ci.mean - exact) <= 4.0 * ci.standard_error, "Monte Carlo at n=" + std::to_string(n));
    r.text << "n=" << n << ": exact " << exact << ", MC " << ci.mean << " +- " << ci.standard_error << "; ";
  }
  return r.done();
}

CheckOutcome comma_drift_check() {
  Report r;
  constexpr std::size_t n = 100;
  constexpr std::size_t lambda = 5;
  auto alg = AlgorithmSpec::of(AlgorithmKind::OneCommaLambdaEA);
  alg.lambda = lambda;
  const std::vector<std::size_t> levels = {1, 2, 5, 25, 50};
  const auto estimate = estimate_drift(alg, BenchmarkSpec::one_max(n), NoiseSpec::none(), levels, 200'000, 901);
  for (const auto& level : estimate.per_level) {
    const auto dist = comma_best_of_lambda_distribution(n, level.level, lambda, 1.0 / n);
    double exact = 0.0;
    for (std::size_t k = 0; k <= n; ++k) exact += dist[k] * (static_cast<double>(level.level) - static_cast<double>(k));
    r.require(std::abs(level.mean - exact) <= 3.0 * level.standard_error, "d=" + std::to_string(level.level));
    if (level.level == 1) r.require(level.mean < 0.0 && exact < 0.0, "negative drift at d=1");
    if (level.level == 50) r.require(level.mean > 0.0 && exact > 0.0, "positive drift at d=50");
    r.text << "d=" << level.level << ": " << level.mean << " vs " << exact << "; ";
  }
  return r.done();
}

TransitionMatrix biased_walk(std::size_t top, double down, double up) {
  TransitionMatrix m;
  const auto size = static_cast<Eigen::Index>(top + 1);
  m.probs = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t i = 0; i <= top; ++i) m.states.push_back(std::to_string(i));
  m.target = 0;
  m.probs(0, 0) = 1.0;
  for (Eigen::Index i = 1; i < size; ++i) {
    m.probs(i, i - 1) = down;
    if (i + 1 < size) {
      m.probs(i, i + 1) = up;
    } else {
      m.probs(i, i) = up;
    }
    m.probs(i, i) += 1.0 - down - up;
  }
  return m;
}

std::vector<double> identity_potential(std::size_t size) {
  std::vector<double> phi(size);
  for (std::size_t i = 0; i < size; ++i) phi[i] = static_cast<double>(i);
  return phi;
}

CheckOutcome drift_theorem_check() {
  Report r;
  const auto rls = lumped_chain(AlgorithmSpec::of(AlgorithmKind::RLS), BenchmarkSpec::one_max(10), NoiseSpec::none());
  r.require(verify_drift_bound(rls, identity_potential(11), 0.1, 10), "RLS/OneMax n=10");
  const auto walk = biased_walk(10, 0.6, 0.4);
  r.require(verify_drift_bound(walk, identity_potential(11), 0.2, 10), "biased walk");
  bool rejected = false;
  try {
    auto flat = biased_walk(10, 0.6, 0.4);
    flat.probs(5, 4) = 0.5;
    flat.probs(5, 6) = 0.5;
    verify_drift_bound(flat, identity_potential(11), 0.1, 10);
  } catch (const Error& e) {
    rejected = std::string(e.what()).find("drift condition violated") != std::string::npos;
  }
  r.require(rejected, "zero-drift chain rejected");
  r.text << "RLS E[T] " << expected_hitting_time(rls, 10) << " <= 100, walk E[T] " << expected_hitting_time(walk, 10)
         << " <= 50";
  return r.done();
}

CheckOutcome simple_ga_check() {
  Report r;
  constexpr std::size_t n = 8;
  constexpr std::size_t mu = 16;
  auto alg = AlgorithmSpec::of(AlgorithmKind::SimpleGA);
  alg.mu = mu;
  ExperimentConfig config;
  config.algorithm = alg;
  config.benchmark = BenchmarkSpec::one_max(n);
  config.replicates = 100;
  config.budget = 1'000'000;
  config.master_seed = 1101;
  const auto result = run_experiment(config);
  std::size_t hits = 0;
  for (const auto& rec : result.records) hits += rec.censored ? 0 : 1;
  r.require(hits >= 95, "at least 95 of 100 replicates sample the optimum");
  r.text << hits << "/100 hit; ";

  // Offspring fitness identity at fixed parents: a population of identical parents.
  for (const std::size_t ones : {0, 4, 8}) {
    BitString x(n);
    for (std::size_t i = 0; i < ones; ++i) x.set(i, true);
    const PopulationState pop{std::vector<BitString>(mu, x), 0};
    RngStream rng = derive_stream(1102, ones);
    std::vector<double> values;
    values.reserve(100'000);
    while (values.size() < 100'000) {
      const auto next = step_simple_ga(alg, pop, config.benchmark, NoiseSpec::none(), rng);
      for (const auto& y : next.state.members) values.push_back(static_cast<double>(y.ones_count()));
    }
    const double om = static_cast<double>(ones);
    const double expected = om + (n - om) / n - om / n;
    const auto ci = mean_ci(values, 0.95);
    r.require(std::abs(ci.mean - expected) <= 3.0 * ci.standard_error, "identity at OM=" + std::to_string(ones));
    r.text << "OM=" << ones << ": " << ci.mean << " vs " << expected << "; ";
  }

  // Zero-fitness population: chi-square goodness of fit against uniform selection.
  RngStream rng = derive_stream(1103, 0);
  const std::vector<double> zeros(mu, 0.0);
  constexpr std::size_t draws = 160'000;
  std::vector<std::size_t> counts(mu, 0);
  for (std::size_t t = 0; t < draws; ++t) ++counts[fp_select(zeros, rng)];
  const double expected = static_cast<double>(draws) / mu;
  double chi2 = 0.0;
  for (const auto c : counts) chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  const double critical = boost::math::quantile(boost::math::chi_squared(mu - 1.0), 0.999);
  r.require(chi2 <= critical, "uniform selection on zero fitness");
  // A whole generation on a zero-fitness population runs without error.
  const PopulationState dead{std::vector<BitString>(mu, BitString(n)), 0};
  const auto next = step_simple_ga(alg, dead, BenchmarkSpec::leading_ones(n), NoiseSpec::none(), rng);
  r.require(next.state.members.size() == mu, "zero-fitness generation");
  r.text << "chi2 " << chi2 << " <= " << critical;
  return r.done();
}

CheckOutcome benchmark_suite_check() {
  Report r;
  std::size_t evaluations = 0;
  const auto for_all = [&](std::size_t n, auto&& fn) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      fn(BitString::from_index(n, i));
      ++evaluations;
    }
  };
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<BenchmarkSpec> specs = {BenchmarkSpec::one_max(n), BenchmarkSpec::leading_ones(n),
                                        BenchmarkSpec::needle(n)};
    std::vector<double> weights;
    for (std::size_t i = 0; i < n; ++i) weights.push_back(static_cast<double>(i + 1));
    specs.push_back(BenchmarkSpec::linear(weights));
    std::vector<Monomial> monomials = {{2.0, {0}}, {1.5, {0, n - 1}}};
    if (n >= 3) monomials.push_back({0.5, {1, 2}});
    specs.push_back(BenchmarkSpec::monotone_polynomial(n, monomials));
    for (std::size_t k = 1; k <= n; ++k) {
      specs.push_back(BenchmarkSpec::jump(n, k));
      specs.push_back(BenchmarkSpec::plateau(n, k));
    }
    for (const auto& spec : specs) {
      const double best = eval_benchmark(spec, optimum(spec));
      bool maximal = true;
      for_all(n, [&](const BitString& x) { maximal = maximal && eval_benchmark(spec, x) <= best; });
      r.require(maximal, "optimum maximal for " + to_string(spec.kind) + " n=" + std::to_string(n));
    }
    bool jump_one = true;
    const auto j1 = BenchmarkSpec::jump(n, 1);
    const auto om = BenchmarkSpec::one_max(n);
    for_all(n, [&](const BitString& x) { jump_one = jump_one && eval_benchmark(j1, x) == eval_benchmark(om, x) + 1.0; });
    r.require(jump_one, "Jump k=1 equals OneMax+1 at n=" + std::to_string(n));
    for (std::size_t k = 1; k <= n; ++k) {
      const auto plateau = BenchmarkSpec::plateau(n, k);
      const auto jump = BenchmarkSpec::jump(n, k);
      const double edge = eval_benchmark(jump, [&] {
        BitString y = BitString::ones(n);
        for (std::size_t i = 0; i < k; ++i) y.set(i, false);
        return y;
      }());
      bool flat = true;
      bool gap_ok = true;
      for_all(n, [&](const BitString& x) {
        const auto ones = x.ones_count();
        if (ones >= n - k && ones < n) flat = flat && eval_benchmark(plateau, x) == static_cast<double>(n);
        if (k >= 2) {
          // Gap points are the ones above level n-k in ones count but below it in fitness.
          const bool in_gap = ones > n - k && ones < n;
          gap_ok = gap_ok && (in_gap == (ones > n - k && eval_benchmark(jump, x) < edge));
        }
      });
      r.require(flat && eval_benchmark(plateau, BitString::ones(n)) == static_cast<double>(n + k),
                "plateau levels at n=" + std::to_string(n) + " k=" + std::to_string(k));
      r.require(gap_ok, "jump gap region at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  for (const std::size_t n : {8, 12}) {
    std::vector<double> weights(n, 1.0);
    weights[0] = 3.0;
    const std::vector<std::pair<BenchmarkSpec, bool>> table = {
        {BenchmarkSpec::one_max(n), true},
        {BenchmarkSpec::linear(weights), true},
        {BenchmarkSpec::leading_ones(n), true},
        {BenchmarkSpec::monotone_polynomial(n, {{1.0, {0, 1}}, {2.0, {2}}, {0.5, {n - 1}}}), true},
        {BenchmarkSpec::plateau(n, 3), true},
        {BenchmarkSpec::needle(n), true},
        {BenchmarkSpec::jump(n, 1), true},
        {BenchmarkSpec::jump(n, 2), false},
        {BenchmarkSpec::jump(n, 3), false},
    };
    for (const auto& [spec, expected] : table) {
      r.require(is_weakly_monotonic(spec) == expected,
                "monotonicity verdict for " + to_string(spec.kind) + " n=" + std::to_string(n) + " k=" +
                    std::to_string(spec.k));
    }
  }
  r.text << evaluations << " exhaustive evaluations";
  return r.done();
}

CheckOutcome determinism_check() {
  Report r;
  ExperimentConfig config = config_from_map({{"alg.kind", "ea"},
                                             {"bench.kind", "onemax"},
                                             {"bench.n", "12"},
                                             {"noise.kind", "pq"},
                                             {"noise.p", "0.3"},
                                             {"noise.q", "0.05"},
                                             {"run.replicates", "300"},
                                             {"run.seed", "1301"}});
  const auto serial = to_csv(run_experiment(config, 1).records);
  const auto again = to_csv(run_experiment(config, 1).records);
  const auto parallel = to_csv(run_experiment(config, 4).records);
  r.require(serial == again, "repeat run identical");
  r.require(serial == parallel, "serial and parallel identical");
  config.output.format = OutputFormat::Json;
  r.require(to_json(run_experiment(config, 1)) == to_json(run_experiment(config, 3)), "JSON identical");
  r.text << serial.size() << " CSV bytes compared";
  return r.done();
}

}  // namespace

std::vector<AcceptanceCheck> acceptance_checks() {
  return {
      {1, "oracle exactness", 5.0, oracle_exactness},
      {2, "path probability lower bound", 1.0, path_probability_check},
      {3, "expected runtime bound at oracle scale", 30.0, runtime_bound_check},
      {4, "additive noise comparison", 20.0, additive_comparison_check},
      {5, "one-bit noise comparison", 10.0, one_bit_comparison_check},
      {6, "bit-wise noise neighbor comparison", 30.0, bitwise_neighbor_check},
      {7, "scaled geometric dominance", 300.0, dominance_check},
      {8, "fitness-proportionate (1+1) EA bound", 120.0, fp_bound_check},
      {9, "(1,lambda) EA drift structure", 120.0, comma_drift_check},
      {10, "additive drift theorem", 1.0, drift_theorem_check},
      {11, "simple GA smoke and identity", 180.0, simple_ga_check},
      {12, "benchmark and monotonicity suite", 30.0, benchmark_suite_check},
      {13, "determinism", 10.0, determinism_check},
  };
}

std::vector<AcceptanceResult> run_acceptance(const std::set<int>& only, std::ostream& out) {
  std::vector<AcceptanceResult> results;
  for (const auto& check : acceptance_checks()) {
    if (!only.empty() && !only.contains(check.id)) continue;
    AcceptanceResult res{check.id, check.name, false, 0.0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto outcome = check.run();
      res.passed = outcome.passed;
      res.detail = outcome.detail;
    } catch (const std::exception& e) {
      res.detail = std::string("error: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.seconds >= check.time_limit_seconds) {
      res.passed = false;
      res.detail += " [exceeded time limit]";
    }
    out << (res.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << check.id << "  " << check.name << "  ("
        << std::fixed << std::setprecision(2) << res.seconds << "s / " << check.time_limit_seconds << "s)"
        << std::defaultfloat << std::setprecision(6) << "  " << res.detail << "\n";
    out.flush();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace hlab
