#include "hlab/stats.hpp"

#include "parallel.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace hlab {

double geom_tail(double p, std::int64_t k) {
  if (!(p > 0.0 && p <= 1.0)) throw Error("geometric success probability must lie in (0,1]");
  if (k <= 1) return 1.0;
  if (p == 1.0) return 0.0;
  return std::exp(static_cast<double>(k - 1) * std::log1p(-p));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

double dkw_band_width(std::size_t samples, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error("confidence must lie in (0,1)");
  if (samples == 0) throw Error("empty samples");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

DominanceVerdict check_dominated_by_scaled_geom(std::span<const double> samples, double scale, double p,
                                                double confidence) {
  if (samples.empty()) throw Error("empty samples");
  if (samples.size() < 100) throw Error("dominance check needs at least 100 samples");
  if (!(scale > 0.0)) throw Error("scale must be positive");
  geom_tail(p, 1);  // validates p

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto total = static_cast<double>(sorted.size());

  DominanceVerdict v;
  v.confidence = confidence;
  v.samples = sorted.size();
  v.band_width = dkw_band_width(sorted.size(), confidence);
  v.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sorted.size();) {
    const double t = sorted[i];
    const double survival = static_cast<double>(sorted.size() - i) / total;
    double bound = 0.0;
    if (std::isfinite(t)) {
      const double trials = std::ceil(t / scale);
      bound = trials >= static_cast<double>(std::numeric_limits<std::int64_t>::max())
                  ? 0.0
                  : geom_tail(p, static_cast<std::int64_t>(trials));
    }
    const double margin = bound + v.band_width - survival;
    if (margin < v.worst_margin) {
      v.worst_margin = margin;
      v.worst_value = t;
      v.worst_quantile = static_cast<double>(i) / total;
    }
    while (i < sorted.size() && sorted[i] == t) ++i;
  }
  v.passed = v.worst_margin >= 0.0;
  v.outcome = v.passed ? Verdict::Pass : Verdict::Fail;
  return v;
}

DominanceVerdict check_dominated_by_scaled_geom(std::span<const HittingRecord> records, double scale, double p,
                                                double confidence) {
  std::vector<double> at_budget;
  std::vector<double> at_infinity;
  at_budget.reserve(records.size());
  at_infinity.reserve(records.size());
  bool any_censored = false;
  for (const auto& r : records) {
    const auto t = static_cast<double>(r.hitting_time);
    at_budget.push_back(t);
    at_infinity.push_back(r.censored ? std::numeric_limits<double>::infinity() : t);
    any_censored = any_censored || r.censored;
  }
  const auto pessimistic = check_dominated_by_scaled_geom(at_infinity, scale, p, confidence);
  if (!any_censored || pessimistic.passed) return pessimistic;
  auto optimistic = check_dominated_by_scaled_geom(at_budget, scale, p, confidence);
  if (!optimistic.passed) return optimistic;
  optimistic.passed = false;
  optimistic.outcome = Verdict::Inconclusive;
  return optimistic;
}

MeanCI mean_ci(std::span<const double> samples, double confidence) {
  if (samples.size() < 2) throw Error("insufficient samples");
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error("confidence must lie in (0,1)");
  const auto count = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / count;
  double squares = 0.0;
  for (const double s : samples) squares += (s - mean) * (s - mean);
  const double sd = std::sqrt(squares / (count - 1.0));
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
  MeanCI ci;
  ci.mean = mean;
  ci.standard_error = sd / std::sqrt(count);
  ci.half_width = z * ci.standard_error;
  return ci;
}

double drift_threshold(std::size_t n, double epsilon, std::size_t lambda) {
  if (lambda == 0) throw Error("lambda must be positive");
  return 2.0 * std::numbers::e * std::numbers::e * std::pow(static_cast<double>(n), epsilon) /
         static_cast<double>(lambda);
}

namespace {

BitString point_at_level(std::size_t n, std::size_t d, RngStream& rng) {
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::vector<std::size_t> zeros;
  zeros.reserve(d);
  std::sample(positions.begin(), positions.end(), std::back_inserter(zeros), d, rng);
  BitString x = BitString::ones(n);
  for (const auto i : zeros) x.set(i, false);
  return x;
}

}  // namespace

DriftEstimate estimate_drift(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise,
                             std::span<const std::size_t> levels, std::size_t samples_per_level,
                             std::uint64_t seed, std::optional<double> epsilon, std::size_t threads) {
  alg.validate();
  spec.validate();
  noise.validate();
  if (alg.kind == AlgorithmKind::SimpleGA) throw Error("drift estimation needs a single-trajectory algorithm");
  if (samples_per_level < 2) throw Error("insufficient samples");
  // Levels 0 and n are single points, so they are preparable for any benchmark.
  for (const auto d : levels) {
    if (d > spec.n || (d != 0 && d != spec.n && !spec.depends_only_on_ones_count())) {
      throw Error("unpreparable level " + std::to_string(d));
    }
  }

  DriftEstimate out;
  out.per_level.resize(levels.size());
  const auto n = spec.n;
  detail::parallel_for(levels.size(), threads == 0 ? detail::configured_threads() : threads, [&](std::size_t li) {
    const std::size_t d = levels[li];
    RngStream rng = derive_stream(seed, d);
    std::vector<double> changes(samples_per_level);
    for (auto& change : changes) {
      const TrajectoryState state{point_at_level(n, d, rng), 0};
      const auto next = alg.kind == AlgorithmKind::OneCommaLambdaEA
                            ? step_one_comma_lambda(alg, state, spec, noise, rng)
                            : step_single_trajectory(alg, state, spec, noise, rng);
      change = static_cast<double>(d) - static_cast<double>(n - next.state.current.ones_count());
    }
    const auto ci = mean_ci(changes, 0.95);
    out.per_level[li] = LevelDrift{d, ci.mean, ci.standard_error, samples_per_level};
  });
  if (epsilon) out.d0 = drift_threshold(n, *epsilon, alg.lambda);
  return out;
}

}  // namespace hlab
