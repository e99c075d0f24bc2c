#pragma once

#include "hlab/benchmarks.hpp"
#include "hlab/heuristics.hpp"
#include "hlab/noise.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hlab {

/// Pr[X >= k] for X ~ Geom(p) counting trials up to the first success; 1 for k <= 1.
double geom_tail(double p, std::int64_t k);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct DominanceVerdict {
  bool passed = false;
  Verdict outcome = Verdict::Fail;
  double worst_value = 0.0;     // sample value with the smallest margin
  double worst_quantile = 0.0;  // empirical Pr[T < worst_value]
  double worst_margin = 0.0;    // bound + band - empirical survival at worst_value
  double confidence = 0.0;
  double band_width = 0.0;
  std::size_t samples = 0;
};

/// DKW half-width sqrt(ln(2/(1-confidence)) / (2N)).
double dkw_band_width(std::size_t samples, double confidence);

/// Checks Pr[T >= t] <= Pr[m * Geom(p) >= t] at every sample value t, with the
/// empirical survival function widened by the DKW band. Needs N >= 100.
DominanceVerdict check_dominated_by_scaled_geom(std::span<const double> samples, double scale, double p,
                                                double confidence);

/// Same check on hitting records. Censored runs make the verdict inconclusive
/// when it passes with censored times at the budget but fails with them at infinity.
DominanceVerdict check_dominated_by_scaled_geom(std::span<const HittingRecord> records, double scale, double p,
                                                double confidence);

struct MeanCI {
  double mean = 0.0;
  double half_width = 0.0;
  double standard_error = 0.0;
};

/// Normal-approximation interval: half_width = z * s / sqrt(N). Needs N >= 2.
MeanCI mean_ci(std::span<const double> samples, double confidence);

struct LevelDrift {
  std::size_t level = 0;
  double mean = 0.0;  // E[d_t - d_{t+1}], positive when moving toward the optimum
  double standard_error = 0.0;
  std::size_t samples = 0;
};

struct DriftEstimate {
  std::vector<LevelDrift> per_level;  // in the order the levels were requested
  std::optional<double> d0;
};

/// 2 e^2 n^epsilon / lambda.
double drift_threshold(std::size_t n, double epsilon, std::size_t lambda);

/// Empirical one-step drift of the distance to 1^n for parents drawn uniformly
/// from each requested level. Level d uses stream derive_stream(seed, d).
/// `threads` = 0 selects the configured default.
DriftEstimate estimate_drift(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise,
                             std::span<const std::size_t> levels, std::size_t samples_per_level,
                             std::uint64_t seed, std::optional<double> epsilon = std::nullopt,
                             std::size_t threads = 0);

}  // namespace hlab
