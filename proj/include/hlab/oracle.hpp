#pragma once

#include "hlab/benchmarks.hpp"
#include "hlab/heuristics.hpp"
#include "hlab/noise.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hlab {

/// Row-stochastic transition matrix of an algorithm's state process.
///
/// The target state is absorbing. An iteration that generates the optimum
/// moves to the target even if selection would discard it, so hitting the
/// target corresponds to the optimum being sampled.
struct TransitionMatrix {
  std::vector<std::string> states;
  Eigen::MatrixXd probs;
  std::size_t target = 0;

  std::size_t size() const noexcept { return states.size(); }
  /// Largest |row sum - 1| over all rows.
  double max_row_defect() const;
};

/// Marker returned when the target is not hit almost surely.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Exact chain on distance levels d = n - ||x||_1 in [0..n] (state index d,
/// target 0). Valid for benchmarks that depend only on the ones count and for
/// noise models with level-symmetric value distributions; n <= 64.
TransitionMatrix lumped_chain(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise);

/// Exact chain on all 2^n bit strings; state index i is BitString::from_index(n, i).
/// Limits: n <= 10 noise-free, n <= 8 with one-bit or adversarial noise,
/// n <= 6 with bit-wise or (p,q) noise.
TransitionMatrix full_chain(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise);

std::size_t full_state_index(const BitString& x);

/// Exact expected hitting time of the target from every state.
std::vector<double> hitting_times(const TransitionMatrix& m);
double expected_hitting_time(const TransitionMatrix& m, std::size_t start);
double expected_hitting_time(const TransitionMatrix& m, std::span<const double> start_distribution);

/// Probability that the target is reached within `steps` transitions.
double absorption_probability(const TransitionMatrix& m, std::size_t start, std::uint64_t steps);

/// c = c_A * c_N for (1+1)-type algorithms (with an extra factor 1/2 for
/// fitness-proportionate acceptance); empty for population-based kinds.
std::optional<double> acceptance_constant(const AlgorithmSpec& alg, const BenchmarkSpec& spec,
                                          const NoiseSpec& noise);

struct PathProbabilityResult {
  double exact_prob = 0.0;
  double lower_bound = 0.0;
  std::uint64_t horizon = 0;
  double c = 0.0;
  bool condition_holds = false;  // whether the lower bound is guaranteed for this configuration
};

/// Exact probability (full chain, matrix powering) that the optimum is
/// sampled within `horizon` iterations from `start`, against (c/e)^n, or
/// (c/e)^n / (e k!) for the (1+1) EA on Jump with k >= 2.
PathProbabilityResult path_probability(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise,
                                       const BitString& start, std::uint64_t horizon);

/// Exact one-step drift E[phi(X_t) - phi(X_{t+1}) | X_t = state].
double exact_drift(const TransitionMatrix& m, std::span<const double> potential, std::size_t state);

/// Checks the additive drift bound E[T] <= phi(start) / delta after verifying
/// the drift hypothesis at every non-target state (throws naming the first
/// violating state).
bool verify_drift_bound(const TransitionMatrix& m, std::span<const double> potential, double delta,
                        std::size_t start);

/// Distribution of the offspring's distance level when mutating a parent at
/// distance d on a count-symmetric landscape (index = new distance).
std::vector<double> offspring_level_distribution(const AlgorithmSpec& alg, std::size_t n, std::size_t d);

/// Noise-free (1,lambda) EA on OneMax: distribution of the new parent's
/// distance from a parent at distance d, as the minimum over lambda offspring.
std::vector<double> comma_best_of_lambda_distribution(std::size_t n, std::size_t d, std::size_t lambda,
                                                      double rate);

}  // namespace hlab
