#pragma once

#include "hlab/benchmarks.hpp"
#include "hlab/core.hpp"
#include "hlab/noise.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hlab {

enum class AlgorithmKind {
  RLS,
  Metropolis,
  SimulatedAnnealing,
  OnePlusOneEA,
  FastOnePlusOneEA,
  FPOnePlusOneEA,
  OneCommaLambdaEA,
  SimpleGA,
};

std::string to_string(AlgorithmKind kind);
AlgorithmKind parse_algorithm_kind(std::string_view name);

/// Temperature schedule for simulated annealing.
struct Schedule {
  enum class Kind { Geometric, Logarithmic };
  Kind kind = Kind::Geometric;
  double t0 = 1.0;     // Geometric: T(t) = t0 * ratio^t
  double ratio = 0.99;
  double c = 1.0;      // Logarithmic: T(t) = c / ln(t + 2)

  /// Always strictly positive; geometric decay is clamped at the smallest normal double.
  double temperature(std::uint64_t t) const;
  void validate() const;
  std::string to_string() const;
  static Schedule parse(std::string_view text);
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::RLS;
  double temperature = 1.0;  // Metropolis
  Schedule schedule;         // SimulatedAnnealing
  double beta = 1.5;         // FastOnePlusOneEA
  std::size_t lambda = 1;    // OneCommaLambdaEA
  std::size_t mu = 1;        // SimpleGA
  std::optional<double> mutation_rate;  // defaults to 1/n

  static AlgorithmSpec of(AlgorithmKind k) {
    AlgorithmSpec a;
    a.kind = k;
    return a;
  }

  double rate_for(std::size_t n) const { return mutation_rate.value_or(1.0 / static_cast<double>(n)); }
  bool is_one_plus_one_type() const noexcept;
  void validate() const;
};

struct TrajectoryState {
  BitString current;
  std::uint64_t iteration = 0;
};

struct PopulationState {
  std::vector<BitString> members;  // duplicates allowed
  std::uint64_t iteration = 0;
};

/// Next state plus what happened during the iteration.
template <class State>
struct StepResult {
  State state;
  bool sampled_optimum = false;  // 1^n generated in this iteration, accepted or not
  std::uint64_t evaluations = 0;
};

struct HittingRecord {
  std::uint64_t replicate_index = 0;
  std::uint64_t hitting_time = 0;  // equals the budget when censored
  bool censored = false;
  std::uint64_t evaluations = 0;
  std::uint64_t seed = 0;  // master seed; the stream index is replicate_index
};

BitString standard_bit_mutation(const BitString& x, double rate, RngStream& rng);

/// Power-law strength alpha in [1..max(1, floor(n/2))], Pr[alpha = k] proportional to k^-beta.
std::size_t sample_fast_mutation_strength(std::size_t n, double beta, RngStream& rng);
/// Pr[alpha = k] for k = 1..max(1, floor(n/2)), index k-1.
std::vector<double> fast_mutation_strength_pmf(std::size_t n, double beta);

/// The offspring operator of a (1+1)-type algorithm: one bit for RLS,
/// Metropolis and SA; standard or power-law bit mutation for the EAs.
BitString generate_offspring(const AlgorithmSpec& alg, const BitString& parent, RngStream& rng);

/// Probability that a fixed Hamming neighbor of the parent is generated is at least c_A / n.
double neighbor_constant(const AlgorithmSpec& alg, std::size_t n);

/// One iteration of a (1+1)-type algorithm. Parent and offspring each get one
/// fresh (noisy) evaluation; the kind's acceptance rule is applied to those values.
StepResult<TrajectoryState> step_single_trajectory(const AlgorithmSpec& alg, const TrajectoryState& state,
                                                   const BenchmarkSpec& spec, const NoiseSpec& noise,
                                                   RngStream& rng);

/// One iteration of the (1,lambda) EA: the parent is replaced by a uniformly
/// chosen offspring among those with maximal (noisy) fitness.
StepResult<TrajectoryState> step_one_comma_lambda(const AlgorithmSpec& alg, const TrajectoryState& state,
                                                  const BenchmarkSpec& spec, const NoiseSpec& noise, RngStream& rng);

/// Fitness-proportionate selection; uniform when all values are zero.
std::size_t fp_select(std::span<const double> values, RngStream& rng);

/// One generation of the mutation-only simple GA.
StepResult<PopulationState> step_simple_ga(const AlgorithmSpec& alg, const PopulationState& pop,
                                           const BenchmarkSpec& spec, const NoiseSpec& noise, RngStream& rng);

/// Runs until 1^n is generated or `budget` iterations have passed. An empty
/// `init` means a uniformly random start (a random population for the GA).
HittingRecord run_until_hit(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise,
                            const std::optional<BitString>& init, std::uint64_t budget, RngStream& rng);

}  // namespace hlab
