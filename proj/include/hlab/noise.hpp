#pragma once

#include "hlab/benchmarks.hpp"
#include "hlab/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hlab {

enum class NoiseKind { None, OneBit, BitWise, PQ, AdditivePosterior, Adversarial };
enum class EvalRole { Parent, Offspring };

std::string to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view name);

/// Distribution of the additive posterior noise variable X.
struct AdditiveDist {
  enum class Kind { Gaussian, Cauchy, Constant, Uniform };
  Kind kind = Kind::Constant;
  double a = 0.0;  // mean / location / value / lower end
  double b = 0.0;  // sigma / scale / unused / upper end

  static AdditiveDist gaussian(double mean, double sigma) { return {Kind::Gaussian, mean, sigma}; }
  static AdditiveDist cauchy(double location, double scale) { return {Kind::Cauchy, location, scale}; }
  static AdditiveDist constant(double value) { return {Kind::Constant, value, 0.0}; }
  static AdditiveDist uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }

  double sample(RngStream& rng) const;
  void validate() const;
  /// Text form, e.g. "gaussian:0:1", "constant:0".
  std::string to_string() const;
  static AdditiveDist parse(std::string_view text);
};

/// What the adversary sees on each triggered evaluation.
struct AdversaryContext {
  const BitString& point;
  double true_fitness;
  EvalRole role;
  std::uint64_t iteration;
};

/// Memoryless adversary: decides the returned fitness from the current evaluation only.
struct AdversaryPolicy {
  enum class Kind { Constant, AntiImprovement };
  Kind kind = Kind::AntiImprovement;
  double value = 0.0;  // Constant

  /// AntiImprovement reports the parent as maximal and the offspring as minimal.
  double decide(const AdversaryContext& ctx) const;
  std::string to_string() const;
  static AdversaryPolicy parse(std::string_view text);
};

/// Largest finite surrogate fitness; half of the double range so differences stay finite.
double fitness_surrogate_max() noexcept;
double fitness_surrogate_min() noexcept;

struct EvalContext {
  EvalRole role = EvalRole::Offspring;
  std::uint64_t iteration = 0;
};

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double p = 0.0;  // OneBit, PQ, Adversarial
  double q = 0.0;  // BitWise, PQ
  AdditiveDist dist;
  AdversaryPolicy adversary;

  static NoiseSpec none() { return {}; }
  static NoiseSpec one_bit(double p) { return {NoiseKind::OneBit, p, 0.0, {}, {}}; }
  static NoiseSpec bit_wise(double q) { return {NoiseKind::BitWise, 0.0, q, {}, {}}; }
  static NoiseSpec pq(double p, double q) { return {NoiseKind::PQ, p, q, {}, {}}; }
  static NoiseSpec additive(AdditiveDist d) { return {NoiseKind::AdditivePosterior, 0.0, 0.0, d, {}}; }
  static NoiseSpec adversarial(double p, AdversaryPolicy policy = {}) {
    return {NoiseKind::Adversarial, p, 0.0, {}, policy};
  }

  void validate() const;
  /// Probability eps that an evaluation returns the true fitness; empty for
  /// additive noise, where that notion does not apply.
  std::optional<double> no_noise_probability(std::size_t n) const;
  /// True when every evaluation has a finite discrete value distribution.
  bool has_discrete_values() const noexcept;
};

/// One fresh sample of the noisy fitness of x. No state is kept between calls.
double noisy_eval(const NoiseSpec& noise, const BenchmarkSpec& spec, const BitString& x, EvalContext ctx,
                  RngStream& rng);

struct ValueAtom {
  double value;
  double prob;
};

/// Exact distribution of noisy_eval(x) as sorted, merged atoms. Bit-wise and
/// (p,q) noise enumerate all 2^n masks (n <= 20). Continuous additive noise
/// has no finite representation and throws.
std::vector<ValueAtom> noisy_value_distribution(const NoiseSpec& noise, const BenchmarkSpec& spec,
                                                const BitString& x, EvalRole role, std::uint64_t iteration = 0);

/// Sorts by value and merges equal values, dropping zero-probability atoms.
std::vector<ValueAtom> merge_atoms(std::vector<ValueAtom> atoms);

/// Lower bound c_N on Pr[noisy f(z) >= noisy f(x)] for f(z) >= f(x):
/// 1 without noise, 1/2 for additive noise, eps^2 for prior and adversarial
/// noise (and at least (1-q)^2/2 for bit-wise noise on OneMax).
double comparison_constant(const NoiseSpec& noise, const BenchmarkSpec& spec);

}  // namespace hlab
