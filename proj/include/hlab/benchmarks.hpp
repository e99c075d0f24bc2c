#pragma once

#include "hlab/core.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hlab {

enum class BenchmarkKind { OneMax, Linear, LeadingOnes, Jump, Plateau, MonotonePolynomial };

/// coefficient * prod_{i in indices} x_i, indices 0-based.
struct Monomial {
  double coefficient = 0.0;
  std::vector<std::size_t> indices;
};

/// A pseudo-Boolean benchmark f : {0,1}^n -> R, maximized at 1^n.
///
/// The needle function is Plateau with k = n (see `needle`).
struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::OneMax;
  std::size_t n = 1;
  std::size_t k = 0;              // Jump and Plateau
  std::vector<double> weights;    // Linear
  std::vector<Monomial> monomials;  // MonotonePolynomial

  static BenchmarkSpec one_max(std::size_t n) { return {BenchmarkKind::OneMax, n, 0, {}, {}}; }
  static BenchmarkSpec leading_ones(std::size_t n) { return {BenchmarkKind::LeadingOnes, n, 0, {}, {}}; }
  static BenchmarkSpec jump(std::size_t n, std::size_t k) { return {BenchmarkKind::Jump, n, k, {}, {}}; }
  static BenchmarkSpec plateau(std::size_t n, std::size_t k) { return {BenchmarkKind::Plateau, n, k, {}, {}}; }
  static BenchmarkSpec needle(std::size_t n) { return plateau(n, n); }
  static BenchmarkSpec linear(std::vector<double> weights);
  static BenchmarkSpec monotone_polynomial(std::size_t n, std::vector<Monomial> monomials);

  /// Throws Error("malformed spec: ...") on out-of-range parameters.
  void validate() const;
  /// True when f(x) depends on x only through ||x||_1.
  bool depends_only_on_ones_count() const noexcept;
};

std::string to_string(BenchmarkKind kind);
BenchmarkKind parse_benchmark_kind(std::string_view name);

double eval_benchmark(const BenchmarkSpec& spec, const BitString& x);

/// Exact value as a function of the ones count; only for count-symmetric kinds.
double eval_by_ones_count(const BenchmarkSpec& spec, std::size_t ones);

/// The all-ones string. Throws for Linear with a non-positive weight.
BitString optimum(const BenchmarkSpec& spec);

/// Exhaustive check over all upward single-bit edges; n <= 16.
bool is_weakly_monotonic(const BenchmarkSpec& spec);

}  // namespace hlab
