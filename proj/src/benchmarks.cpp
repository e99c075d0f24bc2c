#include "hlab/benchmarks.hpp"

#include <cstdint>

namespace hlab {

BenchmarkSpec BenchmarkSpec::linear(std::vector<double> weights) {
  BenchmarkSpec spec{BenchmarkKind::Linear, weights.size(), 0, std::move(weights), {}};
  return spec;
}

BenchmarkSpec BenchmarkSpec::monotone_polynomial(std::size_t n, std::vector<Monomial> monomials) {
  return {BenchmarkKind::MonotonePolynomial, n, 0, {}, std::move(monomials)};
}

void BenchmarkSpec::validate() const {
  if (n == 0) throw Error("malformed spec: n must be positive");
  switch (kind) {
    case BenchmarkKind::Jump:
    case BenchmarkKind::Plateau:
      if (k < 1 || k > n) throw Error("malformed spec: k must lie in [1..n]");
      break;
    case BenchmarkKind::Linear:
      if (weights.size() != n) throw Error("malformed spec: linear needs exactly n weights");
      break;
    case BenchmarkKind::MonotonePolynomial:
      for (const auto& m : monomials) {
        if (!(m.coefficient >= 0.0)) throw Error("malformed spec: negative monomial coefficient");
        for (auto i : m.indices) {
          if (i >= n) throw Error("malformed spec: monomial index out of range");
        }
      }
      break;
    default:
      break;
  }
}

bool BenchmarkSpec::depends_only_on_ones_count() const noexcept {
  return kind == BenchmarkKind::OneMax || kind == BenchmarkKind::Jump || kind == BenchmarkKind::Plateau;
}

std::string to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::OneMax: return "onemax";
    case BenchmarkKind::Linear: return "linear";
    case BenchmarkKind::LeadingOnes: return "leadingones";
    case BenchmarkKind::Jump: return "jump";
    case BenchmarkKind::Plateau: return "plateau";
    case BenchmarkKind::MonotonePolynomial: return "monotone-poly";
  }
  return "?";
}

BenchmarkKind parse_benchmark_kind(std::string_view name) {
  if (name == "onemax") return BenchmarkKind::OneMax;
  if (name == "linear") return BenchmarkKind::Linear;
  if (name == "leadingones") return BenchmarkKind::LeadingOnes;
  if (name == "jump") return BenchmarkKind::Jump;
  if (name == "plateau") return BenchmarkKind::Plateau;
  if (name == "monotone-poly") return BenchmarkKind::MonotonePolynomial;
  throw Error("unknown benchmark kind '" + std::string(name) + "'");
}

double eval_by_ones_count(const BenchmarkSpec& spec, std::size_t ones) {
  const auto n = static_cast<double>(spec.n);
  const auto k = static_cast<double>(spec.k);
  const auto m = static_cast<double>(ones);
  switch (spec.kind) {
    case BenchmarkKind::OneMax:
      return m;
    case BenchmarkKind::Jump:
      if (ones <= spec.n - spec.k || ones == spec.n) return m + k;
      return n - m;
    case BenchmarkKind::Plateau:
      if (ones == spec.n) return n + k;
      if (ones <= spec.n - spec.k) return m + k;
      return n;
    default:
      throw Error("benchmark is not a function of the ones count");
  }
}

double eval_benchmark(const BenchmarkSpec& spec, const BitString& x) {
  if (x.size() != spec.n) throw Error("dimension mismatch");
  switch (spec.kind) {
    case BenchmarkKind::OneMax:
    case BenchmarkKind::Jump:
    case BenchmarkKind::Plateau:
      return eval_by_ones_count(spec, x.ones_count());
    case BenchmarkKind::LeadingOnes:
      return static_cast<double>(x.leading_ones());
    case BenchmarkKind::Linear: {
      double sum = 0.0;
      for (std::size_t i = 0; i < spec.n; ++i) {
        if (x.test(i)) sum += spec.weights[i];
      }
      return sum;
    }
    case BenchmarkKind::MonotonePolynomial: {
      double sum = 0.0;
      for (const auto& m : spec.monomials) {
        bool all = true;
        for (auto i : m.indices) {
          if (!x.test(i)) {
            all = false;
            break;
          }
        }
        if (all) sum += m.coefficient;
      }
      return sum;
    }
  }
  return 0.0;
}

BitString optimum(const BenchmarkSpec& spec) {
  spec.validate();
  if (spec.kind == BenchmarkKind::Linear) {
    for (double w : spec.weights) {
      if (!(w > 0.0)) throw Error("optimum not all-ones");
    }
  }
  return BitString::ones(spec.n);
}

bool is_weakly_monotonic(const BenchmarkSpec& spec) {
  spec.validate();
  if (spec.n > 16) throw Error("exhaustive check infeasible");
  const std::uint64_t count = std::uint64_t{1} << spec.n;
  std::vector<double> values(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) values[idx] = eval_benchmark(spec, BitString::from_index(spec.n, idx));
  // Chains of upward single-bit flips connect every comparable pair.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    for (std::size_t i = 0; i < spec.n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((idx & bit) == 0 && values[idx | bit] < values[idx]) return false;
    }
  }
  return true;
}

}  // namespace hlab
