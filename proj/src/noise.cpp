#include "hlab/noise.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

namespace hlab {

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::OneBit: return "one-bit";
    case NoiseKind::BitWise: return "bit-wise";
    case NoiseKind::PQ: return "pq";
    case NoiseKind::AdditivePosterior: return "additive";
    case NoiseKind::Adversarial: return "adversarial";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "none") return NoiseKind::None;
  if (name == "one-bit") return NoiseKind::OneBit;
  if (name == "bit-wise") return NoiseKind::BitWise;
  if (name == "pq") return NoiseKind::PQ;
  if (name == "additive") return NoiseKind::AdditivePosterior;
  if (name == "adversarial") return NoiseKind::Adversarial;
  throw Error("unknown noise kind '" + std::string(name) + "'");
}

double AdditiveDist::sample(RngStream& rng) const {
  switch (kind) {
    case Kind::Gaussian: return std::normal_distribution<double>(a, b)(rng);
    case Kind::Cauchy: return std::cauchy_distribution<double>(a, b)(rng);
    case Kind::Constant: return a;
    case Kind::Uniform: return a + (b - a) * rng.uniform01();
  }
  return 0.0;
}

void AdditiveDist::validate() const {
  if ((kind == Kind::Gaussian || kind == Kind::Cauchy) && !(b > 0.0)) {
    throw Error("additive noise scale must be positive");
  }
  if (kind == Kind::Uniform && !(b > a)) throw Error("uniform noise needs lo < hi");
}

std::string AdditiveDist::to_string() const {
  switch (kind) {
    case Kind::Gaussian: return "gaussian:" + text::format_double(a) + ":" + text::format_double(b);
    case Kind::Cauchy: return "cauchy:" + text::format_double(a) + ":" + text::format_double(b);
    case Kind::Constant: return "constant:" + text::format_double(a);
    case Kind::Uniform: return "uniform:" + text::format_double(a) + ":" + text::format_double(b);
  }
  return "?";
}

AdditiveDist AdditiveDist::parse(std::string_view text) {
  const auto parts = text::split(text, ':');
  const auto arg = [&](std::size_t i) {
    if (i >= parts.size()) throw Error("additive noise '" + std::string(text) + "' is missing parameters");
    return text::parse_double(parts[i]);
  };
  AdditiveDist d;
  if (parts[0] == "gaussian") {
    d = gaussian(arg(1), arg(2));
  } else if (parts[0] == "cauchy") {
    d = cauchy(arg(1), arg(2));
  } else if (parts[0] == "constant") {
    d = constant(arg(1));
  } else if (parts[0] == "uniform") {
    d = uniform(arg(1), arg(2));
  } else {
    throw Error("unknown additive noise '" + std::string(text) + "'");
  }
  d.validate();
  return d;
}

double fitness_surrogate_max() noexcept { return std::numeric_limits<double>::max() / 2; }
double fitness_surrogate_min() noexcept { return -fitness_surrogate_max(); }

double AdversaryPolicy::decide(const AdversaryContext& ctx) const {
  if (kind == Kind::Constant) return value;
  return ctx.role == EvalRole::Parent ? fitness_surrogate_max() : fitness_surrogate_min();
}

std::string AdversaryPolicy::to_string() const {
  if (kind == Kind::Constant) return "constant:" + text::format_double(value);
  return "anti-improvement";
}

AdversaryPolicy AdversaryPolicy::parse(std::string_view text) {
  if (text == "anti-improvement") return {Kind::AntiImprovement, 0.0};
  const auto parts = text::split(text, ':');
  if (parts.size() == 2 && parts[0] == "constant") return {Kind::Constant, text::parse_double(parts[1])};
  throw Error("unknown adversary policy '" + std::string(text) + "'");
}

namespace {

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(std::string("noise parameter ") + name + " must lie in [0,1]");
}

}  // namespace

void NoiseSpec::validate() const {
  check_probability(p, "p");
  check_probability(q, "q");
  if (kind == NoiseKind::AdditivePosterior) dist.validate();
}

std::optional<double> NoiseSpec::no_noise_probability(std::size_t n) const {
  const auto keep = std::pow(1.0 - q, static_cast<double>(n));
  switch (kind) {
    case NoiseKind::None: return 1.0;
    case NoiseKind::OneBit:
    case NoiseKind::Adversarial: return 1.0 - p;
    case NoiseKind::BitWise: return keep;
    case NoiseKind::PQ: return 1.0 - p * (1.0 - keep);
    case NoiseKind::AdditivePosterior: return std::nullopt;
  }
  return std::nullopt;
}

bool NoiseSpec::has_discrete_values() const noexcept {
  return kind != NoiseKind::AdditivePosterior || dist.kind == AdditiveDist::Kind::Constant;
}

double noisy_eval(const NoiseSpec& noise, const BenchmarkSpec& spec, const BitString& x, EvalContext ctx,
                  RngStream& rng) {
  if (x.size() != spec.n) throw Error("dimension mismatch");
  switch (noise.kind) {
    case NoiseKind::None:
      return eval_benchmark(spec, x);
    case NoiseKind::OneBit:
      if (noise.p > 0.0 && rng.bernoulli(noise.p)) {
        return eval_benchmark(spec, x.flipped(static_cast<std::size_t>(rng.below(x.size()))));
      }
      return eval_benchmark(spec, x);
    case NoiseKind::BitWise: {
      BitString y = x;
      flip_each_bit(y, noise.q, rng);
      return eval_benchmark(spec, y);
    }
    case NoiseKind::PQ:
      if (noise.p > 0.0 && rng.bernoulli(noise.p)) {
        BitString y = x;
        flip_each_bit(y, noise.q, rng);
        return eval_benchmark(spec, y);
      }
      return eval_benchmark(spec, x);
    case NoiseKind::AdditivePosterior:
      return eval_benchmark(spec, x) + noise.dist.sample(rng);
    case NoiseKind::Adversarial: {
      const double truth = eval_benchmark(spec, x);
      if (noise.p > 0.0 && rng.bernoulli(noise.p)) {
        return noise.adversary.decide(AdversaryContext{x, truth, ctx.role, ctx.iteration});
      }
      return truth;
    }
  }
  return 0.0;
}

std::vector<ValueAtom> merge_atoms(std::vector<ValueAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const ValueAtom& l, const ValueAtom& r) { return l.value < r.value; });
  std::vector<ValueAtom> merged;
  for (const auto& a : atoms) {
    if (a.prob <= 0.0) continue;
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

namespace {

void append_bitwise_atoms(std::vector<ValueAtom>& atoms, const BenchmarkSpec& spec, const BitString& x, double q,
                          double weight) {
  const std::size_t n = x.size();
  if (n > 20) throw Error("bit-wise noise enumeration infeasible for n > 20");
  const std::uint64_t masks = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < masks; ++m) {
    const auto flips = static_cast<double>(std::popcount(m));
    const double prob = weight * std::pow(q, flips) * std::pow(1.0 - q, static_cast<double>(n) - flips);
    if (prob <= 0.0) continue;
    BitString y = x;
    y.xor_with(BitString::from_index(n, m));
    atoms.push_back({eval_benchmark(spec, y), prob});
  }
}

}  // namespace

std::vector<ValueAtom> noisy_value_distribution(const NoiseSpec& noise, const BenchmarkSpec& spec,
                                                const BitString& x, EvalRole role, std::uint64_t iteration) {
  if (x.size() != spec.n) throw Error("dimension mismatch");
  const double truth = eval_benchmark(spec, x);
  std::vector<ValueAtom> atoms;
  switch (noise.kind) {
    case NoiseKind::None:
      atoms.push_back({truth, 1.0});
      break;
    case NoiseKind::OneBit:
      atoms.push_back({truth, 1.0 - noise.p});
      for (std::size_t i = 0; i < x.size(); ++i) {
        atoms.push_back({eval_benchmark(spec, x.flipped(i)), noise.p / static_cast<double>(x.size())});
      }
      break;
    case NoiseKind::BitWise:
      append_bitwise_atoms(atoms, spec, x, noise.q, 1.0);
      break;
    case NoiseKind::PQ:
      atoms.push_back({truth, 1.0 - noise.p});
      append_bitwise_atoms(atoms, spec, x, noise.q, noise.p);
      break;
    case NoiseKind::AdditivePosterior:
      if (noise.dist.kind != AdditiveDist::Kind::Constant) {
        throw Error("noise model has no finite value distribution");
      }
      atoms.push_back({truth + noise.dist.a, 1.0});
      break;
    case NoiseKind::Adversarial:
      atoms.push_back({truth, 1.0 - noise.p});
      atoms.push_back({noise.adversary.decide(AdversaryContext{x, truth, role, iteration}), noise.p});
      break;
  }
  return merge_atoms(std::move(atoms));
}

double comparison_constant(const NoiseSpec& noise, const BenchmarkSpec& spec) {
  if (noise.kind == NoiseKind::None) return 1.0;
  if (noise.kind == NoiseKind::AdditivePosterior) return 0.5;
  const double eps = *noise.no_noise_probability(spec.n);
  double c = eps * eps;
  if (noise.kind == NoiseKind::BitWise && spec.kind == BenchmarkKind::OneMax) {
    c = std::max(c, 0.5 * (1.0 - noise.q) * (1.0 - noise.q));
  }
  return c;
}

}  // namespace hlab
