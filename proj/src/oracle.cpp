#include "hlab/oracle.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numbers>

namespace hlab {

namespace {

constexpr double kRowTolerance = 1e-12;

std::vector<double> binomial_pmf(std::size_t trials, double rate) {
  std::vector<double> pmf(trials + 1, 0.0);
  double coeff = 1.0;
  for (std::size_t k = 0; k <= trials; ++k) {
    pmf[k] = coeff * std::pow(rate, static_cast<double>(k)) * std::pow(1.0 - rate, static_cast<double>(trials - k));
    coeff = coeff * static_cast<double>(trials - k) / static_cast<double>(k + 1);
  }
  return pmf;
}

std::vector<double> mutation_level_distribution(std::size_t n, std::size_t d, double rate) {
  const auto improving = binomial_pmf(d, rate);
  const auto worsening = binomial_pmf(n - d, rate);
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t j = 0; j <= n - d; ++j) out[d - i + j] += improving[i] * worsening[j];
  }
  return out;
}

bool is_time_homogeneous_trajectory(AlgorithmKind kind) {
  return kind != AlgorithmKind::SimulatedAnnealing && kind != AlgorithmKind::SimpleGA;
}

/// Pr[the kind accepts the offspring] when parent and offspring values are
/// drawn independently from the given distributions.
double acceptance_probability(const AlgorithmSpec& alg, std::span<const ValueAtom> parent,
                              std::span<const ValueAtom> offspring) {
  double total = 0.0;
  switch (alg.kind) {
    case AlgorithmKind::Metropolis:
      for (const auto& x : parent) {
        for (const auto& y : offspring) {
          const double a = y.value >= x.value ? 1.0 : std::exp(-(x.value - y.value) / alg.temperature);
          total += x.prob * y.prob * a;
        }
      }
      return total;
    case AlgorithmKind::FPOnePlusOneEA:
      for (const auto& x : parent) {
        for (const auto& y : offspring) {
          if (x.value < 0.0 || y.value < 0.0) throw Error("fitness-proportionate acceptance undefined");
          const double sum = x.value + y.value;
          total += x.prob * y.prob * (sum > 0.0 ? y.value / sum : 0.5);
        }
      }
      return total;
    default: {
      // Elitist: Pr[Y >= X] with both atom lists sorted by value.
      std::size_t i = 0;
      double below_or_equal = 0.0;
      for (const auto& y : offspring) {
        while (i < parent.size() && parent[i].value <= y.value) below_or_equal += parent[i++].prob;
        total += y.prob * below_or_equal;
      }
      return total;
    }
  }
}

struct OffspringAtom {
  std::size_t outcome;
  double value;
  double prob;
};

/// Comma selection over lambda i.i.d. offspring restricted to non-target
/// outcomes: probability that the selected offspring has each outcome while
/// no offspring is the target. Ties at the maximal value are broken uniformly.
std::vector<double> comma_selection(std::vector<OffspringAtom> atoms, std::size_t outcomes, std::size_t lambda) {
  std::sort(atoms.begin(), atoms.end(), [](const auto& l, const auto& r) { return l.value < r.value; });
  std::vector<double> out(outcomes, 0.0);
  const auto lam = static_cast<double>(lambda);
  double below = 0.0;
  std::size_t i = 0;
  while (i < atoms.size()) {
    std::size_t j = i;
    double at = 0.0;
    while (j < atoms.size() && atoms[j].value == atoms[i].value) at += atoms[j++].prob;
    // lambda * sum_k C(lambda-1,k) at^k below^(lambda-1-k) / (k+1): one slot
    // has this value, k others tie with it, the rest are strictly below.
    double weight = 0.0;
    double coeff = 1.0;
    for (std::size_t k = 0; k < lambda; ++k) {
      weight += coeff * std::pow(at, static_cast<double>(k)) * std::pow(below, lam - 1.0 - static_cast<double>(k)) /
                static_cast<double>(k + 1);
      coeff = coeff * (lam - 1.0 - static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    weight *= lam;
    for (std::size_t a = i; a < j; ++a) out[atoms[a].outcome] += atoms[a].prob * weight;
    below += at;
    i = j;
  }
  return out;
}

double prob_any_of(double single, std::size_t lambda) {
  return -std::expm1(static_cast<double>(lambda) * std::log1p(-single));
}

std::vector<ValueAtom> level_value_distribution(const NoiseSpec& noise, const BenchmarkSpec& spec, std::size_t d,
                                                EvalRole role) {
  const std::size_t n = spec.n;
  const std::size_t ones = n - d;
  const auto value = [&](std::size_t m) { return eval_by_ones_count(spec, m); };
  const auto nn = static_cast<double>(n);
  std::vector<ValueAtom> atoms;
  const auto append_bitwise = [&](double weight) {
    const auto kept = binomial_pmf(ones, 1.0 - noise.q);
    const auto gained = binomial_pmf(d, noise.q);
    for (std::size_t a = 0; a <= ones; ++a) {
      for (std::size_t b = 0; b <= d; ++b) atoms.push_back({value(a + b), weight * kept[a] * gained[b]});
    }
  };
  switch (noise.kind) {
    case NoiseKind::None:
      atoms.push_back({value(ones), 1.0});
      break;
    case NoiseKind::OneBit:
      atoms.push_back({value(ones), 1.0 - noise.p});
      if (ones > 0) atoms.push_back({value(ones - 1), noise.p * static_cast<double>(ones) / nn});
      if (d > 0) atoms.push_back({value(ones + 1), noise.p * static_cast<double>(d) / nn});
      break;
    case NoiseKind::BitWise:
      append_bitwise(1.0);
      break;
    case NoiseKind::PQ:
      atoms.push_back({value(ones), 1.0 - noise.p});
      append_bitwise(noise.p);
      break;
    case NoiseKind::AdditivePosterior:
      if (noise.dist.kind != AdditiveDist::Kind::Constant) throw Error("lumping invalid");
      atoms.push_back({value(ones) + noise.dist.a, 1.0});
      break;
    case NoiseKind::Adversarial: {
      BitString representative(n);
      for (std::size_t i = 0; i < ones; ++i) representative.set(i, true);
      atoms.push_back({value(ones), 1.0 - noise.p});
      atoms.push_back({noise.adversary.decide(AdversaryContext{representative, value(ones), role, 0}), noise.p});
      break;
    }
  }
  return merge_atoms(std::move(atoms));
}

std::size_t full_chain_limit(const NoiseSpec& noise) {
  switch (noise.kind) {
    case NoiseKind::None:
    case NoiseKind::AdditivePosterior:
      return 10;
    case NoiseKind::OneBit:
    case NoiseKind::Adversarial:
      return 8;
    case NoiseKind::BitWise:
    case NoiseKind::PQ:
      return 6;
  }
  return 0;
}

/// Pr[mutation maps x to a fixed y at Hamming distance h], indexed by h.
std::vector<double> mutation_by_distance(const AlgorithmSpec& alg, std::size_t n) {
  std::vector<double> out(n + 1, 0.0);
  const auto nn = static_cast<double>(n);
  const auto bit_mutation = [&](double rate, double weight) {
    for (std::size_t h = 0; h <= n; ++h) {
      out[h] += weight * std::pow(rate, static_cast<double>(h)) * std::pow(1.0 - rate, nn - static_cast<double>(h));
    }
  };
  switch (alg.kind) {
    case AlgorithmKind::RLS:
    case AlgorithmKind::Metropolis:
    case AlgorithmKind::SimulatedAnnealing:
      out[1] = 1.0 / nn;
      break;
    case AlgorithmKind::FastOnePlusOneEA: {
      const auto pmf = fast_mutation_strength_pmf(n, alg.beta);
      for (std::size_t a = 1; a <= pmf.size(); ++a) bit_mutation(static_cast<double>(a) / nn, pmf[a - 1]);
      break;
    }
    default:
      bit_mutation(alg.rate_for(n), 1.0);
      break;
  }
  return out;
}

}  // namespace

double TransitionMatrix::max_row_defect() const {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < probs.rows(); ++r) worst = std::max(worst, std::abs(probs.row(r).sum() - 1.0));
  return worst;
}

std::vector<double> offspring_level_distribution(const AlgorithmSpec& alg, std::size_t n, std::size_t d) {
  if (d > n) throw Error("distance exceeds dimension");
  std::vector<double> out(n + 1, 0.0);
  const auto nn = static_cast<double>(n);
  switch (alg.kind) {
    case AlgorithmKind::RLS:
    case AlgorithmKind::Metropolis:
    case AlgorithmKind::SimulatedAnnealing:
      if (d > 0) out[d - 1] = static_cast<double>(d) / nn;
      if (d < n) out[d + 1] = static_cast<double>(n - d) / nn;
      return out;
    case AlgorithmKind::FastOnePlusOneEA: {
      const auto pmf = fast_mutation_strength_pmf(n, alg.beta);
      for (std::size_t a = 1; a <= pmf.size(); ++a) {
        const auto part = mutation_level_distribution(n, d, static_cast<double>(a) / nn);
        for (std::size_t i = 0; i <= n; ++i) out[i] += pmf[a - 1] * part[i];
      }
      return out;
    }
    default:
      return mutation_level_distribution(n, d, alg.rate_for(n));
  }
}

std::vector<double> comma_best_of_lambda_distribution(std::size_t n, std::size_t d, std::size_t lambda,
                                                      double rate) {
  const auto single = mutation_level_distribution(n, d, rate);
  // Pr[min >= k] = Pr[single >= k]^lambda.
  std::vector<double> at_least(n + 2, 0.0);
  for (std::size_t k = n + 1; k-- > 0;) at_least[k] = at_least[k + 1] + single[k];
  std::vector<double> out(n + 1, 0.0);
  const auto lam = static_cast<double>(lambda);
  for (std::size_t k = 0; k <= n; ++k) {
    out[k] = std::pow(std::min(1.0, at_least[k]), lam) - std::pow(std::min(1.0, at_least[k + 1]), lam);
  }
  return out;
}

TransitionMatrix lumped_chain(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise) {
  alg.validate();
  spec.validate();
  noise.validate();
  if (!spec.depends_only_on_ones_count() || !is_time_homogeneous_trajectory(alg.kind) || !noise.has_discrete_values()) {
    throw Error("lumping invalid");
  }
  const std::size_t n = spec.n;
  if (n > 64) throw Error("lumped chain supports n <= 64");

  TransitionMatrix m;
  m.target = 0;
  m.probs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  for (std::size_t d = 0; d <= n; ++d) m.states.push_back("d=" + std::to_string(d));
  m.probs(0, 0) = 1.0;

  std::vector<std::vector<ValueAtom>> parent_values(n + 1);
  std::vector<std::vector<ValueAtom>> offspring_values(n + 1);
  for (std::size_t d = 0; d <= n; ++d) {
    parent_values[d] = level_value_distribution(noise, spec, d, EvalRole::Parent);
    offspring_values[d] = level_value_distribution(noise, spec, d, EvalRole::Offspring);
  }

  for (std::size_t d = 1; d <= n; ++d) {
    const auto levels = offspring_level_distribution(alg, n, d);
    const auto row = static_cast<Eigen::Index>(d);
    if (alg.kind == AlgorithmKind::OneCommaLambdaEA) {
      std::vector<OffspringAtom> atoms;
      for (std::size_t e = 1; e <= n; ++e) {
        if (levels[e] == 0.0) continue;
        for (const auto& v : offspring_values[e]) atoms.push_back({e, v.value, levels[e] * v.prob});
      }
      const auto selected = comma_selection(std::move(atoms), n + 1, alg.lambda);
      for (std::size_t e = 1; e <= n; ++e) m.probs(row, static_cast<Eigen::Index>(e)) = selected[e];
      m.probs(row, 0) = prob_any_of(levels[0], alg.lambda);
      continue;
    }
    for (std::size_t e = 0; e <= n; ++e) {
      const double w = levels[e];
      if (w == 0.0) continue;
      if (e == 0 || e == d) {
        m.probs(row, static_cast<Eigen::Index>(e)) += w;
        continue;
      }
      const double a = acceptance_probability(alg, parent_values[d], offspring_values[e]);
      m.probs(row, static_cast<Eigen::Index>(e)) += w * a;
      m.probs(row, row) += w * (1.0 - a);
    }
  }
  return m;
}

std::size_t full_state_index(const BitString& x) { return static_cast<std::size_t>(x.to_index()); }

TransitionMatrix full_chain(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise) {
  alg.validate();
  spec.validate();
  noise.validate();
  if (!is_time_homogeneous_trajectory(alg.kind)) {
    throw Error("exact chains need a time-homogeneous single-trajectory algorithm");
  }
  if (!noise.has_discrete_values()) throw Error("noise model has no finite value distribution");
  const std::size_t n = spec.n;
  if (n > full_chain_limit(noise)) throw Error("state space too large");

  const std::size_t count = std::size_t{1} << n;
  const std::size_t target = count - 1;
  TransitionMatrix m;
  m.target = target;
  m.probs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  m.states.reserve(count);
  std::vector<std::vector<ValueAtom>> parent_values(count);
  std::vector<std::vector<ValueAtom>> offspring_values(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto x = BitString::from_index(n, i);
    m.states.push_back(x.to_string());
    parent_values[i] = noisy_value_distribution(noise, spec, x, EvalRole::Parent);
    offspring_values[i] = noisy_value_distribution(noise, spec, x, EvalRole::Offspring);
  }
  const auto mutation = mutation_by_distance(alg, n);
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  m.probs(idx(target), idx(target)) = 1.0;

  for (std::size_t x = 0; x < target; ++x) {
    if (alg.kind == AlgorithmKind::OneCommaLambdaEA) {
      std::vector<OffspringAtom> atoms;
      for (std::size_t y = 0; y < target; ++y) {
        const double w = mutation[static_cast<std::size_t>(std::popcount(x ^ y))];
        if (w == 0.0) continue;
        for (const auto& v : offspring_values[y]) atoms.push_back({y, v.value, w * v.prob});
      }
      const auto selected = comma_selection(std::move(atoms), count, alg.lambda);
      for (std::size_t y = 0; y < target; ++y) m.probs(idx(x), idx(y)) = selected[y];
      m.probs(idx(x), idx(target)) =
          prob_any_of(mutation[static_cast<std::size_t>(std::popcount(x ^ target))], alg.lambda);
      continue;
    }
    for (std::size_t y = 0; y < count; ++y) {
      const double w = mutation[static_cast<std::size_t>(std::popcount(x ^ y))];
      if (w == 0.0) continue;
      if (y == target || y == x) {
        m.probs(idx(x), idx(y)) += w;
        continue;
      }
      const double a = acceptance_probability(alg, parent_values[x], offspring_values[y]);
      m.probs(idx(x), idx(y)) += w * a;
      m.probs(idx(x), idx(x)) += w * (1.0 - a);
    }
  }
  return m;
}

std::vector<double> hitting_times(const TransitionMatrix& m) {
  const auto size = m.size();
  const auto& p = m.probs;
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  // Reverse reachability: which states can reach the target at all.
  const auto reverse_closure = [&](std::vector<char> marked) {
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < size; ++i) {
      if (marked[i]) queue.push_back(i);
    }
    while (!queue.empty()) {
      const auto j = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < size; ++i) {
        if (!marked[i] && p(idx(i), idx(j)) > 0.0) {
          marked[i] = 1;
          queue.push_back(i);
        }
      }
    }
    return marked;
  };
  std::vector<char> seed(size, 0);
  seed[m.target] = 1;
  const auto reaches_target = reverse_closure(seed);
  std::vector<char> stuck(size, 0);
  bool any_stuck = false;
  for (std::size_t i = 0; i < size; ++i) {
    stuck[i] = reaches_target[i] ? 0 : 1;
    any_stuck = any_stuck || stuck[i];
  }
  // Any state that can wander into a stuck state has infinite expectation.
  const auto infinite = any_stuck ? reverse_closure(stuck) : stuck;

  std::vector<std::size_t> transient;
  std::vector<Eigen::Index> position(size, -1);
  for (std::size_t i = 0; i < size; ++i) {
    if (i != m.target && !infinite[i]) {
      position[i] = static_cast<Eigen::Index>(transient.size());
      transient.push_back(i);
    }
  }
  std::vector<double> result(size, kUnreachable);
  result[m.target] = 0.0;
  if (transient.empty()) return result;

  const auto t = static_cast<Eigen::Index>(transient.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(t, t);
  for (Eigen::Index r = 0; r < t; ++r) {
    for (Eigen::Index c = 0; c < t; ++c) system(r, c) -= p(idx(transient[static_cast<std::size_t>(r)]), idx(transient[static_cast<std::size_t>(c)]));
  }
  const Eigen::VectorXd h = system.partialPivLu().solve(Eigen::VectorXd::Ones(t));
  for (Eigen::Index r = 0; r < t; ++r) result[transient[static_cast<std::size_t>(r)]] = h(r);
  return result;
}

double expected_hitting_time(const TransitionMatrix& m, std::size_t start) {
  if (start >= m.size()) throw Error("start state out of range");
  if (start == m.target) return 0.0;
  return hitting_times(m)[start];
}

double expected_hitting_time(const TransitionMatrix& m, std::span<const double> start_distribution) {
  if (start_distribution.size() != m.size()) throw Error("start distribution has the wrong size");
  const auto h = hitting_times(m);
  double total = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (start_distribution[i] == 0.0) continue;
    if (h[i] == kUnreachable) return kUnreachable;
    total += start_distribution[i] * h[i];
  }
  return total;
}

double absorption_probability(const TransitionMatrix& m, std::size_t start, std::uint64_t steps) {
  if (start >= m.size()) throw Error("start state out of range");
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(m.size()));
  v(static_cast<Eigen::Index>(start)) = 1.0;
  for (std::uint64_t s = 0; s < steps; ++s) v = v * m.probs;
  return v(static_cast<Eigen::Index>(m.target));
}

std::optional<double> acceptance_constant(const AlgorithmSpec& alg, const BenchmarkSpec& spec,
                                          const NoiseSpec& noise) {
  if (!alg.is_one_plus_one_type()) return std::nullopt;
  double c = neighbor_constant(alg, spec.n) * comparison_constant(noise, spec);
  if (alg.kind == AlgorithmKind::FPOnePlusOneEA) c *= 0.5;
  return c;
}

PathProbabilityResult path_probability(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise,
                                       const BitString& start, std::uint64_t horizon) {
  if (start.size() != spec.n) throw Error("dimension mismatch");
  const auto chain = full_chain(alg, spec, noise);
  PathProbabilityResult result;
  result.horizon = horizon;
  result.exact_prob = absorption_probability(chain, full_state_index(start), horizon);
  result.c = acceptance_constant(alg, spec, noise).value_or(0.0);

  const auto n = static_cast<double>(spec.n);
  const double base = std::pow(result.c / std::numbers::e, n);
  const std::size_t distance = spec.n - start.ones_count();
  if (spec.kind == BenchmarkKind::Jump && spec.k >= 2) {
    const double k_factorial = std::tgamma(static_cast<double>(spec.k) + 1.0);
    result.lower_bound = base / (std::numbers::e * k_factorial);
    const bool outside_gap = start.ones_count() <= spec.n - spec.k || distance == 0;
    result.condition_holds = alg.kind == AlgorithmKind::OnePlusOneEA && result.c > 0.0 &&
                             static_cast<double>(spec.k) <= n / std::log(n) && outside_gap &&
                             horizon + spec.k >= distance + 1;
  } else {
    result.lower_bound = base;
    result.condition_holds =
        alg.is_one_plus_one_type() && result.c > 0.0 && horizon >= distance && is_weakly_monotonic(spec);
  }
  return result;
}

double exact_drift(const TransitionMatrix& m, std::span<const double> potential, std::size_t state) {
  if (potential.size() != m.size()) throw Error("potential has the wrong size");
  double drift = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    drift += m.probs(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(j)) * (potential[state] - potential[j]);
  }
  return drift;
}

bool verify_drift_bound(const TransitionMatrix& m, std::span<const double> potential, double delta,
                        std::size_t start) {
  if (potential.size() != m.size()) throw Error("potential has the wrong size");
  if (!(delta > 0.0)) throw Error("delta must be positive");
  if (potential[m.target] != 0.0) throw Error("potential must vanish at the target");
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (s == m.target) continue;
    if (potential[s] < 0.0) throw Error("potential must be non-negative");
    const double drift = exact_drift(m, potential, s);
    if (drift < delta - kRowTolerance) {
      throw Error("drift condition violated at state " + m.states[s] + " (drift " + std::to_string(drift) + ")");
    }
  }
  const double expected = expected_hitting_time(m, start);
  return expected <= potential[start] / delta + 1e-9;
}

}  // namespace hlab
