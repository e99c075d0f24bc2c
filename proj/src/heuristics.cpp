#include "hlab/heuristics.hpp"

#include "text_util.hpp"

#include <cmath>
#include <limits>

namespace hlab {

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::RLS: return "rls";
    case AlgorithmKind::Metropolis: return "metropolis";
    case AlgorithmKind::SimulatedAnnealing: return "sa";
    case AlgorithmKind::OnePlusOneEA: return "ea";
    case AlgorithmKind::FastOnePlusOneEA: return "fast-ea";
    case AlgorithmKind::FPOnePlusOneEA: return "fp-ea";
    case AlgorithmKind::OneCommaLambdaEA: return "comma-ea";
    case AlgorithmKind::SimpleGA: return "simple-ga";
  }
  return "?";
}

AlgorithmKind parse_algorithm_kind(std::string_view name) {
  if (name == "rls") return AlgorithmKind::RLS;
  if (name == "metropolis") return AlgorithmKind::Metropolis;
  if (name == "sa") return AlgorithmKind::SimulatedAnnealing;
  if (name == "ea") return AlgorithmKind::OnePlusOneEA;
  if (name == "fast-ea") return AlgorithmKind::FastOnePlusOneEA;
  if (name == "fp-ea") return AlgorithmKind::FPOnePlusOneEA;
  if (name == "comma-ea") return AlgorithmKind::OneCommaLambdaEA;
  if (name == "simple-ga") return AlgorithmKind::SimpleGA;
  throw Error("unknown algorithm kind '" + std::string(name) + "'");
}

double Schedule::temperature(std::uint64_t t) const {
  double temp = 0.0;
  if (kind == Kind::Geometric) {
    temp = t0 * std::pow(ratio, static_cast<double>(t));
  } else {
    temp = c / std::log(static_cast<double>(t) + 2.0);
  }
  return std::max(temp, std::numeric_limits<double>::min());
}

void Schedule::validate() const {
  if (kind == Kind::Geometric) {
    if (!(t0 > 0.0)) throw Error("schedule start temperature must be positive");
    if (!(ratio > 0.0 && ratio < 1.0)) throw Error("geometric schedule ratio must lie in (0,1)");
  } else if (!(c > 0.0)) {
    throw Error("logarithmic schedule constant must be positive");
  }
}

std::string Schedule::to_string() const {
  if (kind == Kind::Geometric) return "geometric:" + text::format_double(t0) + ":" + text::format_double(ratio);
  return "log:" + text::format_double(c);
}

Schedule Schedule::parse(std::string_view text) {
  const auto parts = text::split(text, ':');
  Schedule s;
  if (parts[0] == "geometric" && parts.size() == 3) {
    s.kind = Kind::Geometric;
    s.t0 = text::parse_double(parts[1]);
    s.ratio = text::parse_double(parts[2]);
  } else if (parts[0] == "log" && parts.size() == 2) {
    s.kind = Kind::Logarithmic;
    s.c = text::parse_double(parts[1]);
  } else {
    throw Error("unknown schedule '" + std::string(text) + "' (use geometric:T0:r or log:c)");
  }
  s.validate();
  return s;
}

bool AlgorithmSpec::is_one_plus_one_type() const noexcept {
  return kind != AlgorithmKind::OneCommaLambdaEA && kind != AlgorithmKind::SimpleGA;
}

void AlgorithmSpec::validate() const {
  if (!(temperature > 0.0)) throw Error("temperature must be positive");
  if (kind == AlgorithmKind::SimulatedAnnealing) schedule.validate();
  if (!(beta > 1.0)) throw Error("power-law exponent beta must exceed 1");
  if (lambda < 1) throw Error("lambda must be at least 1");
  if (mu < 1) throw Error("mu must be at least 1");
  if (mutation_rate && !(*mutation_rate > 0.0 && *mutation_rate <= 1.0)) {
    throw Error("mutation rate must lie in (0,1]");
  }
}

BitString standard_bit_mutation(const BitString& x, double rate, RngStream& rng) {
  if (!(rate > 0.0 && rate <= 1.0)) throw Error("mutation rate must lie in (0,1]");
  BitString y = x;
  flip_each_bit(y, rate, rng);
  return y;
}

std::vector<double> fast_mutation_strength_pmf(std::size_t n, double beta) {
  if (!(beta > 1.0)) throw Error("power-law exponent beta must exceed 1");
  if (n == 0) throw Error("dimension must be positive");
  const std::size_t top = std::max<std::size_t>(1, n / 2);
  std::vector<double> pmf(top);
  double total = 0.0;
  for (std::size_t k = 1; k <= top; ++k) {
    pmf[k - 1] = std::pow(static_cast<double>(k), -beta);
    total += pmf[k - 1];
  }
  for (auto& v : pmf) v /= total;
  return pmf;
}

std::size_t sample_fast_mutation_strength(std::size_t n, double beta, RngStream& rng) {
  const auto pmf = fast_mutation_strength_pmf(n, beta);
  double u = rng.uniform01();
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (u < pmf[k]) return k + 1;
    u -= pmf[k];
  }
  return pmf.size();
}

BitString generate_offspring(const AlgorithmSpec& alg, const BitString& parent, RngStream& rng) {
  const std::size_t n = parent.size();
  switch (alg.kind) {
    case AlgorithmKind::RLS:
    case AlgorithmKind::Metropolis:
    case AlgorithmKind::SimulatedAnnealing:
      return parent.flipped(static_cast<std::size_t>(rng.below(n)));
    case AlgorithmKind::FastOnePlusOneEA: {
      const auto alpha = sample_fast_mutation_strength(n, alg.beta, rng);
      return standard_bit_mutation(parent, static_cast<double>(alpha) / static_cast<double>(n), rng);
    }
    default:
      return standard_bit_mutation(parent, alg.rate_for(n), rng);
  }
}

double neighbor_constant(const AlgorithmSpec& alg, std::size_t n) {
  const double nn = static_cast<double>(n);
  switch (alg.kind) {
    case AlgorithmKind::RLS:
    case AlgorithmKind::Metropolis:
    case AlgorithmKind::SimulatedAnnealing:
      return 1.0;
    case AlgorithmKind::FastOnePlusOneEA:
      return fast_mutation_strength_pmf(n, alg.beta)[0] * std::pow(1.0 - 1.0 / nn, nn - 1.0);
    default: {
      const double r = alg.rate_for(n);
      return nn * r * std::pow(1.0 - r, nn - 1.0);
    }
  }
}

namespace {

bool accept(const AlgorithmSpec& alg, double parent_value, double offspring_value, std::uint64_t t,
            RngStream& rng) {
  switch (alg.kind) {
    case AlgorithmKind::Metropolis:
    case AlgorithmKind::SimulatedAnnealing: {
      if (offspring_value >= parent_value) return true;
      const double temp = alg.kind == AlgorithmKind::Metropolis ? alg.temperature : alg.schedule.temperature(t - 1);
      return rng.bernoulli(std::exp(-(parent_value - offspring_value) / temp));
    }
    case AlgorithmKind::FPOnePlusOneEA: {
      if (parent_value < 0.0 || offspring_value < 0.0) throw Error("fitness-proportionate acceptance undefined");
      const double total = parent_value + offspring_value;
      const double prob = total > 0.0 ? offspring_value / total : 0.5;
      return rng.bernoulli(prob);
    }
    default:
      return offspring_value >= parent_value;
  }
}

}  // namespace

StepResult<TrajectoryState> step_single_trajectory(const AlgorithmSpec& alg, const TrajectoryState& state,
                                                   const BenchmarkSpec& spec, const NoiseSpec& noise,
                                                   RngStream& rng) {
  if (!alg.is_one_plus_one_type()) throw Error("not a (1+1)-type algorithm");
  const std::uint64_t t = state.iteration + 1;
  BitString offspring = generate_offspring(alg, state.current, rng);
  const double parent_value = noisy_eval(noise, spec, state.current, {EvalRole::Parent, t}, rng);
  const double offspring_value = noisy_eval(noise, spec, offspring, {EvalRole::Offspring, t}, rng);
  StepResult<TrajectoryState> result{state, offspring.all_ones(), 2};
  result.state.iteration = t;
  if (accept(alg, parent_value, offspring_value, t, rng)) result.state.current = std::move(offspring);
  return result;
}

StepResult<TrajectoryState> step_one_comma_lambda(const AlgorithmSpec& alg, const TrajectoryState& state,
                                                  const BenchmarkSpec& spec, const NoiseSpec& noise, RngStream& rng) {
  if (alg.lambda < 1) throw Error("lambda must be at least 1");
  const std::uint64_t t = state.iteration + 1;
  const double rate = alg.rate_for(spec.n);
  StepResult<TrajectoryState> result{state, false, alg.lambda};
  result.state.iteration = t;
  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t ties = 0;
  for (std::size_t i = 0; i < alg.lambda; ++i) {
    BitString y = standard_bit_mutation(state.current, rate, rng);
    const double value = noisy_eval(noise, spec, y, {EvalRole::Offspring, t}, rng);
    result.sampled_optimum = result.sampled_optimum || y.all_ones();
    // Reservoir sampling keeps a uniform choice among the maximal offspring.
    if (i == 0 || value > best) {
      best = value;
      ties = 1;
      result.state.current = std::move(y);
    } else if (value == best) {
      ++ties;
      if (rng.below(ties) == 0) result.state.current = std::move(y);
    }
  }
  return result;
}

std::size_t fp_select(std::span<const double> values, RngStream& rng) {
  if (values.empty()) throw Error("selection from an empty population");
  double total = 0.0;
  for (double v : values) {
    if (v < 0.0) throw Error("negative fitness in fitness-proportionate selection");
    total += v;
  }
  if (total == 0.0) return static_cast<std::size_t>(rng.below(values.size()));
  const double u = rng.uniform01() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cumulative += values[i];
    if (values[i] > 0.0) {
      last_positive = i;
      if (u < cumulative) return i;
    }
  }
  return last_positive;
}

StepResult<PopulationState> step_simple_ga(const AlgorithmSpec& alg, const PopulationState& pop,
                                           const BenchmarkSpec& spec, const NoiseSpec& noise, RngStream& rng) {
  if (pop.members.empty()) throw Error("mu must be at least 1");
  const std::uint64_t t = pop.iteration + 1;
  std::vector<double> values;
  values.reserve(pop.members.size());
  for (const auto& member : pop.members) values.push_back(noisy_eval(noise, spec, member, {EvalRole::Parent, t}, rng));
  const double rate = alg.rate_for(spec.n);
  StepResult<PopulationState> result{PopulationState{{}, t}, false, pop.members.size()};
  result.state.members.reserve(pop.members.size());
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const auto& parent = pop.members[fp_select(values, rng)];
    BitString child = standard_bit_mutation(parent, rate, rng);
    result.sampled_optimum = result.sampled_optimum || child.all_ones();
    result.state.members.push_back(std::move(child));
  }
  return result;
}

namespace {

template <class State, class Step>
HittingRecord run_loop(State state, bool hit_at_start, std::uint64_t budget, Step&& step) {
  HittingRecord record;
  if (hit_at_start) return record;
  for (std::uint64_t t = 1; t <= budget; ++t) {
    auto result = step(state);
    record.evaluations += result.evaluations;
    if (result.sampled_optimum) {
      record.hitting_time = t;
      return record;
    }
    state = std::move(result.state);
  }
  record.hitting_time = budget;
  record.censored = true;
  return record;
}

}  // namespace

HittingRecord run_until_hit(const AlgorithmSpec& alg, const BenchmarkSpec& spec, const NoiseSpec& noise,
                            const std::optional<BitString>& init, std::uint64_t budget, RngStream& rng) {
  alg.validate();
  spec.validate();
  noise.validate();
  if (init && init->size() != spec.n) throw Error("dimension mismatch");
  HittingRecord record;
  if (alg.kind == AlgorithmKind::SimpleGA) {
    PopulationState pop;
    bool hit = false;
    for (std::size_t i = 0; i < alg.mu; ++i) {
      pop.members.push_back(init ? *init : BitString::uniform(spec.n, rng));
      hit = hit || pop.members.back().all_ones();
    }
    record = run_loop(std::move(pop), hit, budget,
                      [&](const PopulationState& s) { return step_simple_ga(alg, s, spec, noise, rng); });
  } else {
    TrajectoryState state{init ? *init : BitString::uniform(spec.n, rng), 0};
    const bool hit = state.current.all_ones();
    if (alg.kind == AlgorithmKind::OneCommaLambdaEA) {
      record = run_loop(std::move(state), hit, budget,
                        [&](const TrajectoryState& s) { return step_one_comma_lambda(alg, s, spec, noise, rng); });
    } else {
      record = run_loop(std::move(state), hit, budget,
                        [&](const TrajectoryState& s) { return step_single_trajectory(alg, s, spec, noise, rng); });
    }
  }
  record.replicate_index = rng.stream_index();
  record.seed = rng.master_seed();
  return record;
}

}  // namespace hlab
