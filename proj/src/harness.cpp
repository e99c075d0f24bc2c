#include "hlab/harness.hpp"

#include "hlab/oracle.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace hlab {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 23> kKnownKeys = {
    "alg.kind",   "alg.T",       "alg.schedule",   "alg.beta",       "alg.lambda",     "alg.mu",
    "alg.rate",   "bench.kind",  "bench.n",        "bench.k",        "bench.weights",  "bench.monomials",
    "noise.kind", "noise.p",     "noise.q",        "noise.dist",     "noise.adversary", "run.budget",
    "run.replicates", "run.init", "run.seed",      "output.path",    "output.format",
};

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += text::format_double(values[i]);
  }
  return out;
}

// "coef:pos,pos;coef:pos" with 1-based positions.
std::vector<Monomial> parse_monomials(std::string_view textual) {
  std::vector<Monomial> out;
  for (const auto term : text::split(textual, ';')) {
    if (term.empty()) continue;
    const auto parts = text::split(term, ':');
    if (parts.size() != 2) throw Error("malformed monomial '" + std::string(term) + "'");
    Monomial m;
    m.coefficient = text::parse_double(parts[0]);
    for (const auto pos : text::split(parts[1], ',')) {
      if (pos.empty()) continue;
      const auto p = text::parse_uint(pos);
      if (p == 0) throw Error("monomial positions are 1-based");
      m.indices.push_back(static_cast<std::size_t>(p - 1));
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string format_monomials(const std::vector<Monomial>& monomials) {
  std::string out;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (i) out += ';';
    out += text::format_double(monomials[i].coefficient) + ":";
    for (std::size_t j = 0; j < monomials[i].indices.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(monomials[i].indices[j] + 1);
    }
  }
  return out;
}

}  // namespace

std::span<const std::string_view> config_keys() { return kKnownKeys; }

void ExperimentConfig::validate() const {
  algorithm.validate();
  benchmark.validate();
  noise.validate();
  if (replicates < 1) throw Error("run.replicates must be at least 1");
  if (budget < 1) throw Error("run.budget must be at least 1");
  if (init && init->size() != benchmark.n) throw Error("run.init length does not match bench.n");
}

ConfigMap parse_config_text(std::string_view content) {
  ConfigMap out;
  std::size_t line_no = 0;
  for (const auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = raw.substr(0, raw.find('#'));
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error("config line " + std::to_string(line_no) + ": expected key=value");
    }
    out[std::string(text::trim(line.substr(0, eq)))] = std::string(text::trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

ExperimentConfig config_from_map(const ConfigMap& settings) {
  for (const auto& [key, value] : settings) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw Error("unknown config key '" + key + "'");
    }
  }
  const auto get = [&](std::string_view key) -> std::optional<std::string_view> {
    const auto it = settings.find(key);
    if (it == settings.end()) return std::nullopt;
    return std::string_view(it->second);
  };

  ExperimentConfig c;
  auto& alg = c.algorithm;
  if (auto v = get("alg.kind")) alg.kind = parse_algorithm_kind(*v);
  if (auto v = get("alg.T")) alg.temperature = text::parse_double(*v);
  if (auto v = get("alg.schedule")) alg.schedule = Schedule::parse(*v);
  if (auto v = get("alg.beta")) alg.beta = text::parse_double(*v);
  if (auto v = get("alg.lambda")) alg.lambda = static_cast<std::size_t>(text::parse_uint(*v));
  if (auto v = get("alg.mu")) alg.mu = static_cast<std::size_t>(text::parse_uint(*v));
  if (auto v = get("alg.rate"); v && *v != "default") alg.mutation_rate = text::parse_double(*v);

  const std::string kind(get("bench.kind").value_or("onemax"));
  const auto n_given = get("bench.n");
  const std::size_t n = n_given ? static_cast<std::size_t>(text::parse_uint(*n_given)) : 10;
  const std::size_t k = get("bench.k") ? static_cast<std::size_t>(text::parse_uint(*get("bench.k"))) : 0;
  if (kind == "needle") {
    c.benchmark = BenchmarkSpec::needle(n);
  } else {
    switch (parse_benchmark_kind(kind)) {
      case BenchmarkKind::Linear: {
        std::vector<double> weights;
        for (const auto w : text::split(get("bench.weights").value_or(""), ',')) {
          if (!w.empty()) weights.push_back(text::parse_double(w));
        }
        c.benchmark = BenchmarkSpec::linear(std::move(weights));
        if (n_given && c.benchmark.n != n) throw Error("bench.n does not match the number of bench.weights");
        break;
      }
      case BenchmarkKind::MonotonePolynomial:
        c.benchmark = BenchmarkSpec::monotone_polynomial(n, parse_monomials(get("bench.monomials").value_or("")));
        break;
      case BenchmarkKind::OneMax: c.benchmark = BenchmarkSpec::one_max(n); break;
      case BenchmarkKind::LeadingOnes: c.benchmark = BenchmarkSpec::leading_ones(n); break;
      case BenchmarkKind::Jump: c.benchmark = BenchmarkSpec::jump(n, k); break;
      case BenchmarkKind::Plateau: c.benchmark = BenchmarkSpec::plateau(n, k); break;
    }
  }

  auto& noise = c.noise;
  if (auto v = get("noise.kind")) noise.kind = parse_noise_kind(*v);
  if (auto v = get("noise.p")) noise.p = text::parse_double(*v);
  if (auto v = get("noise.q")) noise.q = text::parse_double(*v);
  if (auto v = get("noise.dist")) noise.dist = AdditiveDist::parse(*v);
  if (auto v = get("noise.adversary")) noise.adversary = AdversaryPolicy::parse(*v);

  if (auto v = get("run.budget")) c.budget = text::parse_uint(*v);
  if (auto v = get("run.replicates")) c.replicates = text::parse_uint(*v);
  if (auto v = get("run.seed")) c.master_seed = text::parse_uint(*v);
  if (auto v = get("run.init")) {
    if (*v == "optimum") {
      c.init = BitString::ones(c.benchmark.n);
    } else if (*v != "uniform") {
      c.init = BitString::parse(*v);
    }
  }

  if (auto v = get("output.path")) c.output.path = std::string(*v);
  if (auto v = get("output.format")) {
    if (*v == "csv") {
      c.output.format = OutputFormat::Csv;
    } else if (*v == "json") {
      c.output.format = OutputFormat::Json;
    } else {
      throw Error("output.format must be csv or json");
    }
  }
  c.validate();
  return c;
}

ConfigMap config_to_map(const ExperimentConfig& c) {
  ConfigMap m;
  const auto& alg = c.algorithm;
  m["alg.kind"] = to_string(alg.kind);
  m["alg.T"] = text::format_double(alg.temperature);
  m["alg.schedule"] = alg.schedule.to_string();
  m["alg.beta"] = text::format_double(alg.beta);
  m["alg.lambda"] = std::to_string(alg.lambda);
  m["alg.mu"] = std::to_string(alg.mu);
  m["alg.rate"] = alg.mutation_rate ? text::format_double(*alg.mutation_rate) : "default";
  const auto& b = c.benchmark;
  m["bench.kind"] = to_string(b.kind);
  m["bench.n"] = std::to_string(b.n);
  m["bench.k"] = std::to_string(b.k);
  if (b.kind == BenchmarkKind::Linear) m["bench.weights"] = join_doubles(b.weights);
  if (b.kind == BenchmarkKind::MonotonePolynomial) m["bench.monomials"] = format_monomials(b.monomials);
  m["noise.kind"] = to_string(c.noise.kind);
  m["noise.p"] = text::format_double(c.noise.p);
  m["noise.q"] = text::format_double(c.noise.q);
  m["noise.dist"] = c.noise.dist.to_string();
  m["noise.adversary"] = c.noise.adversary.to_string();
  m["run.budget"] = std::to_string(c.budget);
  m["run.replicates"] = std::to_string(c.replicates);
  m["run.seed"] = std::to_string(c.master_seed);
  m["run.init"] = c.init ? c.init->to_string() : "uniform";
  m["output.path"] = c.output.path;
  m["output.format"] = c.output.format == OutputFormat::Csv ? "csv" : "json";
  return m;
}

std::string config_to_text(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, value] : config_to_map(config)) out += key + "=" + value + "\n";
  return out;
}

ResultSummary summarize(const std::vector<HittingRecord>& records) {
  ResultSummary s;
  if (records.empty()) return s;
  std::vector<double> times;
  times.reserve(records.size());
  std::size_t censored = 0;
  s.min = records.front().hitting_time;
  s.max = records.front().hitting_time;
  for (const auto& r : records) {
    times.push_back(static_cast<double>(r.hitting_time));
    censored += r.censored ? 1 : 0;
    s.min = std::min(s.min, r.hitting_time);
    s.max = std::max(s.max, r.hitting_time);
  }
  s.censoring_rate = static_cast<double>(censored) / static_cast<double>(records.size());
  if (times.size() >= 2) {
    s.ci = mean_ci(times, 0.95);
    s.mean = s.ci->mean;
  } else {
    s.mean = times.front();
  }
  return s;
}

ResultSet run_experiment(const ExperimentConfig& config, std::size_t threads) {
  config.validate();
  ResultSet result;
  result.config = config;
  result.records.resize(config.replicates);
  detail::parallel_for(config.replicates, threads == 0 ? detail::configured_threads() : threads,
                       [&](std::size_t i) {
                         RngStream rng = derive_stream(config.master_seed, i);
                         result.records[i] = run_until_hit(config.algorithm, config.benchmark, config.noise,
                                                           config.init, config.budget, rng);
                       });
  result.summary = summarize(result.records);
  return result;
}

std::string to_csv(const std::vector<HittingRecord>& records) {
  std::string out = "replicate_index,hitting_time,censored,evaluations,seed\n";
  for (const auto& r : records) {
    out += std::to_string(r.replicate_index) + "," + std::to_string(r.hitting_time) + "," +
           (r.censored ? "1" : "0") + "," + std::to_string(r.evaluations) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

namespace {

Json config_json(const ExperimentConfig& config) {
  Json j = Json::object();
  for (const auto& [key, value] : config_to_map(config)) j[key] = value;
  return j;
}

Json summary_json(const ResultSummary& s) {
  Json j;
  j["mean"] = s.mean;
  j["ci_half_width"] = s.ci ? Json(s.ci->half_width) : Json(nullptr);
  j["standard_error"] = s.ci ? Json(s.ci->standard_error) : Json(nullptr);
  j["confidence"] = 0.95;
  j["censoring_rate"] = s.censoring_rate;
  j["min"] = s.min;
  j["max"] = s.max;
  return j;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string to_json(const ResultSet& result) {
  Json j;
  Json records = Json::array();
  for (const auto& r : result.records) {
    records.push_back({{"replicate_index", r.replicate_index},
                       {"hitting_time", r.hitting_time},
                       {"censored", r.censored},
                       {"evaluations", r.evaluations},
                       {"seed", r.seed}});
  }
  j["records"] = std::move(records);
  j["config_echo"] = config_json(result.config);
  j["summary"] = summary_json(result.summary);
  return j.dump(2) + "\n";
}

void write_result(const ResultSet& result) {
  const auto payload = result.config.output.format == OutputFormat::Csv ? to_csv(result.records) : to_json(result);
  if (result.config.output.path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(result.config.output.path, std::ios::binary);
  if (!out) throw Error("cannot write '" + result.config.output.path + "'");
  out << payload;
  if (!out) throw Error("write failed for '" + result.config.output.path + "'");
}

std::string oracle_report(const ExperimentConfig& config, const OracleQuery& query) {
  const auto& alg = config.algorithm;
  const auto& spec = config.benchmark;
  const auto& noise = config.noise;
  const std::size_t n = spec.n;
  if (query.start && query.start->size() != n) throw Error("start length does not match bench.n");

  bool lumped = false;
  if (query.chain == "lumped") {
    lumped = true;
  } else if (query.chain == "auto") {
    lumped = spec.depends_only_on_ones_count() && n <= 64;
  } else if (query.chain != "full") {
    throw Error("chain must be lumped, full or auto");
  }
  const auto chain = lumped ? lumped_chain(alg, spec, noise) : full_chain(alg, spec, noise);

  double expected = 0.0;
  if (query.start) {
    const auto index = lumped ? n - query.start->ones_count() : full_state_index(*query.start);
    expected = expected_hitting_time(chain, index);
  } else {
    std::vector<double> start(chain.size(), 0.0);
    if (lumped) {
      // Uniform strings: the distance level is Binomial(n, 1/2).
      double coeff = 1.0;
      for (std::size_t d = 0; d <= n; ++d) {
        start[d] = coeff * std::pow(0.5, static_cast<double>(n));
        coeff = coeff * static_cast<double>(n - d) / static_cast<double>(d + 1);
      }
    } else {
      std::fill(start.begin(), start.end(), 1.0 / static_cast<double>(chain.size()));
    }
    expected = expected_hitting_time(chain, start);
  }

  Json j;
  j["algorithm"] = to_string(alg.kind);
  j["benchmark"] = to_string(spec.kind);
  j["n"] = n;
  j["noise"] = to_string(noise.kind);
  j["chain"] = lumped ? "lumped" : "full";
  j["states"] = chain.size();
  j["max_row_defect"] = chain.max_row_defect();
  j["start"] = query.start ? query.start->to_string() : "uniform";
  j["target_reachable"] = std::isfinite(expected);
  j["expected_hitting_time"] = finite_or_null(expected);

  const auto c = acceptance_constant(alg, spec, noise);
  j["acceptance_constant"] = c ? Json(*c) : Json(nullptr);
  if (c && *c > 0.0) {
    const double bound = static_cast<double>(n) * std::pow(std::numbers::e / *c, static_cast<double>(n));
    j["runtime_bound"] = {{"value", finite_or_null(bound)}, {"satisfied", expected <= bound}};
  }
  if (alg.kind == AlgorithmKind::FPOnePlusOneEA) {
    const double bound = std::pow(2.0 * std::numbers::e * std::numbers::e, static_cast<double>(n));
    j["fp_bound"] = {{"value", finite_or_null(bound)}, {"satisfied", expected <= bound}};
  }
  if (query.start) {
    try {
      const auto path = path_probability(alg, spec, noise, *query.start, query.horizon.value_or(n));
      j["path_probability"] = {{"exact_prob", path.exact_prob},
                               {"lower_bound", path.lower_bound},
                               {"horizon", path.horizon},
                               {"c", path.c},
                               {"condition_holds", path.condition_holds},
                               {"satisfied", path.exact_prob >= path.lower_bound}};
    } catch (const Error& e) {
      j["path_probability"] = {{"error", e.what()}};
    }
  }
  if (query.emit_matrix) {
    j["matrix"]["states"] = chain.states;
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < chain.probs.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index col = 0; col < chain.probs.cols(); ++col) row.push_back(chain.probs(r, col));
      rows.push_back(std::move(row));
    }
    j["matrix"]["probs"] = std::move(rows);
    j["matrix"]["target"] = chain.target;
  }
  return j.dump(2) + "\n";
}

std::string dist_report(const ResultSet& result, double confidence) {
  const auto& config = result.config;
  std::vector<double> times;
  for (const auto& r : result.records) times.push_back(static_cast<double>(r.hitting_time));
  std::sort(times.begin(), times.end());

  Json j;
  j["config_echo"] = config_json(config);
  j["summary"] = summary_json(result.summary);
  Json quantiles = Json::array();
  for (const double q : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0}) {
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(times.size())));
    const auto idx = rank == 0 ? 0 : rank - 1;
    quantiles.push_back({{"q", q}, {"value", times[std::min(idx, times.size() - 1)]}});
  }
  j["quantiles"] = std::move(quantiles);

  const auto c = acceptance_constant(config.algorithm, config.benchmark, config.noise);
  const auto n = static_cast<double>(config.benchmark.n);
  const double p = c ? std::pow(*c / std::numbers::e, n) : 0.0;
  if (!c) {
    j["dominance"] = {{"skipped", "no acceptance constant for this algorithm"}};
  } else if (!(p > 0.0)) {
    j["dominance"] = {{"skipped", "bound success probability underflows"}};
  } else if (result.records.size() < 100) {
    j["dominance"] = {{"skipped", "dominance check needs at least 100 replicates"}};
  } else {
    const auto v = check_dominated_by_scaled_geom(result.records, n, p, confidence);
    j["dominance"] = {{"passed", v.passed},
                      {"outcome", to_string(v.outcome)},
                      {"scale", n},
                      {"p", p},
                      {"c", *c},
                      {"worst_value", finite_or_null(v.worst_value)},
                      {"worst_quantile", v.worst_quantile},
                      {"worst_margin", v.worst_margin},
                      {"confidence", v.confidence},
                      {"band_width", v.band_width},
                      {"samples", v.samples}};
  }
  return j.dump(2) + "\n";
}

std::string drift_report(const DriftEstimate& estimate, const ExperimentConfig& config) {
  Json j;
  j["config_echo"] = config_json(config);
  Json levels = Json::array();
  for (const auto& l : estimate.per_level) {
    Json row = {{"level", l.level}, {"mean", l.mean}, {"standard_error", l.standard_error}, {"samples", l.samples}};
    if (estimate.d0) row["above_d0"] = static_cast<double>(l.level) >= *estimate.d0;
    levels.push_back(std::move(row));
  }
  j["per_level"] = std::move(levels);
  j["d0"] = estimate.d0 ? Json(*estimate.d0) : Json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace hlab
