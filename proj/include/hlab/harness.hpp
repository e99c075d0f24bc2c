#pragma once

#include "hlab/benchmarks.hpp"
#include "hlab/heuristics.hpp"
#include "hlab/noise.hpp"
#include "hlab/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hlab {

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  std::string path;  // empty = standard output
  OutputFormat format = OutputFormat::Csv;
};

struct ExperimentConfig {
  AlgorithmSpec algorithm;
  BenchmarkSpec benchmark = BenchmarkSpec::one_max(10);
  NoiseSpec noise;
  std::uint64_t replicates = 1;
  std::uint64_t budget = 10'000'000;
  std::uint64_t master_seed = 1;
  std::optional<BitString> init;  // empty = uniform
  OutputSpec output;

  void validate() const;
};

/// Dotted key=value settings, e.g. {"alg.kind", "rls"}.
using ConfigMap = std::map<std::string, std::string, std::less<>>;

/// Every key accepted by config_from_map.
std::span<const std::string_view> config_keys();

/// Parses flat key=value lines; '#' starts a comment, blank lines are ignored.
ConfigMap parse_config_text(std::string_view text);
/// Throws Error("cannot read config file ...") when the file cannot be opened.
ConfigMap read_config_file(const std::filesystem::path& path);
/// Builds and validates a config. Unknown keys are errors.
ExperimentConfig config_from_map(const ConfigMap& settings);
/// Fully resolved settings, including defaults; inverse of config_from_map.
ConfigMap config_to_map(const ExperimentConfig& config);
std::string config_to_text(const ExperimentConfig& config);

struct ResultSummary {
  double mean = 0.0;
  std::optional<MeanCI> ci;  // 95% interval; empty for a single replicate
  double censoring_rate = 0.0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
};

struct ResultSet {
  std::vector<HittingRecord> records;  // ordered by replicate_index
  ExperimentConfig config;
  ResultSummary summary;
};

/// Replicate i runs on derive_stream(master_seed, i). Output does not depend
/// on `threads`; 0 selects HEURISTICS_LAB_THREADS or the hardware count.
ResultSet run_experiment(const ExperimentConfig& config, std::size_t threads = 0);

ResultSummary summarize(const std::vector<HittingRecord>& records);

std::string to_csv(const std::vector<HittingRecord>& records);
std::string to_json(const ResultSet& result);
/// Writes CSV or JSON per config.output (standard output when path is empty).
void write_result(const ResultSet& result);

/// Exact oracle report as JSON: expected hitting time, path probability and
/// bound comparisons. `chain` is "lumped", "full" or "auto".
struct OracleQuery {
  std::optional<BitString> start;  // empty = uniform start distribution
  std::optional<std::uint64_t> horizon;  // default n
  std::string chain = "auto";
  bool emit_matrix = false;
};
std::string oracle_report(const ExperimentConfig& config, const OracleQuery& query);

/// Runs the experiment and reports runtime quantiles plus the dominance
/// verdict against n * Geom((c/e)^n) as JSON.
std::string dist_report(const ResultSet& result, double confidence);

std::string drift_report(const DriftEstimate& estimate, const ExperimentConfig& config);

}  // namespace hlab
