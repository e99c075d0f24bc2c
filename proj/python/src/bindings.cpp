#include "hlab/acceptance.hpp"
#include "hlab/harness.hpp"
#include "hlab/oracle.hpp"
#include "hlab/stats.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace hlab;

namespace {

ExperimentConfig config_of(const std::map<std::string, std::string>& settings) {
  return config_from_map(ConfigMap(settings.begin(), settings.end()));
}

py::dict record_dict(const HittingRecord& r) {
  py::dict d;
  d["replicate_index"] = r.replicate_index;
  d["hitting_time"] = r.hitting_time;
  d["censored"] = r.censored;
  d["evaluations"] = r.evaluations;
  d["seed"] = r.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Randomized search heuristics under noise: simulation, exact chains and statistics";

  py::register_exception<Error>(m, "HlabError", PyExc_ValueError);

  m.def("config_keys", [] {
    std::vector<std::string> keys;
    for (const auto k : config_keys()) keys.emplace_back(k);
    return keys;
  });

  m.def("resolve_config", [](const std::map<std::string, std::string>& settings) {
    const auto resolved = config_to_map(config_of(settings));
    return std::map<std::string, std::string>(resolved.begin(), resolved.end());
  });

  m.def(
      "run_experiment",
      [](const std::map<std::string, std::string>& settings, std::size_t threads) {
        const auto config = config_of(settings);
        ResultSet result;
        {
          py::gil_scoped_release release;
          result = run_experiment(config, threads);
        }
        py::list records;
        for (const auto& r : result.records) records.append(record_dict(r));
        py::dict out;
        out["records"] = records;
        out["csv"] = to_csv(result.records);
        out["json"] = to_json(result);
        return out;
      },
      py::arg("settings"), py::arg("threads") = 0);

  m.def(
      "oracle_report",
      [](const std::map<std::string, std::string>& settings, std::optional<std::string> start,
         std::optional<std::uint64_t> horizon, std::string chain) {
        OracleQuery q;
        if (start) q.start = BitString::parse(*start);
        q.horizon = horizon;
        q.chain = std::move(chain);
        return oracle_report(config_of(settings), q);
      },
      py::arg("settings"), py::arg("start") = py::none(), py::arg("horizon") = py::none(),
      py::arg("chain") = "auto");

  m.def(
      "dist_report",
      [](const std::map<std::string, std::string>& settings, double confidence, std::size_t threads) {
        const auto config = config_of(settings);
        py::gil_scoped_release release;
        return dist_report(run_experiment(config, threads), confidence);
      },
      py::arg("settings"), py::arg("confidence") = 0.99, py::arg("threads") = 0);

  m.def(
      "drift_report",
      [](const std::map<std::string, std::string>& settings, std::vector<std::size_t> levels,
         std::size_t samples, std::optional<double> epsilon, std::size_t threads) {
        const auto config = config_of(settings);
        py::gil_scoped_release release;
        const auto est = estimate_drift(config.algorithm, config.benchmark, config.noise, levels, samples,
                                        config.master_seed, epsilon, threads);
        return drift_report(est, config);
      },
      py::arg("settings"), py::arg("levels"), py::arg("samples") = 10000, py::arg("epsilon") = py::none(),
      py::arg("threads") = 0);

  m.def(
      "eval_benchmark",
      [](const std::map<std::string, std::string>& settings, const std::string& bits) {
        return eval_benchmark(config_of(settings).benchmark, BitString::parse(bits));
      },
      py::arg("settings"), py::arg("bits"));

  m.def(
      "expected_hitting_time",
      [](const std::map<std::string, std::string>& settings, const std::string& start) -> std::optional<double> {
        const auto config = config_of(settings);
        const auto chain = full_chain(config.algorithm, config.benchmark, config.noise);
        const double t = expected_hitting_time(chain, full_state_index(BitString::parse(start)));
        if (t == kUnreachable) return std::nullopt;
        return t;
      },
      py::arg("settings"), py::arg("start"));

  m.def("geom_tail", &geom_tail, py::arg("p"), py::arg("k"));

  m.def(
      "check_dominated",
      [](const std::vector<double>& samples, double scale, double p, double confidence) {
        const auto v = check_dominated_by_scaled_geom(samples, scale, p, confidence);
        py::dict d;
        d["passed"] = v.passed;
        d["outcome"] = to_string(v.outcome);
        d["worst_value"] = v.worst_value;
        d["worst_quantile"] = v.worst_quantile;
        d["worst_margin"] = v.worst_margin;
        d["band_width"] = v.band_width;
        d["samples"] = v.samples;
        return d;
      },
      py::arg("samples"), py::arg("scale"), py::arg("p"), py::arg("confidence") = 0.99);

  m.def(
      "mean_ci",
      [](const std::vector<double>& samples, double confidence) {
        const auto ci = mean_ci(samples, confidence);
        return py::make_tuple(ci.mean, ci.half_width, ci.standard_error);
      },
      py::arg("samples"), py::arg("confidence") = 0.95);

  m.def(
      "run_acceptance",
      [](const std::vector<int>& only) {
        std::ostringstream log;
        std::vector<AcceptanceResult> results;
        {
          py::gil_scoped_release release;
          results = run_acceptance(std::set<int>(only.begin(), only.end()), log);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["seconds"] = r.seconds;
          d["detail"] = r.detail;
          out.append(d);
        }
        return py::make_tuple(out, log.str());
      },
      py::arg("only") = std::vector<int>{});
}
