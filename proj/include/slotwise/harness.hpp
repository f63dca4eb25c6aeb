#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slotwise/exact.hpp"
#include "slotwise/io.hpp"
#include "slotwise/salns.hpp"

namespace slotwise {

/// Random desk-scale instance: customers uniform in a disk around the depot.
struct RandomInstanceSpec {
  int customers = 4;
  int slots = 3;
  std::vector<double> discounts{0.0, 0.12};
  int min_options = 2;
  int fleet_size = 3;
  double capacity = 200.0;
  double radius = 15.0;
  double horizon = 1236.0;
  double service_time = 90.0;
  double demand_lo = 10.0;
  double demand_hi = 30.0;
  double vehicle_cost = 50.0;
  double base_fee = 40.0;
};

Instance random_instance(const RandomInstanceSpec& spec, std::uint64_t seed);

/// Solomon-format text with C101's header values (depot, horizon, fleet,
/// capacity, service time) and pseudo-random customers around the depot.
/// Not the published benchmark; used when the real file is not at hand.
std::string synthetic_solomon(int customers, std::uint64_t seed, const std::string& name = "SYN101");

enum class Method { RFTS, SALNS, Exact };
std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct SolveSettings {
  Method method = Method::SALNS;
  SalnsParams salns;
  ExactOptions exact;
  /// Router used to score RFTS solutions.
  RouterConfig router{RouterKind::CW};
};

struct SolveOutcome {
  Solution solution;
  double wall_ms = 0.0;
  std::optional<SalnsResult> salns;  // only for Method::SALNS
};

SolveOutcome solve(const Instance& instance, const ScenarioSet& scen, const SolveSettings& settings,
                   std::uint64_t seed, const IterationObserver& observer = {});

struct RunRecord {
  std::string instance;
  std::string label;  // sub-series inside an experiment
  std::uint64_t seed = 0;
  int scenarios = 0;
  double profit = 0.0;
  double reference = 0.0;
  double gap_percent = 0.0;
  double coverage_percent = 0.0;
  double wall_ms = 0.0;
  std::map<std::string, double> metrics;

  bool operator==(const RunRecord&) const = default;
};

struct Aggregate {
  std::string instance;
  std::string label;
  int scenarios = 0;
  int count = 0;
  double profit_mean = 0.0;
  double profit_std = 0.0;
  double gap_mean = 0.0;
  double gap_std = 0.0;
  double coverage_mean = 0.0;
};

struct ExperimentReport {
  std::string kind;
  std::vector<std::string> instances;
  std::vector<RunRecord> records;

  /// Mean and sample standard deviation grouped by (instance, label, scenarios)
  /// in order of first appearance.
  std::vector<Aggregate> aggregates() const;

  Json to_json() const;
  static ExperimentReport from_json(const Json& j);
  std::string to_csv() const;
  static ExperimentReport from_csv(const std::string& text);

  bool operator==(const ExperimentReport&) const = default;
};

/// Shared inputs of the single-instance experiments.
struct ExperimentSetup {
  Instance instance;
  BehaviorSpec behavior;
  SolveSettings settings;
};

/// Deviation of each R from the reference_R objective, per seed.
ExperimentReport run_in_sample(const ExperimentSetup& setup, const std::vector<int>& r_list, int reference_r,
                               const std::vector<std::uint64_t>& seeds);

/// Scenario seed of the j-th out-of-sample redraw; j = 0 gives the in-sample seed.
std::uint64_t redraw_seed(std::uint64_t seed, int j);

/// Solve on one scenario set, then re-score on redraws first_redraw .. first_redraw + n_redraws - 1.
ExperimentReport run_out_of_sample(const ExperimentSetup& setup, int r, int n_redraws,
                                   const std::vector<std::uint64_t>& seeds, int first_redraw = 1);

/// MNL-optimized assortment scored under mixed logit vs the mixed-logit optimum.
ExperimentReport run_value_of_ml(const ExperimentSetup& setup, int r, const std::vector<std::uint64_t>& seeds);

/// Coverage over a (time mean, price mean) grid for the no-discount full
/// assortment and, when optimize is set, the solver's assortment.
ExperimentReport run_sensitivity_sweep(const ExperimentSetup& setup, const std::vector<double>& time_grid,
                                       const std::vector<double>& price_grid, int r,
                                       const std::vector<std::uint64_t>& seeds, bool optimize);

/// VSS and EVPI as percentages of the stochastic optimum.
ExperimentReport run_vss_evpi(const std::vector<Instance>& instances, const BehaviorSpec& behavior, int r,
                              const std::vector<std::uint64_t>& seeds, const ExactOptions& options = {});

/// Operator usage and outcomes from sALNS runs, plus the routing cost and
/// time of every router on the best assortment.
ExperimentReport run_operator_stats(const ExperimentSetup& setup, int r, const std::vector<std::uint64_t>& seeds);

/// One JSON document with sections `instance`, `behavior`, `salns`,
/// `exact` and `experiment`. Every section is optional.
struct Config {
  Json instance = Json::object();
  BehaviorSpec behavior;
  SolveSettings settings;
  Json experiment = Json::object();
  int scenarios = 80;
  std::uint64_t seed = 1;
  std::string base_dir = ".";  // relative paths in `instance` resolve here
};

Config config_from_json(const Json& j, const std::string& base_dir = ".");
Config load_config(const std::string& path);

/// Builds the instance described by a config `instance` section:
///   {"file": "inst.json"}                        instance JSON written by `gen`
///   {"solomon": "c101.txt", "customers": 5, ...}  Solomon file plus knobs
///   {"synthetic": 80, "seed": 3, ...}            synthetic_solomon text plus knobs
///   {"random": {...RandomInstanceSpec}, "seed": 3}
///   an inline instance object (has "customers" as an array)
Instance load_instance(const Json& section, const std::string& base_dir = ".");

/// Inclusive arithmetic grid; the last point is snapped to `hi`.
std::vector<double> grid(double lo, double hi, double step);

}  // namespace slotwise
