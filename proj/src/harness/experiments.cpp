#include <chrono>
#include <cmath>

#include "slotwise/choice.hpp"
#include "slotwise/harness.hpp"
#include "slotwise/rfts.hpp"

namespace slotwise {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double deviation_percent(double value, double reference) {
  if (reference == 0.0) return value == 0.0 ? 0.0 : 100.0;
  return std::abs(value - reference) / std::abs(reference) * 100.0;
}

double share_percent(double part, double whole) { return whole == 0.0 ? 0.0 : part / whole * 100.0; }

/// Router that produced `s`, for re-scoring it elsewhere.
RouterConfig router_of(const Solution& s, const SolveSettings& settings) {
  RouterConfig r{s.router};
  r.exact_cap = settings.exact.routing_cap;
  return r;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::RFTS: return "rfts";
    case Method::SALNS: return "salns";
    case Method::Exact: return "exact";
  }
  return "salns";
}

Method method_from_string(std::string_view s) {
  if (s == "rfts") return Method::RFTS;
  if (s == "salns") return Method::SALNS;
  if (s == "exact") return Method::Exact;
  throw ModelError("unknown method '" + std::string(s) + "'");
}

SolveOutcome solve(const Instance& instance, const ScenarioSet& scen, const SolveSettings& settings,
                   std::uint64_t seed, const IterationObserver& observer) {
  const auto t0 = Clock::now();
  SolveOutcome out;
  switch (settings.method) {
    case Method::RFTS: {
      EvaluationOptions eo;
      eo.router = settings.router;
      eo.router_seed = derive_key(seed, {3});
      out.solution = rfts(Evaluator(instance, scen, eo), settings.salns.zeta, derive_key(seed, {0}));
      break;
    }
    case Method::SALNS: {
      out.salns = salns(instance, scen, settings.salns, seed, observer);
      out.solution = out.salns->best;
      break;
    }
    case Method::Exact: out.solution = exact_solve(instance, scen, settings.exact); break;
  }
  out.wall_ms = ms_since(t0);
  return out;
}

std::uint64_t redraw_seed(std::uint64_t seed, int j) {
  return j == 0 ? seed : derive_key(seed, {0x0ff5a3, static_cast<std::uint64_t>(j)});
}

ExperimentReport run_in_sample(const ExperimentSetup& setup, const std::vector<int>& r_list, int reference_r,
                               const std::vector<std::uint64_t>& seeds) {
  for (int r : r_list)
    if (r > reference_r) throw ModelError("reference scenario count must be >= every tested count");
  ExperimentReport rep{"in-sample", {setup.instance.name}, {}};
  for (auto seed : seeds) {
    const ScenarioSet ref_scen = sample_scenarios(setup.behavior, setup.instance, reference_r, seed);
    const SolveOutcome ref = solve(setup.instance, ref_scen, setup.settings, seed);
    for (int r : r_list) {
      const ScenarioSet scen = sample_scenarios(setup.behavior, setup.instance, r, seed);
      const SolveOutcome run = r == reference_r ? ref : solve(setup.instance, scen, setup.settings, seed);
      RunRecord rec;
      rec.instance = setup.instance.name;
      rec.label = std::string(to_string(setup.settings.method));
      rec.seed = seed;
      rec.scenarios = r;
      rec.profit = run.solution.profit;
      rec.reference = ref.solution.profit;
      rec.gap_percent = deviation_percent(rec.profit, rec.reference);
      rec.coverage_percent = coverage_percent(run.solution.choices);
      rec.wall_ms = run.wall_ms;
      rec.metrics["reference_scenarios"] = reference_r;
      rep.records.push_back(std::move(rec));
    }
  }
  return rep;
}

ExperimentReport run_out_of_sample(const ExperimentSetup& setup, int r, int n_redraws,
                                   const std::vector<std::uint64_t>& seeds, int first_redraw) {
  if (n_redraws < 1) throw ModelError("need at least one redraw");
  ExperimentReport rep{"out-of-sample", {setup.instance.name}, {}};
  for (auto seed : seeds) {
    const ScenarioSet scen = sample_scenarios(setup.behavior, setup.instance, r, seed);
    const SolveOutcome run = solve(setup.instance, scen, setup.settings, seed);
    EvaluationOptions eo;
    eo.router = router_of(run.solution, setup.settings);
    for (int j = first_redraw; j < first_redraw + n_redraws; ++j) {
      const ScenarioSet other = sample_scenarios(setup.behavior, setup.instance, r, redraw_seed(seed, j));
      const auto t0 = Clock::now();
      // Both sides scored with the same router so only the draws differ.
      const Solution in = Evaluator(setup.instance, scen, eo)(run.solution.assortment);
      const Solution out = Evaluator(setup.instance, other, eo)(run.solution.assortment);
      RunRecord rec;
      rec.instance = setup.instance.name;
      rec.label = "redraw";
      rec.seed = seed;
      rec.scenarios = r;
      rec.profit = out.profit;
      rec.reference = in.profit;
      rec.gap_percent = deviation_percent(out.profit, in.profit);
      rec.coverage_percent = coverage_percent(out.choices);
      rec.wall_ms = run.wall_ms + ms_since(t0);
      rec.metrics["redraw"] = j;
      rep.records.push_back(std::move(rec));
    }
  }
  return rep;
}

ExperimentReport run_value_of_ml(const ExperimentSetup& setup, int r, const std::vector<std::uint64_t>& seeds) {
  ExperimentReport rep{"value-of-ml", {setup.instance.name}, {}};
  for (auto seed : seeds) {
    const auto t0 = Clock::now();
    const ScenarioSet ml = sample_scenarios(setup.behavior, setup.instance, r, seed);
    const ScenarioSet mnl = sample_scenarios(setup.behavior.without_heterogeneity(), setup.instance, r, seed);
    const SolveOutcome ml_run = solve(setup.instance, ml, setup.settings, seed);
    const SolveOutcome mnl_run = solve(setup.instance, mnl, setup.settings, seed);
    EvaluationOptions eo;
    eo.router = router_of(ml_run.solution, setup.settings);
    const Solution mnl_under_ml = Evaluator(setup.instance, ml, eo)(mnl_run.solution.assortment);
    RunRecord rec;
    rec.instance = setup.instance.name;
    rec.label = std::string(to_string(setup.settings.method));
    rec.seed = seed;
    rec.scenarios = r;
    rec.profit = ml_run.solution.profit;
    rec.reference = mnl_under_ml.profit;
    rec.gap_percent = rec.reference == 0.0 ? 0.0 : (rec.profit - rec.reference) / std::abs(rec.reference) * 100.0;
    rec.coverage_percent = coverage_percent(ml_run.solution.choices);
    rec.wall_ms = ms_since(t0);
    rec.metrics["value_of_ml_percent"] = rec.gap_percent;
    rec.metrics["mnl_in_sample_profit"] = mnl_run.solution.profit;
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

ExperimentReport run_sensitivity_sweep(const ExperimentSetup& setup, const std::vector<double>& time_grid,
                                       const std::vector<double>& price_grid, int r,
                                       const std::vector<std::uint64_t>& seeds, bool optimize) {
  if (time_grid.empty() || price_grid.empty()) throw ModelError("sweep grids must be nonempty");
  ExperimentReport rep{"sweep", {setup.instance.name}, {}};
  const Assortment no_policy = full_assortment_lowest_discount(setup.instance);
  for (auto seed : seeds) {
    for (double bt : time_grid) {
      for (double bp : price_grid) {
        const auto t0 = Clock::now();
        BehaviorSpec spec = setup.behavior;
        spec.time_mean.fill(bt);
        spec.price_mean = bp;
        const ScenarioSet scen = sample_scenarios(spec, setup.instance, r, seed);
        RunRecord rec;
        rec.instance = setup.instance.name;
        rec.label = "grid";
        rec.seed = seed;
        rec.scenarios = r;
        rec.coverage_percent = coverage_percent(choose(no_policy, scen, setup.instance));
        rec.metrics["time_mean"] = bt;
        rec.metrics["price_mean"] = bp;
        rec.metrics["coverage_no_policy"] = rec.coverage_percent;
        if (optimize) {
          const SolveOutcome run = solve(setup.instance, scen, setup.settings, seed);
          rec.profit = run.solution.profit;
          rec.metrics["coverage_optimized"] = coverage_percent(run.solution.choices);
        }
        rec.wall_ms = ms_since(t0);
        rep.records.push_back(std::move(rec));
      }
    }
  }
  return rep;
}

ExperimentReport run_vss_evpi(const std::vector<Instance>& instances, const BehaviorSpec& behavior, int r,
                              const std::vector<std::uint64_t>& seeds, const ExactOptions& options) {
  ExperimentReport rep{"vss-evpi", {}, {}};
  for (const auto& inst : instances) {
    rep.instances.push_back(inst.name);
    for (auto seed : seeds) {
      const auto t0 = Clock::now();
      const ScenarioSet scen = sample_scenarios(behavior, inst, r, seed);
      const StochasticValue v = stochastic_value(inst, scen, options);
      RunRecord rec;
      rec.instance = inst.name;
      rec.label = "exact";
      rec.seed = seed;
      rec.scenarios = r;
      rec.profit = v.stochastic_profit;
      rec.reference = v.deterministic_profit;
      rec.wall_ms = ms_since(t0);
      rec.metrics["vss"] = v.vss;
      rec.metrics["evpi"] = v.evpi;
      rec.metrics["vss_percent"] = share_percent(v.vss, std::abs(v.stochastic_profit));
      rec.metrics["evpi_percent"] = share_percent(v.evpi, std::abs(v.stochastic_profit));
      rec.metrics["vss_share_percent"] = share_percent(v.vss, v.vss + v.evpi);
      rec.gap_percent = rec.metrics["vss_percent"];
      rep.records.push_back(std::move(rec));
    }
  }
  return rep;
}

ExperimentReport run_operator_stats(const ExperimentSetup& setup, int r, const std::vector<std::uint64_t>& seeds) {
  ExperimentReport rep{"operator-stats", {setup.instance.name}, {}};
  for (auto seed : seeds) {
    const ScenarioSet scen = sample_scenarios(setup.behavior, setup.instance, r, seed);
    const auto t0 = Clock::now();
    const SalnsResult res = salns(setup.instance, scen, setup.settings.salns, seed);
    const double wall = ms_since(t0);
    auto add = [&](const std::string& label, const OperatorStats& st) {
      RunRecord rec;
      rec.instance = setup.instance.name;
      rec.label = label;
      rec.seed = seed;
      rec.scenarios = r;
      rec.profit = res.best.profit;
      rec.wall_ms = wall;
      rec.metrics["used"] = st.used;
      rec.metrics["best"] = st.outcomes[0];
      rec.metrics["better"] = st.outcomes[1];
      rec.metrics["accepted"] = st.outcomes[2];
      rec.metrics["rejected"] = st.outcomes[3];
      rec.metrics["weight"] = st.weight;
      rec.metrics["iterations"] = res.iterations;
      rep.records.push_back(std::move(rec));
    };
    for (int k = 0; k < kDestroyKinds; ++k)
      add("destroy:" + std::string(to_string(static_cast<DestroyKind>(k))), res.destroy_stats[static_cast<std::size_t>(k)]);
    for (int k = 0; k < kRepairKinds; ++k)
      add("repair:" + std::string(to_string(static_cast<RepairKind>(k))), res.repair_stats[static_cast<std::size_t>(k)]);

    // Same assortment, every heuristic router.
    for (RouterKind kind : {RouterKind::CW, RouterKind::ICW, RouterKind::CFRS}) {
      EvaluationOptions eo;
      eo.router = RouterConfig{kind};
      eo.router_seed = seed;
      const auto t1 = Clock::now();
      const Solution s = Evaluator(setup.instance, scen, eo)(res.best.assortment);
      RunRecord rec;
      rec.instance = setup.instance.name;
      rec.label = "router:" + std::string(to_string(kind));
      rec.seed = seed;
      rec.scenarios = r;
      rec.profit = s.profit;
      rec.coverage_percent = coverage_percent(s.choices);
      rec.wall_ms = ms_since(t1);
      double cost = 0.0;
      int infeasible = 0;
      for (std::size_t k = 0; k < s.plans.size(); ++k) {
        cost += s.plans[k].total_cost;
        infeasible += s.feasible[k] ? 0 : 1;
      }
      rec.metrics["mean_routing_cost"] = cost / static_cast<double>(s.plans.size());
      rec.metrics["penalized_scenarios"] = infeasible;
      rep.records.push_back(std::move(rec));
    }
  }
  return rep;
}

}  // namespace slotwise
