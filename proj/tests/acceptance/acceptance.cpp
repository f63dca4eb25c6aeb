// Runs every acceptance criterion at its pinned tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../support.hpp"
#include "slotwise/choice.hpp"
#include "slotwise/exact.hpp"
#include "slotwise/harness.hpp"
#include "slotwise/parallel.hpp"
#include "slotwise/rfts.hpp"
#include "slotwise/rng.hpp"
#include "slotwise/salns.hpp"

#ifndef SLOTWISE_DATA_DIR
#define SLOTWISE_DATA_DIR "data"
#endif

using namespace slotwise;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Instance c101_head(int customers) {
  return load_solomon(read_text_file(std::string(SLOTWISE_DATA_DIR) + "/c101_head.txt"), customers, 3);
}

// 1. sALNS against the exact optimum at desk scale.
Verdict oracle_equivalence() {
  const auto t0 = Clock::now();
  Verdict v;
  int below = 0;
  double worst_mean_gap = 0.0;
  double sum_gap = 0.0;
  int runs = 0;
  for (int k = 0; k < 20; ++k) {
    RandomInstanceSpec spec;
    spec.customers = 4;
    const Instance inst = random_instance(spec, 100 + static_cast<std::uint64_t>(k));
    const ScenarioSet scen = sample_scenarios(BehaviorSpec{}, inst, 5, 200 + static_cast<std::uint64_t>(k));
    const Solution best = exact_solve(inst, scen);
    SalnsParams params;
    params.final_router = RouterConfig{RouterKind::Exact};
    double gap_total = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SalnsResult res = salns(inst, scen, params, seed);
      if (res.best.profit > best.profit + 1e-9) ++below;
      const double gap = best.profit == 0.0 ? 0.0 : (best.profit - res.best.profit) / std::abs(best.profit) * 100.0;
      gap_total += gap;
      sum_gap += gap;
      ++runs;
    }
    worst_mean_gap = std::max(worst_mean_gap, gap_total / 10.0);
  }
  const double secs = seconds_since(t0);
  v.pass = below == 0 && worst_mean_gap <= 5.0 && secs < 120.0;
  v.detail = fmt("salns above exact: %.0f runs; worst per-instance mean gap %.3f%% (<= 5); overall mean gap %.3f%%; %.1fs (< 120)",
                 below, worst_mean_gap, sum_gap / runs, secs);
  return v;
}

// 2. Simulated choice frequencies against closed-form logit.
Verdict mnl_convergence() {
  const auto t0 = Clock::now();
  const Instance inst = c101_head(3);
  const BehaviorSpec mnl = BehaviorSpec{}.without_heterogeneity();
  const ScenarioSet scen = sample_scenarios(mnl, inst, 100000, 42);
  Rng rng(7);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    Assortment a(inst.customer_count(), inst.option_count());
    for (int n = 0; n < inst.customer_count(); ++n) {
      for (int s = 0; s < inst.slot_count(); ++s) {
        if (rng.uniform01() < 0.6) a.set(n, inst.option_id(s, static_cast<int>(rng.below(2))), true);
      }
      if (a.offered_count(n) < inst.min_options) a.set(n, inst.option_id(static_cast<int>(rng.below(3)), 0), true);
    }
    const auto freq = empirical_probabilities(choose(a, scen, inst));
    for (int n = 0; n < inst.customer_count(); ++n) {
      const auto p = mnl_probabilities(a, n, mnl, inst);
      for (int i = 0; i < inst.option_count(); ++i)
        worst = std::max(worst, std::abs(freq[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] - p[static_cast<std::size_t>(i)]));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 0.01 && secs < 30.0, fmt("max |empirical - logit| = %.5f (<= 0.01); %.1fs (< 30)", worst, secs)};
}

// 3. In-sample deviation from the R = 100 objective.
Verdict in_sample_shape() {
  const auto t0 = Clock::now();
  ExperimentSetup setup{c101_head(5), BehaviorSpec{}, SolveSettings{}};
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  const ExperimentReport rep = run_in_sample(setup, {5, 50}, 100, seeds);
  double dev5 = 0.0, dev50 = 0.0;
  for (const auto& a : rep.aggregates()) {
    if (a.scenarios == 5) dev5 = a.gap_mean;
    if (a.scenarios == 50) dev50 = a.gap_mean;
  }
  const double secs = seconds_since(t0);
  return {dev50 < dev5 && dev50 < 3.0 && secs < 300.0,
          fmt("mean deviation R=5: %.3f%%, R=50: %.3f%% (< R=5 and < 3%%); %.1fs (< 300)", dev5, dev50, secs)};
}

// 4. VSS >= 0, EVPI >= 0, and EVPI = 0 without uncertainty.
Verdict stochastic_inequalities() {
  const auto t0 = Clock::now();
  int negative = 0;
  int nonzero_evpi = 0;
  double min_vss = INFINITY, min_evpi = INFINITY, max_degenerate = 0.0;
  for (int k = 0; k < 50; ++k) {
    RandomInstanceSpec spec;
    spec.customers = 2 + k % 3;
    const Instance inst = random_instance(spec, 500 + static_cast<std::uint64_t>(k));
    const ScenarioSet scen = sample_scenarios(BehaviorSpec{}, inst, 5, 600 + static_cast<std::uint64_t>(k));
    const StochasticValue sv = stochastic_value(inst, scen);
    min_vss = std::min(min_vss, sv.vss);
    min_evpi = std::min(min_evpi, sv.evpi);
    if (sv.vss < 0.0 || sv.evpi < 0.0) ++negative;

    const double evpi_one = evpi(inst, scen.single(k % 5));
    const double evpi_det = evpi(inst, ScenarioSet::deterministic(BehaviorSpec{}, inst));
    max_degenerate = std::max({max_degenerate, std::abs(evpi_one), std::abs(evpi_det)});
    if (evpi_one != 0.0 || evpi_det != 0.0) ++nonzero_evpi;
  }
  const double secs = seconds_since(t0);
  return {negative == 0 && nonzero_evpi == 0 && secs < 180.0,
          fmt("min VSS %.4f, min EVPI %.4f (>= 0); max |EVPI| with R=1 or no randomness %.2g (= 0); %.1fs (< 180)", min_vss,
              min_evpi, max_degenerate, secs)};
}

// 5. Routing feasibility and cost ordering.
Verdict routing_correctness() {
  const auto t0 = Clock::now();
  int violations = 0;
  int order_breaks = 0;
  std::string first;
  for (int k = 0; k < 100; ++k) {
    RandomInstanceSpec spec;
    spec.customers = 1 + k % 9;
    spec.fleet_size = 25;
    spec.radius = 30.0;
    const Instance inst = random_instance(spec, 900 + static_cast<std::uint64_t>(k));
    Rng rng(derive_key(77, {static_cast<std::uint64_t>(k)}));
    std::vector<ServiceRequest> reqs;
    for (int n = 0; n < inst.customer_count(); ++n) reqs.push_back(make_request(inst, n, rng.between(0, inst.slot_count() - 1)));
    const RoutingPlan cw = cw_solve(reqs, inst);
    const RoutingPlan icw = icw_solve(reqs, inst, 100, static_cast<std::uint64_t>(k));
    const RoutingPlan cfrs = cfrs_solve(reqs, inst, static_cast<std::uint64_t>(k));
    const RoutingPlan ex = exact_cvrptw(reqs, inst);
    for (const RoutingPlan* p : {&cw, &icw, &cfrs, &ex}) {
      const auto why = plan_violation(*p, reqs, inst);
      if (!why.empty()) {
        ++violations;
        if (first.empty()) first = why;
      }
    }
    if (ex.total_cost > icw.total_cost + 1e-9 || icw.total_cost > cw.total_cost + 1e-9) ++order_breaks;
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && order_breaks == 0 && secs < 120.0,
          fmt("infeasible plans %.0f, exact <= ICW <= CW broken on %.0f sets; %.1fs (< 120)", violations, order_breaks, secs) +
              (first.empty() ? "" : " first: " + first)};
}

// 6. sALNS invariants on a 20-customer, R = 20 run.
Verdict salns_invariants() {
  const auto t0 = Clock::now();
  const Instance inst = load_solomon(synthetic_solomon(100, 3), 20, 3);
  const ScenarioSet scen = sample_scenarios(BehaviorSpec{}, inst, 20, 11);
  SalnsParams params;
  int bad_best = 0, invalid = 0, records = 0;
  double last_best = -INFINITY;
  auto observer = [&](const IterationRecord& rec, const Assortment& inc) {
    ++records;
    if (rec.best_profit < last_best) ++bad_best;
    last_best = rec.best_profit;
    if (!assortment_violation(inc, inst).empty()) ++invalid;
  };
  set_thread_count(1);
  const SalnsResult one = salns(inst, scen, params, 5, observer);
  set_thread_count(8);
  const SalnsResult eight = salns(inst, scen, params, 5);
  set_thread_count(0);
  const bool identical = fixtures::same_solution(one.best, eight.best) && one.iterations == eight.iterations;
  if (!assortment_violation(one.best.assortment, inst).empty()) ++invalid;
  const double secs = seconds_since(t0);
  return {bad_best == 0 && invalid == 0 && identical && records > 0 && secs < 120.0,
          fmt("%.0f iterations, best decreased %.0f times, invalid assortments %.0f, 1 vs 8 threads identical: ", records,
              bad_best, invalid) +
              (identical ? "yes" : "no") + fmt("; %.1fs (< 120)", secs)};
}

// 7. 80 customers, 80 scenarios.
Verdict scalability() {
  const auto t0 = Clock::now();
  const Instance inst = load_solomon(synthetic_solomon(100, 1), 80, 3);
  const ScenarioSet scen = sample_scenarios(BehaviorSpec{}, inst, 80, 7);
  const SalnsResult res = salns(inst, scen, SalnsParams{}, 7);
  const double secs = seconds_since(t0);
  int penalized = 0;
  int bad_plans = 0;
  for (int r = 0; r < scen.scenario_count(); ++r) {
    penalized += res.best.feasible[static_cast<std::size_t>(r)] ? 0 : 1;
    const auto reqs = scenario_requests(res.best.choices, r, inst);
    if (!plan_violation(res.best.plans[static_cast<std::size_t>(r)], reqs, inst).empty()) ++bad_plans;
  }
  const bool valid = assortment_violation(res.best.assortment, inst).empty();
  return {valid && penalized == 0 && bad_plans == 0 && res.best.profit >= res.rfts_profit && secs < 1800.0,
          fmt("profit %.2f vs RFTS %.2f, penalized scenarios %.0f, invalid plans %.0f", res.best.profit, res.rfts_profit,
              penalized, bad_plans) +
              fmt("; %.0f iterations; %.1fs (< 1800)", res.iterations, secs)};
}

// 8. Coverage of the no-discount full assortment over the price grid.
Verdict coverage_sweep() {
  const auto t0 = Clock::now();
  ExperimentSetup setup{c101_head(5), BehaviorSpec{}, SolveSettings{}};
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  const auto time_grid = grid(-1.3, 1.5, 0.1);
  const auto price_grid = grid(-0.12, 0.0, 0.01);
  const ExperimentReport rep = run_sensitivity_sweep(setup, time_grid, price_grid, 100, seeds, false);
  // mean coverage per (time, price), paired over seeds
  std::vector<std::vector<double>> mean(time_grid.size(), std::vector<double>(price_grid.size(), 0.0));
  int per_seed_breaks = 0;
  std::size_t at = 0;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    for (std::size_t t = 0; t < time_grid.size(); ++t) {
      double prev = INFINITY;  // walk price from high to low
      std::vector<double> row(price_grid.size());
      for (std::size_t p = 0; p < price_grid.size(); ++p) row[p] = rep.records[at++].coverage_percent;
      for (std::size_t p = price_grid.size(); p-- > 0;) {
        if (row[p] > prev) ++per_seed_breaks;
        prev = row[p];
        mean[t][p] += row[p] / static_cast<double>(seeds.size());
      }
    }
  }
  int mean_breaks = 0;
  for (const auto& row : mean)
    for (std::size_t p = 1; p < row.size(); ++p)
      if (row[p - 1] > row[p] + 1e-9) ++mean_breaks;
  const double secs = seconds_since(t0);
  return {mean_breaks == 0 && secs < 180.0,
          fmt("%.0f x %.0f grid, mean coverage increases as price mean drops at %.0f points (= 0); per-seed breaks %.0f", time_grid.size(),
              price_grid.size(), mean_breaks, per_seed_breaks) +
              fmt("; %.1fs (< 180)", secs)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 oracle-equivalence", oracle_equivalence},  {"2 mnl-convergence", mnl_convergence},
      {"3 in-sample-shape", in_sample_shape},        {"4 stochastic-inequalities", stochastic_inequalities},
      {"5 routing-correctness", routing_correctness}, {"6 salns-invariants", salns_invariants},
      {"7 scalability", scalability},                {"8 coverage-sweep", coverage_sweep},
  };
  std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && name.rfind(only, 0) != 0) continue;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s  %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
