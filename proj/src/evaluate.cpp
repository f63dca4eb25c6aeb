#include "slotwise/evaluate.hpp"

#include "slotwise/parallel.hpp"
#include "slotwise/rng.hpp"

namespace slotwise {

std::vector<ServiceRequest> scenario_requests(const ChoiceMatrix& choices, int r, const Instance& instance) {
  std::vector<ServiceRequest> requests;
  for (int n = 0; n < choices.customer_count(); ++n) {
    const int chosen = choices.chosen(n, r);
    if (chosen == kOptOut) continue;
    requests.push_back(make_request(instance, n, instance.option(chosen).slot));
  }
  return requests;
}

double naive_singleton_cost(std::span<const ServiceRequest> requests, const Instance& instance) {
  double cost = 0.0;
  for (const auto& q : requests) {
    const auto node = static_cast<std::size_t>(q.customer) + 1;
    cost += instance.travel_cost(0, node) + instance.travel_cost(node, 0) + instance.vehicle_cost;
  }
  return cost;
}

Evaluator::Evaluator(const Instance& instance, const ScenarioSet& scenarios, EvaluationOptions options)
    : instance_(&instance),
      scenarios_(&scenarios),
      options_(options),
      counter_(std::make_shared<std::atomic<long>>(0)) {
  if (scenarios.customer_count() != instance.customer_count() || scenarios.option_count() != instance.option_count()) {
    throw ModelError("scenario set does not match the instance");
  }
}

Evaluator Evaluator::with_router(const RouterConfig& router) const {
  Evaluator e = *this;
  e.options_.router = router;
  e.counter_ = std::make_shared<std::atomic<long>>(0);
  return e;
}

Solution Evaluator::evaluate(const Assortment& assortment, const Solution* base) const {
  counter_->fetch_add(1);
  const Instance& inst = *instance_;
  const int R = scenarios_->scenario_count();
  const int N = inst.customer_count();

  Solution sol;
  sol.assortment = assortment;
  sol.choices = choose(assortment, *scenarios_, inst);
  sol.router = options_.router.kind;
  sol.plans.resize(static_cast<std::size_t>(R));
  sol.scenario_profit.assign(static_cast<std::size_t>(R), 0.0);
  sol.feasible.assign(static_cast<std::size_t>(R), 1);

  const bool can_reuse = base && base->router == options_.router.kind &&
                         base->choices.scenario_count() == R && base->choices.customer_count() == N;

  parallel_for(static_cast<std::size_t>(R), [&](std::size_t rr) {
    const int r = static_cast<int>(rr);
    if (can_reuse) {
      bool same = true;
      for (int n = 0; n < N && same; ++n) same = base->choices.chosen(n, r) == sol.choices.chosen(n, r);
      if (same) {
        sol.plans[rr] = base->plans[rr];
        sol.scenario_profit[rr] = base->scenario_profit[rr];
        sol.feasible[rr] = base->feasible[rr];
        return;
      }
    }
    double revenue = 0.0;
    for (int n = 0; n < N; ++n) revenue += option_revenue(inst, sol.choices.chosen(n, r));
    const auto requests = scenario_requests(sol.choices, r, inst);
    bool ok = true;
    try {
      sol.plans[rr] = solve_routing(requests, inst, options_.router, derive_key(options_.router_seed, {rr}));
      ok = sol.plans[rr].within_fleet;
    } catch (const InfeasibleRouting&) {
      ok = false;
    }
    if (ok) {
      sol.scenario_profit[rr] = revenue - sol.plans[rr].total_cost;
    } else {
      sol.feasible[rr] = 0;
      sol.scenario_profit[rr] =
          revenue - options_.infeasible_penalty_factor * naive_singleton_cost(requests, inst);
    }
  });

  double total = 0.0;
  for (double p : sol.scenario_profit) total += p;
  sol.profit = total / R;
  return sol;
}

Solution evaluate(const Assortment& assortment, const Instance& instance, const ScenarioSet& scenarios,
                  const RouterConfig& router) {
  EvaluationOptions options;
  options.router = router;
  return Evaluator(instance, scenarios, options)(assortment);
}

}  // namespace slotwise
