#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "slotwise/choice.hpp"
#include "slotwise/model.hpp"
#include "slotwise/routing.hpp"

namespace slotwise {

/// An assortment together with its simulated outcome.
struct Solution {
  Assortment assortment;
  double profit = 0.0;  // mean over scenarios of revenue - routing cost
  ChoiceMatrix choices;
  std::vector<RoutingPlan> plans;        // one per scenario
  std::vector<double> scenario_profit;   // one per scenario
  std::vector<std::uint8_t> feasible;    // 0 where the scenario was penalized
  RouterKind router = RouterKind::CW;    // solver that produced `plans`
};

struct EvaluationOptions {
  RouterConfig router;
  std::uint64_t router_seed = 0;
  /// An unroutable scenario earns revenue - factor * (cost of serving every
  /// visiting customer with its own vehicle).
  double infeasible_penalty_factor = 10.0;
};

/// Revenue of customer n choosing `option` (0 for the opt-out).
inline double option_revenue(const Instance& instance, int option) {
  return instance.catalog[static_cast<std::size_t>(option)].effective_price;
}

/// Requests of every non-opt-out customer in scenario r, in customer order.
std::vector<ServiceRequest> scenario_requests(const ChoiceMatrix& choices, int r, const Instance& instance);

/// Scores assortments against a fixed scenario set. Scenarios are routed in
/// parallel and summed in index order, so results do not depend on the
/// number of threads.
class Evaluator {
 public:
  Evaluator(const Instance& instance, const ScenarioSet& scenarios, EvaluationOptions options = {});

  Solution operator()(const Assortment& assortment) const { return evaluate(assortment, nullptr); }

  /// Reuses base's plan for every scenario whose choices did not change.
  /// base must come from an evaluator with the same router and scenarios.
  Solution evaluate(const Assortment& assortment, const Solution* base) const;

  const Instance& instance() const { return *instance_; }
  const ScenarioSet& scenarios() const { return *scenarios_; }
  const EvaluationOptions& options() const { return options_; }

  Evaluator with_router(const RouterConfig& router) const;

  /// Number of assortments evaluated so far.
  long evaluations() const { return counter_->load(); }

 private:
  const Instance* instance_;
  const ScenarioSet* scenarios_;
  EvaluationOptions options_;
  std::shared_ptr<std::atomic<long>> counter_;
};

/// One-shot evaluation.
Solution evaluate(const Assortment& assortment, const Instance& instance, const ScenarioSet& scenarios,
                  const RouterConfig& router = {});

/// Cost of serving every request with its own vehicle: round trips plus one
/// vehicle each. The infeasibility penalty is a multiple of this.
double naive_singleton_cost(std::span<const ServiceRequest> requests, const Instance& instance);

}  // namespace slotwise
