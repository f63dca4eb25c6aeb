#pragma once

#include <cstdint>
#include <vector>

#include "slotwise/evaluate.hpp"
#include "slotwise/model.hpp"

namespace slotwise {

/// Every admissible offer pattern of one customer: at most one discount per
/// slot, at least min_options options counting the opt-out.
class AssortmentEnumerator {
 public:
  explicit AssortmentEnumerator(const Instance& instance);

  /// Pattern p of a customer as a list of slot option ids.
  const std::vector<int>& pattern(int p) const { return patterns_[static_cast<std::size_t>(p)]; }
  int pattern_count() const { return static_cast<int>(patterns_.size()); }

  /// pattern_count ^ customers, saturated at the largest double.
  double assortment_count() const;

  /// Writes the cursor's patterns into `a` (one pattern index per customer).
  void apply(const std::vector<int>& cursor, Assortment& a) const;

  /// Advances a mixed-radix cursor; false once every assortment was visited.
  bool next(std::vector<int>& cursor) const;

 private:
  const Instance* instance_;
  std::vector<std::vector<int>> patterns_;
};

struct ExactOptions {
  int customer_cap = 4;
  double max_assortments = 1e7;
  int routing_cap = 9;
  /// Skip assortments whose expected revenue cannot beat the incumbent.
  bool prune = true;
  /// Also record every scenario's own optimum; turns pruning off.
  bool scenario_optima = false;
  double infeasible_penalty_factor = 10.0;
};

struct ExactResult {
  Solution best;  // evaluated with the exact router
  double assortments_visited = 0;
  double assortments_pruned = 0;
  /// Best profit of each scenario taken alone (perfect information).
  std::vector<double> scenario_optimum;
};

/// Certified optimum over all admissible assortments with exact routing.
/// Throws std::length_error when the instance exceeds the caps.
ExactResult exact_search(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options = {});

Solution exact_solve(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options = {});

/// Optimum of the model with no error terms and coefficients at their means.
Solution deterministic_solve(const Instance& instance, const BehaviorSpec& spec, const ExactOptions& options = {});

struct StochasticValue {
  double stochastic_profit = 0.0;     // exact optimum on scen
  double deterministic_profit = 0.0;  // deterministic optimum re-scored on scen
  double perfect_information = 0.0;   // mean of per-scenario optima
  double vss = 0.0;
  double evpi = 0.0;
  Assortment stochastic_assortment;
  Assortment deterministic_assortment;
};

/// VSS and EVPI from one enumeration plus the deterministic solve.
StochasticValue stochastic_value(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options = {});

double vss(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options = {});
double evpi(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options = {});

}  // namespace slotwise
