#pragma once

#include <vector>

#include "slotwise/model.hpp"

namespace slotwise {

/// One chosen option per (customer, scenario).
class ChoiceMatrix {
 public:
  ChoiceMatrix() = default;
  ChoiceMatrix(int options, int customers, int scenarios)
      : options_(options),
        customers_(customers),
        scenarios_(scenarios),
        chosen_(static_cast<std::size_t>(customers) * static_cast<std::size_t>(scenarios), kOptOut) {}

  int option_count() const { return options_; }
  int customer_count() const { return customers_; }
  int scenario_count() const { return scenarios_; }

  int chosen(int n, int r) const { return chosen_[index(n, r)]; }
  void set_chosen(int n, int r, int option) { chosen_[index(n, r)] = option; }
  bool w(int option, int n, int r) const { return chosen(n, r) == option; }

  bool operator==(const ChoiceMatrix&) const = default;

 private:
  std::size_t index(int n, int r) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(scenarios_) + static_cast<std::size_t>(r);
  }

  int options_ = 0;
  int customers_ = 0;
  int scenarios_ = 0;
  std::vector<int> chosen_;
};

/// V_in for scenario r: slot options get beta_time of their slot (a presence
/// term) plus beta_price times the effective price; the opt-out is 0.
double systematic_utility(const DeliveryOption& option, int n, int r, const ScenarioSet& scen,
                          const Instance& instance);

/// V + xi, the full utility of an option in scenario r.
double scenario_utility(const DeliveryOption& option, int n, int r, const ScenarioSet& scen,
                        const Instance& instance);

/// max over the whole catalog (offered or not) of V + xi.
double big_m(int n, int r, const ScenarioSet& scen, const Instance& instance);

/// Restricted argmax: each customer picks its best offered option, lowest id on ties.
ChoiceMatrix choose(const Assortment& assortment, const ScenarioSet& scen, const Instance& instance);

/// Choice of a single customer in a single scenario.
int choose_one(const Assortment& assortment, int n, int r, const ScenarioSet& scen,
               const Instance& instance);

/// Cross-check of `choose` through the penalized full-catalog form: a
/// non-offered option has its utility lowered by a constant large enough that
/// it can never beat any offered option (see big_m_penalty).
ChoiceMatrix choose_penalized(const Assortment& assortment, const ScenarioSet& scen,
                              const Instance& instance);

/// Penalty used by choose_penalized: big_m(n, r) - min_i (V + xi) + 1.
double big_m_penalty(int n, int r, const ScenarioSet& scen, const Instance& instance);

/// P[i][n] = (1/R) * sum_r w_inr, stored as rows of options.
std::vector<std::vector<double>> empirical_probabilities(const ChoiceMatrix& w);

/// Closed-form logit over the offered options with coefficients at their means.
std::vector<double> mnl_probabilities(const Assortment& assortment, int n, const BehaviorSpec& means,
                                      const Instance& instance);

/// Share of scenarios in which `option` has a strictly higher utility than the
/// opt-out for customer n.
double win_rate_vs_opt_out(int option, int n, const ScenarioSet& scen, const Instance& instance);

/// Mean over scenarios of V + xi for `option` and customer n.
double mean_utility(int option, int n, const ScenarioSet& scen, const Instance& instance);

/// Share of (customer, scenario) pairs that did not opt out, in percent.
double coverage_percent(const ChoiceMatrix& w);

}  // namespace slotwise
