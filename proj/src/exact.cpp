#include "slotwise/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "slotwise/choice.hpp"
#include "slotwise/parallel.hpp"

namespace slotwise {

AssortmentEnumerator::AssortmentEnumerator(const Instance& instance) : instance_(&instance) {
  const int T = instance.slot_count();
  const int H = instance.discount_count();
  // Each slot is either off (digit 0) or offered at discount digit - 1.
  std::vector<int> digit(static_cast<std::size_t>(T), 0);
  while (true) {
    std::vector<int> options;
    for (int s = 0; s < T; ++s)
      if (digit[static_cast<std::size_t>(s)] > 0) options.push_back(instance.option_id(s, digit[static_cast<std::size_t>(s)] - 1));
    if (static_cast<int>(options.size()) + 1 >= instance.min_options) patterns_.push_back(std::move(options));
    int s = 0;
    while (s < T && ++digit[static_cast<std::size_t>(s)] > H) digit[static_cast<std::size_t>(s++)] = 0;
    if (s == T) break;
  }
}

double AssortmentEnumerator::assortment_count() const {
  return std::pow(static_cast<double>(patterns_.size()), instance_->customer_count());
}

void AssortmentEnumerator::apply(const std::vector<int>& cursor, Assortment& a) const {
  for (int n = 0; n < instance_->customer_count(); ++n) {
    a.clear_customer(n);
    for (int o : patterns_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(n)])]) a.set(n, o, true);
  }
}

bool AssortmentEnumerator::next(std::vector<int>& cursor) const {
  const int P = pattern_count();
  for (auto& c : cursor) {
    if (++c < P) return true;
    c = 0;
  }
  return false;
}

ExactResult exact_search(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options) {
  const int N = instance.customer_count();
  const int R = scen.scenario_count();
  if (N > options.customer_cap) {
    throw std::length_error("exact search is capped at " + std::to_string(options.customer_cap) + " customers, got " +
                            std::to_string(N));
  }
  const AssortmentEnumerator en(instance);
  const int P = en.pattern_count();
  if (P == 0) throw ModelError("no admissible offer pattern");
  if (en.assortment_count() > options.max_assortments) {
    throw std::length_error("exact search would visit more than " + std::to_string(options.max_assortments) +
                            " assortments");
  }
  const auto idx = [&](int n, int p, int r) {
    return (static_cast<std::size_t>(n) * static_cast<std::size_t>(P) + static_cast<std::size_t>(p)) *
               static_cast<std::size_t>(R) +
           static_cast<std::size_t>(r);
  };

  // Choice, revenue and routing key contribution per (customer, pattern, scenario).
  const std::size_t base = static_cast<std::size_t>(instance.slot_count()) + 1;
  std::vector<std::size_t> stride(static_cast<std::size_t>(N), 1);
  for (int n = 1; n < N; ++n) stride[static_cast<std::size_t>(n)] = stride[static_cast<std::size_t>(n - 1)] * base;
  std::vector<double> revenue(static_cast<std::size_t>(N) * static_cast<std::size_t>(P) * static_cast<std::size_t>(R));
  std::vector<std::size_t> key_part(revenue.size());
  std::vector<double> revenue_bound(static_cast<std::size_t>(N) * static_cast<std::size_t>(P), 0.0);
  {
    Assortment probe(N, instance.option_count());
    for (int n = 0; n < N; ++n) {
      for (int p = 0; p < P; ++p) {
        probe.clear_customer(n);
        for (int o : en.pattern(p)) probe.set(n, o, true);
        double total = 0.0;
        for (int r = 0; r < R; ++r) {
          const int chosen = choose_one(probe, n, r, scen, instance);
          revenue[idx(n, p, r)] = option_revenue(instance, chosen);
          total += revenue[idx(n, p, r)];
          const std::size_t digit = chosen == kOptOut ? 0 : static_cast<std::size_t>(instance.option(chosen).slot) + 1;
          key_part[idx(n, p, r)] = digit * stride[static_cast<std::size_t>(n)];
        }
        revenue_bound[static_cast<std::size_t>(n) * static_cast<std::size_t>(P) + static_cast<std::size_t>(p)] = total / R;
      }
      probe.clear_customer(n);
    }
  }

  // Routing cost of every visit pattern, as evaluate would charge it.
  const std::size_t keys = stride.back() * base;
  std::vector<double> route_cost(keys, 0.0);
  RouterConfig exact_router{RouterKind::Exact, 0, options.routing_cap};
  parallel_for(keys, [&](std::size_t key) {
    std::vector<ServiceRequest> requests;
    std::size_t rest = key;
    for (int n = 0; n < N; ++n) {
      const std::size_t digit = rest % base;
      rest /= base;
      if (digit > 0) requests.push_back(make_request(instance, n, static_cast<int>(digit) - 1));
    }
    bool ok = true;
    double cost = 0.0;
    try {
      const RoutingPlan plan = solve_routing(requests, instance, exact_router, 0);
      ok = plan.within_fleet;
      cost = plan.total_cost;
    } catch (const InfeasibleRouting&) {
      ok = false;
    }
    route_cost[key] = ok ? cost : options.infeasible_penalty_factor * naive_singleton_cost(requests, instance);
  });

  ExactResult out;
  const bool prune = options.prune && !options.scenario_optima;
  if (options.scenario_optima) {
    out.scenario_optimum.assign(static_cast<std::size_t>(R), -std::numeric_limits<double>::infinity());
  }
  std::vector<int> cursor(static_cast<std::size_t>(N), 0);
  std::vector<int> best_cursor;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> scenario_profit(static_cast<std::size_t>(R));
  do {
    if (prune && !best_cursor.empty()) {
      double bound = 0.0;
      for (int n = 0; n < N; ++n) {
        bound += revenue_bound[static_cast<std::size_t>(n) * static_cast<std::size_t>(P) +
                               static_cast<std::size_t>(cursor[static_cast<std::size_t>(n)])];
      }
      // Routing costs are non-negative, so profit cannot exceed expected revenue.
      if (bound + 1e-9 * (1.0 + std::abs(bound)) <= best) {
        out.assortments_pruned += 1;
        continue;
      }
    }
    out.assortments_visited += 1;
    double total = 0.0;
    for (int r = 0; r < R; ++r) {
      double rev = 0.0;
      std::size_t key = 0;
      for (int n = 0; n < N; ++n) {
        const std::size_t k = idx(n, cursor[static_cast<std::size_t>(n)], r);
        rev += revenue[k];
        key += key_part[k];
      }
      const double sp = rev - route_cost[key];
      scenario_profit[static_cast<std::size_t>(r)] = sp;
      total += sp;
    }
    const double profit = total / R;
    if (options.scenario_optima) {
      for (int r = 0; r < R; ++r) {
        auto& o = out.scenario_optimum[static_cast<std::size_t>(r)];
        o = std::max(o, scenario_profit[static_cast<std::size_t>(r)]);
      }
    }
    if (profit > best) {
      best = profit;
      best_cursor = cursor;
    }
  } while (en.next(cursor));

  Assortment a(N, instance.option_count());
  en.apply(best_cursor, a);
  EvaluationOptions eo;
  eo.router = exact_router;
  eo.infeasible_penalty_factor = options.infeasible_penalty_factor;
  out.best = Evaluator(instance, scen, eo)(a);
  return out;
}

Solution exact_solve(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options) {
  return exact_search(instance, scen, options).best;
}

Solution deterministic_solve(const Instance& instance, const BehaviorSpec& spec, const ExactOptions& options) {
  const ScenarioSet det = ScenarioSet::deterministic(spec, instance);
  ExactOptions o = options;
  o.scenario_optima = false;
  return exact_search(instance, det, o).best;
}

StochasticValue stochastic_value(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options) {
  ExactOptions o = options;
  o.scenario_optima = true;
  const ExactResult stochastic = exact_search(instance, scen, o);
  const Solution det = deterministic_solve(instance, scen.spec(), options);

  EvaluationOptions eo;
  eo.router = RouterConfig{RouterKind::Exact, 0, options.routing_cap};
  eo.infeasible_penalty_factor = options.infeasible_penalty_factor;
  StochasticValue v;
  v.stochastic_profit = stochastic.best.profit;
  v.deterministic_profit = Evaluator(instance, scen, eo)(det.assortment).profit;
  double total = 0.0;
  for (double p : stochastic.scenario_optimum) total += p;
  v.perfect_information = total / scen.scenario_count();
  v.vss = v.stochastic_profit - v.deterministic_profit;
  v.evpi = v.perfect_information - v.stochastic_profit;
  v.stochastic_assortment = stochastic.best.assortment;
  v.deterministic_assortment = det.assortment;
  return v;
}

double vss(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options) {
  return stochastic_value(instance, scen, options).vss;
}

double evpi(const Instance& instance, const ScenarioSet& scen, const ExactOptions& options) {
  return stochastic_value(instance, scen, options).evpi;
}

}  // namespace slotwise
