#include "slotwise/choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>


namespace slotwise {

double systematic_utility(const DeliveryOption& option, int n, int r, const ScenarioSet& scen,
                          const Instance& /*instance*/) {
  if (option.opt_out) return 0.0;
  return scen.beta_time(option.slot, n, r) + scen.beta_price(n, r) * option.effective_price;
}

double scenario_utility(const DeliveryOption& option, int n, int r, const ScenarioSet& scen,
                        const Instance& instance) {
  return systematic_utility(option, n, r, scen, instance) + scen.xi(option.id, n, r);
}

double big_m(int n, int r, const ScenarioSet& scen, const Instance& instance) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& o : instance.catalog) m = std::max(m, scenario_utility(o, n, r, scen, instance));
  return m;
}

double big_m_penalty(int n, int r, const ScenarioSet& scen, const Instance& instance) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& o : instance.catalog) lo = std::min(lo, scenario_utility(o, n, r, scen, instance));
  return big_m(n, r, scen, instance) - lo + 1.0;
}

int choose_one(const Assortment& assortment, int n, int r, const ScenarioSet& scen,
               const Instance& instance) {
  const double* xi = scen.xi_row(n, r);
  const double bp = scen.beta_price(n, r);
  int best = kOptOut;
  double best_u = xi[kOptOut];
  const int options = instance.option_count();
  for (int i = 1; i < options; ++i) {
    if (!assortment.offered(n, i)) continue;
    const auto& o = instance.catalog[static_cast<std::size_t>(i)];
    const double u = scen.beta_time(o.slot, n, r) + bp * o.effective_price + xi[i];
    if (u > best_u) {
      best_u = u;
      best = i;
    }
  }
  return best;
}

ChoiceMatrix choose(const Assortment& assortment, const ScenarioSet& scen, const Instance& instance) {
  validate_assortment(assortment, instance);
  const int N = instance.customer_count();
  const int R = scen.scenario_count();
  ChoiceMatrix w(instance.option_count(), N, R);
  for (int n = 0; n < N; ++n)
    for (int r = 0; r < R; ++r) w.set_chosen(n, r, choose_one(assortment, n, r, scen, instance));
  return w;
}

ChoiceMatrix choose_penalized(const Assortment& assortment, const ScenarioSet& scen,
                              const Instance& instance) {
  validate_assortment(assortment, instance);
  const int N = instance.customer_count();
  const int R = scen.scenario_count();
  ChoiceMatrix w(instance.option_count(), N, R);
  for (int n = 0; n < N; ++n) {
    for (int r = 0; r < R; ++r) {
      const double penalty = big_m_penalty(n, r, scen, instance);
      int best = kOptOut;
      double best_u = -std::numeric_limits<double>::infinity();
      for (const auto& o : instance.catalog) {
        const double gamma = assortment.offered(n, o.id) ? 1.0 : 0.0;
        const double u = scenario_utility(o, n, r, scen, instance) - penalty * (1.0 - gamma);
        if (u > best_u) {
          best_u = u;
          best = o.id;
        }
      }
      w.set_chosen(n, r, best);
    }
  }
  return w;
}

std::vector<std::vector<double>> empirical_probabilities(const ChoiceMatrix& w) {
  const int I = w.option_count();
  const int N = w.customer_count();
  const int R = w.scenario_count();
  std::vector<std::vector<double>> p(static_cast<std::size_t>(I),
                                     std::vector<double>(static_cast<std::size_t>(N), 0.0));
  std::vector<long> counts(static_cast<std::size_t>(I));
  for (int n = 0; n < N; ++n) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int r = 0; r < R; ++r) ++counts[static_cast<std::size_t>(w.chosen(n, r))];
    // The last populated option absorbs the remainder so every column sums to one.
    int last = -1;
    for (int i = 0; i < I; ++i)
      if (counts[static_cast<std::size_t>(i)] > 0) last = i;
    double acc = 0.0;
    for (int i = 0; i < I; ++i) {
      const auto c = counts[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      double v = static_cast<double>(c) / R;
      if (i == last) v = 1.0 - acc;
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = v;
      acc += v;
    }
  }
  return p;
}

std::vector<double> mnl_probabilities(const Assortment& assortment, int n, const BehaviorSpec& means,
                                      const Instance& instance) {
  const auto I = static_cast<std::size_t>(instance.option_count());
  std::vector<double> v(I, -std::numeric_limits<double>::infinity());
  double vmax = 0.0;
  for (const auto& o : instance.catalog) {
    if (!o.opt_out && !assortment.offered(n, o.id)) continue;
    double value = 0.0;
    if (!o.opt_out) {
      const auto seg = static_cast<std::size_t>(instance.slots[static_cast<std::size_t>(o.slot)].segment);
      value = means.time_mean[seg] + means.price_mean * o.effective_price;
    }
    v[static_cast<std::size_t>(o.id)] = value;
    vmax = std::max(vmax, value);
  }
  std::vector<double> p(I, 0.0);
  double denom = 0.0;
  for (std::size_t i = 0; i < I; ++i)
    if (std::isfinite(v[i])) denom += std::exp(v[i] - vmax);
  for (std::size_t i = 0; i < I; ++i)
    if (std::isfinite(v[i])) p[i] = std::exp(v[i] - vmax) / denom;
  return p;
}

double win_rate_vs_opt_out(int option, int n, const ScenarioSet& scen, const Instance& instance) {
  const auto& o = instance.option(option);
  const int R = scen.scenario_count();
  int wins = 0;
  for (int r = 0; r < R; ++r) {
    if (scenario_utility(o, n, r, scen, instance) > scen.xi(kOptOut, n, r)) ++wins;
  }
  return static_cast<double>(wins) / R;
}

double mean_utility(int option, int n, const ScenarioSet& scen, const Instance& instance) {
  const auto& o = instance.option(option);
  const int R = scen.scenario_count();
  double total = 0.0;
  for (int r = 0; r < R; ++r) total += scenario_utility(o, n, r, scen, instance);
  return total / R;
}

double coverage_percent(const ChoiceMatrix& w) {
  const long total = static_cast<long>(w.customer_count()) * w.scenario_count();
  if (total == 0) return 0.0;
  long served = 0;
  for (int n = 0; n < w.customer_count(); ++n)
    for (int r = 0; r < w.scenario_count(); ++r) served += w.chosen(n, r) != kOptOut ? 1 : 0;
  return 100.0 * static_cast<double>(served) / static_cast<double>(total);
}

}  // namespace slotwise
