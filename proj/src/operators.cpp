#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "slotwise/choice.hpp"
#include "slotwise/kmeans.hpp"
#include "slotwise/rfts.hpp"
#include "slotwise/salns.hpp"

namespace slotwise {

namespace {

constexpr std::array<std::string_view, kDestroyKinds> kDestroyNames{"random", "neighborhood", "worst", "adaptive"};
constexpr std::array<std::string_view, kRepairKinds> kRepairNames{"random",     "high-utility", "greedy",
                                                                  "two-regret", "best",         "discount-adjust"};

double node_cost(const Instance& inst, int a, int b) {
  return inst.travel_cost(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
}

double round_trip(const Instance& inst, int customer) {
  const int v = Instance::node(customer);
  return node_cost(inst, 0, v) + node_cost(inst, v, 0) + inst.vehicle_cost;
}

/// Uniform count of slot options for a repaired customer.
int draw_slot_count(const Instance& inst, Rng& rng) {
  const int lo = std::max(inst.min_options - 1, 1);
  return rng.between(std::min(lo, inst.slot_count()), inst.slot_count());
}

std::vector<int> all_slots(const Instance& inst) {
  std::vector<int> s(static_cast<std::size_t>(inst.slot_count()));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

/// Cheapest feasible insertion of customer n with the window of `slot` into
/// scenario r of `sol` (n itself removed first); a dedicated vehicle otherwise.
double insertion_cost(const Solution& sol, int r, int n, int slot, const Instance& inst) {
  const auto& plan = sol.plans[static_cast<std::size_t>(r)];
  double best = round_trip(inst, n);
  if (!sol.feasible[static_cast<std::size_t>(r)]) return best;
  std::vector<ServiceRequest> reqs;
  for (const auto& route : plan.routes) {
    for (int c : route.customers) {
      if (c == n) continue;
      reqs.push_back(make_request(inst, c, inst.option(sol.choices.chosen(c, r)).slot));
    }
  }
  const ServiceRequest mine = make_request(inst, n, slot);
  reqs.push_back(mine);
  const int v = Instance::node(n);
  std::vector<int> seq;
  for (const auto& route : plan.routes) {
    std::vector<int> base;
    for (int c : route.customers)
      if (c != n) base.push_back(c);
    if (base.empty()) continue;
    double load = 0.0;
    for (int c : base) load += inst.customers[static_cast<std::size_t>(c)].demand;
    if (load + mine.demand > inst.capacity) continue;
    for (std::size_t pos = 0; pos <= base.size(); ++pos) {
      const int prev = pos == 0 ? 0 : Instance::node(base[pos - 1]);
      const int next = pos == base.size() ? 0 : Instance::node(base[pos]);
      const double delta = node_cost(inst, prev, v) + node_cost(inst, v, next) - node_cost(inst, prev, next);
      if (delta >= best) continue;
      seq = base;
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), n);
      if (schedule_route(seq, reqs, inst)) best = delta;
    }
  }
  return best;
}

void offer(Assortment& a, const Instance& inst, int n, int slot, int discount) {
  a.set(n, inst.option_id(slot, discount), true);
}

}  // namespace

std::string_view to_string(DestroyKind kind) { return kDestroyNames[static_cast<std::size_t>(kind)]; }
std::string_view to_string(RepairKind kind) { return kRepairNames[static_cast<std::size_t>(kind)]; }

DestroyKind destroy_from_string(std::string_view name) {
  for (int k = 0; k < kDestroyKinds; ++k)
    if (kDestroyNames[static_cast<std::size_t>(k)] == name) return static_cast<DestroyKind>(k);
  throw ModelError("unknown destroy operator '" + std::string(name) + "'");
}

RepairKind repair_from_string(std::string_view name) {
  for (int k = 0; k < kRepairKinds; ++k)
    if (kRepairNames[static_cast<std::size_t>(k)] == name) return static_cast<RepairKind>(k);
  throw ModelError("unknown repair operator '" + std::string(name) + "'");
}

SearchContext::SearchContext(const Instance& instance, const ScenarioSet& scen, std::uint64_t seed)
    : instance_(&instance), scen_(&scen) {
  const int N = instance.customer_count();
  const int I = instance.option_count();
  const int T = instance.slot_count();
  win_rate_.assign(static_cast<std::size_t>(N) * static_cast<std::size_t>(I), 0.0);
  mean_utility_.assign(win_rate_.size(), 0.0);
  preferred_.assign(static_cast<std::size_t>(N) * static_cast<std::size_t>(T), 0);
  for (int n = 0; n < N; ++n) {
    for (int i = 1; i < I; ++i) {
      win_rate_[cell(n, i)] = win_rate_vs_opt_out(i, n, scen, instance);
      mean_utility_[cell(n, i)] = slotwise::mean_utility(i, n, scen, instance);
    }
    for (int s = 0; s < T; ++s) {
      preferred_[static_cast<std::size_t>(n) * static_cast<std::size_t>(T) + static_cast<std::size_t>(s)] =
          slotwise::preferred_discount(n, s, scen, instance);
    }
  }
  std::vector<Point2> points;
  for (const auto& c : instance.customers) points.push_back({c.x, c.y});
  cluster_ = kmeans(points, std::min(instance.fleet_size, N), seed).label;
  counters_.assign(static_cast<std::size_t>(N), 1.0);
}

int removal_count(double kappa, int customers) {
  const int k = static_cast<int>(std::ceil(kappa * customers - 1e-12));
  return std::clamp(k, 1, std::max(customers, 1));
}

std::vector<double> removal_scores(const Solution& solution, const Instance& instance) {
  const int N = instance.customer_count();
  const int R = solution.choices.scenario_count();
  std::vector<double> score(static_cast<std::size_t>(N), 0.0);
  for (int r = 0; r < R; ++r) {
    const auto& plan = solution.plans[static_cast<std::size_t>(r)];
    const bool routed = solution.feasible[static_cast<std::size_t>(r)] != 0;
    std::vector<double> saved(static_cast<std::size_t>(N), 0.0);
    if (routed) {
      for (const auto& route : plan.routes) {
        const auto& cs = route.customers;
        for (std::size_t k = 0; k < cs.size(); ++k) {
          const int prev = k == 0 ? 0 : Instance::node(cs[k - 1]);
          const int next = k + 1 == cs.size() ? 0 : Instance::node(cs[k + 1]);
          const int v = Instance::node(cs[k]);
          double delta = node_cost(instance, prev, v) + node_cost(instance, v, next) - node_cost(instance, prev, next);
          if (cs.size() == 1) delta += instance.vehicle_cost;
          saved[static_cast<std::size_t>(cs[k])] = delta;
        }
      }
    }
    for (int n = 0; n < N; ++n) {
      const int chosen = solution.choices.chosen(n, r);
      if (chosen == kOptOut) continue;
      const double cost = routed ? saved[static_cast<std::size_t>(n)] : round_trip(instance, n);
      score[static_cast<std::size_t>(n)] += cost - option_revenue(instance, chosen);
    }
  }
  for (double& s : score) s /= R;
  return score;
}

DestroyResult destroy(DestroyKind kind, const Solution& solution, double kappa, const SearchContext& ctx, Rng& rng) {
  const Instance& inst = ctx.instance();
  const int N = inst.customer_count();
  const int count = removal_count(kappa, N);
  DestroyResult out{solution.assortment, {}};

  switch (kind) {
    case DestroyKind::Random: {
      std::vector<int> order(static_cast<std::size_t>(N));
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order.begin(), order.end());
      out.removed.assign(order.begin(), order.begin() + count);
      break;
    }
    case DestroyKind::Neighborhood: {
      // A random anchor and the members of its cluster, nearest first.
      const int anchor = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
      const auto& label = ctx.cluster();
      const auto& a = inst.customers[static_cast<std::size_t>(anchor)];
      std::vector<int> members;
      for (int n = 0; n < N; ++n)
        if (label[static_cast<std::size_t>(n)] == label[static_cast<std::size_t>(anchor)]) members.push_back(n);
      auto dist = [&](int n) {
        const auto& c = inst.customers[static_cast<std::size_t>(n)];
        return std::hypot(c.x - a.x, c.y - a.y);
      };
      std::stable_sort(members.begin(), members.end(), [&](int x, int y) { return dist(x) < dist(y); });
      if (static_cast<int>(members.size()) > count) members.resize(static_cast<std::size_t>(count));
      out.removed = members;
      break;
    }
    case DestroyKind::Worst: {
      const auto score = removal_scores(solution, inst);
      std::vector<int> order(static_cast<std::size_t>(N));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return score[static_cast<std::size_t>(x)] > score[static_cast<std::size_t>(y)];
      });
      out.removed.assign(order.begin(), order.begin() + count);
      break;
    }
    case DestroyKind::Adaptive: {
      std::vector<double> w = ctx.removal_counters();
      for (int k = 0; k < count; ++k) {
        const int n = roulette(w, rng);
        out.removed.push_back(n);
        w[static_cast<std::size_t>(n)] = 0.0;
        if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) break;
      }
      break;
    }
  }
  for (int n : out.removed) out.partial.clear_customer(n);
  return out;
}

Assortment repair(RepairKind kind, const Assortment& partial, const std::vector<int>& removed,
                  const Solution& original, const SearchContext& ctx, Rng& rng) {
  const Instance& inst = ctx.instance();
  const int H = inst.discount_count();
  Assortment a = partial;

  for (int n : removed) {
    a.clear_customer(n);
    if (kind == RepairKind::DiscountAdjust) {
      for (int s = 0; s < inst.slot_count(); ++s) {
        if (offered_discount(original.assortment, inst, n, s) < 0) continue;
        offer(a, inst, n, s, static_cast<int>(rng.below(static_cast<std::uint64_t>(H))));
      }
      if (a.offered_count(n) >= inst.min_options) continue;
      // The customer had no slots before: fall back to a random draw.
    }

    const int m = draw_slot_count(inst, rng);
    std::vector<int> slots = all_slots(inst);
    switch (kind) {
      case RepairKind::Random:
      case RepairKind::DiscountAdjust: {
        rng.shuffle(slots.begin(), slots.end());
        for (int k = 0; k < m; ++k)
          offer(a, inst, n, slots[static_cast<std::size_t>(k)], static_cast<int>(rng.below(static_cast<std::uint64_t>(H))));
        break;
      }
      case RepairKind::HighUtility: {
        std::vector<int> options;
        for (int i = 1; i < inst.option_count(); ++i) options.push_back(i);
        std::stable_sort(options.begin(), options.end(), [&](int x, int y) {
          if (ctx.win_rate(n, x) != ctx.win_rate(n, y)) return ctx.win_rate(n, x) > ctx.win_rate(n, y);
          return ctx.mean_utility(n, x) > ctx.mean_utility(n, y);
        });
        int placed = 0;
        for (int o : options) {
          if (placed == m) break;
          if (offered_discount(a, inst, n, inst.option(o).slot) >= 0) continue;
          a.set(n, o, true);
          ++placed;
        }
        break;
      }
      case RepairKind::Greedy: {
        // Slots least offered among the other members of n's cluster first.
        std::vector<int> used(static_cast<std::size_t>(inst.slot_count()), 0);
        const auto& label = ctx.cluster();
        for (int c = 0; c < inst.customer_count(); ++c) {
          if (c == n || label[static_cast<std::size_t>(c)] != label[static_cast<std::size_t>(n)]) continue;
          for (int s = 0; s < inst.slot_count(); ++s)
            used[static_cast<std::size_t>(s)] += offered_discount(a, inst, c, s) >= 0 ? 1 : 0;
        }
        rng.shuffle(slots.begin(), slots.end());
        std::stable_sort(slots.begin(), slots.end(), [&](int x, int y) {
          return used[static_cast<std::size_t>(x)] < used[static_cast<std::size_t>(y)];
        });
        for (int k = 0; k < m; ++k) {
          const int s = slots[static_cast<std::size_t>(k)];
          offer(a, inst, n, s, ctx.preferred_discount(n, s));
        }
        break;
      }
      case RepairKind::TwoRegret: {
        auto rate = [&](int s) { return ctx.win_rate(n, inst.option_id(s, ctx.preferred_discount(n, s))); };
        std::stable_sort(slots.begin(), slots.end(), [&](int x, int y) { return rate(x) > rate(y); });
        // Start from the runner-up; the favourite only comes in last.
        std::rotate(slots.begin(), slots.begin() + 1, slots.end());
        for (int k = 0; k < m; ++k) {
          const int s = slots[static_cast<std::size_t>(k)];
          offer(a, inst, n, s, ctx.preferred_discount(n, s));
        }
        break;
      }
      case RepairKind::Best: {
        const int R = original.choices.scenario_count();
        std::vector<double> cost(static_cast<std::size_t>(inst.slot_count()), 0.0);
        for (int s = 0; s < inst.slot_count(); ++s) {
          for (int r = 0; r < R; ++r) cost[static_cast<std::size_t>(s)] += insertion_cost(original, r, n, s, inst);
        }
        std::stable_sort(slots.begin(), slots.end(), [&](int x, int y) {
          return cost[static_cast<std::size_t>(x)] < cost[static_cast<std::size_t>(y)];
        });
        for (int k = 0; k < m; ++k) {
          const int s = slots[static_cast<std::size_t>(k)];
          offer(a, inst, n, s, ctx.preferred_discount(n, s));
        }
        break;
      }
    }
  }
  return a;
}

int roulette(std::span<const double> weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) return static_cast<int>(rng.below(weights.size()));
  const double pick = rng.uniform01() * total;
  double acc = 0.0;
  int last_positive = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    acc += weights[k];
    last_positive = static_cast<int>(k);
    if (pick < acc) return last_positive;
  }
  return last_positive;
}

}  // namespace slotwise
