#include "slotwise/rfts.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "slotwise/choice.hpp"
#include "slotwise/kmeans.hpp"
#include "slotwise/rng.hpp"

namespace slotwise {

namespace {

double cost(const Instance& inst, int a_node, int b_node) {
  return inst.travel_cost(static_cast<std::size_t>(a_node), static_cast<std::size_t>(b_node));
}

double tour_cost(std::span<const int> route, const Instance& inst) {
  double total = 0.0;
  int prev = 0;
  for (int c : route) {
    total += cost(inst, prev, Instance::node(c));
    prev = Instance::node(c);
  }
  return total + cost(inst, prev, 0);
}

double cluster_load(const std::vector<int>& cluster, const Instance& inst) {
  double load = 0.0;
  for (int c : cluster) load += inst.customers[static_cast<std::size_t>(c)].demand;
  return load;
}

Point2 centroid(const std::vector<int>& cluster, const Instance& inst) {
  Point2 p;
  for (int c : cluster) {
    p.x += inst.customers[static_cast<std::size_t>(c)].x;
    p.y += inst.customers[static_cast<std::size_t>(c)].y;
  }
  if (!cluster.empty()) {
    p.x /= static_cast<double>(cluster.size());
    p.y /= static_cast<double>(cluster.size());
  }
  return p;
}

/// Cuts the route wherever the next stop would push it past the horizon.
std::vector<std::vector<int>> split_schedulable(const std::vector<int>& route, const Instance& inst) {
  std::vector<std::vector<int>> pieces;
  std::vector<int> current;
  for (int c : route) {
    current.push_back(c);
    try {
      (void)forward_backward_windows(current, inst);
    } catch (const ModelError&) {
      current.pop_back();
      if (!current.empty()) pieces.push_back(current);
      current = {c};
      (void)forward_backward_windows(current, inst);  // a lone customer must fit
    }
  }
  if (!current.empty()) pieces.push_back(current);
  return pieces;
}

}  // namespace

std::vector<int> SlotWindowAssignment::offered_slots(std::size_t k) const {
  std::vector<int> out;
  for (int s = earliest_slot[k]; s <= latest_slot[k]; ++s) out.push_back(s);
  return out;
}

std::vector<int> nearest_neighbor_route(std::span<const int> customers, const Instance& instance) {
  std::vector<int> left(customers.begin(), customers.end());
  std::vector<int> route;
  int prev = 0;
  while (!left.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < left.size(); ++k) {
      const double dk = cost(instance, prev, Instance::node(left[k]));
      const double db = cost(instance, prev, Instance::node(left[best]));
      if (dk < db || (dk == db && left[k] < left[best])) best = k;
    }
    route.push_back(left[best]);
    prev = Instance::node(left[best]);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return route;
}

void repair_cluster_capacity(std::vector<std::vector<int>>& clusters, const Instance& instance) {
  auto demand = [&](int c) { return instance.customers[static_cast<std::size_t>(c)].demand; };
  std::vector<int> overflow;
  for (auto& cluster : clusters) {
    double load = cluster_load(cluster, instance);
    if (load <= instance.capacity) continue;
    std::vector<int> by_demand = cluster;
    std::stable_sort(by_demand.begin(), by_demand.end(), [&](int a, int b) { return demand(a) > demand(b); });
    for (int c : by_demand) {
      if (load <= instance.capacity) break;
      load -= demand(c);
      overflow.push_back(c);
      cluster.erase(std::find(cluster.begin(), cluster.end(), c));
    }
  }
  for (int c : overflow) {
    const auto& cu = instance.customers[static_cast<std::size_t>(c)];
    int target = -1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      if (clusters[k].empty() || cluster_load(clusters[k], instance) + cu.demand > instance.capacity) continue;
      const Point2 p = centroid(clusters[k], instance);
      const double d = (p.x - cu.x) * (p.x - cu.x) + (p.y - cu.y) * (p.y - cu.y);
      if (d < best) {
        best = d;
        target = static_cast<int>(k);
      }
    }
    if (target < 0) {
      clusters.push_back({c});
    } else {
      clusters[static_cast<std::size_t>(target)].push_back(c);
    }
  }
  std::erase_if(clusters, [](const std::vector<int>& c) { return c.empty(); });
}

std::vector<std::vector<int>> choose_clusters(const Instance& instance, int zeta, std::uint64_t seed) {
  if (zeta < 0) throw ModelError("zeta must be >= 0");
  const int n = instance.customer_count();
  const int k_hi = std::min(instance.fleet_size, n);
  const int k_lo = std::max(1, std::min(instance.fleet_size - zeta, k_hi));

  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(n));
  for (const auto& c : instance.customers) points.push_back({c.x, c.y});

  std::vector<std::vector<int>> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = k_lo; k <= k_hi; ++k) {
    const auto clusters = kmeans(points, k, derive_key(seed, {static_cast<std::uint64_t>(k)})).members();
    double total = 0.0;
    for (const auto& cl : clusters) total += tour_cost(nearest_neighbor_route(cl, instance), instance);
    if (total < best_cost) {
      best_cost = total;
      best = clusters;
    }
  }
  std::erase_if(best, [](const std::vector<int>& c) { return c.empty(); });
  repair_cluster_capacity(best, instance);
  return best;
}

SlotWindowAssignment forward_backward_windows(std::span<const int> route, const Instance& instance) {
  const auto& slots = instance.slots;
  const std::size_t m = route.size();
  SlotWindowAssignment out;
  out.customers.assign(route.begin(), route.end());
  out.earliest_slot.resize(m);
  out.latest_slot.resize(m);

  double clock = 0.0;
  int prev = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const int node = Instance::node(route[k]);
    const double arrival = clock + instance.travel_time(static_cast<std::size_t>(prev), static_cast<std::size_t>(node));
    int s = 0;
    while (s < instance.slot_count() && slots[static_cast<std::size_t>(s)].upper < arrival) ++s;
    if (s == instance.slot_count()) throw ModelError("route cannot be served before the horizon ends");
    out.earliest_slot[k] = s;
    clock = std::max(arrival, slots[static_cast<std::size_t>(s)].lower) +
            instance.customers[static_cast<std::size_t>(route[k])].service_time;
    prev = node;
  }

  double latest = slots.back().upper;
  for (std::size_t k = m; k-- > 0;) {
    int s = instance.slot_count() - 1;
    while (s >= 0 && slots[static_cast<std::size_t>(s)].lower > latest) --s;
    if (s < 0) throw ModelError("route cannot be served after the horizon starts");
    out.latest_slot[k] = s;
    if (out.latest_slot[k] < out.earliest_slot[k]) throw ModelError("route is not schedulable within the horizon");
    const double start = std::min(latest, slots[static_cast<std::size_t>(s)].upper);
    if (k > 0) {
      latest = start -
               instance.travel_time(static_cast<std::size_t>(Instance::node(route[k - 1])),
                                    static_cast<std::size_t>(Instance::node(route[k]))) -
               instance.customers[static_cast<std::size_t>(route[k - 1])].service_time;
    }
  }
  return out;
}

int preferred_discount(int customer, int slot, const ScenarioSet& scen, const Instance& instance) {
  std::vector<int> order(static_cast<std::size_t>(instance.discount_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.discounts[static_cast<std::size_t>(a)] < instance.discounts[static_cast<std::size_t>(b)];
  });
  for (int k : order) {
    if (win_rate_vs_opt_out(instance.option_id(slot, k), customer, scen, instance) > 0.5) return k;
  }
  return order.back();
}

std::vector<int> assign_discounts(int customer, std::span<const int> offered_slots, const ScenarioSet& scen,
                                  const Instance& instance) {
  if (offered_slots.empty()) throw ModelError("no slots to price");
  std::vector<int> options;
  for (int s : offered_slots) options.push_back(instance.option_id(s, preferred_discount(customer, s, scen, instance)));
  return options;
}

Assortment rfts_assortment(const Instance& instance, const ScenarioSet& scen, int zeta, std::uint64_t seed) {
  Assortment a(instance.customer_count(), instance.option_count());
  for (const auto& cluster : choose_clusters(instance, zeta, seed)) {
    for (const auto& piece : split_schedulable(nearest_neighbor_route(cluster, instance), instance)) {
      const auto windows = forward_backward_windows(piece, instance);
      for (std::size_t k = 0; k < piece.size(); ++k) {
        const int n = piece[k];
        for (int o : assign_discounts(n, windows.offered_slots(k), scen, instance)) a.set(n, o, true);
      }
    }
  }

  // Pad customers below the minimum with their most popular missing slots.
  for (int n = 0; n < instance.customer_count(); ++n) {
    while (a.offered_count(n) < instance.min_options) {
      int best_option = -1;
      double best_rate = -1.0;
      for (int s = 0; s < instance.slot_count(); ++s) {
        if (offered_discount(a, instance, n, s) >= 0) continue;
        const int o = instance.option_id(s, preferred_discount(n, s, scen, instance));
        const double rate = win_rate_vs_opt_out(o, n, scen, instance);
        if (rate > best_rate) {
          best_rate = rate;
          best_option = o;
        }
      }
      if (best_option < 0) break;
      a.set(n, best_option, true);
    }
  }
  validate_assortment(a, instance);
  return a;
}

Solution rfts(const Evaluator& evaluator, int zeta, std::uint64_t seed) {
  return evaluator(rfts_assortment(evaluator.instance(), evaluator.scenarios(), zeta, seed));
}

}  // namespace slotwise
