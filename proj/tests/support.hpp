#pragma once

#include <utility>
#include <vector>

#include "slotwise/evaluate.hpp"
#include "slotwise/model.hpp"

namespace slotwise::fixtures {

/// Small instance from explicit customer coordinates around a depot at (0, 0).
inline Instance small_instance(const std::vector<std::pair<double, double>>& xy, int slots = 3, double horizon = 1236.0,
                               std::vector<double> discounts = {0.0, 0.12}, int min_options = 2, int fleet = 5,
                               double capacity = 200.0, double service = 0.0, double demand = 10.0,
                               double vehicle_cost = 50.0) {
  Instance inst;
  inst.name = "test";
  inst.depot = {0.0, 0.0, horizon};
  int id = 1;
  for (auto [x, y] : xy) inst.customers.push_back({id++, x, y, demand, service});
  inst.fleet_size = fleet;
  inst.capacity = capacity;
  inst.vehicle_cost = vehicle_cost;
  inst.slots = partition_horizon(horizon, slots);
  inst.discounts = std::move(discounts);
  inst.min_options = min_options;
  inst.compute_euclidean_matrices();
  inst.finalize();
  return inst;
}

/// Bitwise comparison of everything evaluate produces.
inline bool same_solution(const Solution& a, const Solution& b) {
  if (!(a.assortment == b.assortment) || !(a.choices == b.choices)) return false;
  if (a.profit != b.profit || a.scenario_profit != b.scenario_profit || a.feasible != b.feasible) return false;
  if (a.plans.size() != b.plans.size()) return false;
  for (std::size_t r = 0; r < a.plans.size(); ++r) {
    const auto& p = a.plans[r];
    const auto& q = b.plans[r];
    if (p.total_cost != q.total_cost || p.routes.size() != q.routes.size()) return false;
    for (std::size_t k = 0; k < p.routes.size(); ++k) {
      if (p.routes[k].customers != q.routes[k].customers || p.routes[k].arrivals != q.routes[k].arrivals) return false;
    }
  }
  return true;
}

}  // namespace slotwise::fixtures
