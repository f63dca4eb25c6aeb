#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slotwise/evaluate.hpp"
#include "slotwise/model.hpp"

namespace slotwise {

/// Earliest and latest reachable slot of every stop on a route.
struct SlotWindowAssignment {
  std::vector<int> customers;      // route order
  std::vector<int> earliest_slot;  // forward pass from time 0
  std::vector<int> latest_slot;    // backward pass from the end of the horizon

  /// Contiguous slot range offered to the k-th stop.
  std::vector<int> offered_slots(std::size_t k) const;
};

/// Clusters customers for k in [fleet - zeta, fleet] (clamped to the number
/// of customers), keeps the k whose nearest-neighbour tours travel least,
/// then repairs clusters that exceed the vehicle capacity.
std::vector<std::vector<int>> choose_clusters(const Instance& instance, int zeta, std::uint64_t seed);

/// Removes the fewest customers from over-capacity clusters (largest demands
/// first), moves them into clusters with room or opens new clusters.
void repair_cluster_capacity(std::vector<std::vector<int>>& clusters, const Instance& instance);

/// Nearest-neighbour tour from the depot over travel cost, ignoring time windows.
std::vector<int> nearest_neighbor_route(std::span<const int> customers, const Instance& instance);

/// Throws ModelError when the route cannot be run inside the horizon.
SlotWindowAssignment forward_backward_windows(std::span<const int> route, const Instance& instance);

/// Lowest discount whose option beats the opt-out in more than half of the
/// scenarios; the highest discount when none does.
int preferred_discount(int customer, int slot, const ScenarioSet& scen, const Instance& instance);

/// One option id per offered slot, priced with preferred_discount.
std::vector<int> assign_discounts(int customer, std::span<const int> offered_slots, const ScenarioSet& scen,
                                  const Instance& instance);

/// Route-first time-second construction; the assortment only.
Assortment rfts_assortment(const Instance& instance, const ScenarioSet& scen, int zeta, std::uint64_t seed);

/// Route-first time-second construction, evaluated with `evaluator`.
Solution rfts(const Evaluator& evaluator, int zeta, std::uint64_t seed);

}  // namespace slotwise
