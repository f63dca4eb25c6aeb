#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slotwise/model.hpp"

namespace slotwise {

/// A customer that must be visited inside the window of the slot it chose.
struct ServiceRequest {
  int customer = 0;  // index into Instance::customers
  double lower = 0.0;
  double upper = 0.0;
  double demand = 0.0;
  double service_time = 0.0;
};

/// Request for `customer` with the window of `slot`.
ServiceRequest make_request(const Instance& instance, int customer, int slot);

/// Raised when a request cannot be served at all (its window is unreachable
/// from the depot) or no plan fits the fleet.
class InfeasibleRouting : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Route {
  std::vector<int> customers;  // visiting order, customer indices
  std::vector<double> arrivals;  // service start per stop
  double travel_cost = 0.0;
  double load = 0.0;
};

struct RoutingPlan {
  std::vector<Route> routes;
  double travel_cost = 0.0;
  int vehicles_used = 0;
  double total_cost = 0.0;  // travel_cost + vehicles_used * vehicle_cost
  bool within_fleet = true;

  /// Arrival time at `customer`, or nullopt when it is not routed.
  std::optional<double> arrival(int customer) const;
};

/// Forward pass from the depot at time 0. Service starts at
/// max(arrival, window lower); nullopt when some start exceeds its window upper.
/// `sequence` holds customer indices, each of which must have a request.
std::optional<std::vector<double>> schedule_route(std::span<const int> sequence,
                                                  std::span<const ServiceRequest> requests,
                                                  const Instance& instance);

/// Builds a plan (schedules, costs, fleet flag) from routes of customer indices.
/// Throws InfeasibleRouting when a route cannot be scheduled.
RoutingPlan make_plan(std::vector<std::vector<int>> routes, std::span<const ServiceRequest> requests,
                      const Instance& instance);

/// Empty string when the plan is feasible for the requests; otherwise the
/// first violated property (coverage, capacity, windows, continuity, costs,
/// fleet bound).
std::string plan_violation(const RoutingPlan& plan, std::span<const ServiceRequest> requests,
                           const Instance& instance, bool check_fleet = true);

/// Clarke-Wright savings with capacity and time-window checks on every merge.
RoutingPlan cw_solve(std::span<const ServiceRequest> requests, const Instance& instance);

/// CW followed by relocate / intra-route 2-opt / swap moves chosen by roulette wheel.
RoutingPlan icw_solve(std::span<const ServiceRequest> requests, const Instance& instance,
                      int ls_iterations, std::uint64_t seed);

/// k-means clusters, time-aware nearest-neighbour routes per cluster, then
/// reinsertion of excluded customers. clusters = 0 picks ceil(demand / Q).
RoutingPlan cfrs_solve(std::span<const ServiceRequest> requests, const Instance& instance,
                       std::uint64_t seed, int clusters = 0);

/// Certified minimum total cost via label-setting over subsets and a set
/// partition over at most fleet_size routes. Throws std::length_error when
/// more than `cap` requests are given.
RoutingPlan exact_cvrptw(std::span<const ServiceRequest> requests, const Instance& instance,
                         int cap = 9);

enum class RouterKind { CW, ICW, CFRS, Exact };

std::string_view to_string(RouterKind kind);
RouterKind router_from_string(std::string_view name);

struct RouterConfig {
  RouterKind kind = RouterKind::CW;
  int ls_iterations = 100;
  int exact_cap = 9;
};

/// Dispatches to the configured solver. `seed` feeds the randomized solvers.
RoutingPlan solve_routing(std::span<const ServiceRequest> requests, const Instance& instance,
                          const RouterConfig& config, std::uint64_t seed);

}  // namespace slotwise
