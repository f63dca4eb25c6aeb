#pragma once

#include <span>
#include <vector>

#include "slotwise/routing.hpp"

namespace slotwise::detail {

/// Requests addressed by position, with matrix lookups by position.
class RequestView {
 public:
  RequestView(std::span<const ServiceRequest> requests, const Instance& instance);

  int size() const { return static_cast<int>(requests_.size()); }
  const ServiceRequest& operator[](int k) const { return requests_[static_cast<std::size_t>(k)]; }
  const Instance& instance() const { return instance_; }
  std::span<const ServiceRequest> requests() const { return requests_; }

  static constexpr int kDepot = -1;
  int node(int k) const { return k == kDepot ? 0 : requests_[static_cast<std::size_t>(k)].customer + 1; }
  double time(int a, int b) const {
    return instance_.travel_time(static_cast<std::size_t>(node(a)), static_cast<std::size_t>(node(b)));
  }
  double cost(int a, int b) const {
    return instance_.travel_cost(static_cast<std::size_t>(node(a)), static_cast<std::size_t>(node(b)));
  }
  /// Position of the request for `customer`, or -1.
  int position(int customer) const;

  /// Service start at k when the vehicle leaves `from` at `departure`;
  /// negative when the window is missed.
  double start_at(int from, double departure, int k) const;

  bool feasible(std::span<const int> seq) const;
  double travel(std::span<const int> seq) const;
  double load(std::span<const int> seq) const;

  std::vector<int> customers(std::span<const int> seq) const;

 private:
  std::span<const ServiceRequest> requests_;
  const Instance& instance_;
  std::vector<int> position_;
};

/// Builds the plan for routes given as request positions.
RoutingPlan plan_from_positions(const RequestView& view, const std::vector<std::vector<int>>& routes);

/// Same, for routes of customer indices.
RoutingPlan plan_from_customers(const RequestView& view, std::vector<std::vector<int>> routes);

/// Throws InfeasibleRouting if some request cannot be served by a dedicated vehicle.
void require_singletons_feasible(const RequestView& view);

}  // namespace slotwise::detail
