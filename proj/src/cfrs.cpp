#include <algorithm>
#include <cmath>
#include <limits>

#include "routing_detail.hpp"
#include "slotwise/kmeans.hpp"
#include "slotwise/routing.hpp"

namespace slotwise {

RoutingPlan cfrs_solve(std::span<const ServiceRequest> requests, const Instance& instance, std::uint64_t seed,
                       int clusters) {
  const detail::RequestView view(requests, instance);
  detail::require_singletons_feasible(view);
  const int m = view.size();
  if (m == 0) return detail::plan_from_positions(view, {});

  std::vector<int> all(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) all[static_cast<std::size_t>(k)] = k;
  int k_clusters = clusters;
  if (k_clusters <= 0) k_clusters = static_cast<int>(std::ceil(view.load(all) / instance.capacity - 1e-12));
  k_clusters = std::clamp(k_clusters, 1, m);

  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const auto& c = instance.customers[static_cast<std::size_t>(view[k].customer)];
    points.push_back({c.x, c.y});
  }
  const Clustering clustering = kmeans(points, k_clusters, seed);

  std::vector<std::vector<int>> routes;
  std::vector<int> leftovers;
  for (const auto& members : clustering.members()) {
    std::vector<int> remaining = members;
    std::vector<int> route;
    double load = 0.0;
    double departure = 0.0;
    int prev = detail::RequestView::kDepot;
    while (!remaining.empty()) {
      // Nearest in time: travel plus any wait for the window to open.
      int pick = -1;
      double pick_key = std::numeric_limits<double>::infinity();
      double pick_start = 0.0;
      for (int k : remaining) {
        if (load + view[k].demand > instance.capacity) continue;
        const double start = view.start_at(prev, departure, k);
        if (start < 0.0) continue;
        const double key = view.cost(prev, k) + (start - departure - view.time(prev, k));
        if (key < pick_key) {
          pick_key = key;
          pick = k;
          pick_start = start;
        }
      }
      if (pick < 0) break;
      route.push_back(pick);
      load += view[pick].demand;
      departure = pick_start + view[pick].service_time;
      prev = pick;
      remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
    }
    if (!route.empty()) routes.push_back(std::move(route));
    leftovers.insert(leftovers.end(), remaining.begin(), remaining.end());
  }

  std::stable_sort(leftovers.begin(), leftovers.end(), [&](int a, int b) {
    if (view[a].lower != view[b].lower) return view[a].lower < view[b].lower;
    return a < b;
  });
  std::vector<int> candidate;
  for (int k : leftovers) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_route = 0;
    std::size_t best_pos = 0;
    for (std::size_t r = 0; r < routes.size(); ++r) {
      if (view.load(routes[r]) + view[k].demand > instance.capacity) continue;
      const double base = view.travel(routes[r]);
      for (std::size_t pos = 0; pos <= routes[r].size(); ++pos) {
        candidate = routes[r];
        candidate.insert(candidate.begin() + static_cast<std::ptrdiff_t>(pos), k);
        const double delta = view.travel(candidate) - base;
        if (delta < best && view.feasible(candidate)) {
          best = delta;
          best_route = r;
          best_pos = pos;
        }
      }
    }
    if (std::isfinite(best)) {
      auto& r = routes[best_route];
      r.insert(r.begin() + static_cast<std::ptrdiff_t>(best_pos), k);
    } else {
      routes.push_back({k});
    }
  }
  return detail::plan_from_positions(view, routes);
}

}  // namespace slotwise
