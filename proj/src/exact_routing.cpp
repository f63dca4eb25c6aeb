#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "routing_detail.hpp"
#include "slotwise/routing.hpp"

namespace slotwise {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Label {
  double cost;       // travel cost from the depot up to the last stop
  double departure;  // time the vehicle leaves the last stop
  int prev_last;     // last stop before this one, -1 when it is the first
  int prev_label;    // index of the parent label in (mask without last, prev_last)
  bool alive;
};

// Pareto labels over (cost, departure) per (subset, last stop).
class TourTable {
 public:
  explicit TourTable(const detail::RequestView& view) : view_(view), m_(view.size()) {
    const std::size_t subsets = std::size_t{1} << m_;
    labels_.resize(subsets * static_cast<std::size_t>(m_));
    load_.assign(subsets, 0.0);
    for (std::size_t s = 1; s < subsets; ++s) {
      const int low = std::countr_zero(s);
      load_[s] = load_[s & (s - 1)] + view[low].demand;
    }
    build();
  }

  /// Cheapest closed tour over exactly `mask`, or +inf.
  double tour_cost(std::size_t mask) const { return best_[mask]; }

  std::vector<int> tour(std::size_t mask) const {
    std::vector<int> seq;
    int last = best_last_[mask];
    int label = best_label_[mask];
    while (last >= 0) {
      seq.push_back(last);
      const Label& l = at(mask, last)[static_cast<std::size_t>(label)];
      mask &= ~(std::size_t{1} << last);
      last = l.prev_last;
      label = l.prev_label;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  }

 private:
  std::vector<Label>& at(std::size_t mask, int last) {
    return labels_[mask * static_cast<std::size_t>(m_) + static_cast<std::size_t>(last)];
  }
  const std::vector<Label>& at(std::size_t mask, int last) const {
    return labels_[mask * static_cast<std::size_t>(m_) + static_cast<std::size_t>(last)];
  }

  void push(std::size_t mask, int last, Label cand) {
    auto& list = at(mask, last);
    for (const auto& l : list) {
      if (l.alive && l.cost <= cand.cost && l.departure <= cand.departure) return;
    }
    for (auto& l : list) {
      if (l.alive && cand.cost <= l.cost && cand.departure <= l.departure) l.alive = false;
    }
    list.push_back(cand);
  }

  void build() {
    const std::size_t subsets = std::size_t{1} << m_;
    const double capacity = view_.instance().capacity;
    for (int k = 0; k < m_; ++k) {
      const double start = view_.start_at(detail::RequestView::kDepot, 0.0, k);
      if (start < 0.0) continue;
      push(std::size_t{1} << k, k,
           {view_.cost(detail::RequestView::kDepot, k), start + view_[k].service_time, -1, -1, true});
    }
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      for (int last = 0; last < m_; ++last) {
        if (!(mask & (std::size_t{1} << last))) continue;
        const auto& list = at(mask, last);
        for (std::size_t li = 0; li < list.size(); ++li) {
          const Label l = list[li];
          if (!l.alive) continue;
          for (int next = 0; next < m_; ++next) {
            const std::size_t bit = std::size_t{1} << next;
            if (mask & bit) continue;
            if (load_[mask | bit] > capacity) continue;
            const double start = view_.start_at(last, l.departure, next);
            if (start < 0.0) continue;
            push(mask | bit, next,
                 {l.cost + view_.cost(last, next), start + view_[next].service_time, last, static_cast<int>(li), true});
          }
        }
      }
    }
    best_.assign(subsets, kInf);
    best_last_.assign(subsets, -1);
    best_label_.assign(subsets, -1);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      for (int last = 0; last < m_; ++last) {
        const auto& list = at(mask, last);
        for (std::size_t li = 0; li < list.size(); ++li) {
          if (!list[li].alive) continue;
          const double c = list[li].cost + view_.cost(last, detail::RequestView::kDepot);
          if (c < best_[mask]) {
            best_[mask] = c;
            best_last_[mask] = last;
            best_label_[mask] = static_cast<int>(li);
          }
        }
      }
    }
  }

  const detail::RequestView& view_;
  int m_;
  std::vector<std::vector<Label>> labels_;
  std::vector<double> load_;
  std::vector<double> best_;
  std::vector<int> best_last_;
  std::vector<int> best_label_;
};

}  // namespace

RoutingPlan exact_cvrptw(std::span<const ServiceRequest> requests, const Instance& instance, int cap) {
  if (static_cast<int>(requests.size()) > cap) {
    throw std::length_error("exact routing is capped at " + std::to_string(cap) + " requests, got " +
                            std::to_string(requests.size()));
  }
  const detail::RequestView view(requests, instance);
  detail::require_singletons_feasible(view);
  const int m = view.size();
  if (m == 0) return detail::plan_from_positions(view, {});

  const TourTable tours(view);
  const std::size_t full = (std::size_t{1} << m) - 1;
  const int fleet = std::min(instance.fleet_size, m);

  // best[v][S]: cheapest cover of S with exactly v routes; choice[v][S] is the route holding S's lowest request.
  std::vector<std::vector<double>> best(static_cast<std::size_t>(fleet) + 1,
                                        std::vector<double>(full + 1, kInf));
  std::vector<std::vector<std::size_t>> choice(static_cast<std::size_t>(fleet) + 1,
                                               std::vector<std::size_t>(full + 1, 0));
  best[0][0] = 0.0;
  for (int v = 1; v <= fleet; ++v) {
    auto& cur = best[static_cast<std::size_t>(v)];
    const auto& prev = best[static_cast<std::size_t>(v) - 1];
    for (std::size_t s = 1; s <= full; ++s) {
      const std::size_t low = s & (~s + 1);
      const std::size_t rest = s ^ low;
      // Enumerate sub ⊆ rest; the route is low | sub.
      for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
        const std::size_t route = low | sub;
        const double t = tours.tour_cost(route);
        if (std::isfinite(t)) {
          const double p = prev[s ^ route];
          if (std::isfinite(p)) {
            const double c = p + t + instance.vehicle_cost;
            if (c < cur[s]) {
              cur[s] = c;
              choice[static_cast<std::size_t>(v)][s] = route;
            }
          }
        }
        if (sub == 0) break;
      }
    }
  }

  int best_v = -1;
  double best_cost = kInf;
  for (int v = 1; v <= fleet; ++v) {
    if (best[static_cast<std::size_t>(v)][full] < best_cost) {
      best_cost = best[static_cast<std::size_t>(v)][full];
      best_v = v;
    }
  }
  if (best_v < 0) throw InfeasibleRouting("no feasible routing plan within the fleet");

  std::vector<std::vector<int>> routes;
  std::size_t s = full;
  for (int v = best_v; v > 0; --v) {
    const std::size_t route = choice[static_cast<std::size_t>(v)][s];
    routes.push_back(tours.tour(route));
    s ^= route;
  }
  return detail::plan_from_positions(view, routes);
}

}  // namespace slotwise
