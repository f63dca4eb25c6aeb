#include <algorithm>
#include <array>

#include "routing_detail.hpp"
#include "slotwise/rng.hpp"
#include "slotwise/routing.hpp"

namespace slotwise {
namespace {

constexpr double kImprovement = 1e-9;

enum Move { Relocate = 0, TwoOpt = 1, Swap = 2 };

struct RouteState {
  std::vector<std::vector<int>> routes;  // request positions
  std::vector<double> travel;
  std::vector<double> load;
};

class Improver {
 public:
  Improver(const detail::RequestView& view, RouteState& state) : view_(view), s_(state) {}

  bool apply(Move move) {
    switch (move) {
      case Relocate: return relocate();
      case TwoOpt: return two_opt();
      case Swap: return swap();
    }
    return false;
  }

 private:
  double vehicle_cost() const { return view_.instance().vehicle_cost; }
  double capacity() const { return view_.instance().capacity; }

  // One-point move: take a customer out of its route and insert it anywhere else.
  bool relocate() {
    double best = -kImprovement;
    std::size_t best_from = 0, best_to = 0, best_pos = 0, best_idx = 0;
    bool found = false;
    std::vector<int> reduced, grown;
    for (std::size_t a = 0; a < s_.routes.size(); ++a) {
      const auto& A = s_.routes[a];
      for (std::size_t idx = 0; idx < A.size(); ++idx) {
        const int u = A[idx];
        reduced = A;
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(idx));
        const bool emptied = reduced.empty();
        const double reduced_cost = view_.travel(reduced);
        if (!emptied && !view_.feasible(reduced)) continue;
        for (std::size_t b = 0; b < s_.routes.size(); ++b) {
          const auto& base = b == a ? reduced : s_.routes[b];
          if (b != a && s_.load[b] + view_[u].demand > capacity()) continue;
          if (b == a && emptied) continue;
          for (std::size_t pos = 0; pos <= base.size(); ++pos) {
            if (b == a && pos == idx) continue;
            grown = base;
            grown.insert(grown.begin() + static_cast<std::ptrdiff_t>(pos), u);
            double delta;
            if (b == a) {
              delta = view_.travel(grown) - s_.travel[a];
            } else {
              delta = reduced_cost + view_.travel(grown) - s_.travel[a] - s_.travel[b] -
                      (emptied ? vehicle_cost() : 0.0);
            }
            if (delta < best && view_.feasible(grown)) {
              best = delta;
              best_from = a;
              best_to = b;
              best_pos = pos;
              best_idx = idx;
              found = true;
            }
          }
        }
      }
    }
    if (!found) return false;
    const int u = s_.routes[best_from][best_idx];
    s_.routes[best_from].erase(s_.routes[best_from].begin() + static_cast<std::ptrdiff_t>(best_idx));
    auto& target = s_.routes[best_to];
    target.insert(target.begin() + static_cast<std::ptrdiff_t>(best_pos), u);
    s_.load[best_from] -= view_[u].demand;
    s_.load[best_to] += view_[u].demand;
    refresh(best_from);
    refresh(best_to);
    drop_empty();
    return true;
  }

  // Intra-route 2-opt: reverse a segment.
  bool two_opt() {
    double best = -kImprovement;
    std::size_t best_r = 0, best_i = 0, best_j = 0;
    bool found = false;
    std::vector<int> cand;
    for (std::size_t r = 0; r < s_.routes.size(); ++r) {
      const auto& A = s_.routes[r];
      for (std::size_t i = 0; i + 1 < A.size(); ++i) {
        for (std::size_t j = i + 1; j < A.size(); ++j) {
          cand = A;
          std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(i), cand.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          const double delta = view_.travel(cand) - s_.travel[r];
          if (delta < best && view_.feasible(cand)) {
            best = delta;
            best_r = r;
            best_i = i;
            best_j = j;
            found = true;
          }
        }
      }
    }
    if (!found) return false;
    auto& A = s_.routes[best_r];
    std::reverse(A.begin() + static_cast<std::ptrdiff_t>(best_i), A.begin() + static_cast<std::ptrdiff_t>(best_j) + 1);
    refresh(best_r);
    return true;
  }

  // Two-point move: exchange two customers (same or different routes).
  bool swap() {
    double best = -kImprovement;
    std::size_t ba = 0, bi = 0, bb = 0, bj = 0;
    bool found = false;
    std::vector<int> ca, cb;
    for (std::size_t a = 0; a < s_.routes.size(); ++a) {
      for (std::size_t i = 0; i < s_.routes[a].size(); ++i) {
        for (std::size_t b = a; b < s_.routes.size(); ++b) {
          for (std::size_t j = (b == a ? i + 1 : 0); j < s_.routes[b].size(); ++j) {
            const int u = s_.routes[a][i];
            const int v = s_.routes[b][j];
            double delta;
            bool ok;
            if (a == b) {
              ca = s_.routes[a];
              std::swap(ca[i], ca[j]);
              delta = view_.travel(ca) - s_.travel[a];
              ok = delta < best && view_.feasible(ca);
            } else {
              const double la = s_.load[a] - view_[u].demand + view_[v].demand;
              const double lb = s_.load[b] - view_[v].demand + view_[u].demand;
              if (la > capacity() || lb > capacity()) continue;
              ca = s_.routes[a];
              cb = s_.routes[b];
              ca[i] = v;
              cb[j] = u;
              delta = view_.travel(ca) + view_.travel(cb) - s_.travel[a] - s_.travel[b];
              ok = delta < best && view_.feasible(ca) && view_.feasible(cb);
            }
            if (ok) {
              best = delta;
              ba = a;
              bi = i;
              bb = b;
              bj = j;
              found = true;
            }
          }
        }
      }
    }
    if (!found) return false;
    const int u = s_.routes[ba][bi];
    const int v = s_.routes[bb][bj];
    s_.routes[ba][bi] = v;
    s_.routes[bb][bj] = u;
    if (ba != bb) {
      s_.load[ba] += view_[v].demand - view_[u].demand;
      s_.load[bb] += view_[u].demand - view_[v].demand;
    }
    refresh(ba);
    refresh(bb);
    return true;
  }

  void refresh(std::size_t r) { s_.travel[r] = view_.travel(s_.routes[r]); }

  void drop_empty() {
    for (std::size_t r = s_.routes.size(); r-- > 0;) {
      if (!s_.routes[r].empty()) continue;
      s_.routes.erase(s_.routes.begin() + static_cast<std::ptrdiff_t>(r));
      s_.travel.erase(s_.travel.begin() + static_cast<std::ptrdiff_t>(r));
      s_.load.erase(s_.load.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  const detail::RequestView& view_;
  RouteState& s_;
};

}  // namespace

RoutingPlan icw_solve(std::span<const ServiceRequest> requests, const Instance& instance, int ls_iterations,
                      std::uint64_t seed) {
  RoutingPlan start = cw_solve(requests, instance);
  if (ls_iterations <= 0 || start.routes.empty()) return start;

  const detail::RequestView view(requests, instance);
  RouteState state;
  for (const auto& route : start.routes) {
    std::vector<int> seq;
    for (int c : route.customers) seq.push_back(view.position(c));
    state.travel.push_back(view.travel(seq));
    state.load.push_back(view.load(seq));
    state.routes.push_back(std::move(seq));
  }

  Rng rng(derive_key(seed, {0x696377ULL}));
  std::array<double, 3> weights{1.0, 1.0, 1.0};
  unsigned failed = 0;  // bitmask of move types without an improving move since the last change
  Improver improver(view, state);
  for (int it = 0; it < ls_iterations && failed != 0b111u; ++it) {
    const double total = weights[0] + weights[1] + weights[2];
    double pick = rng.uniform01() * total;
    int move = 0;
    while (move < 2 && pick >= weights[static_cast<std::size_t>(move)]) {
      pick -= weights[static_cast<std::size_t>(move)];
      ++move;
    }
    if (improver.apply(static_cast<Move>(move))) {
      weights[static_cast<std::size_t>(move)] += 1.0;
      failed = 0;
    } else {
      failed |= 1u << move;
    }
  }
  RoutingPlan plan = detail::plan_from_positions(view, state.routes);
  // Only strict improvements were applied, but guard against rounding.
  return plan.total_cost <= start.total_cost ? plan : start;
}

}  // namespace slotwise
