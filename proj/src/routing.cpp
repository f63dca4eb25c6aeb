#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "routing_detail.hpp"
#include "slotwise/routing.hpp"

namespace slotwise {

namespace detail {

RequestView::RequestView(std::span<const ServiceRequest> requests, const Instance& instance)
    : requests_(requests), instance_(instance), position_(static_cast<std::size_t>(instance.customer_count()), -1) {
  for (int k = 0; k < size(); ++k) {
    const int c = requests_[static_cast<std::size_t>(k)].customer;
    if (c < 0 || c >= instance.customer_count()) throw std::out_of_range("request for unknown customer");
    if (position_[static_cast<std::size_t>(c)] != -1) throw std::invalid_argument("duplicate request for a customer");
    position_[static_cast<std::size_t>(c)] = k;
  }
}

int RequestView::position(int customer) const {
  if (customer < 0 || customer >= static_cast<int>(position_.size())) return -1;
  return position_[static_cast<std::size_t>(customer)];
}

double RequestView::start_at(int from, double departure, int k) const {
  const auto& q = (*this)[k];
  const double start = std::max(departure + time(from, k), q.lower);
  return start <= q.upper ? start : -1.0;
}

bool RequestView::feasible(std::span<const int> seq) const {
  double departure = 0.0;
  int prev = kDepot;
  for (int k : seq) {
    const double start = start_at(prev, departure, k);
    if (start < 0.0) return false;
    departure = start + (*this)[k].service_time;
    prev = k;
  }
  return true;
}

double RequestView::travel(std::span<const int> seq) const {
  if (seq.empty()) return 0.0;
  double total = 0.0;
  int prev = kDepot;
  for (int k : seq) {
    total += cost(prev, k);
    prev = k;
  }
  return total + cost(prev, kDepot);
}

double RequestView::load(std::span<const int> seq) const {
  double total = 0.0;
  for (int k : seq) total += (*this)[k].demand;
  return total;
}

std::vector<int> RequestView::customers(std::span<const int> seq) const {
  std::vector<int> out;
  out.reserve(seq.size());
  for (int k : seq) out.push_back((*this)[k].customer);
  return out;
}

RoutingPlan plan_from_positions(const RequestView& view, const std::vector<std::vector<int>>& routes) {
  std::vector<std::vector<int>> by_customer;
  by_customer.reserve(routes.size());
  for (const auto& r : routes)
    if (!r.empty()) by_customer.push_back(view.customers(r));
  return plan_from_customers(view, std::move(by_customer));
}

RoutingPlan plan_from_customers(const RequestView& view, std::vector<std::vector<int>> routes) {
  const Instance& instance = view.instance();
  RoutingPlan plan;
  plan.routes.reserve(routes.size());
  for (auto& seq : routes) {
    if (seq.empty()) continue;
    Route route;
    route.arrivals.reserve(seq.size());
    double departure = 0.0;
    int prev = RequestView::kDepot;
    for (int customer : seq) {
      const int k = view.position(customer);
      if (k < 0) throw std::invalid_argument("customer " + std::to_string(customer) + " has no request");
      const double start = view.start_at(prev, departure, k);
      if (start < 0.0) throw InfeasibleRouting("route violates a time window");
      route.arrivals.push_back(start);
      route.travel_cost += view.cost(prev, k);
      route.load += view[k].demand;
      departure = start + view[k].service_time;
      prev = k;
    }
    route.travel_cost += view.cost(prev, RequestView::kDepot);
    route.customers = std::move(seq);
    plan.travel_cost += route.travel_cost;
    plan.routes.push_back(std::move(route));
  }
  plan.vehicles_used = static_cast<int>(plan.routes.size());
  plan.total_cost = plan.travel_cost + plan.vehicles_used * instance.vehicle_cost;
  plan.within_fleet = plan.vehicles_used <= instance.fleet_size;
  return plan;
}

void require_singletons_feasible(const RequestView& view) {
  for (int k = 0; k < view.size(); ++k) {
    const int seq[1] = {k};
    if (!view.feasible(seq)) {
      throw InfeasibleRouting("customer " + std::to_string(view[k].customer) +
                              " cannot be reached within its window");
    }
    if (view[k].demand > view.instance().capacity) {
      throw InfeasibleRouting("customer " + std::to_string(view[k].customer) + " exceeds vehicle capacity");
    }
  }
}

}  // namespace detail

ServiceRequest make_request(const Instance& instance, int customer, int slot) {
  const auto& c = instance.customers[static_cast<std::size_t>(customer)];
  const auto& s = instance.slots[static_cast<std::size_t>(slot)];
  return ServiceRequest{customer, s.lower, s.upper, c.demand, c.service_time};
}

std::optional<double> RoutingPlan::arrival(int customer) const {
  for (const auto& r : routes)
    for (std::size_t k = 0; k < r.customers.size(); ++k)
      if (r.customers[k] == customer) return r.arrivals[k];
  return std::nullopt;
}

std::optional<std::vector<double>> schedule_route(std::span<const int> sequence,
                                                  std::span<const ServiceRequest> requests,
                                                  const Instance& instance) {
  const detail::RequestView view(requests, instance);
  std::vector<double> arrivals;
  arrivals.reserve(sequence.size());
  double departure = 0.0;
  int prev = detail::RequestView::kDepot;
  for (int customer : sequence) {
    const int k = view.position(customer);
    if (k < 0) throw std::invalid_argument("customer " + std::to_string(customer) + " has no request");
    const double start = view.start_at(prev, departure, k);
    if (start < 0.0) return std::nullopt;
    arrivals.push_back(start);
    departure = start + view[k].service_time;
    prev = k;
  }
  return arrivals;
}

RoutingPlan make_plan(std::vector<std::vector<int>> routes, std::span<const ServiceRequest> requests,
                      const Instance& instance) {
  const detail::RequestView view(requests, instance);
  return detail::plan_from_customers(view, std::move(routes));
}

std::string plan_violation(const RoutingPlan& plan, std::span<const ServiceRequest> requests,
                           const Instance& instance, bool check_fleet) {
  constexpr double eps = 1e-7;
  std::ostringstream msg;
  std::vector<int> seen(static_cast<std::size_t>(instance.customer_count()), 0);
  std::vector<const ServiceRequest*> req(static_cast<std::size_t>(instance.customer_count()), nullptr);
  for (const auto& q : requests) req[static_cast<std::size_t>(q.customer)] = &q;

  double travel_total = 0.0;
  int used = 0;
  for (std::size_t r = 0; r < plan.routes.size(); ++r) {
    const auto& route = plan.routes[r];
    if (route.customers.empty()) continue;
    ++used;
    if (route.arrivals.size() != route.customers.size()) return "route arrivals do not match its stops";
    double load = 0.0;
    double travel = 0.0;
    std::size_t prev_node = 0;
    double prev_departure = 0.0;
    for (std::size_t k = 0; k < route.customers.size(); ++k) {
      const int c = route.customers[k];
      if (c < 0 || c >= instance.customer_count() || !req[static_cast<std::size_t>(c)]) {
        msg << "route " << r << " visits customer " << c << " without a request";
        return msg.str();
      }
      const auto& q = *req[static_cast<std::size_t>(c)];
      ++seen[static_cast<std::size_t>(c)];
      const std::size_t node = static_cast<std::size_t>(c) + 1;
      const double tau = route.arrivals[k];
      if (tau < q.lower - eps || tau > q.upper + eps) {
        msg << "customer " << c << " served at " << tau << " outside [" << q.lower << ", " << q.upper << "]";
        return msg.str();
      }
      if (prev_departure + instance.travel_time(prev_node, node) > tau + eps) {
        msg << "customer " << c << " served before the vehicle can arrive";
        return msg.str();
      }
      travel += instance.travel_cost(prev_node, node);
      load += q.demand;
      prev_departure = tau + q.service_time;
      prev_node = node;
    }
    travel += instance.travel_cost(prev_node, 0);
    if (load > instance.capacity + eps) {
      msg << "route " << r << " carries " << load << " > capacity " << instance.capacity;
      return msg.str();
    }
    if (std::abs(travel - route.travel_cost) > eps * std::max(1.0, travel)) {
      msg << "route " << r << " travel cost " << route.travel_cost << " != " << travel;
      return msg.str();
    }
    travel_total += travel;
  }
  for (const auto& q : requests) {
    const int times = seen[static_cast<std::size_t>(q.customer)];
    if (times != 1) {
      msg << "customer " << q.customer << " is visited " << times << " times";
      return msg.str();
    }
  }
  if (used != plan.vehicles_used) return "vehicles_used does not match the number of routes";
  if (std::abs(travel_total - plan.travel_cost) > eps * std::max(1.0, travel_total)) return "plan travel cost mismatch";
  const double total = plan.travel_cost + plan.vehicles_used * instance.vehicle_cost;
  if (std::abs(total - plan.total_cost) > eps * std::max(1.0, total)) return "plan total cost mismatch";
  if (check_fleet && plan.vehicles_used > instance.fleet_size) {
    msg << "plan uses " << plan.vehicles_used << " vehicles, fleet has " << instance.fleet_size;
    return msg.str();
  }
  return {};
}

RoutingPlan cw_solve(std::span<const ServiceRequest> requests, const Instance& instance) {
  const detail::RequestView view(requests, instance);
  detail::require_singletons_feasible(view);
  const int m = view.size();

  struct Saving {
    double value;
    int a;
    int b;
  };
  std::vector<Saving> savings;
  savings.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(std::max(m - 1, 0)) / 2);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const double s = view.cost(detail::RequestView::kDepot, a) + view.cost(detail::RequestView::kDepot, b) -
                       view.cost(a, b);
      // A merge also frees a vehicle, so it pays off whenever s + c^v > 0.
      if (s + instance.vehicle_cost > 0.0) savings.push_back({s, a, b});
    }
  }
  std::stable_sort(savings.begin(), savings.end(), [](const Saving& x, const Saving& y) {
    if (x.value != y.value) return x.value > y.value;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  std::vector<std::vector<int>> routes(static_cast<std::size_t>(m));
  std::vector<int> owner(static_cast<std::size_t>(m));
  std::vector<double> loads(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    routes[static_cast<std::size_t>(k)] = {k};
    owner[static_cast<std::size_t>(k)] = k;
    loads[static_cast<std::size_t>(k)] = view[k].demand;
  }

  std::vector<int> candidate;
  for (const auto& s : savings) {
    const int ra = owner[static_cast<std::size_t>(s.a)];
    const int rb = owner[static_cast<std::size_t>(s.b)];
    if (ra == rb) continue;
    auto& A = routes[static_cast<std::size_t>(ra)];
    auto& B = routes[static_cast<std::size_t>(rb)];
    const bool a_end = A.back() == s.a || A.front() == s.a;
    const bool b_end = B.back() == s.b || B.front() == s.b;
    if (!a_end || !b_end) continue;
    if (loads[static_cast<std::size_t>(ra)] + loads[static_cast<std::size_t>(rb)] > instance.capacity) continue;

    // Orient A so that a is last and B so that b is first, then try A+B and its reverse.
    std::vector<int> left = A.back() == s.a ? A : std::vector<int>(A.rbegin(), A.rend());
    std::vector<int> right = B.front() == s.b ? B : std::vector<int>(B.rbegin(), B.rend());
    candidate.assign(left.begin(), left.end());
    candidate.insert(candidate.end(), right.begin(), right.end());
    if (!view.feasible(candidate)) {
      std::reverse(candidate.begin(), candidate.end());
      if (!view.feasible(candidate)) continue;
    }
    A = candidate;
    B.clear();
    loads[static_cast<std::size_t>(ra)] += loads[static_cast<std::size_t>(rb)];
    loads[static_cast<std::size_t>(rb)] = 0.0;
    for (int k : A) owner[static_cast<std::size_t>(k)] = ra;
  }
  return detail::plan_from_positions(view, routes);
}

std::string_view to_string(RouterKind kind) {
  switch (kind) {
    case RouterKind::CW: return "cw";
    case RouterKind::ICW: return "icw";
    case RouterKind::CFRS: return "cfrs";
    case RouterKind::Exact: return "exact";
  }
  return "cw";
}

RouterKind router_from_string(std::string_view name) {
  if (name == "cw") return RouterKind::CW;
  if (name == "icw") return RouterKind::ICW;
  if (name == "cfrs") return RouterKind::CFRS;
  if (name == "exact") return RouterKind::Exact;
  throw std::invalid_argument("unknown router '" + std::string(name) + "'");
}

RoutingPlan solve_routing(std::span<const ServiceRequest> requests, const Instance& instance,
                          const RouterConfig& config, std::uint64_t seed) {
  switch (config.kind) {
    case RouterKind::CW: return cw_solve(requests, instance);
    case RouterKind::ICW: return icw_solve(requests, instance, config.ls_iterations, seed);
    case RouterKind::CFRS: return cfrs_solve(requests, instance, seed);
    case RouterKind::Exact: return exact_cvrptw(requests, instance, config.exact_cap);
  }
  return cw_solve(requests, instance);
}

}  // namespace slotwise
