#include "slotwise/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slotwise {

std::string_view to_string(Segment s) {
  switch (s) {
    case Segment::Morning: return "morning";
    case Segment::Afternoon: return "afternoon";
    case Segment::Evening: return "evening";
  }
  return "morning";
}

Segment segment_from_string(std::string_view s) {
  if (s == "morning") return Segment::Morning;
  if (s == "afternoon") return Segment::Afternoon;
  if (s == "evening") return Segment::Evening;
  throw ModelError("unknown segment '" + std::string(s) + "'");
}

std::vector<DeliveryOption> build_option_catalog(const std::vector<TimeSlot>& slots,
                                                 const std::vector<double>& discounts,
                                                 double fee, PricingMode pricing) {
  if (slots.empty()) throw ModelError("option catalog needs at least one slot");
  if (discounts.empty()) throw ModelError("option catalog needs at least one discount rate");
  for (std::size_t k = 0; k < discounts.size(); ++k) {
    const double h = discounts[k];
    if (!(h >= 0.0 && h < 1.0)) {
      throw ModelError("discount rate " + std::to_string(h) + " outside [0, 1)");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (discounts[j] == h) throw ModelError("duplicate (slot, discount) pair: discount repeated");
    }
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (slots[j].lower == slots[k].lower && slots[j].upper == slots[k].upper) {
        throw ModelError("duplicate (slot, discount) pair: slot repeated");
      }
    }
  }

  std::vector<DeliveryOption> catalog;
  catalog.reserve(slots.size() * discounts.size() + 1);
  catalog.push_back(DeliveryOption{});
  for (std::size_t s = 0; s < slots.size(); ++s) {
    for (std::size_t k = 0; k < discounts.size(); ++k) {
      DeliveryOption o;
      o.id = static_cast<int>(catalog.size());
      o.opt_out = false;
      o.slot = static_cast<int>(s);
      o.discount = static_cast<int>(k);
      o.discount_rate = discounts[k];
      o.effective_price =
          pricing == PricingMode::Discounted ? (1.0 - discounts[k]) * fee : discounts[k] * fee;
      catalog.push_back(o);
    }
  }
  return catalog;
}

void Instance::compute_euclidean_matrices() {
  const std::size_t n = customers.size() + 1;
  travel_time = SquareMatrix(n);
  travel_cost = SquareMatrix(n);
  auto coord = [&](std::size_t v) {
    return v == 0 ? std::pair{depot.x, depot.y} : std::pair{customers[v - 1].x, customers[v - 1].y};
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto [xa, ya] = coord(a);
      const auto [xb, yb] = coord(b);
      const double d = a == b ? 0.0 : std::hypot(xa - xb, ya - yb);
      travel_time(a, b) = d;
      travel_cost(a, b) = unit_cost * d;
    }
  }
}

void Instance::finalize() {
  const std::size_t nodes = customers.size() + 1;
  if (customers.empty()) throw ModelError("instance has no customers");
  if (travel_time.size() == 0 && travel_cost.size() == 0) compute_euclidean_matrices();
  if (travel_time.size() != nodes) throw ModelError("travel time matrix has the wrong dimension");
  if (travel_cost.size() == 0) {
    travel_cost = SquareMatrix(nodes);
    for (std::size_t a = 0; a < nodes; ++a)
      for (std::size_t b = 0; b < nodes; ++b) travel_cost(a, b) = unit_cost * travel_time(a, b);
  }
  if (travel_cost.size() != nodes) throw ModelError("travel cost matrix has the wrong dimension");
  for (std::size_t a = 0; a < nodes; ++a) {
    if (travel_time(a, a) != 0.0) throw ModelError("travel time diagonal must be zero");
    for (std::size_t b = 0; b < nodes; ++b) {
      const double t = travel_time(a, b);
      if (!(t >= 0.0) || !std::isfinite(t)) throw ModelError("travel times must be finite and >= 0");
      if (std::abs(t - travel_time(b, a)) > 1e-9 * std::max(1.0, t)) {
        throw ModelError("travel time matrix must be symmetric");
      }
      if (std::abs(travel_cost(a, b) - unit_cost * t) > 1e-9 * std::max(1.0, unit_cost * t)) {
        throw ModelError("travel cost must equal unit_cost * travel time");
      }
    }
  }
  if (fleet_size < 1) throw ModelError("fleet size must be at least 1");
  if (!(capacity > 0.0)) throw ModelError("vehicle capacity must be positive");
  if (!(vehicle_cost >= 0.0)) throw ModelError("vehicle cost must be >= 0");
  for (const auto& c : customers) {
    if (!(c.demand > 0.0) || c.demand > capacity) {
      throw ModelError("customer " + std::to_string(c.id) + " demand must lie in (0, capacity]");
    }
    if (!(c.service_time >= 0.0)) throw ModelError("service times must be >= 0");
  }
  if (slots.empty()) throw ModelError("instance has no time slots");
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (!(slots[s].lower < slots[s].upper)) throw ModelError("slot lower bound must be < upper bound");
    if (s > 0 && slots[s - 1].upper > slots[s].lower) {
      throw ModelError("slots must be ordered and pairwise disjoint");
    }
    slots[s].index = static_cast<int>(s);
  }
  catalog = build_option_catalog(slots, discounts, base_fee, pricing);
  if (min_options < 1) throw ModelError("min_options must be >= 1");
  if (min_options > slot_count() + 1) {
    // With one price per slot a customer can hold at most |T| + 1 options.
    throw ModelError("min_options exceeds the number of slots + 1");
  }
}

std::vector<TimeSlot> partition_horizon(double horizon_end, int n_slots) {
  if (n_slots < 1) throw ModelError("need at least one slot");
  if (!(horizon_end > 0.0)) throw ModelError("horizon must be positive");
  std::vector<TimeSlot> slots;
  const double width = horizon_end / n_slots;
  for (int s = 0; s < n_slots; ++s) {
    TimeSlot t;
    t.index = s;
    t.lower = s * width;
    t.upper = s + 1 == n_slots ? horizon_end : (s + 1) * width;
    t.segment = static_cast<Segment>(s % kSegmentCount);
    slots.push_back(t);
  }
  return slots;
}

BehaviorSpec BehaviorSpec::without_heterogeneity() const {
  BehaviorSpec b = *this;
  b.time_std.fill(0.0);
  b.price_std = 0.0;
  return b;
}

void BehaviorSpec::validate() const {
  for (double s : time_std)
    if (!(s >= 0.0)) throw ModelError("time_std must be >= 0");
  if (!(price_std >= 0.0)) throw ModelError("price_std must be >= 0");
}

Assortment::Assortment(int customers, int options)
    : customers_(customers),
      options_(options),
      gamma_(static_cast<std::size_t>(customers) * static_cast<std::size_t>(options), 0) {
  for (int n = 0; n < customers; ++n) set(n, kOptOut, true);
}

int Assortment::offered_count(int n) const {
  int count = 0;
  for (int i = 0; i < options_; ++i) count += offered(n, i) ? 1 : 0;
  return count;
}

std::vector<int> Assortment::offered_options(int n) const {
  std::vector<int> out;
  for (int i = 1; i < options_; ++i)
    if (offered(n, i)) out.push_back(i);
  return out;
}

void Assortment::clear_customer(int n) {
  for (int i = 1; i < options_; ++i) set(n, i, false);
}

std::string assortment_violation(const Assortment& a, const Instance& instance) {
  if (a.customer_count() != instance.customer_count() || a.option_count() != instance.option_count()) {
    return "assortment shape does not match the instance";
  }
  std::ostringstream msg;
  for (int n = 0; n < a.customer_count(); ++n) {
    if (!a.offered(n, kOptOut)) {
      msg << "customer " << n << " is not offered the opt-out";
      return msg.str();
    }
    if (a.offered_count(n) < instance.min_options) {
      msg << "customer " << n << " has " << a.offered_count(n) << " options, fewer than "
          << instance.min_options;
      return msg.str();
    }
    for (int s = 0; s < instance.slot_count(); ++s) {
      int per_slot = 0;
      for (int k = 0; k < instance.discount_count(); ++k)
        per_slot += a.offered(n, instance.option_id(s, k)) ? 1 : 0;
      if (per_slot > 1) {
        msg << "customer " << n << " is offered slot " << s << " at " << per_slot << " prices";
        return msg.str();
      }
    }
  }
  return {};
}

void validate_assortment(const Assortment& a, const Instance& instance) {
  if (auto v = assortment_violation(a, instance); !v.empty()) throw ModelError("invalid assortment: " + v);
}

Assortment full_assortment_lowest_discount(const Instance& instance) {
  const auto lowest = static_cast<int>(
      std::min_element(instance.discounts.begin(), instance.discounts.end()) - instance.discounts.begin());
  Assortment a(instance.customer_count(), instance.option_count());
  for (int n = 0; n < instance.customer_count(); ++n)
    for (int s = 0; s < instance.slot_count(); ++s) a.set(n, instance.option_id(s, lowest), true);
  return a;
}

int offered_discount(const Assortment& a, const Instance& instance, int n, int slot) {
  for (int k = 0; k < instance.discount_count(); ++k)
    if (a.offered(n, instance.option_id(slot, k))) return k;
  return -1;
}

}  // namespace slotwise
