#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <sstream>

#include "slotwise/harness.hpp"
#include "slotwise/rng.hpp"

namespace slotwise {

Instance random_instance(const RandomInstanceSpec& spec, std::uint64_t seed) {
  Rng rng(derive_key(seed, {0x1257}));
  Instance inst;
  inst.name = "rand-" + std::to_string(spec.customers) + "-" + std::to_string(seed);
  inst.depot = {40.0, 50.0, spec.horizon};
  for (int n = 0; n < spec.customers; ++n) {
    // Uniform in the disk: radius ~ sqrt(u).
    const double rho = spec.radius * std::sqrt(rng.uniform01());
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    Customer c;
    c.id = n + 1;
    c.x = inst.depot.x + rho * std::cos(angle);
    c.y = inst.depot.y + rho * std::sin(angle);
    c.demand = std::round(rng.uniform(spec.demand_lo, spec.demand_hi));
    c.service_time = spec.service_time;
    inst.customers.push_back(c);
  }
  inst.fleet_size = spec.fleet_size;
  inst.capacity = spec.capacity;
  inst.vehicle_cost = spec.vehicle_cost;
  inst.slots = partition_horizon(spec.horizon, spec.slots);
  inst.discounts = spec.discounts;
  inst.base_fee = spec.base_fee;
  inst.min_options = spec.min_options;
  inst.compute_euclidean_matrices();
  inst.finalize();
  return inst;
}

std::string synthetic_solomon(int customers, std::uint64_t seed, const std::string& name) {
  Rng rng(derive_key(seed, {0x5010}));
  std::ostringstream out;
  out << name << "\n\nVEHICLE\nNUMBER     CAPACITY\n  25         200\n\nCUSTOMER\n"
      << "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE TIME\n\n";
  char line[128];
  std::snprintf(line, sizeof line, "%5d %8d %10d %10d %10d %10d %10d\n", 0, 40, 50, 0, 0, 1236, 0);
  out << line;
  // Clustered like the C-series: a handful of centres with customers packed around them.
  const int centres = std::max(1, (customers + 9) / 10);
  std::vector<std::pair<double, double>> centre;
  for (int k = 0; k < centres; ++k) centre.emplace_back(rng.uniform(10.0, 90.0), rng.uniform(10.0, 85.0));
  for (int n = 1; n <= customers; ++n) {
    const auto& [cx, cy] = centre[static_cast<std::size_t>((n - 1) / 10 % centres)];
    const int x = static_cast<int>(std::lround(std::clamp(cx + rng.uniform(-6.0, 6.0), 0.0, 100.0)));
    const int y = static_cast<int>(std::lround(std::clamp(cy + rng.uniform(-6.0, 6.0), 0.0, 100.0)));
    const int demand = 10 * rng.between(1, 4);
    const double dist = std::hypot(x - 40.0, y - 50.0);
    const int ready = rng.between(static_cast<int>(std::ceil(dist)), 1236 - 150 - static_cast<int>(std::ceil(dist)));
    const int due = ready + rng.between(45, 90);
    std::snprintf(line, sizeof line, "%5d %8d %10d %10d %10d %10d %10d\n", n, x, y, demand, ready, due, 90);
    out << line;
  }
  return out.str();
}

std::vector<double> grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw ModelError("grid step must be positive");
  if (hi < lo) throw ModelError("grid upper end below lower end");
  std::vector<double> g;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    const double v = k == count && std::abs(lo + count * step - hi) < 1e-9 ? hi : lo + static_cast<double>(k) * step;
    // Round away representation noise so grid points print cleanly.
    g.push_back(std::round(v * 1e10) / 1e10);
  }
  return g;
}

}  // namespace slotwise
