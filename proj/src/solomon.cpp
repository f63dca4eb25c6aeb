#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slotwise/model.hpp"

namespace slotwise {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::optional<double> parse_number(const std::string& tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

}  // namespace

Instance load_solomon(std::string_view text, int n_customers, int n_slots,
                      const InstanceOptions& options) {
  std::vector<std::string> lines;
  {
    std::istringstream is{std::string(text)};
    for (std::string line; std::getline(is, line);) lines.push_back(line);
  }

  std::size_t at = 0;
  auto find_section = [&](const std::string& key) {
    for (; at < lines.size(); ++at) {
      const auto tokens = split_ws(lines[at]);
      if (!tokens.empty() && upper(tokens.front()) == key) {
        ++at;
        return;
      }
    }
    throw ModelError("malformed Solomon file: missing " + key + " section");
  };

  std::string name;
  for (const auto& line : lines) {
    const auto tokens = split_ws(line);
    if (!tokens.empty()) {
      name = tokens.front();
      break;
    }
  }

  find_section("VEHICLE");
  std::optional<std::pair<int, double>> vehicle;
  for (; at < lines.size() && !vehicle; ++at) {
    const auto tokens = split_ws(lines[at]);
    if (tokens.empty()) continue;
    if (upper(tokens.front()) == "CUSTOMER") break;
    const auto a = parse_number(tokens.front());
    if (!a) continue;  // column header
    if (tokens.size() != 2) throw ModelError("malformed Solomon file: VEHICLE row needs NUMBER and CAPACITY");
    const auto b = parse_number(tokens[1]);
    if (!b) throw ModelError("malformed Solomon file: non-numeric vehicle capacity '" + tokens[1] + "'");
    vehicle = std::pair{static_cast<int>(*a), *b};
  }
  if (!vehicle) throw ModelError("malformed Solomon file: VEHICLE section has no data row");

  find_section("CUSTOMER");
  std::vector<std::array<double, 7>> rows;
  bool header = true;
  for (; at < lines.size(); ++at) {
    const auto tokens = split_ws(lines[at]);
    if (tokens.empty()) continue;
    if (header && !parse_number(tokens.front())) continue;  // "CUST NO. XCOORD. ..."
    header = false;
    if (tokens.size() != 7) {
      throw ModelError("malformed Solomon file: customer row " + std::to_string(rows.size()) +
                       " has " + std::to_string(tokens.size()) + " fields, expected 7");
    }
    std::array<double, 7> row{};
    for (std::size_t k = 0; k < 7; ++k) {
      const auto v = parse_number(tokens[k]);
      if (!v) throw ModelError("malformed Solomon file: non-numeric field '" + tokens[k] + "'");
      row[k] = *v;
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ModelError("malformed Solomon file: no depot row");
  if (n_customers < 1) throw ModelError("need at least one customer");
  if (static_cast<std::size_t>(n_customers) >= rows.size()) {
    throw ModelError("requested " + std::to_string(n_customers) + " customers but the file has " +
                     std::to_string(rows.size() - 1));
  }

  Instance inst;
  inst.name = name;
  const auto& depot = rows.front();
  inst.depot = Depot{depot[1], depot[2], depot[5]};
  for (int k = 1; k <= n_customers; ++k) {
    const auto& r = rows[static_cast<std::size_t>(k)];
    inst.customers.push_back(Customer{static_cast<int>(r[0]), r[1], r[2], r[3], r[6]});
  }
  inst.fleet_size = options.fleet_size > 0 ? options.fleet_size : vehicle->first;
  inst.capacity = vehicle->second;
  inst.vehicle_cost = options.vehicle_cost;
  inst.unit_cost = options.unit_cost;
  inst.discounts = options.discounts;
  inst.base_fee = options.base_fee;
  inst.min_options = options.min_options;
  inst.pricing = options.pricing;
  inst.slots = partition_horizon(inst.depot.horizon_end, n_slots);
  inst.compute_euclidean_matrices();
  inst.finalize();
  return inst;
}

}  // namespace slotwise
