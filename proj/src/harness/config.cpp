#include <algorithm>
#include <filesystem>

#include "slotwise/harness.hpp"

namespace slotwise {

namespace {

std::string resolve(const std::string& path, const std::string& base_dir) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

InstanceOptions instance_options(const Json& j) {
  InstanceOptions o;
  o.fleet_size = j.value("fleet_size", o.fleet_size);
  o.vehicle_cost = j.value("vehicle_cost", o.vehicle_cost);
  o.unit_cost = j.value("unit_cost", o.unit_cost);
  o.discounts = j.value("discounts", o.discounts);
  o.base_fee = j.value("base_fee", o.base_fee);
  o.min_options = j.value("min_options", o.min_options);
  if (j.contains("pricing")) {
    const auto p = j["pricing"].get<std::string>();
    if (p == "discounted") o.pricing = PricingMode::Discounted;
    else if (p == "literal-rate") o.pricing = PricingMode::LiteralRate;
    else throw ModelError("unknown pricing mode '" + p + "'");
  }
  if (j.value("literal_paper_pricing", false)) o.pricing = PricingMode::LiteralRate;
  return o;
}

RandomInstanceSpec random_spec(const Json& j) {
  RandomInstanceSpec s;
  s.customers = j.value("customers", s.customers);
  s.slots = j.value("slots", s.slots);
  s.discounts = j.value("discounts", s.discounts);
  s.min_options = j.value("min_options", s.min_options);
  s.fleet_size = j.value("fleet_size", s.fleet_size);
  s.capacity = j.value("capacity", s.capacity);
  s.radius = j.value("radius", s.radius);
  s.horizon = j.value("horizon", s.horizon);
  s.service_time = j.value("service_time", s.service_time);
  s.demand_lo = j.value("demand_lo", s.demand_lo);
  s.demand_hi = j.value("demand_hi", s.demand_hi);
  s.vehicle_cost = j.value("vehicle_cost", s.vehicle_cost);
  s.base_fee = j.value("base_fee", s.base_fee);
  return s;
}

}  // namespace

Instance load_instance(const Json& section, const std::string& base_dir) {
  if (!section.is_object() || section.empty()) throw ModelError("config has no instance section");
  if (section.contains("file")) {
    return instance_from_json(Json::parse(read_text_file(resolve(section["file"].get<std::string>(), base_dir))));
  }
  if (section.contains("customers") && section["customers"].is_array()) return instance_from_json(section);
  const int slots = section.value("slots", 3);
  if (section.contains("solomon")) {
    const auto text = read_text_file(resolve(section["solomon"].get<std::string>(), base_dir));
    return load_solomon(text, section.at("customers").get<int>(), slots, instance_options(section));
  }
  if (section.contains("synthetic")) {
    const int n = section["synthetic"].get<int>();
    const auto seed = section.value("seed", std::uint64_t{1});
    Instance inst = load_solomon(synthetic_solomon(n, seed), section.value("customers", n), slots, instance_options(section));
    inst.name = "SYN101-" + std::to_string(inst.customer_count()) + "-" + std::to_string(seed);
    return inst;
  }
  if (section.contains("random")) {
    Instance inst = random_instance(random_spec(section["random"]), section.value("seed", std::uint64_t{1}));
    if (section.value("literal_paper_pricing", false)) {
      inst.pricing = PricingMode::LiteralRate;
      inst.finalize();
    }
    return inst;
  }
  throw ModelError("instance section needs one of file, solomon, synthetic, random or inline data");
}

Config config_from_json(const Json& j, const std::string& base_dir) {
  static const std::vector<std::string> known{"instance", "behavior", "salns", "exact", "experiment"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ModelError("unknown config section '" + key + "'");
  }
  Config c;
  c.base_dir = base_dir;
  if (j.contains("instance")) c.instance = j["instance"];
  if (j.contains("behavior")) c.behavior = behavior_from_json(j["behavior"]);
  if (j.contains("salns")) c.settings.salns = salns_params_from_json(j["salns"]);
  if (j.contains("exact")) {
    const auto& e = j["exact"];
    c.settings.exact.customer_cap = e.value("customer_cap", c.settings.exact.customer_cap);
    c.settings.exact.max_assortments = e.value("max_assortments", c.settings.exact.max_assortments);
    c.settings.exact.routing_cap = e.value("routing_cap", c.settings.exact.routing_cap);
    c.settings.exact.prune = e.value("prune", c.settings.exact.prune);
  }
  if (j.contains("experiment")) {
    c.experiment = j["experiment"];
    c.scenarios = c.experiment.value("scenarios", c.scenarios);
    c.seed = c.experiment.value("seed", c.seed);
    if (c.experiment.contains("method")) c.settings.method = method_from_string(c.experiment["method"].get<std::string>());
    if (c.experiment.contains("router")) {
      c.settings.router.kind = router_from_string(c.experiment["router"].get<std::string>());
      c.settings.salns.search_router.kind = c.settings.router.kind;
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  const Json j = Json::parse(read_text_file(path));
  return config_from_json(j, std::filesystem::path(path).parent_path().string());
}

}  // namespace slotwise
