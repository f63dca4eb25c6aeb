#include "slotwise/io.hpp"

#include <fstream>
#include <sstream>

namespace slotwise {

namespace {

Json matrix_json(const SquareMatrix& m) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < m.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < m.size(); ++b) row.push_back(m(a, b));
    rows.push_back(std::move(row));
  }
  return rows;
}

SquareMatrix matrix_from_json(const Json& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != rows.size()) throw ModelError("matrix must be square");
    for (std::size_t b = 0; b < rows.size(); ++b) m(a, b) = rows[a][b].get<double>();
  }
  return m;
}

std::string_view to_string(PricingMode p) { return p == PricingMode::Discounted ? "discounted" : "literal-rate"; }

PricingMode pricing_from_string(const std::string& s) {
  if (s == "discounted") return PricingMode::Discounted;
  if (s == "literal-rate") return PricingMode::LiteralRate;
  throw ModelError("unknown pricing mode '" + s + "'");
}

Json router_json(const RouterConfig& r) {
  return {{"kind", std::string(to_string(r.kind))}, {"ls_iterations", r.ls_iterations}, {"exact_cap", r.exact_cap}};
}

RouterConfig router_from_json(const Json& j, RouterConfig base) {
  if (j.is_string()) {
    base.kind = router_from_string(j.get<std::string>());
    return base;
  }
  if (j.contains("kind")) base.kind = router_from_string(j["kind"].get<std::string>());
  base.ls_iterations = j.value("ls_iterations", base.ls_iterations);
  base.exact_cap = j.value("exact_cap", base.exact_cap);
  return base;
}

}  // namespace

Json to_json(const Instance& inst) {
  Json j;
  j["name"] = inst.name;
  j["depot"] = {{"x", inst.depot.x}, {"y", inst.depot.y}, {"horizon_end", inst.depot.horizon_end}};
  Json cs = Json::array();
  for (const auto& c : inst.customers) {
    cs.push_back({{"id", c.id}, {"x", c.x}, {"y", c.y}, {"demand", c.demand}, {"service_time", c.service_time}});
  }
  j["customers"] = cs;
  j["fleet_size"] = inst.fleet_size;
  j["capacity"] = inst.capacity;
  j["vehicle_cost"] = inst.vehicle_cost;
  j["unit_cost"] = inst.unit_cost;
  Json slots = Json::array();
  for (const auto& s : inst.slots) {
    slots.push_back({{"lower", s.lower}, {"upper", s.upper}, {"segment", std::string(to_string(s.segment))}});
  }
  j["slots"] = slots;
  j["discounts"] = inst.discounts;
  j["base_fee"] = inst.base_fee;
  j["min_options"] = inst.min_options;
  j["pricing"] = std::string(to_string(inst.pricing));
  j["travel_time"] = matrix_json(inst.travel_time);
  j["travel_cost"] = matrix_json(inst.travel_cost);
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.name = j.value("name", std::string("instance"));
  const auto& d = j.at("depot");
  inst.depot = {d.at("x").get<double>(), d.at("y").get<double>(), d.at("horizon_end").get<double>()};
  int next_id = 1;
  for (const auto& c : j.at("customers")) {
    Customer cu;
    cu.id = c.value("id", next_id);
    next_id = cu.id + 1;
    cu.x = c.at("x").get<double>();
    cu.y = c.at("y").get<double>();
    cu.demand = c.at("demand").get<double>();
    cu.service_time = c.value("service_time", 0.0);
    inst.customers.push_back(cu);
  }
  inst.fleet_size = j.at("fleet_size").get<int>();
  inst.capacity = j.at("capacity").get<double>();
  inst.vehicle_cost = j.value("vehicle_cost", inst.vehicle_cost);
  inst.unit_cost = j.value("unit_cost", inst.unit_cost);
  if (j.contains("slots") && j["slots"].is_array()) {
    int k = 0;
    for (const auto& s : j["slots"]) {
      TimeSlot t;
      t.index = k;
      t.lower = s.at("lower").get<double>();
      t.upper = s.at("upper").get<double>();
      t.segment = s.contains("segment") ? segment_from_string(s["segment"].get<std::string>())
                                        : static_cast<Segment>(k % kSegmentCount);
      inst.slots.push_back(t);
      ++k;
    }
  } else {
    inst.slots = partition_horizon(inst.depot.horizon_end, j.value("slots", 3));
  }
  inst.discounts = j.value("discounts", std::vector<double>{0.0, 0.12});
  inst.base_fee = j.value("base_fee", inst.base_fee);
  inst.min_options = j.value("min_options", 2);
  inst.pricing = pricing_from_string(j.value("pricing", std::string("discounted")));
  if (j.value("literal_paper_pricing", false)) inst.pricing = PricingMode::LiteralRate;
  if (j.contains("travel_time")) inst.travel_time = matrix_from_json(j["travel_time"]);
  if (j.contains("travel_cost")) inst.travel_cost = matrix_from_json(j["travel_cost"]);
  inst.finalize();
  return inst;
}

Json to_json(const BehaviorSpec& spec) {
  return {{"time_mean", spec.time_mean},
          {"time_std", spec.time_std},
          {"price_mean", spec.price_mean},
          {"price_std", spec.price_std}};
}

BehaviorSpec behavior_from_json(const Json& j, BehaviorSpec base) {
  auto read3 = [&](const char* key, std::array<double, kSegmentCount>& out) {
    if (!j.contains(key)) return;
    const auto& v = j[key];
    if (v.is_number()) {
      out.fill(v.get<double>());
    } else {
      if (v.size() != kSegmentCount) throw ModelError(std::string(key) + " needs one value per segment");
      for (int s = 0; s < kSegmentCount; ++s) out[static_cast<std::size_t>(s)] = v[static_cast<std::size_t>(s)].get<double>();
    }
  };
  read3("time_mean", base.time_mean);
  read3("time_std", base.time_std);
  base.price_mean = j.value("price_mean", base.price_mean);
  base.price_std = j.value("price_std", base.price_std);
  if (j.value("mnl", false)) base = base.without_heterogeneity();
  base.validate();
  return base;
}

SalnsParams salns_params_from_json(const Json& j, SalnsParams p) {
  p.epsilon = j.value("epsilon", p.epsilon);
  p.window = j.value("window", p.window);
  p.phi0 = j.value("phi0", p.phi0);
  p.phi_min = j.value("phi_min", p.phi_min);
  p.phi_step = j.value("phi_step", p.phi_step);
  p.theta = j.value("theta", p.theta);
  if (j.contains("scores")) {
    const auto& s = j["scores"];
    if (s.size() != 4) throw ModelError("salns.scores needs four values");
    for (std::size_t k = 0; k < 4; ++k) p.scores[k] = s[k].get<double>();
  }
  p.p_local_search = j.value("p_local_search", p.p_local_search);
  p.kappa_max = j.value("kappa_max", p.kappa_max);
  p.max_iterations = j.value("max_iterations", p.max_iterations);
  p.zeta = j.value("zeta", p.zeta);
  p.ls_moves_per_operator = j.value("ls_moves_per_operator", p.ls_moves_per_operator);
  if (j.contains("search_router")) p.search_router = router_from_json(j["search_router"], p.search_router);
  if (j.contains("final_router")) p.final_router = router_from_json(j["final_router"], p.final_router);
  p.reevaluate_final = j.value("reevaluate_final", p.reevaluate_final);
  p.validate();
  return p;
}

Json to_json(const SalnsParams& p) {
  return {{"epsilon", p.epsilon},
          {"window", p.window},
          {"phi0", p.phi0},
          {"phi_min", p.phi_min},
          {"phi_step", p.phi_step},
          {"theta", p.theta},
          {"scores", p.scores},
          {"p_local_search", p.p_local_search},
          {"kappa_max", p.kappa_max},
          {"max_iterations", p.max_iterations},
          {"zeta", p.zeta},
          {"ls_moves_per_operator", p.ls_moves_per_operator},
          {"search_router", router_json(p.search_router)},
          {"final_router", router_json(p.final_router)},
          {"reevaluate_final", p.reevaluate_final}};
}

Json to_json(const Assortment& a) {
  Json rows = Json::array();
  for (int n = 0; n < a.customer_count(); ++n) rows.push_back(a.offered_options(n));
  return {{"customers", rows}};
}

Assortment assortment_from_json(const Json& j, const Instance& instance) {
  const auto& rows = j.contains("customers") ? j["customers"] : j.at("assortment").at("customers");
  if (static_cast<int>(rows.size()) != instance.customer_count()) {
    throw ModelError("assortment lists " + std::to_string(rows.size()) + " customers, instance has " +
                     std::to_string(instance.customer_count()));
  }
  Assortment a(instance.customer_count(), instance.option_count());
  for (int n = 0; n < instance.customer_count(); ++n) {
    for (const auto& o : rows[static_cast<std::size_t>(n)]) {
      const int id = o.get<int>();
      if (id < 0 || id >= instance.option_count()) throw ModelError("option id " + std::to_string(id) + " out of range");
      a.set(n, id, true);
    }
  }
  validate_assortment(a, instance);
  return a;
}

Json to_json(const RoutingPlan& plan) {
  Json routes = Json::array();
  for (const auto& r : plan.routes) {
    routes.push_back({{"customers", r.customers}, {"arrivals", r.arrivals}, {"travel_cost", r.travel_cost}, {"load", r.load}});
  }
  return {{"routes", routes},
          {"travel_cost", plan.travel_cost},
          {"vehicles_used", plan.vehicles_used},
          {"total_cost", plan.total_cost},
          {"within_fleet", plan.within_fleet}};
}

Json to_json(const Solution& s, const Instance& instance, bool include_plans) {
  Json j;
  j["profit"] = s.profit;
  j["router"] = std::string(to_string(s.router));
  j["assortment"] = to_json(s.assortment);
  Json offers = Json::array();
  for (int n = 0; n < s.assortment.customer_count(); ++n) {
    Json row = Json::array();
    for (int o : s.assortment.offered_options(n)) {
      const auto& opt = instance.option(o);
      row.push_back({{"option", o}, {"slot", opt.slot}, {"discount", opt.discount_rate}, {"price", opt.effective_price}});
    }
    offers.push_back(row);
  }
  j["offers"] = offers;
  j["scenario_profit"] = s.scenario_profit;
  j["feasible"] = s.feasible;
  j["coverage_percent"] = s.choices.scenario_count() > 0 ? coverage_percent(s.choices) : 0.0;
  if (include_plans) {
    Json plans = Json::array();
    for (const auto& p : s.plans) plans.push_back(to_json(p));
    j["plans"] = plans;
    Json choices = Json::array();
    for (int n = 0; n < s.choices.customer_count(); ++n) {
      Json row = Json::array();
      for (int r = 0; r < s.choices.scenario_count(); ++r) row.push_back(s.choices.chosen(n, r));
      choices.push_back(row);
    }
    j["choices"] = choices;
  }
  return j;
}

Json to_json(const IterationRecord& rec) {
  return {{"iteration", rec.iteration},
          {"destroy", std::string(to_string(rec.destroy))},
          {"repair", std::string(to_string(rec.repair))},
          {"removed", rec.removed},
          {"candidate_profit", rec.candidate_profit},
          {"incumbent_profit", rec.incumbent_profit},
          {"best_profit", rec.best_profit},
          {"local_search", rec.local_search},
          {"outcome", std::string(to_string(rec.outcome))},
          {"accepted", rec.outcome != Outcome::Rejected},
          {"phi", rec.phi},
          {"elapsed_ms", rec.elapsed_ms}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace slotwise
