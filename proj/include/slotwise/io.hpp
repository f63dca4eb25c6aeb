#pragma once

#include <json.hpp>
#include <string>

#include "slotwise/evaluate.hpp"
#include "slotwise/model.hpp"
#include "slotwise/salns.hpp"

namespace slotwise {

using Json = nlohmann::json;

/// Full instance, including matrices, slots and pricing.
Json to_json(const Instance& instance);
/// Accepts the layout written by to_json. Matrices are optional: when absent
/// they are rebuilt from coordinates. Calls finalize().
Instance instance_from_json(const Json& j);

Json to_json(const BehaviorSpec& spec);
/// Missing keys keep the survey defaults.
BehaviorSpec behavior_from_json(const Json& j, BehaviorSpec base = {});

/// Missing keys keep the defaults.
SalnsParams salns_params_from_json(const Json& j, SalnsParams base = {});
Json to_json(const SalnsParams& params);

/// {"customers": [[option ids...], ...]} listing the slot options per customer.
Json to_json(const Assortment& a);
Assortment assortment_from_json(const Json& j, const Instance& instance);

Json to_json(const RoutingPlan& plan);

/// Profit, assortment, per-scenario profits and (optionally) plans.
Json to_json(const Solution& s, const Instance& instance, bool include_plans = true);

Json to_json(const IterationRecord& rec);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace slotwise
