// Command-line front end: gen, solve, evaluate, experiment.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "slotwise/harness.hpp"
#include "slotwise/parallel.hpp"

using namespace slotwise;

namespace {

struct Common {
  std::string config;
  std::string output;
  std::optional<int> scenarios;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> router;
  std::optional<std::string> method;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", c.output, "output path (stdout when omitted)");
  cmd->add_option("--scenarios", c.scenarios, "number of simulated scenarios R")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "scenario and search seed");
  cmd->add_option("--router", c.router, "routing heuristic")->check(CLI::IsMember({"cw", "icw", "cfrs", "exact"}));
  cmd->add_option("--threads", c.threads, "worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
}

Config resolve_config(const Common& c) {
  Config cfg = c.config.empty() ? Config{} : load_config(c.config);
  if (c.scenarios) cfg.scenarios = *c.scenarios;
  if (c.seed) cfg.seed = *c.seed;
  if (c.method) cfg.settings.method = method_from_string(*c.method);
  if (c.router) {
    cfg.settings.router.kind = router_from_string(*c.router);
    cfg.settings.salns.search_router.kind = cfg.settings.router.kind;
  }
  if (c.threads) set_thread_count(*c.threads);
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(path, text);
  }
}

std::vector<std::uint64_t> seeds_from(const Json& e, std::uint64_t first) {
  if (e.contains("seeds")) return e["seeds"].get<std::vector<std::uint64_t>>();
  const int n = e.value("n_seeds", 1);
  std::vector<std::uint64_t> s;
  for (int k = 0; k < n; ++k) s.push_back(first + static_cast<std::uint64_t>(k));
  return s;
}

std::vector<double> grid_from(const Json& e, const char* key, double lo, double hi, double step) {
  if (!e.contains(key)) return grid(lo, hi, step);
  const auto& g = e[key];
  if (g.is_array()) return g.get<std::vector<double>>();
  return grid(g.at("lo").get<double>(), g.at("hi").get<double>(), g.at("step").get<double>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-slot assortment under mixed logit demand"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "build an instance JSON from a Solomon file");
  std::string solomon_path;
  int gen_synthetic = 0;
  int gen_customers = 5;
  int gen_slots = 3;
  std::optional<int> gen_fleet;
  std::optional<int> gen_nu;
  std::uint64_t gen_seed = 1;
  std::string gen_output;
  auto* src = gen->add_option("--solomon", solomon_path, "Solomon VRPTW file")->check(CLI::ExistingFile);
  gen->add_option("--synthetic", gen_synthetic, "generate a synthetic C101-shaped file with this many rows")
      ->excludes(src);
  gen->add_option("--customers", gen_customers, "customers to keep")->check(CLI::PositiveNumber);
  gen->add_option("--slots", gen_slots, "number of equal slots over the horizon")->check(CLI::PositiveNumber);
  gen->add_option("--fleet", gen_fleet, "override the fleet size");
  gen->add_option("--min-options", gen_nu, "minimum options per customer (opt-out included)");
  gen->add_option("--seed", gen_seed, "seed of the synthetic file");
  gen->add_option("-o,--output", gen_output, "output path");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "optimize an assortment");
  Common solve_opts;
  std::string trace_path;
  bool no_plans = false;
  add_common(solve_cmd, solve_opts);
  solve_cmd->add_option("--method", solve_opts.method, "solver")->check(CLI::IsMember({"rfts", "salns", "exact"}));
  solve_cmd->add_option("--trace", trace_path, "JSON-lines trace of sALNS iterations");
  solve_cmd->add_flag("--no-plans", no_plans, "omit per-scenario plans and choices from the output");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "score a stored assortment");
  Common eval_opts;
  std::string assortment_path;
  add_common(eval_cmd, eval_opts);
  eval_cmd->add_option("--assortment", assortment_path, "solution or assortment JSON")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_flag("--no-plans", no_plans, "omit per-scenario plans and choices from the output");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run one of the analyses");
  Common exp_opts;
  std::string kind;
  std::string csv_path;
  add_common(exp_cmd, exp_opts);
  exp_cmd->add_option("kind", kind, "experiment kind")
      ->required()
      ->check(CLI::IsMember({"in-sample", "out-of-sample", "vss-evpi", "value-of-ml", "sweep", "operator-stats"}));
  exp_cmd->add_option("--method", exp_opts.method, "solver")->check(CLI::IsMember({"rfts", "salns", "exact"}));
  exp_cmd->add_option("--csv", csv_path, "also write the records as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::string text;
      if (!solomon_path.empty()) {
        text = read_text_file(solomon_path);
      } else if (gen_synthetic > 0) {
        text = synthetic_solomon(gen_synthetic, gen_seed);
      } else {
        throw ModelError("gen needs --solomon or --synthetic");
      }
      InstanceOptions o;
      if (gen_fleet) o.fleet_size = *gen_fleet;
      if (gen_nu) o.min_options = *gen_nu;
      const Instance inst = load_solomon(text, gen_customers, gen_slots, o);
      emit(gen_output, to_json(inst).dump(2));
      return 0;
    }

    if (solve_cmd->parsed()) {
      const Config cfg = resolve_config(solve_opts);
      const Instance inst = load_instance(cfg.instance, cfg.base_dir);
      const ScenarioSet scen = sample_scenarios(cfg.behavior, inst, cfg.scenarios, cfg.seed);
      std::ofstream trace;
      if (!trace_path.empty()) {
        trace.open(trace_path);
        if (!trace) throw std::runtime_error("cannot write " + trace_path);
      }
      IterationObserver observer;
      if (trace.is_open()) observer = [&](const IterationRecord& rec, const Assortment&) { trace << to_json(rec).dump() << '\n'; };
      const SolveOutcome out = solve(inst, scen, cfg.settings, cfg.seed, observer);
      Json j = to_json(out.solution, inst, !no_plans);
      j["instance"] = inst.name;
      j["method"] = std::string(to_string(cfg.settings.method));
      j["scenarios"] = cfg.scenarios;
      j["seed"] = cfg.seed;
      j["wall_ms"] = out.wall_ms;
      if (out.salns) {
        j["rfts_profit"] = out.salns->rfts_profit;
        j["search_profit"] = out.salns->search_profit;
        j["iterations"] = out.salns->iterations;
        j["evaluations"] = out.salns->evaluations;
      }
      emit(solve_opts.output, j.dump(2));
      return 0;
    }

    if (eval_cmd->parsed()) {
      const Config cfg = resolve_config(eval_opts);
      const Instance inst = load_instance(cfg.instance, cfg.base_dir);
      const ScenarioSet scen = sample_scenarios(cfg.behavior, inst, cfg.scenarios, cfg.seed);
      const Assortment a = assortment_from_json(Json::parse(read_text_file(assortment_path)), inst);
      RouterConfig router = cfg.settings.router;
      router.exact_cap = cfg.settings.exact.routing_cap;
      const Solution s = evaluate(a, inst, scen, router);
      Json j = to_json(s, inst, !no_plans);
      j["instance"] = inst.name;
      j["scenarios"] = cfg.scenarios;
      j["seed"] = cfg.seed;
      emit(eval_opts.output, j.dump(2));
      return 0;
    }

    if (exp_cmd->parsed()) {
      const Config cfg = resolve_config(exp_opts);
      const Json& e = cfg.experiment;
      const auto seeds = seeds_from(e, cfg.seed);
      ExperimentReport rep;
      if (kind == "vss-evpi") {
        std::vector<Instance> instances;
        if (e.contains("random_instances")) {
          const int count = e["random_instances"].value("count", 10);
          Json section = {{"random", e["random_instances"]}};
          for (int k = 0; k < count; ++k) {
            section["seed"] = e["random_instances"].value("seed", std::uint64_t{1}) + static_cast<std::uint64_t>(k);
            instances.push_back(load_instance(section, cfg.base_dir));
          }
        } else {
          instances.push_back(load_instance(cfg.instance, cfg.base_dir));
        }
        rep = run_vss_evpi(instances, cfg.behavior, cfg.scenarios, seeds, cfg.settings.exact);
      } else {
        const ExperimentSetup setup{load_instance(cfg.instance, cfg.base_dir), cfg.behavior, cfg.settings};
        if (kind == "in-sample") {
          const auto r_list = e.value("r_list", std::vector<int>{5, 10, 20, 30, 40, 50, 60, 70, 80});
          rep = run_in_sample(setup, r_list, e.value("reference", 100), seeds);
        } else if (kind == "out-of-sample") {
          rep = run_out_of_sample(setup, cfg.scenarios, e.value("redraws", 10), seeds, e.value("first_redraw", 1));
        } else if (kind == "value-of-ml") {
          rep = run_value_of_ml(setup, cfg.scenarios, seeds);
        } else if (kind == "sweep") {
          rep = run_sensitivity_sweep(setup, grid_from(e, "time_grid", -1.3, 1.5, 0.1),
                                      grid_from(e, "price_grid", -0.12, 0.0, 0.01), cfg.scenarios, seeds,
                                      e.value("optimize", false));
        } else {
          rep = run_operator_stats(setup, cfg.scenarios, seeds);
        }
      }
      emit(exp_opts.output, rep.to_json().dump(2));
      if (!csv_path.empty()) write_text_file(csv_path, rep.to_csv());
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
