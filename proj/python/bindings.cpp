#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slotwise/exact.hpp"
#include "slotwise/harness.hpp"
#include "slotwise/io.hpp"
#include "slotwise/parallel.hpp"

namespace py = pybind11;
using namespace slotwise;

namespace {

// Documents cross the boundary as JSON text; the Python layer decodes them.
Json parse(const std::string& text) { return text.empty() ? Json::object() : Json::parse(text); }

}  // namespace

PYBIND11_MODULE(_slotwise, m) {
  m.doc() = "Slot and price assortment optimization core";

  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def_static("from_json", [](const std::string& text) { return instance_from_json(parse(text)); })
      .def_static("from_config", [](const std::string& section, const std::string& base_dir) {
        return load_instance(parse(section), base_dir);
      }, py::arg("section"), py::arg("base_dir") = ".")
      .def_static("from_solomon", [](const std::string& text, int customers, int slots) {
        return load_solomon(text, customers, slots);
      }, py::arg("text"), py::arg("customers"), py::arg("slots") = 3)
      .def("to_json", [](const Instance& i) { return to_json(i).dump(); })
      .def_readonly("name", &Instance::name)
      .def_readonly("fleet_size", &Instance::fleet_size)
      .def_readonly("capacity", &Instance::capacity)
      .def_property_readonly("customer_count", &Instance::customer_count)
      .def_property_readonly("slot_count", &Instance::slot_count)
      .def_property_readonly("option_count", &Instance::option_count);

  py::class_<ScenarioSet>(m, "ScenarioSet")
      .def_property_readonly("scenario_count", &ScenarioSet::scenario_count)
      .def_property_readonly("seed", &ScenarioSet::seed);

  m.def("sample_scenarios", [](const Instance& inst, const std::string& behavior, int scenarios, std::uint64_t seed) {
    return sample_scenarios(behavior_from_json(parse(behavior)), inst, scenarios, seed);
  }, py::arg("instance"), py::arg("behavior"), py::arg("scenarios"), py::arg("seed"));

  m.def("solve", [](const Instance& inst, const ScenarioSet& scen, const std::string& method, std::uint64_t seed,
                    const std::string& salns, const std::string& router, bool plans) {
    SolveSettings s;
    s.method = method_from_string(method);
    s.salns = salns_params_from_json(parse(salns));
    s.router.kind = router_from_string(router);
    SolveOutcome out;
    {
      py::gil_scoped_release release;
      out = solve(inst, scen, s, seed);
    }
    Json j = to_json(out.solution, inst, plans);
    j["method"] = method;
    j["wall_ms"] = out.wall_ms;
    if (out.salns) {
      j["rfts_profit"] = out.salns->rfts_profit;
      j["iterations"] = out.salns->iterations;
    }
    return j.dump();
  }, py::arg("instance"), py::arg("scenarios"), py::arg("method"), py::arg("seed"), py::arg("salns") = "",
     py::arg("router") = "cw", py::arg("plans") = false);

  m.def("evaluate", [](const Instance& inst, const ScenarioSet& scen, const std::string& assortment,
                       const std::string& router, bool plans) {
    const Assortment a = assortment_from_json(parse(assortment), inst);
    RouterConfig rc{router_from_string(router)};
    Solution s;
    {
      py::gil_scoped_release release;
      s = evaluate(a, inst, scen, rc);
    }
    return to_json(s, inst, plans).dump();
  }, py::arg("instance"), py::arg("scenarios"), py::arg("assortment"), py::arg("router") = "cw",
     py::arg("plans") = false);

  m.def("stochastic_value", [](const Instance& inst, const ScenarioSet& scen) {
    StochasticValue v;
    {
      py::gil_scoped_release release;
      v = stochastic_value(inst, scen);
    }
    return Json{{"stochastic_profit", v.stochastic_profit},
                {"deterministic_profit", v.deterministic_profit},
                {"perfect_information", v.perfect_information},
                {"vss", v.vss},
                {"evpi", v.evpi}}
        .dump();
  }, py::arg("instance"), py::arg("scenarios"));

  m.def("default_behavior", [] { return to_json(BehaviorSpec{}).dump(); });
  m.def("set_thread_count", &set_thread_count);
  m.def("thread_count", &thread_count);
}
