import pytest

import slotwise


@pytest.fixture
def instance():
    return slotwise.load_instance({"random": {"customers": 4}, "seed": 3})


def test_instance_shape(instance):
    assert instance.customer_count == 4
    assert instance.slot_count == 3
    assert instance.option_count == 7
    again = slotwise.Instance.from_json(instance.to_json())
    assert again.customer_count == 4


def test_behavior_defaults():
    b = slotwise.default_behavior()
    assert b["price_mean"] == pytest.approx(-0.0766)


def test_solve_and_reevaluate(instance):
    scen = slotwise.sample_scenarios(instance, 10, 1)
    assert scen.scenario_count == 10
    sol = slotwise.solve(instance, scen, "salns", seed=2, salns={"max_iterations": 50})
    assert len(sol["scenario_profit"]) == 10
    again = slotwise.evaluate(instance, scen, sol["assortment"], router=sol["router"])
    assert again["profit"] == pytest.approx(sol["profit"])


def test_solve_is_deterministic(instance):
    scen = slotwise.sample_scenarios(instance, 8, 4)
    a = slotwise.solve(instance, scen, "rfts", seed=5)
    b = slotwise.solve(instance, scen, "rfts", seed=5)
    assert a["profit"] == b["profit"]


def test_exact_bounds_heuristics(instance):
    scen = slotwise.sample_scenarios(instance, 5, 1)
    exact = slotwise.solve(instance, scen, "exact")
    rfts = slotwise.solve(instance, scen, "rfts", router="exact")
    assert exact["profit"] >= rfts["profit"] - 1e-9
    v = slotwise.stochastic_value(instance, scen)
    assert v["vss"] >= -1e-9
    assert v["evpi"] >= -1e-9


def test_errors_surface_as_exceptions(instance):
    scen = slotwise.sample_scenarios(instance, 2, 1)
    with pytest.raises(ValueError):
        slotwise.solve(instance, scen, "simplex")
    with pytest.raises(ValueError):
        slotwise.sample_scenarios(instance, 0, 1)
    with pytest.raises(ValueError):
        slotwise.load_instance({})


def test_thread_count_setting():
    before = slotwise.thread_count()
    slotwise.set_thread_count(2)
    assert slotwise.thread_count() == 2
    slotwise.set_thread_count(before)
