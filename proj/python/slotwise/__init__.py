"""Python access to the slotwise solvers.

Documents (instances, behavior, solutions) are plain dicts; they are passed to
the extension as JSON text.
"""

import json

from . import _slotwise
from ._slotwise import Instance, ModelError, ScenarioSet, set_thread_count, thread_count

__all__ = [
    "Instance",
    "ModelError",
    "ScenarioSet",
    "default_behavior",
    "evaluate",
    "load_instance",
    "sample_scenarios",
    "set_thread_count",
    "solve",
    "stochastic_value",
    "thread_count",
]


def _dump(doc):
    return "" if doc is None else json.dumps(doc)


def load_instance(section, base_dir="."):
    """Instance from a config-style `instance` section, e.g. {"random": {"customers": 4}, "seed": 2}."""
    return Instance.from_config(_dump(section), base_dir)


def default_behavior():
    return json.loads(_slotwise.default_behavior())


def sample_scenarios(instance, scenarios, seed, behavior=None):
    return _slotwise.sample_scenarios(instance, _dump(behavior), scenarios, seed)


def solve(instance, scenarios, method="salns", seed=1, salns=None, router="cw", plans=False):
    return json.loads(_slotwise.solve(instance, scenarios, method, seed, _dump(salns), router, plans))


def evaluate(instance, scenarios, assortment, router="cw", plans=False):
    return json.loads(_slotwise.evaluate(instance, scenarios, _dump(assortment), router, plans))


def stochastic_value(instance, scenarios):
    return json.loads(_slotwise.stochastic_value(instance, scenarios))
