"""Python bindings for the adpbound C++ core.

Reports are returned as dictionaries decoded from the same JSON the command
line tool writes.
"""

import json as _json

from . import _core
from ._core import (
    BudgetExceeded,
    MdpModel,
    ParseError,
    asymptotic_bound,
    curvature_bound,
    evaluate_policy,
    generate_mdps,
    load_model,
    parse_model,
)

__all__ = [
    "BudgetExceeded",
    "MdpModel",
    "ParseError",
    "asymptotic_bound",
    "bound_adp",
    "curvature_bound",
    "evaluate_policy",
    "generate_mdps",
    "load_model",
    "parse_model",
    "run_adp",
    "solve_dp",
    "verify_greedy_bound",
]


def solve_dp(model):
    return _json.loads(_core.solve_dp(model))


def run_adp(model, scheme="myopic", base_policy=(), theta=(), budget=1_000_000):
    return _json.loads(_core.run_adp(model, scheme, list(base_policy), list(theta), budget))


def bound_adp(model, scheme="myopic", base_policy=(), theta=(), budget=1_000_000):
    return _json.loads(_core.bound_adp(model, scheme, list(base_policy), list(theta), budget))


def verify_greedy_bound(f, ground_size, horizon, budget=1_000_000):
    """`f` maps a list of action indices to a nonnegative float."""
    return _json.loads(_core.verify_greedy_bound(f, ground_size, horizon, budget))
