"""Generate, prove and grade hypothesis-discovery reasoning examples."""

import json

from . import _core
from ._core import Error, FormatError, Infeasible, InvalidCounts, close, parse, render, run_cli, wilson_interval

__all__ = [
    "Error",
    "FormatError",
    "Infeasible",
    "InvalidCounts",
    "close",
    "explain",
    "generate",
    "grade",
    "parse",
    "render",
    "run_cli",
    "wilson_interval",
]


def generate(height=1, mode="multi", seed=0, subtask="random", subtype_style="mixed", id="ex-000000"):
    return json.loads(_core.generate(height, mode, seed, subtask, subtype_style, id))


def grade(record, response):
    if not isinstance(record, str):
        record = json.dumps(record)
    return json.loads(_core.grade(record, response))


def explain(visible, hypotheses, observations):
    trees = _core.explain(list(visible), list(hypotheses), list(observations))
    return None if trees is None else json.loads(trees)
