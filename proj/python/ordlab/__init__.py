"""Ordinal notations below epsilon_0, termination witnesses, Dickson ranks and
bounded-model checks of formula transforms."""

import json

from ._core import (
    Ordinal,
    OrdlabError,
    ackermann,
    ackermann_measure,
    check_strict_descent,
    classify,
    enumerate_below,
    eval_bounded,
    fast_growing,
    hardy,
    minimal_basis,
    omega_pow,
    omega_tower,
    pair,
    proj1,
    proj2,
    rank_bad_sequence,
    render_formula,
    residual_order_type,
    uniformize,
)
from . import _core

__all__ = [
    "Ordinal",
    "OrdlabError",
    "ackermann",
    "ackermann_measure",
    "ackermann_traced",
    "canonical_walk",
    "check_strict_descent",
    "check_uniformization",
    "classify",
    "enumerate_below",
    "eval_bounded",
    "fast_growing",
    "hardy",
    "minimal_basis",
    "omega_pow",
    "omega_tower",
    "pair",
    "proj1",
    "proj2",
    "rank_bad_sequence",
    "render_formula",
    "residual_order_type",
    "run_cli",
    "uniformize",
    "validate_trace",
]


def canonical_walk(start, step):
    """Walk from `start` to 0 using `step` at every limit; returns the trace document."""
    if not isinstance(start, Ordinal):
        start = Ordinal(start)
    return json.loads(_core._walk(start, step))


def ackermann_traced(m, n):
    """Full call tree of A(m, n) as a nested dict."""
    return json.loads(_core._ackermann_traced(m, n))


def validate_trace(tree):
    """'valid', 'bad_edge', 'bad_value' or 'bad_measure'."""
    return _core._validate_trace(json.dumps(tree))


def check_uniformization(theta, X, N):
    return json.loads(_core._check_uniformization(theta, X, N))


def run_cli(*args):
    """Runs the command-line tool in-process; returns (exit_code, output)."""
    return _core._run_cli([str(a) for a in args])
