"""Multiprecision Newton refinement for eigenproblems and simultaneous diagonalization."""

import json

from ._core import InvalidArgument, ParseError, SimdiagError, qr_compare
from . import _core

__all__ = ["test1", "test2", "wilkinson", "qr_compare", "InvalidArgument", "ParseError", "SimdiagError"]


def test1(n=10, perturb_exp=6, field="real", seed=0, prec=1024, iters=7):
    """Single-matrix run; returns the trace as a dict with decimal-string values."""
    return json.loads(_core.test1_json(n, perturb_exp, field, seed, prec, iters))


def test2(n=10, perturb_exp=6, field="real", seed=0, prec=1024, iters=7):
    """Two-matrix run; same layout as test1."""
    return json.loads(_core.test2_json(n, perturb_exp, field, seed, prec, iters))


def wilkinson(n=20, prec=1024, iters=4, route="arrowhead"):
    """Refined roots of the degree-n Wilkinson polynomial with the residual trace."""
    return json.loads(_core.wilkinson_json(n, prec, iters, route))
