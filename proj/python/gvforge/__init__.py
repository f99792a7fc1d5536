"""Lenstra codes over quadratic fields and rate-bound certificates."""

import json
from fractions import Fraction

from . import _gvforge
from ._gvforge import (
    ArgumentError,
    CapacityError,
    DomainError,
    IndeterminateError,
    Interval,
    LenstraCode,
    ParseError,
    QuadraticField,
    build_code,
    check_conditions,
    final_inequality_margin,
    final_inequality_scan,
    kronecker,
    make_field,
    primes_upto,
    primorial_D,
    read_code,
    splitting_type,
    theorem2_schedule,
    theorem2_threshold,
    tower,
)

__all__ = [
    "ArgumentError",
    "CapacityError",
    "DomainError",
    "IndeterminateError",
    "Interval",
    "LenstraCode",
    "ParseError",
    "QuadraticField",
    "bounds_csv",
    "build_code",
    "certify",
    "check_conditions",
    "final_inequality_margin",
    "final_inequality_scan",
    "gv_bound",
    "kronecker",
    "make_field",
    "plotkin_bound",
    "primes_upto",
    "primorial_D",
    "read_code",
    "search",
    "splitting_type",
    "theorem2_schedule",
    "theorem2_threshold",
    "tower",
]


def _delta(delta):
    """Exact text form of delta; floats are taken at their shortest decimal repr."""
    if isinstance(delta, Fraction):
        return f"{delta.numerator}/{delta.denominator}"
    if isinstance(delta, int):
        return str(delta)
    if isinstance(delta, float):
        return repr(delta)
    return str(delta)


def gv_bound(q, delta):
    return _gvforge.gv_bound(q, _delta(delta))


def plotkin_bound(q, delta):
    return _gvforge.plotkin_bound(q, _delta(delta))


def search(q, delta, budget=16):
    return _gvforge.search(q, _delta(delta), budget)


def certify(q, sieve_limit=0):
    """Certificate for the schedule at q, as a dict."""
    return json.loads(_gvforge.certify_json(q, sieve_limit))


def bounds_csv(q, grid, budget=16):
    return _gvforge.bounds_csv(q, grid, budget)
