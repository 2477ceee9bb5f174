"""Certified three-way comparison and exact floor of expressions.

``compare`` answers Less/Equal/Greater for the true real values.  Equal is
returned only on a symbolic proof (identical radical normal forms); strict
orderings come from symbolic signs or from interval refinement.  When the
budget runs out with the intervals still overlapping, PrecisionExhausted
is raised -- never a silent guess.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Optional, Union

from ..errors import PrecisionExhausted
from .expr import RealExpr, to_expr
from .interval import PrecisionBudget, _Refine, _eval
from .normal import difference_sign, rational_value


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


_DEFAULT_BUDGET = PrecisionBudget()

_compare_cache: dict = {}


def compare(
    a: Union[RealExpr, int, Fraction],
    b: Union[RealExpr, int, Fraction],
    budget: Optional[PrecisionBudget] = None,
) -> Ordering:
    """Certified comparison of two exact expressions."""
    budget = budget or _DEFAULT_BUDGET
    a, b = to_expr(a), to_expr(b)
    if a.op == "rat" and b.op == "rat":
        if a.data == b.data:
            return Ordering.EQUAL
        return Ordering.LESS if a.data < b.data else Ordering.GREATER
    key = (a, b, budget.max_bits)
    hit = _compare_cache.get(key)
    if hit is not None:
        return hit
    out = _compare(a, b, budget)
    _compare_cache[key] = out
    return out


def _compare(a: RealExpr, b: RealExpr, budget: PrecisionBudget) -> Ordering:
    sign = difference_sign(a, b)
    if sign is not None:
        return Ordering(sign)
    diff = a - b
    w = 32
    while True:
        try:
            lo, hi = _eval(diff, w, {})
            if hi < 0:
                return Ordering.LESS
            if lo > 0:
                return Ordering.GREATER
        except _Refine:
            pass
        if w >= budget.max_bits:
            raise PrecisionExhausted(
                "values agree to the full budget and symbolic equality "
                "could not be established"
            )
        w = min(2 * w, budget.max_bits)


def is_le(a, b, budget=None) -> bool:
    return compare(a, b, budget) is not Ordering.GREATER

def is_ge(a, b, budget=None) -> bool:
    return compare(a, b, budget) is not Ordering.LESS

def is_lt(a, b, budget=None) -> bool:
    return compare(a, b, budget) is Ordering.LESS

def is_eq(a, b, budget=None) -> bool:
    return compare(a, b, budget) is Ordering.EQUAL


def floor_expr(
    e: Union[RealExpr, int, Fraction],
    budget: Optional[PrecisionBudget] = None,
) -> int:
    """Exact floor of the value of e."""
    budget = budget or _DEFAULT_BUDGET
    e = to_expr(e)
    r = rational_value(e)
    if r is not None:
        return r.numerator // r.denominator
    w = 32
    while True:
        try:
            lo, hi = _eval(e, w, {})
            fl = lo.numerator // lo.denominator
            fh = hi.numerator // hi.denominator
            if fl == fh:
                return fl
            if fh - fl == 1:
                # single candidate integer inside the interval
                side = compare(e, to_expr(fh), budget)
                if side is Ordering.LESS:
                    return fl
                return fh
        except _Refine:
            pass
        except PrecisionExhausted:
            pass
        if w >= budget.max_bits:
            raise PrecisionExhausted(
                "value cannot be separated from an integer within budget"
            )
        w = min(2 * w, budget.max_bits)


def ceil_expr(
    e: Union[RealExpr, int, Fraction],
    budget: Optional[PrecisionBudget] = None,
) -> int:
    """Exact ceiling of the value of e."""
    e = to_expr(e)
    f = floor_expr(e, budget)
    if compare(e, to_expr(f), budget) is Ordering.EQUAL:
        return f
    return f + 1
