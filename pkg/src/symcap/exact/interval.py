"""Adaptive-precision interval evaluation with dyadic endpoints.

Every arithmetic step is performed exactly on Fractions and then rounded
outward to denominators 2**w (w = working precision), so the returned
interval always contains the true value.  ``eval_interval`` raises the
working precision until the requested relative width is certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..errors import DomainError, InvalidInput, PrecisionExhausted, ResourceLimit
from .expr import RealExpr
from .ints import introot

DEFAULT_MAX_BITS = 4096

# hard ceiling on intermediate integer sizes (bits); beyond this the input
# is hostile or hopeless and we fail loudly instead of thrashing
_MAX_RESULT_BITS = 50_000_000


@dataclass(frozen=True)
class PrecisionBudget:
    """Ceiling on interval refinement before giving up honestly."""

    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        if self.max_bits < 64:
            raise InvalidInput("precision budget must be at least 64 bits")


@dataclass(frozen=True)
class IntervalApprox:
    """A certified enclosure [lo, hi] with dyadic endpoints."""

    lo: Fraction
    hi: Fraction
    precision_bits: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidInput("interval endpoints out of order")
        for end in (self.lo, self.hi):
            d = end.denominator
            if d & (d - 1):
                raise InvalidInput("interval endpoints must be dyadic")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def contained_in(self, other: "IntervalApprox") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


class _Refine(Exception):
    """Internal: the current working precision cannot decide something."""


# -- dyadic rounding ----------------------------------------------------------


def _round_down(x: Fraction, w: int) -> Fraction:
    if x.denominator == 1:
        return x
    m = (x.numerator << w) // x.denominator
    return Fraction(m, 1 << w)


def _round_up(x: Fraction, w: int) -> Fraction:
    if x.denominator == 1:
        return x
    m = -((-x.numerator << w) // x.denominator)
    return Fraction(m, 1 << w)


def _out(lo: Fraction, hi: Fraction, w: int) -> Tuple[Fraction, Fraction]:
    return _round_down(lo, w), _round_up(hi, w)


def _root_down(x: Fraction, q: int, w: int) -> Fraction:
    """Largest m/2**w with (m/2**w)**q <= x, for x >= 0."""
    t = (x.numerator << (q * w)) // x.denominator
    return Fraction(introot(t, q), 1 << w)


def _root_up(x: Fraction, q: int, w: int) -> Fraction:
    t, rem = divmod(x.numerator << (q * w), x.denominator)
    m = introot(t, q)
    if rem == 0 and m**q == t:
        return Fraction(m, 1 << w)
    return Fraction(m + 1, 1 << w)


# -- interval arithmetic on (lo, hi) pairs ------------------------------------


def _size_guard(x: Fraction, p: int):
    bits = x.numerator.bit_length() + x.denominator.bit_length()
    if bits * abs(p) > _MAX_RESULT_BITS:
        raise ResourceLimit(
            f"power with exponent {p} would exceed the size ceiling"
        )


def _iv_int_pow(lo: Fraction, hi: Fraction, p: int, w: int):
    if p == 0:
        return Fraction(1), Fraction(1)
    _size_guard(lo, p)
    _size_guard(hi, p)
    if p < 0:
        if lo <= 0 <= hi:
            raise _Refine("inverse power over interval containing zero")
        ilo, ihi = _iv_int_pow(lo, hi, -p, w)
        return _out(1 / ihi, 1 / ilo, w)
    if p % 2 == 1 or lo >= 0:
        return _out(lo**p, hi**p, w)
    if hi <= 0:
        return _out(hi**p, lo**p, w)
    return _out(Fraction(0), max(-lo, hi) ** p, w)


def _iv_pow(lo: Fraction, hi: Fraction, e: Fraction, w: int):
    if e.denominator == 1:
        return _iv_int_pow(lo, hi, e.numerator, w)
    p, q = e.numerator, e.denominator
    if q * w > _MAX_RESULT_BITS:
        raise ResourceLimit(f"root of index {q} exceeds the size ceiling")
    _size_guard(lo, p)
    _size_guard(hi, p)
    if hi < 0:
        raise DomainError(
            "fractional power of a provably negative expression"
        )
    lo = max(lo, Fraction(0))
    if p > 0:
        return _root_down(lo**p, q, w), _root_up(hi**p, q, w)
    if lo == 0:
        raise _Refine("negative fractional power over interval reaching zero")
    return _root_down(hi**p, q, w), _root_up(lo**p, q, w)
    # note: p < 0 makes x**p decreasing; hi**p <= value <= lo**p


def _eval(e: RealExpr, w: int, cache: dict):
    hit = cache.get(e)
    if hit is not None:
        return hit
    out = _eval_raw(e, w, cache)
    cache[e] = out
    return out


def _eval_raw(e: RealExpr, w: int, cache: dict):
    if e.op == "rat":
        return _out(e.data, e.data, w)
    if e.op == "add":
        (a, b), (c, d) = _eval(e.args[0], w, cache), _eval(e.args[1], w, cache)
        return _out(a + c, b + d, w)
    if e.op == "sub":
        (a, b), (c, d) = _eval(e.args[0], w, cache), _eval(e.args[1], w, cache)
        return _out(a - d, b - c, w)
    if e.op == "mul":
        (a, b), (c, d) = _eval(e.args[0], w, cache), _eval(e.args[1], w, cache)
        prods = (a * c, a * d, b * c, b * d)
        return _out(min(prods), max(prods), w)
    if e.op == "div":
        (a, b), (c, d) = _eval(e.args[0], w, cache), _eval(e.args[1], w, cache)
        if c <= 0 <= d:
            from .normal import rational_value

            if rational_value(e.args[1]) == 0:
                raise DomainError("division by an expression provably zero")
            raise _Refine("divisor interval contains zero")
        quots = (a / c, a / d, b / c, b / d)
        return _out(min(quots), max(quots), w)
    if e.op == "pow":
        lo, hi = _eval(e.args[0], w, cache)
        return _iv_pow(lo, hi, e.data, w)
    if e.op == "floor":
        lo, hi = _eval(e.args[0], w, cache)
        fl = lo.numerator // lo.denominator
        fh = hi.numerator // hi.denominator
        if fl == fh:
            return Fraction(fl), Fraction(fl)
        from .normal import rational_value

        r = rational_value(e.args[0])
        if r is not None:
            f = Fraction(r.numerator // r.denominator)
            return f, f
        raise _Refine("floor argument interval straddles an integer")
    raise AssertionError(e.op)


def eval_interval(
    e: RealExpr, bits: int, max_bits: Optional[int] = None
) -> IntervalApprox:
    """Certified enclosure of e with width <= 2**-bits * max(1, |value|).

    Raises DomainError for fractional powers of provably negative
    subexpressions, PrecisionExhausted when a floor or division cannot be
    resolved within the internal refinement ceiling.
    """
    if bits < 1:
        raise InvalidInput("bits must be positive")
    if max_bits is None:
        max_bits = max(DEFAULT_MAX_BITS, 8 * bits)
    cap = max(max_bits, 4 * bits + 64)
    target = Fraction(1, 1 << bits)
    w = bits + 16
    while True:
        try:
            lo, hi = _eval(e, w, {})
        except _Refine:
            lo = hi = None
        if lo is not None:
            mig = Fraction(0) if lo <= 0 <= hi else min(abs(lo), abs(hi))
            if hi - lo <= target * max(Fraction(1), mig):
                return IntervalApprox(lo, hi, bits)
        if w >= cap:
            raise PrecisionExhausted(
                f"could not certify width 2^-{bits} within {w} working bits"
            )
        w = min(2 * w, cap)
