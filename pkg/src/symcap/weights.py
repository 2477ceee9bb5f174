"""Continued fractions, weight expansions, and the reduction of a
4-dimensional ellipsoid embedding to a ball-packing problem.

For integers e <= f the weight expansion W(e, f) is the multiset produced
by X_{-1} = f, X_0 = e, X_{i+1} = X_{i-1} - l_i * X_i, where l_0, l_1, ...
are the continued-fraction terms of f/e; the weight X_i appears with
multiplicity l_i.  It satisfies

    sum l_i X_i^2 = e * f        sum l_i X_i = e + f - gcd(e, f)

and turns the ellipsoid question E(e,f) -> E(c,d) into the ball question
(union of B(W(e,f)) and B(W(d-c,d))) -> B(d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .errors import InvalidInput

Rat = Union[int, Fraction]


@dataclass(frozen=True)
class ContinuedFraction:
    """Euclidean expansion f/e = [l_0; l_1, ..., l_K]."""

    terms: Tuple[int, ...]

    def value(self) -> Fraction:
        acc = Fraction(self.terms[-1])
        for t in reversed(self.terms[:-1]):
            acc = t + 1 / acc
        return acc


@dataclass(frozen=True)
class WeightExpansion:
    """Strictly decreasing weights with positive multiplicities."""

    entries: Tuple[Tuple[Fraction, int], ...]

    def capacities(self) -> Tuple[Fraction, ...]:
        """The multiset of ball capacities, largest first."""
        out = []
        for w, mult in self.entries:
            out.extend([w] * mult)
        return tuple(out)

    def count(self) -> int:
        return sum(mult for _, mult in self.entries)

    def sum_linear(self) -> Fraction:
        return sum((w * m for w, m in self.entries), Fraction(0))

    def sum_squares(self) -> Fraction:
        return sum((w * w * m for w, m in self.entries), Fraction(0))

    def scaled(self, t: Rat) -> "WeightExpansion":
        t = Fraction(t)
        if t <= 0:
            raise InvalidInput("scale must be positive")
        return WeightExpansion(tuple((w * t, m) for w, m in self.entries))


@dataclass(frozen=True)
class BallPackingProblem:
    """Fit balls of the given capacities into B^4(target_capacity).

    The ball multiset is stored run-length encoded as (capacity, count)
    pairs sorted by descending capacity, so problems with millions of
    equal balls stay O(#distinct capacities).
    """

    target_capacity: Fraction
    ball_runs: Tuple[Tuple[Fraction, int], ...]

    _MATERIALIZE_LIMIT = 1_000_000

    def __post_init__(self):
        if not self.ball_runs:
            raise InvalidInput("a packing problem needs at least one ball")
        if self.target_capacity <= 0:
            raise InvalidInput("capacities must be positive")
        prev = None
        for cap, count in self.ball_runs:
            if cap <= 0 or count <= 0:
                raise InvalidInput("capacities and counts must be positive")
            if prev is not None and cap >= prev:
                raise InvalidInput("runs must be strictly descending")
            prev = cap

    @staticmethod
    def of(target_capacity: Rat, balls) -> "BallPackingProblem":
        """Build from an explicit iterable of ball capacities."""
        runs: dict = {}
        for b in balls:
            b = Fraction(b)
            runs[b] = runs.get(b, 0) + 1
        enc = tuple(sorted(runs.items(), key=lambda r: -r[0]))
        return BallPackingProblem(Fraction(target_capacity), enc)

    @staticmethod
    def from_runs(target_capacity: Rat, runs) -> "BallPackingProblem":
        merged: dict = {}
        for cap, count in runs:
            cap = Fraction(cap)
            merged[cap] = merged.get(cap, 0) + int(count)
        enc = tuple(sorted(merged.items(), key=lambda r: -r[0]))
        return BallPackingProblem(Fraction(target_capacity), enc)

    @property
    def count(self) -> int:
        return sum(c for _, c in self.ball_runs)

    @property
    def balls(self) -> Tuple[Fraction, ...]:
        """Materialized multiset, descending (small problems only)."""
        if self.count > self._MATERIALIZE_LIMIT:
            raise InvalidInput(
                "ball multiset too large to materialize; use ball_runs"
            )
        out = []
        for cap, c in self.ball_runs:
            out.extend([cap] * c)
        return tuple(out)

    def sum_squares(self) -> Fraction:
        return sum((cap * cap * c for cap, c in self.ball_runs), Fraction(0))


def _to_integer_pair(e: Rat, f: Rat) -> Tuple[int, int, Fraction]:
    """Clear denominators: returns (E, F, t) with (e, f) = t * (E, F)."""
    e, f = Fraction(e), Fraction(f)
    if e <= 0 or f <= 0:
        raise InvalidInput("arguments must be positive")
    if e > f:
        raise InvalidInput("arguments must satisfy e <= f")
    scale = Fraction(1, math.lcm(e.denominator, f.denominator))
    E, F = int(e / scale), int(f / scale)
    g = math.gcd(E, F)
    # keep the pair as small as possible; weights scale back linearly
    return E // g, F // g, scale * g


def continued_fraction(e: int, f: int) -> ContinuedFraction:
    """Terms of f/e for positive integers e <= f (so l_0 >= 1)."""
    if not (isinstance(e, int) and isinstance(f, int)):
        raise InvalidInput("continued_fraction takes integers")
    if e <= 0 or f <= 0 or e > f:
        raise InvalidInput("need 0 < e <= f")
    terms = []
    a, b = f, e
    while b:
        terms.append(a // b)
        a, b = b, a % b
    return ContinuedFraction(tuple(terms))


def weight_expansion(e: Rat, f: Rat) -> WeightExpansion:
    """W(e, f).  Rational inputs are admitted by clearing denominators;
    homogeneity W(te, tf) = t W(e, f) makes this sound."""
    E, F, t = _to_integer_pair(e, f)
    cf = continued_fraction(E, F)
    entries = []
    x_prev, x = F, E
    for mult in cf.terms:
        entries.append((Fraction(x), mult))
        x_prev, x = x, x_prev - mult * x
    assert x == 0, "weight recursion must terminate at zero"
    out = WeightExpansion(tuple(entries))
    return out if t == 1 else out.scaled(t)


def ellipsoid_to_ball_problem(e: int, f: int, c: int, d: int) -> BallPackingProblem:
    """The ball problem equivalent to E(e,f) -> E(c,d) for integers
    e <= f, c <= d: capacity d target, balls W(e,f) plus W(d-c,d)."""
    for name, v in (("e", e), ("f", f), ("c", c), ("d", d)):
        if not isinstance(v, int) or v <= 0:
            raise InvalidInput(f"{name} must be a positive integer")
    if e > f or c > d:
        raise InvalidInput("need e <= f and c <= d")
    runs = list(weight_expansion(e, f).entries)
    if c != d:
        runs.extend(weight_expansion(d - c, d).entries)
    return BallPackingProblem.from_runs(Fraction(d), runs)
