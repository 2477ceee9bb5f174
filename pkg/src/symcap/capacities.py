"""Ellipsoids, their volumes, and capacity-sequence obstructions.

The capacity sequence of E(a_1,...,a_n) is the nondecreasing enumeration,
with multiplicity, of the multiset {j * a_i : j >= 1}.  The k-th entry is
monotone under symplectic embedding, which together with the volume gives
the two necessary-condition tests implemented here.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterator, Optional, Union

from .errors import InvalidInput
from .exact import (
    Ordering,
    PrecisionBudget,
    RealExpr,
    compare,
    power,
    rational,
    rational_value,
    to_expr,
)

AxisLike = Union[int, Fraction, RealExpr]


@dataclass(frozen=True)
class Ellipsoid:
    """E(a_1,...,a_n) with axes stored sorted nondecreasing."""

    axes: tuple

    def __post_init__(self):
        for a in self.axes:
            if not isinstance(a, RealExpr):
                raise InvalidInput("axes must be RealExpr; use Ellipsoid.of")

    @staticmethod
    def of(*axes: AxisLike, budget: Optional[PrecisionBudget] = None) -> "Ellipsoid":
        if not axes:
            raise InvalidInput("an ellipsoid needs at least one axis")
        exprs = [to_expr(a) for a in axes]
        for e in exprs:
            if compare(e, 0, budget) is not Ordering.GREATER:
                raise InvalidInput("all axes must be positive")
        exprs.sort(key=cmp_to_key(lambda x, y: compare(x, y, budget).value))
        return Ellipsoid(tuple(exprs))

    @staticmethod
    def ball(c: AxisLike, dim: int) -> "Ellipsoid":
        """B^{2*dim}(c) = E(c,...,c)."""
        if dim < 1:
            raise InvalidInput("dimension must be positive")
        return Ellipsoid.of(*([c] * dim))

    @property
    def dim(self) -> int:
        return len(self.axes)

    def volume_product(self) -> RealExpr:
        """The product a_1 * ... * a_n (proportional to the volume)."""
        prod = rational(1)
        for a in self.axes:
            prod = prod * a
        return prod

    def scale(self, t: AxisLike) -> "Ellipsoid":
        t = to_expr(t)
        # positive scaling preserves sortedness
        return Ellipsoid(tuple(t * a for a in self.axes))

    def __repr__(self):
        from .exact import format_expr

        return "E(" + ", ".join(format_expr(a) for a in self.axes) + ")"


@dataclass(frozen=True)
class CapacityList:
    """c_1 <= c_2 <= ... indexed from 1."""

    values: tuple

    def __getitem__(self, k: int) -> RealExpr:
        if k < 1 or k > len(self.values):
            raise InvalidInput("capacity index out of range")
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)

    def as_fractions(self) -> list:
        out = []
        for v in self.values:
            r = rational_value(v)
            if r is None:
                raise InvalidInput("capacity list has irrational entries")
            out.append(r)
        return out


class _Key:
    """Heap key for exact merge; total order via certified compare."""

    __slots__ = ("expr", "budget")

    def __init__(self, expr: RealExpr, budget):
        self.expr = expr
        self.budget = budget

    def __lt__(self, other):
        return compare(self.expr, other.expr, self.budget) is Ordering.LESS

    def __eq__(self, other):
        return compare(self.expr, other.expr, self.budget) is Ordering.EQUAL


def _merged_multiples(
    e: Ellipsoid, budget: Optional[PrecisionBudget]
) -> Iterator[RealExpr]:
    """Yield the multiset {j * a_i} in nondecreasing order."""
    rats = [rational_value(a) for a in e.axes]
    if all(r is not None for r in rats):
        heap = [(r, i, 1) for i, r in enumerate(rats)]
        heapq.heapify(heap)
        while True:
            v, i, j = heapq.heappop(heap)
            heapq.heappush(heap, (rats[i] * (j + 1), i, j + 1))
            yield rational(v)
    else:
        heap = [(_Key(a, budget), i, 1) for i, a in enumerate(e.axes)]
        heapq.heapify(heap)
        while True:
            key, i, j = heapq.heappop(heap)
            heapq.heappush(heap, (_Key(e.axes[i] * (j + 1), budget), i, j + 1))
            yield key.expr


def ek_capacities(
    e: Ellipsoid, count: int, budget: Optional[PrecisionBudget] = None
) -> CapacityList:
    """First ``count`` capacities of e, by an n-way ordered merge of the
    arithmetic progressions j*a_i (ties kept with multiplicity)."""
    if count < 1:
        raise InvalidInput("count must be >= 1")
    gen = _merged_multiples(e, budget)
    return CapacityList(tuple(next(gen) for _ in range(count)))


def ek_obstruction(
    source: Ellipsoid,
    target: Ellipsoid,
    count: int,
    budget: Optional[PrecisionBudget] = None,
) -> Optional[int]:
    """Smallest k <= count with c_k(source) > c_k(target), or None.

    A returned k certifies that no symplectic embedding source -> target
    exists; None means this test finds no obstruction up to ``count``.
    """
    if source.dim != target.dim:
        raise InvalidInput("source and target must have equal dimension")
    if count < 1:
        raise InvalidInput("count must be >= 1")
    gs, gt = _merged_multiples(source, budget), _merged_multiples(target, budget)
    for k in range(1, count + 1):
        cs, ct = next(gs), next(gt)
        if compare(cs, ct, budget) is Ordering.GREATER:
            return k
    return None


class VolumeVerdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


def volume_obstruction(
    source: Ellipsoid,
    target: Ellipsoid,
    budget: Optional[PrecisionBudget] = None,
) -> VolumeVerdict:
    """Pass iff the product of source axes is <= the target's (non-strict,
    matching the convention that embeddings tolerate any inflation > 1)."""
    if source.dim != target.dim:
        raise InvalidInput("source and target must have equal dimension")
    c = compare(source.volume_product(), target.volume_product(), budget)
    return VolumeVerdict.FAIL if c is Ordering.GREATER else VolumeVerdict.PASS


def ball_lower_bound(
    e: Ellipsoid, count: int = 1000, budget: Optional[PrecisionBudget] = None
) -> RealExpr:
    """Certified lower bound for the ball capacity admitting e:

        max( (prod a_i)^(1/n),  max_{k<=count} c_k(e) / ceil(k/n) )

    The capacity sweep is not exhaustive in k; ``count`` bounds it.
    """
    if count < 1:
        raise InvalidInput("count must be >= 1")
    n = e.dim
    best = power(e.volume_product(), Fraction(1, n))
    best_rational: Optional[Fraction] = None
    gen = _merged_multiples(e, budget)
    for k in range(1, count + 1):
        ck = next(gen)
        cand = ck / rational(-(-k // n))
        r = rational_value(cand)
        if r is not None:
            if best_rational is None or r > best_rational:
                best_rational = r
        elif compare(cand, best, budget) is Ordering.GREATER:
            best = cand
    if best_rational is not None:
        cand = rational(best_rational)
        if compare(cand, best, budget) is Ordering.GREATER:
            best = cand
    return best
