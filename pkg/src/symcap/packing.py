"""Ball-packing feasibility in dimension 4 via Cremona reduction, with an
independent exceptional-class enumeration used as a cross-check oracle.

A packing vector (mu; w_1,...,w_M) is feasible iff

  (1) mu^2 >= sum w_i^2                       (volume), and
  (2) for every exceptional class (d; m_1,...,m_M):
          d * mu >= sum m_i w_i.

Condition (2) is decided by the standard reduction: sort w descending and,
while the defect delta = mu - (w_1 + w_2 + w_3) is negative, add delta to
mu and to the three largest entries.  The move is the reflection in the
class (1; 1,1,1) and preserves mu^2 - sum w_i^2; the vector is feasible
iff the process stops with every entry nonnegative.  When an entry goes
negative, pulling the corresponding coordinate class back through the
moves yields an explicit exceptional class violating (2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from .errors import InvalidInput, ResourceLimit
from .weights import BallPackingProblem

Rat = Union[int, Fraction]

MAX_EXPLICIT_WITNESS_BALLS = 200_000
DEFAULT_NODE_BUDGET = 200_000


@dataclass(frozen=True)
class ClassVector:
    """Homology class (d; m_1,...,m_M) in the basis line, -exceptional."""

    d: int
    m: Tuple[int, ...]

    def self_intersection(self) -> int:
        return self.d * self.d - sum(x * x for x in self.m)

    def anticanonical_pairing(self) -> int:
        return 3 * self.d - sum(self.m)

    def canonical(self) -> "ClassVector":
        """Multiplicities sorted descending (permutation representative)."""
        return ClassVector(self.d, tuple(sorted(self.m, reverse=True)))

    def __str__(self):
        return f"({self.d};{','.join(str(x) for x in self.m)})"


@dataclass(frozen=True)
class VolumeWitness:
    """mu^2 < sum w_i^2: the volume condition itself fails."""

    mu_squared: Fraction
    sum_of_squares: Fraction


@dataclass(frozen=True)
class ReducedVectorWitness:
    """Fallback witness: the reduced vector with a negative entry (stored
    as (value, count) runs), kept when an explicit class cannot be pulled
    back within resource limits."""

    mu: Fraction
    runs: Tuple[Tuple[Fraction, int], ...]


class Feasibility(enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class FeasibilityResult:
    status: Feasibility
    witness: Optional[object] = None  # ClassVector | VolumeWitness | ReducedVectorWitness

    def __bool__(self):
        return self.status is Feasibility.FEASIBLE


def cremona_move_class(v: ClassVector) -> ClassVector:
    """Reflection of a class in (1;1,1,1), acting on the first three slots."""
    if len(v.m) < 3:
        raise InvalidInput("class needs at least three multiplicity slots")
    d, (m1, m2, m3, *rest) = v.d, v.m
    return ClassVector(
        2 * d - m1 - m2 - m3,
        (d - m2 - m3, d - m1 - m3, d - m1 - m2, *rest),
    )


def _base_class(M: int, slot: int) -> ClassVector:
    m = [0] * M
    m[slot] = -1
    return ClassVector(0, tuple(m))


@lru_cache(maxsize=65536)
def is_exceptional(v: ClassVector) -> bool:
    """True iff v reduces to (0; -1, 0, ..., 0) under Cremona moves after
    sorting; the numeric invariants are checked first."""
    if v.self_intersection() != -1 or v.anticanonical_pairing() != 1:
        return False
    d = v.d
    m = sorted(v.m, reverse=True)
    while len(m) < 3:
        m.append(0)
    steps = 0
    while d > 0 and m[0] + m[1] + m[2] > d:
        nd = 2 * d - m[0] - m[1] - m[2]
        m[0], m[1], m[2] = d - m[1] - m[2], d - m[0] - m[2], d - m[0] - m[1]
        d = nd
        m.sort(reverse=True)
        steps += 1
        if steps > 10000:
            return False  # cannot happen for genuine classes; stay safe
    if d != 0:
        return False
    nonzero = [x for x in m if x]
    return nonzero == [-1]


def enumerate_exceptional(
    M: int, max_degree: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> FrozenSet[ClassVector]:
    """All exceptional classes with M slots and degree <= max_degree,
    deduplicated up to permutation of the multiplicities.

    Breadth-first orbit of (0; -1, 0, ...) under Cremona moves on every
    slot triple.  Reduction strictly decreases degree, so every class of
    degree <= max_degree is reached without leaving the degree bound.
    """
    if M < 1 or max_degree < 0:
        raise InvalidInput("need M >= 1 and max_degree >= 0")
    slots = max(M, 3)
    start = _base_class(slots, 0).canonical()
    seen = {start}
    frontier = [start]
    nodes = 0
    from itertools import combinations

    while frontier:
        new_frontier = []
        for cls in frontier:
            for triple in combinations(range(slots), 3):
                nodes += 1
                if nodes > node_budget:
                    raise ResourceLimit(
                        f"exceptional-class search exceeded {node_budget} nodes"
                    )
                m = list(cls.m)
                d = cls.d
                m1, m2, m3 = (m[t] for t in triple)
                nd = 2 * d - m1 - m2 - m3
                if nd < 0 or nd > max_degree:
                    continue
                m[triple[0]] = d - m2 - m3
                m[triple[1]] = d - m1 - m3
                m[triple[2]] = d - m1 - m2
                cand = ClassVector(nd, tuple(m)).canonical()
                if cand not in seen:
                    seen.add(cand)
                    new_frontier.append(cand)
        frontier = new_frontier
    out = set()
    for cls in seen:
        # restrict to M slots: admissible iff at most M nonzero entries
        nonzero = [x for x in cls.m if x != 0]
        if len(nonzero) <= M:
            padded = nonzero + [0] * (M - len(nonzero))
            out.add(ClassVector(cls.d, tuple(padded)).canonical())
    return frozenset(out)


# -- reduction ----------------------------------------------------------------


def _scale_runs_to_integers(mu: Fraction, runs):
    denom = math.lcm(mu.denominator, *(cap.denominator for cap, _ in runs))
    return (
        int(mu * denom),
        [(int(cap * denom), c) for cap, c in runs],
        denom,
    )


class _RunVector:
    """Descending multiset of positive integers as (value, count) runs."""

    def __init__(self, runs: Sequence[Tuple[int, int]]):
        self.runs: List[List[int]] = [
            [v, c] for v, c in sorted(runs, key=lambda r: -r[0]) if v > 0 and c > 0
        ]

    def total(self) -> int:
        return sum(c for _, c in self.runs)

    def top3(self) -> List[int]:
        out = []
        for v, c in self.runs:
            take = min(c, 3 - len(out))
            out.extend([v] * take)
            if len(out) == 3:
                break
        while len(out) < 3:
            out.append(0)
        return out

    def pop_top3(self) -> List[int]:
        out = []
        while self.runs and len(out) < 3:
            v, c = self.runs[0]
            take = min(c, 3 - len(out))
            out.extend([v] * take)
            if take == c:
                self.runs.pop(0)
            else:
                self.runs[0][1] -= take
        while len(out) < 3:
            out.append(0)
        return out

    def push(self, value: int):
        if value == 0:
            return
        import bisect

        keys = [-v for v, _ in self.runs]
        i = bisect.bisect_left(keys, -value)
        if i < len(self.runs) and self.runs[i][0] == value:
            self.runs[i][1] += 1
        else:
            self.runs.insert(i, [value, 1])

    def max_value(self) -> int:
        return self.runs[0][0] if self.runs else 0


def _reduce_runs(mu: int, ball_runs) -> Tuple[bool, int, Tuple]:
    """Fast feasibility loop on integer run-length data.  Returns
    (ok, mu, runs); ok means the reduction stopped all-nonnegative."""
    vec = _RunVector(ball_runs)
    while True:
        w1, w2, w3 = vec.top3()
        delta = mu - (w1 + w2 + w3)
        if delta >= 0:
            return True, mu, tuple((v, c) for v, c in vec.runs)
        vec.pop_top3()
        nw = [w + delta for w in (w1, w2, w3)]
        if mu + delta < 0 or any(w < 0 for w in nw):
            runs = [(v, 1) for v in nw] + [(v, c) for v, c in vec.runs]
            runs.sort(key=lambda r: -r[0])
            return False, mu + delta, tuple(runs)
        mu += delta
        for w in nw:
            vec.push(w)


def _reduce_tracked(mu: int, balls: Sequence[int]):
    """Reduction with full move tracking, used to extract a class witness.

    Returns the move log: a list of index triples in the coordinates of
    the *original* descending ball order, plus the failing slot.
    """
    order = sorted(range(len(balls)), key=lambda i: -balls[i])
    w = [balls[i] for i in order]
    log: List[Tuple[int, int, int]] = []
    while True:
        idx = sorted(range(len(w)), key=lambda i: -w[i])[:3]
        while len(idx) < 3:
            w.append(0)
            order.append(-1)  # padded slot
            idx = sorted(range(len(w)), key=lambda i: -w[i])[:3]
        i1, i2, i3 = idx
        delta = mu - (w[i1] + w[i2] + w[i3])
        if delta >= 0:
            return None  # feasible; no witness
        mu += delta
        for i in (i1, i2, i3):
            w[i] += delta
        log.append((i1, i2, i3))
        neg = [i for i in (i1, i2, i3) if w[i] < 0]
        if mu < 0 and not neg:
            return ("mu", log, order, len(w))
        if neg:
            return (neg[0], log, order, len(w))


def _pullback_witness(slot: int, log, order, width: int) -> Optional[ClassVector]:
    """Pull the base class of the failing slot back through the moves.
    Returns None if the class would need a padded (zero-ball) slot."""
    d = 0
    m = [0] * width
    m[slot] = -1
    for i1, i2, i3 in reversed(log):
        m1, m2, m3 = m[i1], m[i2], m[i3]
        nd = 2 * d - m1 - m2 - m3
        m[i1], m[i2], m[i3] = d - m2 - m3, d - m1 - m3, d - m1 - m2
        d = nd
    # undo the initial descending sort; padded slots must carry m = 0
    out = [0] * len([i for i in order if i >= 0])
    for pos, src in enumerate(order):
        if src >= 0:
            out[src] = m[pos]
        elif m[pos] != 0:
            return None
    return ClassVector(d, tuple(out))


def feasible(p: BallPackingProblem) -> FeasibilityResult:
    """Decide the ball-packing problem exactly; infeasible outcomes carry
    a violated-volume witness or an explicit exceptional-class witness."""
    mu = Fraction(p.target_capacity)
    mu_sq = mu * mu
    sq = p.sum_squares()
    if mu_sq < sq:
        return FeasibilityResult(
            Feasibility.INFEASIBLE, VolumeWitness(mu_sq, sq)
        )
    imu, iruns, denom = _scale_runs_to_integers(mu, p.ball_runs)
    ok, red_mu, runs = _reduce_runs(imu, iruns)
    if ok:
        return FeasibilityResult(Feasibility.FEASIBLE)
    fallback = ReducedVectorWitness(
        Fraction(red_mu, denom),
        tuple((Fraction(v, denom), c) for v, c in runs),
    )
    if p.count > MAX_EXPLICIT_WITNESS_BALLS:
        return FeasibilityResult(Feasibility.INFEASIBLE, fallback)
    iballs = [v for v, c in iruns for _ in range(c)]
    tracked = _reduce_tracked(imu, iballs)
    if tracked is None or tracked[0] == "mu":
        return FeasibilityResult(Feasibility.INFEASIBLE, fallback)
    slot, log, order, width = tracked
    witness = _pullback_witness(slot, log, order, width)
    if witness is None:
        return FeasibilityResult(Feasibility.INFEASIBLE, fallback)
    return FeasibilityResult(Feasibility.INFEASIBLE, witness)


def dineq_violated(cls: ClassVector, p: BallPackingProblem) -> bool:
    """True iff the class rules out the packing: d*mu < max over slot
    assignments of sum m_i w_i.  Padding the shorter side with zeros and
    sorting both descending realizes the rearrangement maximum."""
    n = max(len(cls.m), len(p.balls))
    m = sorted(list(cls.m) + [0] * (n - len(cls.m)), reverse=True)
    w = sorted(list(p.balls) + [Fraction(0)] * (n - len(p.balls)), reverse=True)
    dot = sum(Fraction(m[i]) * w[i] for i in range(n))
    return cls.d * p.target_capacity < dot


def feasible_by_enumeration(
    p: BallPackingProblem, max_degree: int = 6
) -> FeasibilityResult:
    """Independent oracle: test the volume condition and the class
    inequalities against enumerate_exceptional directly."""
    mu = Fraction(p.target_capacity)
    sq = p.sum_squares()
    if mu * mu < sq:
        return FeasibilityResult(
            Feasibility.INFEASIBLE, VolumeWitness(mu * mu, sq)
        )
    for cls in sorted(
        enumerate_exceptional(p.count, max_degree),
        key=lambda c: (c.d, c.m),
    ):
        if dineq_violated(cls, p):
            return FeasibilityResult(Feasibility.INFEASIBLE, cls)
    return FeasibilityResult(Feasibility.FEASIBLE)


def packing_number(k: int) -> Fraction:
    """Exact k-th packing number of the 4-ball.

    p_k = k * c*^2 where c* is the largest capacity with (1; c,...,c)
    feasible.  The binding constraints are the volume bound c^2 <= 1/k
    and d/(sum m_i) over exceptional classes in k slots.  For k >= 9
    every class bound d/(3d-1) exceeds 1/3 >= 1/sqrt(k), so the volume
    binds and p_k = 1.  For k <= 8, Cauchy-Schwarz gives the degree
    cutoff (3d-1)^2 <= k(d^2+1); classes beyond it cannot fit k slots.
    """
    if k < 1:
        raise InvalidInput("k must be >= 1")
    if k >= 9:
        return Fraction(1)
    max_d = 0
    while (3 * (max_d + 1) - 1) ** 2 <= k * ((max_d + 1) ** 2 + 1):
        max_d += 1
    c_sq = Fraction(1, k)  # volume bound on c^2
    for cls in enumerate_exceptional(k, max_d):
        s = sum(cls.m)
        if s <= 0:
            continue
        bound = Fraction(cls.d, s) ** 2
        if bound < c_sq:
            c_sq = bound
    return k * c_sq
