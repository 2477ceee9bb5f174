"""Stability constants, the axiomatized 4-dimensional capacity facts, and
the proven regions of the 6-dimensional value map.

The 4-dimensional function g (infimal ball capacity admitting E(1, b)) is
used only through the facts needed here: g(b) = sqrt(b) for b = 4 or
b >= 289/36, and g(b) = 2 on [2, 4].  Regions of the two-variable value
map f(a, b) are exposed exactly where those facts pin it down, each with
a matching optimality witness (a capacity index or the volume).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..capacities import (
    Ellipsoid,
    ball_lower_bound,
    ek_capacities,
)
from ..errors import HypothesisViolated, InvalidInput, PrecisionExhausted
from ..exact import (
    IntervalApprox,
    Ordering,
    PrecisionBudget,
    RealExpr,
    compare,
    eval_interval,
    power,
    rational,
    root,
    sqrt,
    to_expr,
)
from .rules import M2

_M2_EXPR = rational(M2)


def beta_constant(n: int) -> RealExpr:
    """(r / (r - s))^(2n(n-1)/(n-2)) with r, s the (2n-2)-th roots of 3, 2;
    defined for n >= 3."""
    if n < 3:
        raise InvalidInput("beta is defined for n >= 3")
    k = 2 * n - 2
    ratio = root(3, k) / (root(3, k) - root(2, k))
    return power(ratio, Fraction(2 * n * (n - 1), n - 2))


@dataclass(frozen=True)
class StabilityBounds:
    """The threshold M_n = max(M_{n-1}^2, beta_n) with M_2 = 289/36."""

    n: int
    beta: Optional[IntervalApprox]
    beta_expr: Optional[RealExpr]
    m_expr: RealExpr
    m_interval: IntervalApprox


_stability_cache: dict = {}


def stability_bounds(
    n: int, bits: int = 64, budget: Optional[PrecisionBudget] = None
) -> StabilityBounds:
    """Certified beta_n and M_n; exact rational at n = 2."""
    if n < 2:
        raise InvalidInput("need n >= 2")
    key = (n, bits)
    hit = _stability_cache.get(key)
    if hit is not None:
        return hit
    if n == 2:
        out = StabilityBounds(
            2, None, None, _M2_EXPR, eval_interval(_M2_EXPR, bits)
        )
    else:
        prev = stability_bounds(n - 1, bits, budget)
        beta = beta_constant(n)
        prev_sq = prev.m_expr * prev.m_expr
        winner = (
            beta
            if compare(beta, prev_sq, budget) is Ordering.GREATER
            else prev_sq
        )
        out = StabilityBounds(
            n,
            eval_interval(beta, bits),
            beta,
            winner,
            eval_interval(winner, bits),
        )
    _stability_cache[key] = out
    return out


def fullfill_hypothesis_bound(bits: int) -> IntervalApprox:
    """Certified value of (289/36)^2 (1 + (289/36)^2 r^96) with
    r = 3^(1/4)/(3^(1/4) - 2^(1/4)): the a^2 + b^2 threshold beyond which
    the volume-filling hypotheses hold automatically."""
    r = root(3, 4) / (root(3, 4) - root(2, 4))
    expr = _M2_EXPR**2 * (1 + _M2_EXPR**2 * power(r, 96))
    return eval_interval(expr, bits)


# -- the axiomatized slices of g ----------------------------------------------


def g_known(
    b: RealExpr, budget: Optional[PrecisionBudget] = None
) -> Optional[RealExpr]:
    """g(b) where the facts used here pin it down, else None."""
    if compare(b, 4, budget) is Ordering.EQUAL:
        return rational(2)
    if compare(b, _M2_EXPR, budget) is not Ordering.LESS:
        return sqrt(b)
    if (
        compare(b, 2, budget) is not Ordering.LESS
        and compare(b, 4, budget) is not Ordering.GREATER
    ):
        return rational(2)
    return None


WitnessTag = Tuple  # ("eh", k) or ("volume",)


@dataclass(frozen=True)
class KnownValue:
    """A proven exact value of the 6-dimensional map with its witness."""

    value: RealExpr
    justification: str  # one of L2.8, L2.9, L2.10, L2.12, L2.14, T3.9
    optimality_witness: WitnessTag


def _eh_witness_matches(
    a: RealExpr, b: RealExpr, value: RealExpr, k: int, budget
) -> bool:
    """c_k(E(1,a,b)) == value * ceil(k/3) certifies the lower bound."""
    caps = ek_capacities(Ellipsoid.of(1, a, b), k, budget)
    expected = value * rational(-(-k // 3))
    return compare(caps[k], expected, budget) is Ordering.EQUAL


def _volume_witness_matches(a, b, value, budget) -> bool:
    return (
        compare(power(a * b, Fraction(1, 3)), value, budget) is Ordering.EQUAL
    )


def _with_witness(a, b, value, tag, budget, prefer_volume=False) -> KnownValue:
    if prefer_volume and _volume_witness_matches(a, b, value, budget):
        return KnownValue(value, tag, ("volume",))
    for k in (3, 2):
        if _eh_witness_matches(a, b, value, k, budget):
            return KnownValue(value, tag, ("eh", k))
    if _volume_witness_matches(a, b, value, budget):
        return KnownValue(value, tag, ("volume",))
    raise PrecisionExhausted(
        "no optimality witness matched; region logic is inconsistent"
    )


def f_known(
    a, b, budget: Optional[PrecisionBudget] = None
) -> Optional[KnownValue]:
    """The exact value of the map on its proven regions, else None."""
    a, b = to_expr(a), to_expr(b)
    if compare(a, 1, budget) is Ordering.LESS or compare(b, a, budget) is Ordering.LESS:
        raise InvalidInput("need 1 <= a <= b")

    g = g_known(b, budget)

    # value a: g(b) <= a <= 3
    if (
        g is not None
        and compare(a, 3, budget) is not Ordering.GREATER
        and compare(g, a, budget) is not Ordering.GREATER
    ):
        return _with_witness(a, b, a, "L2.9", budget)

    # value b: 1 <= a <= b <= 2
    if compare(b, 2, budget) is not Ordering.GREATER:
        return _with_witness(a, b, b, "L2.10", budget)

    # value 2: a <= 2 <= b <= 4
    if (
        compare(a, 2, budget) is not Ordering.GREATER
        and compare(b, 2, budget) is not Ordering.LESS
        and compare(b, 4, budget) is not Ordering.GREATER
    ):
        return _with_witness(a, b, rational(2), "L2.12", budget)

    # value 2 on the thin slab: a = 1, 2 <= b <= 8
    if (
        compare(a, 1, budget) is Ordering.EQUAL
        and compare(b, 2, budget) is not Ordering.LESS
        and compare(b, 8, budget) is not Ordering.GREATER
    ):
        return _with_witness(a, b, rational(2), "L2.14", budget)

    # value g(b) on the diagonal a = g(b)
    if g is not None and compare(a, g, budget) is Ordering.EQUAL:
        prefer_volume = compare(b, 9, budget) is not Ordering.LESS
        return _with_witness(a, b, g, "L2.8", budget, prefer_volume)

    # volume-filling regions
    m3 = stability_bounds(3, 64, budget).m_expr
    case1 = compare(b, m3**4 * a * a, budget) is Ordering.GREATER
    case2 = (
        compare(a, _M2_EXPR, budget) is not Ordering.LESS
        and compare(b, m3**2, budget) is Ordering.GREATER
    )
    if case1 or case2:
        value = power(a * b, Fraction(1, 3))
        return _with_witness(a, b, value, "T3.9", budget, prefer_volume=True)

    return None


def f_bounds(
    a,
    b,
    count: int = 1000,
    budget: Optional[PrecisionBudget] = None,
):
    """(lower, upper, certificate): certified two-sided bounds for the
    infimal ball capacity admitting E(1, a, b).

    The lower bound combines the volume with a capacity sweep up to
    ``count``; the upper bound is witnessed by a verified certificate.
    """
    from .builders import build_fullfill2, build_olga3
    from .rules import (
        AxiomMSg2,
        AxiomMSsqrt,
        EmbeddingStep,
        Inclusion,
        EmbeddingCertificate,
        suspend_step,
    )
    from .verify import verify_certificate

    a, b = to_expr(a), to_expr(b)
    if compare(a, 1, budget) is Ordering.LESS or compare(b, a, budget) is Ordering.LESS:
        raise InvalidInput("need 1 <= a <= b")
    source = Ellipsoid.of(1, a, b)
    lower = ball_lower_bound(source, count, budget)

    candidates = []  # (upper value, certificate)

    def inclusion_cert(cap: RealExpr) -> EmbeddingCertificate:
        tgt = Ellipsoid.of(cap, cap, cap)
        return EmbeddingCertificate(
            source, tgt, (EmbeddingStep(Inclusion(), tgt),)
        )

    candidates.append((b, inclusion_cert(b)))

    g = g_known(b, budget)
    if g is not None:
        # replace (1, b) by (g, g); then include into the max axis
        if compare(b, 4, budget) is Ordering.EQUAL or compare(
            b, _M2_EXPR, budget
        ) is not Ordering.LESS:
            rule = AxiomMSsqrt(b, rational(1))
        else:
            rule = AxiomMSg2(b, rational(1))
        inner = EmbeddingCertificate(
            Ellipsoid.of(1, b),
            Ellipsoid.of(g, g),
            (EmbeddingStep(rule, Ellipsoid.of(g, g)),),
        )
        step = suspend_step(source, inner, budget)
        cap = (
            a if compare(a, g, budget) is not Ordering.LESS else g
        )
        tgt = Ellipsoid.of(cap, cap, cap)
        steps = [step]
        if not (
            step.result.dim == tgt.dim
            and all(
                compare(x, y, budget) is Ordering.EQUAL
                for x, y in zip(step.result.axes, tgt.axes)
            )
        ):
            steps.append(EmbeddingStep(Inclusion(), tgt))
        candidates.append(
            (cap, EmbeddingCertificate(source, tgt, tuple(steps)))
        )

    if (
        compare(a, 1, budget) is Ordering.EQUAL
        and compare(b, 4, budget) is Ordering.GREATER
        and compare(b, 8, budget) is not Ordering.GREATER
    ):
        # include into E(1, 1, 8), then contract it to B(2)
        mid = Ellipsoid.of(1, 1, 8)
        steps = [EmbeddingStep(Inclusion(), mid)]
        tail = build_olga3(2, 3)
        steps.extend(tail.steps)
        candidates.append(
            (rational(2), EmbeddingCertificate(source, tail.target, tuple(steps)))
        )

    try:
        cert = build_fullfill2(a, b, budget)
        candidates.append((power(a * b, Fraction(1, 3)), cert))
    except HypothesisViolated:
        pass

    best_value, best_cert = candidates[0]
    for value, cert in candidates[1:]:
        if compare(value, best_value, budget) is Ordering.LESS:
            best_value, best_cert = value, cert
    check = verify_certificate(best_cert, budget)
    if not check:
        from ..errors import VerificationFailed

        raise VerificationFailed(
            f"upper-bound certificate failed at step {check.step_index}: {check.reason}"
        )
    return lower, best_value, best_cert
