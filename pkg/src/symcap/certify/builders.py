"""Certificate constructions for the embedding families.

Each builder assembles an explicit step chain; the chains are meant to be
re-checked by :func:`symcap.certify.verify.verify_certificate`, and every
builder's preconditions are exactly the hypotheses its steps need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..capacities import Ellipsoid
from ..errors import HypothesisViolated, InvalidInput
from ..exact import (
    Ordering,
    PrecisionBudget,
    compare,
    floor_expr,
    power,
    rational,
    sqrt,
    to_expr,
)
from ..packing import Feasibility, feasible
from ..toric import (
    UnimodularAffineMap,
    check_subdivision_symbolic,
    subdivide_decomposition,
    verify_tiling,
)
from ..weights import weight_expansion
from .known import stability_bounds
from .rules import (
    M2,
    AxiomLambda35,
    AxiomMSsqrt,
    BallPack4D,
    EmbeddingCertificate,
    EmbeddingStep,
    Inclusion,
    identity_certificate,
    rescale_certificate,
    suspend_step,
)

_ONE = rational(1)

# materialize the toric subdivision only below this slice count
_TORIC_EXPLICIT_LIMIT = 64

# lambda-trick cross-check threshold on the ball count
_LAMBDA_CROSSCHECK_BALLS = 5000


def build_olga2(k: int, x: int) -> EmbeddingCertificate:
    """E(1, k^(2x+1)) -> E(k^x, k^(x+1)) through one ball-packing step."""
    if not (isinstance(k, int) and isinstance(x, int) and k >= 1 and x >= 1):
        raise InvalidInput("need integers k >= 1 and x >= 1")
    if k == 1:
        e = Ellipsoid.of(1, 1)
        return EmbeddingCertificate(e, e, (EmbeddingStep(Inclusion(), e),))
    source = Ellipsoid.of(1, k ** (2 * x + 1))
    target = Ellipsoid.of(k**x, k ** (x + 1))
    step = EmbeddingStep(
        BallPack4D(1, k ** (2 * x + 1), k**x, k ** (x + 1), _ONE), target
    )
    return EmbeddingCertificate(source, target, (step,))


def build_olga3(k: int, n: int) -> EmbeddingCertificate:
    """E(1^(n-1), k^n) -> B(k), by induction on n.

    Odd n = 2m+1 goes through E(k^m, k^(m+1)) via the ball-packing step
    and two suspended lower-dimensional instances; even n = 2m squares
    the parameter and then splits each k^2 axis into (k, k)."""
    if not (isinstance(k, int) and isinstance(n, int) and k >= 1 and n >= 1):
        raise InvalidInput("need integers k >= 1 and n >= 1")
    if k == 1 or n == 1:
        e = Ellipsoid.of(*([1] * (n - 1) + [k**n])) if n > 1 else Ellipsoid.of(k)
        return identity_certificate(e)
    source = Ellipsoid.of(*([1] * (n - 1) + [k**n]))
    target = Ellipsoid.ball(k, n)
    if n == 2:
        # k^2 = 4 or k^2 >= 9, so the square-root axiom applies
        step = EmbeddingStep(AxiomMSsqrt(rational(k**2), _ONE), target)
        return EmbeddingCertificate(source, target, (step,))
    steps = []
    current = source
    if n % 2 == 1:
        m = (n - 1) // 2
        step = suspend_step(current, build_olga2(k, m))
        steps.append(step)
        current = step.result
        for dim_inner in (m, m + 1):
            inner = build_olga3(k, dim_inner)
            if inner.steps:
                step = suspend_step(current, inner)
                steps.append(step)
                current = step.result
    else:
        m = n // 2
        inner = build_olga3(k**2, m)
        if inner.steps:
            step = suspend_step(current, inner)
            steps.append(step)
            current = step.result
        split = EmbeddingCertificate(
            Ellipsoid.of(1, k**2),
            Ellipsoid.ball(k, 2),
            (
                EmbeddingStep(
                    AxiomMSsqrt(rational(k**2), _ONE), Ellipsoid.ball(k, 2)
                ),
            ),
        )
        for _ in range(m):
            step = suspend_step(current, split)
            steps.append(step)
            current = step.result
    return EmbeddingCertificate(source, target, tuple(steps))


def build_olga4(
    b, n: int, budget: Optional[PrecisionBudget] = None
) -> EmbeddingCertificate:
    """E(1^(n-1), b) -> B(b^(1/n)) for real b >= M_n.

    The chain trades the large axis for a balanced pair via the lambda
    rule, contracts the first n-1 axes by induction, and finishes with the
    integer-parameter construction at w = floor(b^((n-2)/(2n(n-1))))."""
    if n < 2:
        raise InvalidInput("need n >= 2")
    b = to_expr(b)
    bounds = stability_bounds(n, 64)
    if compare(b, bounds.m_expr, budget) is Ordering.LESS:
        raise HypothesisViolated(f"need b >= M_{n}")
    if n == 2:
        source = Ellipsoid.of(1, b)
        target = Ellipsoid.of(sqrt(b), sqrt(b))
        step = EmbeddingStep(AxiomMSsqrt(b, _ONE), target)
        return EmbeddingCertificate(source, target, (step,))

    exp = Fraction(n - 2, 2 * n * (n - 1))
    c = power(b, exp)
    w = floor_expr(c, budget)
    lam = power(rational(w) / c, n - 1)
    source = Ellipsoid.of(*([1] * (n - 1) + [b]))
    steps = []

    lam_inner = EmbeddingCertificate(
        Ellipsoid.of(1, b),
        Ellipsoid.of(lam * sqrt(b), sqrt(b) / lam),
        (
            EmbeddingStep(
                AxiomLambda35(lam, b, _ONE),
                Ellipsoid.of(lam * sqrt(b), sqrt(b) / lam),
            ),
        ),
    )
    step = suspend_step(source, lam_inner, budget)
    steps.append(step)
    current = step.result

    tall = sqrt(b) / lam
    inner = build_olga4(tall, n - 1, budget)
    step = suspend_step(current, inner, budget)
    steps.append(step)
    current = step.result

    s = power(tall, Fraction(1, n - 1))
    finish = rescale_certificate(build_olga3(w, n), s)
    steps.extend(finish.steps)
    target = Ellipsoid.of(*([power(b, Fraction(1, n))] * n))
    return EmbeddingCertificate(source, target, tuple(steps))


def build_fullfill2(
    a, b, budget: Optional[PrecisionBudget] = None
) -> EmbeddingCertificate:
    """E(1, a, b) -> B((ab)^(1/3)) under either volume-filling hypothesis:
    b > M_3^4 a^2, or a >= 289/36 and b > M_3^2."""
    a, b = to_expr(a), to_expr(b)
    if compare(a, 1, budget) is Ordering.LESS or compare(b, a, budget) is Ordering.LESS:
        raise InvalidInput("need 1 <= a <= b")
    m3 = stability_bounds(3, 64).m_expr
    source = Ellipsoid.of(1, a, b)
    target = Ellipsoid.of(*([power(a * b, Fraction(1, 3))] * 3))

    if compare(b, m3**4 * a * a, budget) is Ordering.GREATER:
        steps = []
        first = EmbeddingCertificate(
            Ellipsoid.of(1, b),
            Ellipsoid.of(sqrt(b), sqrt(b)),
            (EmbeddingStep(AxiomMSsqrt(b, _ONE), Ellipsoid.of(sqrt(b), sqrt(b))),),
        )
        step = suspend_step(source, first, budget)
        steps.append(step)
        current = step.result

        ratio = sqrt(b) / a
        second = EmbeddingCertificate(
            Ellipsoid.of(a, sqrt(b)),
            Ellipsoid.of(a * sqrt(ratio), a * sqrt(ratio)),
            (
                EmbeddingStep(
                    AxiomMSsqrt(ratio, a),
                    Ellipsoid.of(a * sqrt(ratio), a * sqrt(ratio)),
                ),
            ),
        )
        step = suspend_step(current, second, budget)
        steps.append(step)
        current = step.result

        inner_b = power(b, Fraction(1, 4)) / power(a, Fraction(1, 2))
        scale = power(a, Fraction(1, 2)) * power(b, Fraction(1, 4))
        finish = rescale_certificate(build_olga4(inner_b, 3, budget), scale)
        steps.extend(finish.steps)
        return EmbeddingCertificate(source, target, tuple(steps))

    if (
        compare(a, rational(M2), budget) is not Ordering.LESS
        and compare(b, m3**2, budget) is Ordering.GREATER
    ):
        steps = []
        first = EmbeddingCertificate(
            Ellipsoid.of(1, a),
            Ellipsoid.of(sqrt(a), sqrt(a)),
            (EmbeddingStep(AxiomMSsqrt(a, _ONE), Ellipsoid.of(sqrt(a), sqrt(a))),),
        )
        step = suspend_step(source, first, budget)
        steps.append(step)
        current = step.result

        inner_b = b / sqrt(a)
        finish = rescale_certificate(build_olga4(inner_b, 3, budget), sqrt(a))
        steps.extend(finish.steps)
        return EmbeddingCertificate(source, target, tuple(steps))

    raise HypothesisViolated(
        "need b > M_3^4 a^2, or a >= 289/36 with b > M_3^2"
    )


def build_lambdatrick(u: int, v: int, p: int, q: int) -> EmbeddingCertificate:
    """E(1, p^2/q^2) -> E(up/(vq), vp/(uq)) for integers with u <= v,
    p >= 3q, and 2v^2 <= 3u^2 (that is, sqrt(2/3) <= u/v <= 1).

    The two sufficiency inequalities behind the rule are re-derived, and
    for small instances the equivalent ball-packing problem is re-decided
    as a cross-check.
    """
    for name, val in (("u", u), ("v", v), ("p", p), ("q", q)):
        if not isinstance(val, int) or val <= 0:
            raise InvalidInput(f"{name} must be a positive integer")
    if u > v:
        raise HypothesisViolated("need u <= v so that lambda = u/v <= 1")
    if p < 3 * q:
        raise HypothesisViolated("need p >= 3q so that b >= 9")
    if 2 * v * v > 3 * u * u:
        raise HypothesisViolated(
            f"need 2v^2 <= 3u^2; lambda^2 = {Fraction(u*u, v*v)} < 2/3"
        )
    # sufficiency inequalities implied by the hypotheses
    assert 3 * u * v * q * q <= v * v * p * q
    assert 3 * (v * v - u * u) * p * q <= v * v * p * q

    lam = rational(Fraction(u, v))
    b = rational(Fraction(p * p, q * q))
    source = Ellipsoid.of(1, b)
    target = Ellipsoid.of(Fraction(u * p, v * q), Fraction(v * p, u * q))
    step = EmbeddingStep(AxiomLambda35(lam, b, _ONE), target)
    cert = EmbeddingCertificate(source, target, (step,))

    w1 = weight_expansion(u * v * q * q, u * v * p * p)
    w2_count = 0
    if v * v - u * u > 0:
        w2 = weight_expansion((v * v - u * u) * p * q, v * v * p * q)
        w2_count = w2.count()
    if w1.count() + w2_count <= _LAMBDA_CROSSCHECK_BALLS:
        from ..weights import BallPackingProblem

        runs = list(w1.entries)
        if w2_count:
            runs.extend(w2.entries)
        problem = BallPackingProblem.from_runs(Fraction(v * v * p * q), runs)
        result = feasible(problem)
        if result.status is not Feasibility.FEASIBLE:
            from ..errors import VerificationFailed

            raise VerificationFailed(
                "lambda-rule cross-check failed; this indicates a bug"
            )
    return cert


@dataclass(frozen=True)
class PackCertificate:
    """Evidence that k unit balls fill B^{2n}(k^(1/n)): a verified toric
    step placing the balls inside E(1^(n-1), k) plus an ellipsoid chain
    E(1^(n-1), k) -> B(k^(1/n))."""

    k: int
    n: int
    theta: UnimodularAffineMap
    toric_explicit: bool
    ellipsoid: EmbeddingCertificate


def build_pack(
    k: int, n: int, budget: Optional[PrecisionBudget] = None
) -> PackCertificate:
    """Full packing of B^{2n} by k equal balls, for integer k >= M_n."""
    if not isinstance(k, int) or k < 1 or n < 2:
        raise InvalidInput("need integer k >= 1 and n >= 2")
    bounds = stability_bounds(n, 64)
    if compare(rational(k), bounds.m_expr, budget) is Ordering.LESS:
        raise HypothesisViolated(f"need k >= M_{n}")
    if k <= _TORIC_EXPLICIT_LIMIT:
        decomposition = subdivide_decomposition(k, n)
        report = verify_tiling(decomposition)
        if not report:
            from ..errors import VerificationFailed

            raise VerificationFailed(f"toric subdivision failed: {report.reason}")
        theta = decomposition.parts[1].to_standard if k > 1 else (
            UnimodularAffineMap.identity(n)
        )
        explicit = True
    else:
        theta = check_subdivision_symbolic(k, n)
        explicit = False
    ellipsoid = build_olga4(rational(k), n, budget)
    return PackCertificate(k, n, theta, explicit, ellipsoid)


def verify_pack_certificate(
    pc: PackCertificate, budget: Optional[PrecisionBudget] = None
) -> bool:
    """Re-check both halves of a packing certificate."""
    from .verify import verify_certificate

    if pc.k <= _TORIC_EXPLICIT_LIMIT:
        if not verify_tiling(subdivide_decomposition(pc.k, pc.n)):
            return False
    else:
        check_subdivision_symbolic(pc.k, pc.n)
    expected_source = Ellipsoid.of(*([1] * (pc.n - 1) + [pc.k]))
    from .rules import multiset_equal

    if not multiset_equal(pc.ellipsoid.source, expected_source, budget):
        return False
    expected_target = Ellipsoid.of(
        *([power(rational(pc.k), Fraction(1, pc.n))] * pc.n)
    )
    if not multiset_equal(pc.ellipsoid.target, expected_target, budget):
        return False
    return bool(verify_certificate(pc.ellipsoid, budget))
