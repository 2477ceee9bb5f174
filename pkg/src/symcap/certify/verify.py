"""Independent re-checking of embedding certificates.

The verifier trusts nothing from the builders: every rule hypothesis is
re-decided with certified comparisons, ball-packing steps re-run the
packing decision, and suspended certificates verify recursively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..capacities import Ellipsoid
from ..errors import PrecisionExhausted
from ..exact import Ordering, PrecisionBudget, compare, rational, sqrt
from ..packing import Feasibility, feasible
from ..weights import ellipsoid_to_ball_problem
from .rules import (
    M2,
    SQRT_2_3,
    AxiomLambda35,
    AxiomMSg2,
    AxiomMSsqrt,
    AxiomTwoA1,
    BallPack4D,
    EmbeddingCertificate,
    Inclusion,
    Permute,
    Rescale,
    Suspend,
    multiset_equal,
    multiset_remove,
)


@dataclass(frozen=True)
class VerificationResult:
    valid: bool
    step_index: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def _invalid(i: int, reason: str) -> VerificationResult:
    return VerificationResult(False, i, reason)


def _check_two_axes(pre: Ellipsoid, scale, b, budget) -> Optional[str]:
    if pre.dim != 2:
        return f"rule needs a 2-dimensional ellipsoid, got dimension {pre.dim}"
    if compare(scale, 0, budget) is not Ordering.GREATER:
        return "scale factor must be positive"
    expected = (scale * rational(1), scale * b)
    got = pre.axes
    if (
        compare(got[0], expected[0], budget) is Ordering.EQUAL
        and compare(got[1], expected[1], budget) is Ordering.EQUAL
    ) or (
        compare(got[0], expected[1], budget) is Ordering.EQUAL
        and compare(got[1], expected[0], budget) is Ordering.EQUAL
    ):
        return None
    return "ellipsoid does not match E(t, t*b) for the rule parameters"


def _verify_step(
    pre: Ellipsoid, step, budget: PrecisionBudget
) -> Optional[str]:
    """None when the step checks out, else a failure reason."""
    rule, result = step.rule, step.result

    if isinstance(rule, Inclusion):
        if pre.dim != result.dim:
            return "inclusion changes dimension"
        for a, b in zip(pre.axes, result.axes):
            if compare(a, b, budget) is Ordering.GREATER:
                return "inclusion hypothesis fails: source axis exceeds target"
        return None

    if isinstance(rule, Permute):
        if sorted(rule.perm) != list(range(pre.dim)):
            return "not a permutation of the axis indices"
        if not multiset_equal(pre, result, budget):
            return "permutation changes the axis multiset"
        return None

    if isinstance(rule, Rescale):
        if compare(rule.factor, 1, budget) is Ordering.LESS:
            return "rescale factor below 1 is not an embedding"
        if not multiset_equal(pre.scale(rule.factor), result, budget):
            return "rescale result mismatch"
        return None

    if isinstance(rule, AxiomMSsqrt):
        if not (
            compare(rule.b, 4, budget) is Ordering.EQUAL
            or compare(rule.b, rational(M2), budget) is not Ordering.LESS
        ):
            return "hypothesis fails: need b = 4 or b >= 289/36"
        bad = _check_two_axes(pre, rule.scale, rule.b, budget)
        if bad:
            return bad
        expected = Ellipsoid.of(rule.scale * sqrt(rule.b), rule.scale * sqrt(rule.b))
        if not multiset_equal(expected, result, budget):
            return "result is not B(t*sqrt(b))"
        return None

    if isinstance(rule, AxiomMSg2):
        if (
            compare(rule.b, 2, budget) is Ordering.LESS
            or compare(rule.b, 4, budget) is Ordering.GREATER
        ):
            return "hypothesis fails: need 2 <= b <= 4"
        bad = _check_two_axes(pre, rule.scale, rule.b, budget)
        if bad:
            return bad
        expected = Ellipsoid.of(rule.scale * 2, rule.scale * 2)
        if not multiset_equal(expected, result, budget):
            return "result is not B(2t)"
        return None

    if isinstance(rule, AxiomTwoA1):
        a1, an = pre.axes[0], pre.axes[-1]
        if compare(an, a1 * 2, budget) is Ordering.GREATER:
            return "hypothesis fails: need a_n <= 2 a_1"
        expected = Ellipsoid.of(*([an] * pre.dim))
        if not multiset_equal(expected, result, budget):
            return "result is not B(a_n)"
        return None

    if isinstance(rule, AxiomLambda35):
        if compare(rule.lam, SQRT_2_3, budget) is Ordering.LESS:
            return "hypothesis fails: need lambda >= sqrt(2/3)"
        if compare(rule.lam, 1, budget) is Ordering.GREATER:
            return "hypothesis fails: need lambda <= 1"
        if compare(rule.b, 9, budget) is Ordering.LESS:
            return "hypothesis fails: need b >= 9"
        bad = _check_two_axes(pre, rule.scale, rule.b, budget)
        if bad:
            return bad
        rt = sqrt(rule.b)
        expected = Ellipsoid.of(
            rule.scale * rule.lam * rt, rule.scale * rt / rule.lam
        )
        if not multiset_equal(expected, result, budget):
            return "result is not E(t*lam*sqrt(b), t*sqrt(b)/lam)"
        return None

    if isinstance(rule, BallPack4D):
        e, f, c, d = rule.e, rule.f, rule.c, rule.d
        if not all(isinstance(v, int) and v > 0 for v in (e, f, c, d)):
            return "ball-packing parameters must be positive integers"
        if e > f or c > d:
            return "ball-packing parameters must satisfy e <= f, c <= d"
        if pre.dim != 2:
            return "ball-packing rule needs a 2-dimensional ellipsoid"
        if compare(rule.scale, 0, budget) is not Ordering.GREATER:
            return "scale factor must be positive"
        expected_pre = Ellipsoid.of(rule.scale * e, rule.scale * f)
        if not multiset_equal(expected_pre, pre, budget):
            return "ellipsoid does not match E(t*e, t*f)"
        problem = ellipsoid_to_ball_problem(e, f, c, d)
        if feasible(problem).status is not Feasibility.FEASIBLE:
            return "associated ball-packing problem is infeasible"
        expected = Ellipsoid.of(rule.scale * c, rule.scale * d)
        if not multiset_equal(expected, result, budget):
            return "result is not E(t*c, t*d)"
        return None

    if isinstance(rule, Suspend):
        inner = rule.inner
        if rule.m != inner.dim:
            return "suspend dimension mismatch"
        sub = verify_certificate(inner, budget)
        if not sub:
            return f"inner certificate invalid at step {sub.step_index}: {sub.reason}"
        remaining = multiset_remove(pre.axes, inner.source.axes, budget)
        if remaining is None:
            return "inner source is not a sub-multiset of the current axes"
        expected = Ellipsoid.of(*(remaining + list(inner.target.axes)))
        if not multiset_equal(expected, result, budget):
            return "suspend result does not replace the chosen axes"
        return None

    return f"unknown rule {rule!r}"


def verify_certificate(
    cert: EmbeddingCertificate, budget: Optional[PrecisionBudget] = None
) -> VerificationResult:
    """Re-check every step hypothesis and the chain composition."""
    budget = budget or PrecisionBudget()
    current = cert.source
    for i, step in enumerate(cert.steps):
        try:
            reason = _verify_step(current, step, budget)
        except PrecisionExhausted as exc:
            raise PrecisionExhausted(f"at step {i}: {exc}") from exc
        if reason is not None:
            return _invalid(i, reason)
        current = step.result
    if not multiset_equal(current, cert.target, budget):
        return VerificationResult(
            False, len(cert.steps), "chain does not end at the target"
        )
    return VerificationResult(True)
