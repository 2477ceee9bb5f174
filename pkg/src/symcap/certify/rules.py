"""Step rules and certificate containers for ellipsoid embeddings.

A certificate is a chain of steps from a source ellipsoid to a target;
each step names a rule whose hypothesis is decidable by exact comparison
(plus one rule backed by the 4-dimensional ball-packing decision) and
records the ellipsoid it produces.  Axiom rules carry an explicit scale
factor so that rescaling a whole certificate stays within the rule set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from ..capacities import Ellipsoid
from ..errors import InvalidInput
from ..exact import (
    Ordering,
    PrecisionBudget,
    RealExpr,
    compare,
    sqrt,
    to_expr,
)

M2 = Fraction(289, 36)  # threshold of the 4-dimensional square-root regime


@dataclass(frozen=True)
class Inclusion:
    """E(a) embeds in E(b) whenever a_i <= b_i for every i."""


@dataclass(frozen=True)
class Permute:
    """Reordering the axes does not change the ellipsoid."""

    perm: Tuple[int, ...]


@dataclass(frozen=True)
class Rescale:
    """E embeds in factor * E for factor >= 1."""

    factor: RealExpr


@dataclass(frozen=True)
class AxiomMSsqrt:
    """E(t, t*b) embeds in B(t*sqrt(b)) when b = 4 or b >= 289/36."""

    b: RealExpr
    scale: RealExpr


@dataclass(frozen=True)
class AxiomMSg2:
    """E(t, t*b) embeds in B(2t) when 2 <= b <= 4."""

    b: RealExpr
    scale: RealExpr


@dataclass(frozen=True)
class AxiomTwoA1:
    """E(a_1,...,a_n) embeds in B(a_n) when a_n <= 2 a_1."""


@dataclass(frozen=True)
class AxiomLambda35:
    """E(t, t*b) embeds in E(t*lam*sqrt(b), t*sqrt(b)/lam) when
    sqrt(2/3) <= lam <= 1 and b >= 9."""

    lam: RealExpr
    b: RealExpr
    scale: RealExpr


@dataclass(frozen=True)
class BallPack4D:
    """E(t*e, t*f) embeds in E(t*c, t*d) when the associated 4-dimensional
    ball-packing problem with target capacity d is feasible."""

    e: int
    f: int
    c: int
    d: int
    scale: RealExpr


@dataclass(frozen=True)
class Suspend:
    """A valid m-dimensional certificate applies to any m axes of a larger
    ellipsoid, leaving the remaining axes untouched."""

    m: int
    inner: "EmbeddingCertificate"


StepRule = Union[
    Inclusion,
    Permute,
    Rescale,
    AxiomMSsqrt,
    AxiomMSg2,
    AxiomTwoA1,
    AxiomLambda35,
    BallPack4D,
    Suspend,
]


@dataclass(frozen=True)
class EmbeddingStep:
    rule: StepRule
    result: Ellipsoid


@dataclass(frozen=True)
class EmbeddingCertificate:
    source: Ellipsoid
    target: Ellipsoid
    steps: Tuple[EmbeddingStep, ...]

    @property
    def dim(self) -> int:
        return self.source.dim


# -- exact multiset operations on axis tuples ---------------------------------


def multiset_equal(
    a: Ellipsoid, b: Ellipsoid, budget: Optional[PrecisionBudget] = None
) -> bool:
    """Equality of axis multisets under certified comparison.  Both tuples
    are sorted, so elementwise Equal decides it."""
    if a.dim != b.dim:
        return False
    return all(
        compare(x, y, budget) is Ordering.EQUAL for x, y in zip(a.axes, b.axes)
    )


def multiset_remove(
    axes: Tuple[RealExpr, ...],
    sub: Tuple[RealExpr, ...],
    budget: Optional[PrecisionBudget] = None,
) -> Optional[List[RealExpr]]:
    """Remove the sub-multiset from axes; None if not contained."""
    remaining = list(axes)
    for s in sub:
        for i, r in enumerate(remaining):
            if compare(s, r, budget) is Ordering.EQUAL:
                remaining.pop(i)
                break
        else:
            return None
    return remaining


# -- certificate transformers --------------------------------------------------


def _scaled_rule(rule: StepRule, t: RealExpr) -> StepRule:
    if isinstance(rule, (Inclusion, Permute, AxiomTwoA1)):
        return rule
    if isinstance(rule, Rescale):
        return rule
    if isinstance(rule, AxiomMSsqrt):
        return AxiomMSsqrt(rule.b, t * rule.scale)
    if isinstance(rule, AxiomMSg2):
        return AxiomMSg2(rule.b, t * rule.scale)
    if isinstance(rule, AxiomLambda35):
        return AxiomLambda35(rule.lam, rule.b, t * rule.scale)
    if isinstance(rule, BallPack4D):
        return BallPack4D(rule.e, rule.f, rule.c, rule.d, t * rule.scale)
    if isinstance(rule, Suspend):
        return Suspend(rule.m, rescale_certificate(rule.inner, t))
    raise InvalidInput(f"unknown rule {rule!r}")


def rescale_certificate(
    cert: EmbeddingCertificate, t
) -> EmbeddingCertificate:
    """Scale source, target, and every step by the positive factor t."""
    t = to_expr(t)
    if compare(t, 0) is not Ordering.GREATER:
        raise InvalidInput("rescale factor must be positive")
    return EmbeddingCertificate(
        cert.source.scale(t),
        cert.target.scale(t),
        tuple(
            EmbeddingStep(_scaled_rule(s.rule, t), s.result.scale(t))
            for s in cert.steps
        ),
    )


def concat_certificates(
    first: EmbeddingCertificate, second: EmbeddingCertificate
) -> EmbeddingCertificate:
    """Chain two certificates; first.target must equal second.source."""
    if not multiset_equal(first.target, second.source):
        raise InvalidInput("certificates do not chain")
    return EmbeddingCertificate(
        first.source, second.target, first.steps + second.steps
    )


def identity_certificate(e: Ellipsoid) -> EmbeddingCertificate:
    return EmbeddingCertificate(e, e, ())


def suspend_step(
    current: Ellipsoid,
    inner: EmbeddingCertificate,
    budget: Optional[PrecisionBudget] = None,
) -> EmbeddingStep:
    """Build the Suspend step applying ``inner`` to the matching axes of
    ``current``; the result keeps the untouched axes."""
    remaining = multiset_remove(current.axes, inner.source.axes, budget)
    if remaining is None:
        raise InvalidInput("inner certificate source is not a sub-multiset")
    result = Ellipsoid.of(*(remaining + list(inner.target.axes)))
    return EmbeddingStep(Suspend(inner.dim, inner), result)


SQRT_2_3 = sqrt(Fraction(2, 3))
