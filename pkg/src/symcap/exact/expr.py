"""Expression trees for exact real quantities.

A ``RealExpr`` is an immutable tree over arbitrary-precision rationals with
node kinds: rational leaf, sum, difference, product, quotient, rational
power, and floor.  Values are never approximated at construction time;
evaluation and comparison live in :mod:`symcap.exact.interval` and
:mod:`symcap.exact.compare`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from ..errors import InvalidInput

RationalLike = Union[int, Fraction, "RealExpr"]

_OPS = ("rat", "add", "sub", "mul", "div", "pow", "floor")


@dataclass(frozen=True)
class RealExpr:
    """One node of an exact real-valued expression tree.

    ``op`` selects the node kind; ``args`` holds child expressions and
    ``data`` holds the rational payload (leaf value, or power exponent).
    """

    op: str
    args: tuple["RealExpr", ...] = ()
    data: Optional[Fraction] = None
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        if self.op not in _OPS:
            raise InvalidInput(f"unknown expression op {self.op!r}")
        object.__setattr__(
            self, "_hash", hash((self.op, self.args, self.data))
        )

    def __hash__(self):
        return self._hash

    # -- constructors used by operators ------------------------------------
    # Binary ops on two rational leaves fold to a leaf, so "p/q" strings
    # round-trip structurally through the grammar.

    def __add__(self, other: RationalLike) -> "RealExpr":
        return _binary("add", self, to_expr(other))

    def __radd__(self, other: RationalLike) -> "RealExpr":
        return _binary("add", to_expr(other), self)

    def __sub__(self, other: RationalLike) -> "RealExpr":
        return _binary("sub", self, to_expr(other))

    def __rsub__(self, other: RationalLike) -> "RealExpr":
        return _binary("sub", to_expr(other), self)

    def __mul__(self, other: RationalLike) -> "RealExpr":
        return _binary("mul", self, to_expr(other))

    def __rmul__(self, other: RationalLike) -> "RealExpr":
        return _binary("mul", to_expr(other), self)

    def __truediv__(self, other: RationalLike) -> "RealExpr":
        return _binary("div", self, to_expr(other))

    def __rtruediv__(self, other: RationalLike) -> "RealExpr":
        return _binary("div", to_expr(other), self)

    def __neg__(self) -> "RealExpr":
        if self.op == "rat":
            return rational(-self.data)
        return RealExpr("sub", (rational(0), self))

    def __pow__(self, exponent: Union[int, Fraction]) -> "RealExpr":
        return power(self, exponent)

    # -- conveniences -------------------------------------------------------

    @property
    def is_rational_leaf(self) -> bool:
        return self.op == "rat"

    def exact(self) -> Optional[Fraction]:
        """The exact rational value, when symbolic normalization finds one."""
        from .normal import rational_value

        return rational_value(self)

    def __repr__(self):
        from .grammar import format_expr

        return f"RealExpr({format_expr(self)})"


def _binary(op: str, a: "RealExpr", b: "RealExpr") -> "RealExpr":
    if a.op == "rat" and b.op == "rat":
        if op == "add":
            return rational(a.data + b.data)
        if op == "sub":
            return rational(a.data - b.data)
        if op == "mul":
            return rational(a.data * b.data)
        if op == "div":
            if b.data == 0:
                from ..errors import DomainError

                raise DomainError("division by zero")
            return rational(a.data / b.data)
    return RealExpr(op, (a, b))


def to_expr(x: RationalLike) -> RealExpr:
    """Coerce an int or Fraction into a rational leaf."""
    if isinstance(x, RealExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return rational(x)
    raise InvalidInput(f"cannot interpret {x!r} as an exact expression")


def rational(p: Union[int, Fraction], q: int = 1) -> RealExpr:
    """Exact rational leaf p/q."""
    if q == 0:
        raise InvalidInput("zero denominator")
    value = Fraction(p, q) if q != 1 else Fraction(p)
    return RealExpr("rat", (), value)


def power(base: RationalLike, exponent: Union[int, Fraction]) -> RealExpr:
    """base**exponent for a rational exponent.

    Non-integer exponents require the base to be nonnegative; this is
    checked at evaluation time, not here.
    """
    e = Fraction(exponent)
    b = to_expr(base)
    if b.op == "rat":
        n, k = e.numerator, e.denominator
        folded_bits = abs(n) * (
            b.data.numerator.bit_length() + b.data.denominator.bit_length()
        )
        if folded_bits > 50_000_000:
            return RealExpr("pow", (b,), e)
        if k == 1:
            if n >= 0:
                return rational(b.data**n)
            if b.data != 0:
                return rational((1 / b.data) ** (-n))
        elif b.data > 0:
            from .ints import exact_root

            rn = exact_root(b.data.numerator, k)
            rd = exact_root(b.data.denominator, k)
            if rn is not None and rd is not None:
                folded = Fraction(rn, rd)
                return rational(folded**n if n >= 0 else (1 / folded) ** (-n))
        elif b.data == 0 and n > 0:
            return rational(0)
    return RealExpr("pow", (b,), e)


def root(x: RationalLike, k: int) -> RealExpr:
    """k-th root of x (k >= 1)."""
    if k < 1:
        raise InvalidInput("root index must be >= 1")
    return power(x, Fraction(1, k))


def sqrt(x: RationalLike) -> RealExpr:
    return root(x, 2)


def floor_node(x: RationalLike) -> RealExpr:
    """The floor of x as an expression node (not evaluated)."""
    return RealExpr("floor", (to_expr(x),))


ZERO = rational(0)
ONE = rational(1)
