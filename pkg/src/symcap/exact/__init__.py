"""Exact numeric foundation: rationals, radical expressions, certified
interval evaluation, and comparison."""

from .compare import (
    Ordering,
    ceil_expr,
    compare,
    floor_expr,
    is_eq,
    is_ge,
    is_le,
    is_lt,
)
from .expr import (
    ONE,
    ZERO,
    RealExpr,
    floor_node,
    power,
    rational,
    root,
    sqrt,
    to_expr,
)
from .grammar import format_expr, parse_expr
from .interval import (
    DEFAULT_MAX_BITS,
    IntervalApprox,
    PrecisionBudget,
    eval_interval,
    introot,
)
from .normal import normalize, rational_value

__all__ = [
    "DEFAULT_MAX_BITS",
    "IntervalApprox",
    "Ordering",
    "PrecisionBudget",
    "RealExpr",
    "ONE",
    "ZERO",
    "ceil_expr",
    "compare",
    "eval_interval",
    "floor_expr",
    "floor_node",
    "format_expr",
    "introot",
    "is_eq",
    "is_ge",
    "is_le",
    "is_lt",
    "normalize",
    "parse_expr",
    "power",
    "rational",
    "rational_value",
    "root",
    "sqrt",
    "to_expr",
]
