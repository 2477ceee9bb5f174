"""Shared oracles and helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from symcap.exact import RealExpr, rational, root


def brute_force_capacities(axes, count):
    """Independent oracle: enumerate {j * a_i : j <= count} and sort."""
    values = []
    for a in axes:
        values.extend(Fraction(a) * j for j in range(1, count + 1))
    values.sort()
    return values[:count]


def random_rational(rng: random.Random, max_num=60, max_den=12) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_expression(rng: random.Random, depth: int = 3) -> RealExpr:
    """Random well-formed expression over positive rationals and roots."""
    if depth == 0 or rng.random() < 0.3:
        return rational(random_rational(rng))
    kind = rng.choice(["add", "mul", "div", "root", "sub"])
    if kind == "root":
        return root(random_expression(rng, depth - 1), rng.randint(2, 5))
    a = random_expression(rng, depth - 1)
    b = random_expression(rng, depth - 1)
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / (b + rational(1))  # keep the divisor away from zero
    # subtraction shifted to stay positive-ish is not needed; sub is fine
    return a - b


@pytest.fixture
def rng():
    return random.Random(20240811)
