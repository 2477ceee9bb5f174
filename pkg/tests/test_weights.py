"""Continued fractions, weight expansions, and the ball-problem reduction."""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcap.errors import InvalidInput
from symcap.weights import (
    BallPackingProblem,
    continued_fraction,
    ellipsoid_to_ball_problem,
    weight_expansion,
)


class TestContinuedFraction:
    @pytest.mark.parametrize(
        "e,f,terms",
        [(2, 5, (2, 2)), (100, 125, (1, 4)), (1, 7, (7,)), (3, 3, (1,))],
    )
    def test_quoted_expansions(self, e, f, terms):
        assert continued_fraction(e, f).terms == terms

    def test_reconstruction(self, rng):
        for _ in range(300):
            e = rng.randint(1, 300)
            f = rng.randint(e, 600)
            cf = continued_fraction(e, f)
            assert cf.value() == Fraction(f, e)
            assert all(t >= 1 for t in cf.terms)

    def test_rejects_bad_input(self):
        for bad in [(0, 3), (3, 0), (5, 2)]:
            with pytest.raises(InvalidInput):
                continued_fraction(*bad)
        with pytest.raises(InvalidInput):
            continued_fraction(Fraction(1, 2), 2)


class TestWeightExpansion:
    @pytest.mark.parametrize(
        "e,f,entries",
        [
            (1, 8, ((1, 8),)),
            (100, 125, ((100, 1), (25, 4))),
            (2, 5, ((2, 2), (1, 2))),
            (6, 9, ((6, 1), (3, 2))),
        ],
    )
    def test_quoted_expansions(self, e, f, entries):
        got = tuple((int(w), m) for w, m in weight_expansion(e, f).entries)
        assert got == entries

    def test_identities_exhaustive(self):
        for f in range(1, 201):
            for e in range(1, f + 1):
                w = weight_expansion(e, f)
                assert w.sum_squares() == e * f
                assert w.sum_linear() == e + f - math.gcd(e, f)

    def test_weights_strictly_decreasing(self, rng):
        for _ in range(200):
            e = rng.randint(1, 200)
            f = rng.randint(e, 400)
            entries = weight_expansion(e, f).entries
            weights = [w for w, _ in entries]
            assert weights == sorted(weights, reverse=True)
            assert len(set(weights)) == len(weights)

    def test_homogeneity(self, rng):
        for _ in range(50):
            e = rng.randint(1, 60)
            f = rng.randint(e, 120)
            t = rng.randint(1, 10)
            base = weight_expansion(e, f)
            scaled = weight_expansion(t * e, t * f)
            assert scaled.entries == tuple((t * w, m) for w, m in base.entries)

    def test_rational_inputs_cleared(self):
        w = weight_expansion(Fraction(1, 2), Fraction(5, 2))
        base = weight_expansion(1, 5)
        assert w.entries == tuple(
            (Fraction(1, 2) * x, m) for x, m in base.entries
        )

    def test_recursion_terminates_at_zero(self):
        # termination is asserted inside weight_expansion; a sweep suffices
        for f in range(1, 80):
            for e in range(1, f + 1):
                weight_expansion(e, f)


class TestBallProblem:
    def test_quoted_instance_small(self):
        p = ellipsoid_to_ball_problem(1, 8, 2, 4)
        assert p.target_capacity == 4
        assert Counter(p.balls) == Counter({Fraction(1): 8, Fraction(2): 2})

    def test_quoted_instance_large(self):
        p = ellipsoid_to_ball_problem(1, 3125, 25, 125)
        assert p.target_capacity == 125
        assert Counter(p.balls) == Counter(
            {Fraction(1): 3125, Fraction(100): 1, Fraction(25): 4}
        )

    def test_degenerate_identity(self):
        p = ellipsoid_to_ball_problem(1, 1, 1, 1)
        assert p.target_capacity == 1
        assert p.balls == (Fraction(1),)

    def test_rejects_bad_ordering(self):
        with pytest.raises(InvalidInput):
            ellipsoid_to_ball_problem(3, 2, 1, 1)
        with pytest.raises(InvalidInput):
            ellipsoid_to_ball_problem(1, 2, 3, 2)

    def test_run_length_roundtrip(self):
        p = BallPackingProblem.of(Fraction(5), [1, 1, 2, Fraction(1, 2)])
        assert p.count == 4
        assert p.balls == (2, 1, 1, Fraction(1, 2))
        assert p.sum_squares() == 4 + 1 + 1 + Fraction(1, 4)

    def test_huge_problem_stays_run_length(self):
        p = ellipsoid_to_ball_problem(1, 288**3, 288, 288**2)
        assert p.count == 288**3 + 288
        assert len(p.ball_runs) == 3
        with pytest.raises(InvalidInput):
            _ = p.balls


@settings(max_examples=150, deadline=None)
@given(
    e=st.integers(min_value=1, max_value=400),
    f=st.integers(min_value=1, max_value=400),
)
def test_weight_identities_property(e, f):
    e, f = min(e, f), max(e, f)
    w = weight_expansion(e, f)
    assert w.sum_squares() == e * f
    assert w.sum_linear() == e + f - math.gcd(e, f)
