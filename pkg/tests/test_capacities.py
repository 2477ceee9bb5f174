"""Capacity sequences and the two obstruction tests."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcap.capacities import (
    Ellipsoid,
    VolumeVerdict,
    ball_lower_bound,
    ek_capacities,
    ek_obstruction,
    volume_obstruction,
)
from symcap.errors import InvalidInput
from symcap.exact import Ordering, compare, power, rational, root, sqrt

from conftest import brute_force_capacities


def caps_as_fractions(e, count):
    return ek_capacities(e, count).as_fractions()


class TestEllipsoid:
    def test_axes_sorted(self):
        e = Ellipsoid.of(2, 1, Fraction(3, 2))
        assert [a.data for a in e.axes] == [1, Fraction(3, 2), 2]

    def test_irrational_axes_sorted(self):
        e = Ellipsoid.of(sqrt(2), 1, root(3, 3))
        vals = [1, 1.442, 1.414]
        assert compare(e.axes[0], e.axes[1]) is not Ordering.GREATER
        assert compare(e.axes[1], e.axes[2]) is not Ordering.GREATER

    def test_positive_axes_required(self):
        with pytest.raises(InvalidInput):
            Ellipsoid.of(1, 0)
        with pytest.raises(InvalidInput):
            Ellipsoid.of(-1, 2)

    def test_ball(self):
        b = Ellipsoid.ball(Fraction(3, 2), 3)
        assert b.dim == 3
        assert all(a.data == Fraction(3, 2) for a in b.axes)


class TestEkCapacities:
    def test_quoted_three_dimensional_example(self):
        assert caps_as_fractions(Ellipsoid.of(1, Fraction(3, 2), 2), 3) == [
            1,
            Fraction(3, 2),
            2,
        ]

    def test_round_ball_multiples(self):
        assert caps_as_fractions(Ellipsoid.of(2, 2, 2), 6) == [2, 2, 2, 4, 4, 4]

    def test_two_axis_example(self):
        assert caps_as_fractions(Ellipsoid.of(1, 2), 6) == [1, 2, 2, 3, 4, 4]

    def test_matches_brute_force_oracle(self, rng):
        for _ in range(100):
            n = rng.randint(1, 4)
            axes = [
                Fraction(rng.randint(1, 40), rng.randint(1, 8)) for _ in range(n)
            ]
            count = rng.randint(1, 200)
            got = caps_as_fractions(Ellipsoid.of(*axes), count)
            assert got == brute_force_capacities(axes, count)

    def test_ball_closed_form(self, rng):
        for _ in range(20):
            c = Fraction(rng.randint(1, 60), rng.randint(1, 12))
            n = rng.randint(2, 5)
            caps = caps_as_fractions(Ellipsoid.ball(c, n), 100)
            assert caps == [c * (-(-k // n)) for k in range(1, 101)]

    def test_scale_equivariance(self, rng):
        for _ in range(20):
            axes = [Fraction(rng.randint(1, 20), rng.randint(1, 6)) for _ in range(3)]
            lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            base = caps_as_fractions(Ellipsoid.of(*axes), 60)
            scaled = caps_as_fractions(Ellipsoid.of(*(lam * a for a in axes)), 60)
            assert scaled == [lam * c for c in base]

    def test_axis_monotonicity(self, rng):
        for _ in range(20):
            axes = sorted(Fraction(rng.randint(1, 12)) for _ in range(3))
            bigger = list(axes)
            i = rng.randrange(3)
            bigger[i] += rng.randint(1, 5)
            a = caps_as_fractions(Ellipsoid.of(*axes), 80)
            b = caps_as_fractions(Ellipsoid.of(*bigger), 80)
            assert all(x <= y for x, y in zip(a, b))

    def test_irrational_axes(self):
        caps = ek_capacities(Ellipsoid.of(1, sqrt(2)), 4)
        expected = [1, sqrt(2), 2, 2 * sqrt(2)]
        assert all(
            compare(c, e) is Ordering.EQUAL for c, e in zip(caps.values, expected)
        )


class TestObstructions:
    def test_third_capacity_obstruction(self):
        src = Ellipsoid.of(1, Fraction(3, 2), Fraction(7, 4))
        tgt = Ellipsoid.ball(Fraction(3, 2), 3)
        assert ek_obstruction(src, tgt, 3) == 3

    def test_identity_has_no_obstruction(self):
        e = Ellipsoid.of(1, 1, 1)
        assert ek_obstruction(e, e, 100) is None

    def test_volume_filling_case(self):
        assert ek_obstruction(Ellipsoid.of(1, 1, 8), Ellipsoid.ball(2, 3), 50) is None

    def test_volume_fail(self):
        assert (
            volume_obstruction(Ellipsoid.of(1, 2, 36), Ellipsoid.ball(4, 3))
            is VolumeVerdict.FAIL
        )

    def test_volume_equality_passes(self):
        a, b = 2, 3
        src = Ellipsoid.of(1, a, b)
        tgt = Ellipsoid.ball(power(rational(a * b), Fraction(1, 3)), 3)
        assert volume_obstruction(src, tgt) is VolumeVerdict.PASS

    def test_volume_full_packing_case(self):
        assert (
            volume_obstruction(Ellipsoid.of(1, 1, 8), Ellipsoid.ball(2, 3))
            is VolumeVerdict.PASS
        )

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInput):
            ek_obstruction(Ellipsoid.of(1), Ellipsoid.of(1, 1), 5)


class TestBallLowerBound:
    def test_capacity_dominated(self):
        lb = ball_lower_bound(Ellipsoid.of(1, 1, 4), 50)
        assert compare(lb, rational(2)) is Ordering.EQUAL

    def test_trivial_ball(self):
        lb = ball_lower_bound(Ellipsoid.of(1, 1, 1), 10)
        assert compare(lb, rational(1)) is Ordering.EQUAL

    def test_volume_dominated(self):
        lb = ball_lower_bound(Ellipsoid.of(1, 3, 20), 1000)
        assert compare(lb, power(rational(60), Fraction(1, 3))) is Ordering.EQUAL

    def test_is_a_lower_bound_for_known_embeddings(self):
        # E(1,1,8) embeds in B(2), so the bound cannot exceed 2
        lb = ball_lower_bound(Ellipsoid.of(1, 1, 8), 200)
        assert compare(lb, rational(2)) is not Ordering.GREATER


@settings(max_examples=60, deadline=None)
@given(
    axes=st.lists(
        st.fractions(min_value=Fraction(1, 4), max_value=8, max_denominator=6),
        min_size=1,
        max_size=4,
    ),
    count=st.integers(min_value=1, max_value=60),
)
def test_merge_equals_enumeration(axes, count):
    got = caps_as_fractions(Ellipsoid.of(*axes), count)
    assert got == brute_force_capacities(axes, count)
