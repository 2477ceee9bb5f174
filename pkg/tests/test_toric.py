"""Lattice-simplex decompositions and their exact certification."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest

from symcap.errors import InvalidInput
from symcap.toric import (
    Decomposition,
    UnimodularAffineMap,
    check_subdivision_symbolic,
    fig2_decomposition,
    moment_polytope,
    subdivide,
    subdivide_decomposition,
    unit_subdivide,
    verify_tiling,
)
from symcap.weights import ellipsoid_to_ball_problem


class TestMomentPolytope:
    def test_three_dimensional(self):
        p = moment_polytope([1, 1, 2])
        assert p.dimension == 3
        assert set(p.vertices) == {
            (0, 0, 0),
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 2),
        }

    def test_segment(self):
        p = moment_polytope([1])
        assert set(p.vertices) == {(0,), (1,)}

    def test_triangle(self):
        p = moment_polytope([2, 3])
        assert set(p.vertices) == {(0, 0), (2, 0), (0, 3)}
        assert p.volume() == 3

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidInput):
            moment_polytope([1, 0])


class TestUnimodularMap:
    def test_determinant_enforced(self):
        with pytest.raises(InvalidInput):
            UnimodularAffineMap.of([[2, 0], [0, 1]], [0, 0])

    def test_compose_and_apply(self):
        a = UnimodularAffineMap.of([[1, 1], [0, 1]], [1, 0])
        b = UnimodularAffineMap.of([[1, 0], [1, 1]], [0, Fraction(1, 2)])
        p = (Fraction(2), Fraction(3))
        assert a.compose(b).apply(p) == a.apply(b.apply(p))


class TestSubdivide:
    def test_quoted_two_two(self):
        parts, theta = subdivide(2, 2)
        assert theta.linear == ((1, 0), (1, 1))
        assert theta.translation == (0, -1)
        assert set(parts[0].vertices) == {(1, 0), (0, 0), (0, 1)}
        assert set(parts[1].vertices) == {(1, 0), (0, 1), (0, 2)}

    def test_single_slice_is_whole(self):
        parts, _ = subdivide(1, 3)
        assert set(parts[0].vertices) == set(moment_polytope([1, 1, 1]).vertices)

    def test_three_tetrahedra_volumes(self):
        parts, _ = subdivide(3, 3)
        vols = [p.volume() for p in parts]
        assert vols == [Fraction(1, 6)] * 3
        assert sum(vols) == moment_polytope([1, 1, 3]).volume()

    @pytest.mark.parametrize("k", range(1, 11))
    @pytest.mark.parametrize("n", range(2, 5))
    def test_tiling_verifies(self, k, n):
        assert verify_tiling(subdivide_decomposition(k, n))

    def test_symbolic_check_matches_explicit(self):
        explicit_theta = subdivide(7, 3)[1]
        symbolic_theta = check_subdivision_symbolic(7, 3)
        assert explicit_theta == symbolic_theta

    def test_symbolic_check_huge_k(self):
        check_subdivision_symbolic(2 * 10**12, 3)
        check_subdivision_symbolic(10**15, 4)


class TestVerifyTiling:
    def test_detects_overlap(self):
        d = subdivide_decomposition(2, 2)
        bad = Decomposition(d.whole, (d.parts[0], d.parts[0]))
        report = verify_tiling(bad)
        assert not report
        assert "overlap" in report.reason or "volume" in report.reason

    def test_detects_wrong_capacity(self):
        d = subdivide_decomposition(2, 2)
        from symcap.toric import DecompositionPart

        wrong = DecompositionPart(
            d.parts[0].polytope, Fraction(2), d.parts[0].to_standard
        )
        report = verify_tiling(Decomposition(d.whole, (wrong, d.parts[1])))
        assert not report

    def test_detects_escape_from_whole(self):
        d = subdivide_decomposition(2, 2)
        small_whole = moment_polytope([1, 1])
        report = verify_tiling(Decomposition(small_whole, d.parts))
        assert not report


class TestFig2:
    def test_quoted_five_two(self):
        d = fig2_decomposition(5, 2)
        assert Counter(d.capacities()) == Counter({Fraction(100): 1, Fraction(25): 9})
        assert sum(p.polytope.volume() for p in d.parts) == Fraction(125**2, 2)
        assert verify_tiling(d)

    def test_quoted_two_one(self):
        d = fig2_decomposition(2, 1)
        assert Counter(d.capacities()) == Counter({Fraction(2): 4})
        assert sum(p.polytope.volume() for p in d.parts) == 8
        assert verify_tiling(d)

    @pytest.mark.parametrize("k", range(2, 11))
    @pytest.mark.parametrize("x", range(1, 4))
    def test_count_identity(self, k, x):
        # (k-1)^2 k^{2x} + (2k-1) k^{2x} = k^{2x+2}
        assert (k - 1) ** 2 * k ** (2 * x) + (2 * k - 1) * k ** (2 * x) == k ** (
            2 * x + 2
        )
        d = fig2_decomposition(k, x)
        caps = Counter(d.capacities())
        assert caps[Fraction(k ** (x + 1) - k**x)] >= 1
        assert caps[Fraction(k**x)] in (2 * k - 1, 2 * k)  # collide when k=2,x has ties

    def test_rejects_degenerate(self):
        with pytest.raises(InvalidInput):
            fig2_decomposition(1, 1)


class TestUnitSubdivide:
    def test_singleton(self):
        d = unit_subdivide(1)
        assert len(d.parts) == 1
        assert verify_tiling(d)

    @pytest.mark.parametrize("s", [2, 3, 5])
    def test_counts_and_tiling(self, s):
        d = unit_subdivide(s)
        assert len(d.parts) == s * s
        assert all(p.capacity == 1 for p in d.parts)
        assert verify_tiling(d)


class TestInventory:
    @pytest.mark.parametrize("k,x", [(2, 1), (3, 1), (2, 2), (4, 1), (5, 2)])
    def test_fig2_plus_units_reproduce_ball_problem(self, k, x):
        """Splitting k of the strip triangles into unit balls reproduces the
        multiset of the associated ball-packing problem exactly."""
        s = k**x
        d = fig2_decomposition(k, x)
        caps = list(d.capacities())
        for _ in range(k):
            caps.remove(Fraction(s))
            caps.extend(unit_subdivide(s).capacities())
        got = Counter(caps)
        expected = Counter(
            ellipsoid_to_ball_problem(1, k ** (2 * x + 1), s, k ** (x + 1)).balls
        )
        assert got == expected


def test_decomposition_json_export():
    import json

    d = fig2_decomposition(2, 1)
    doc = json.loads(d.to_json())
    assert doc["format"] == "symcap.decomposition/1"
    assert len(doc["parts"]) == len(d.parts)
    assert doc["parts"][0]["capacity"] == "2"
