"""Exact lattice-simplex decompositions of moment polytopes.

Everything here is rational and certified by re-computation: volumes are
exact determinants, claimed capacities come with explicit unimodular
affine maps onto standard simplices, and interior disjointness is
certified by separating facet hyperplanes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import InvalidInput, VerificationFailed

Rat = Union[int, Fraction]
Point = Tuple[Fraction, ...]


def _pt(coords) -> Point:
    return tuple(Fraction(c) for c in coords)


def _det(rows: List[List[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def _solve(a: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    """Solve a*x = b exactly; None if singular."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [v - factor * w for v, w in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@dataclass(frozen=True)
class LatticePolytope:
    """A full-dimensional simplex given by its n+1 vertices."""

    dimension: int
    vertices: Tuple[Point, ...]

    @staticmethod
    def simplex(vertices: Sequence[Sequence[Rat]]) -> "LatticePolytope":
        pts = tuple(_pt(v) for v in vertices)
        if not pts:
            raise InvalidInput("empty vertex list")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise InvalidInput("inconsistent vertex dimensions")
        if len(pts) != n + 1:
            raise InvalidInput("a full-dimensional simplex needs n+1 vertices")
        return LatticePolytope(n, pts)

    def volume(self) -> Fraction:
        v0 = self.vertices[0]
        rows = [
            [x - y for x, y in zip(v, v0)] for v in self.vertices[1:]
        ]
        return abs(_det(rows)) / _factorial(self.dimension)

    def facet_halfspaces(self) -> List[Tuple[Tuple[Fraction, ...], Fraction]]:
        """Inequalities a.x <= beta whose intersection is the simplex,
        one per facet (the omitted vertex lies strictly inside)."""
        out = []
        n = self.dimension
        for skip in range(n + 1):
            pts = [self.vertices[i] for i in range(n + 1) if i != skip]
            base = pts[0]
            rows = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
            normal = _facet_normal(rows, n)
            beta = sum(a * x for a, x in zip(normal, base))
            inside = sum(a * x for a, x in zip(normal, self.vertices[skip]))
            if inside > beta:
                normal = tuple(-a for a in normal)
                beta = -beta
            elif inside == beta:
                raise VerificationFailed("degenerate simplex facet")
            out.append((normal, beta))
        return out

    def contains(self, point: Sequence[Rat], strict: bool = False) -> bool:
        p = _pt(point)
        for normal, beta in self.facet_halfspaces():
            val = sum(a * x for a, x in zip(normal, p))
            if val > beta or (strict and val == beta):
                return False
        return True

    def centroid(self) -> Point:
        n1 = len(self.vertices)
        return tuple(
            sum(v[i] for v in self.vertices) / n1
            for i in range(self.dimension)
        )


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _facet_normal(rows: List[List[Fraction]], n: int) -> Tuple[Fraction, ...]:
    """A nonzero vector orthogonal to the n-1 row vectors (cofactors)."""
    normal = []
    for col in range(n):
        minor = [[row[c] for c in range(n) if c != col] for row in rows]
        sign = -1 if col % 2 else 1
        normal.append(sign * _det(minor))
    if all(x == 0 for x in normal):
        raise VerificationFailed("facet vertices are affinely dependent")
    return tuple(normal)


@dataclass(frozen=True)
class UnimodularAffineMap:
    """x -> A x + t with integer A, |det A| = 1, rational translation."""

    linear: Tuple[Tuple[int, ...], ...]
    translation: Tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.translation)
        if len(self.linear) != n or any(len(r) != n for r in self.linear):
            raise InvalidInput("map shape mismatch")
        d = _det([[Fraction(x) for x in row] for row in self.linear])
        if abs(d) != 1:
            raise InvalidInput("linear part must be unimodular")

    @staticmethod
    def of(linear, translation) -> "UnimodularAffineMap":
        lin = tuple(tuple(int(x) for x in row) for row in linear)
        return UnimodularAffineMap(lin, _pt(translation))

    def apply(self, point: Sequence[Rat]) -> Point:
        p = _pt(point)
        return tuple(
            sum(Fraction(a) * x for a, x in zip(row, p)) + t
            for row, t in zip(self.linear, self.translation)
        )

    def apply_polytope(self, poly: LatticePolytope) -> LatticePolytope:
        return LatticePolytope(
            poly.dimension, tuple(self.apply(v) for v in poly.vertices)
        )

    def compose(self, inner: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """self after inner: x -> A_self (A_inner x + t_inner) + t_self."""
        n = len(self.translation)
        lin = tuple(
            tuple(
                sum(self.linear[i][k] * inner.linear[k][j] for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        trans = self.apply(inner.translation)
        return UnimodularAffineMap(lin, trans)

    @staticmethod
    def identity(n: int) -> "UnimodularAffineMap":
        lin = tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        )
        return UnimodularAffineMap(lin, tuple(Fraction(0) for _ in range(n)))


@dataclass(frozen=True)
class DecompositionPart:
    polytope: LatticePolytope
    capacity: Fraction
    to_standard: UnimodularAffineMap


@dataclass(frozen=True)
class Decomposition:
    """A tiling of ``whole`` by simplices with certified capacities."""

    whole: LatticePolytope
    parts: Tuple[DecompositionPart, ...]

    def capacities(self) -> Tuple[Fraction, ...]:
        return tuple(sorted((p.capacity for p in self.parts), reverse=True))

    def to_json(self) -> str:
        def fmt(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        doc = {
            "format": "symcap.decomposition/1",
            "dimension": self.whole.dimension,
            "whole": [[fmt(c) for c in v] for v in self.whole.vertices],
            "parts": [
                {
                    "capacity": fmt(p.capacity),
                    "vertices": [[fmt(c) for c in v] for v in p.polytope.vertices],
                }
                for p in self.parts
            ],
        }
        return json.dumps(doc, indent=2)


@dataclass(frozen=True)
class TilingReport:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def standard_simplex(capacity: Rat, n: int) -> LatticePolytope:
    """hull{0, c e_1, ..., c e_n}."""
    c = Fraction(capacity)
    verts = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        v = [Fraction(0)] * n
        v[i] = c
        verts.append(tuple(v))
    return LatticePolytope.simplex(verts)


def moment_polytope(axes: Sequence[Rat]) -> LatticePolytope:
    """Moment simplex of E(a_1,...,a_n): hull{0, a_1 e_1, ..., a_n e_n}."""
    axes = [Fraction(a) for a in axes]
    if not axes or any(a <= 0 for a in axes):
        raise InvalidInput("axes must be positive")
    n = len(axes)
    verts = [tuple(Fraction(0) for _ in range(n))]
    for i, a in enumerate(axes):
        v = [Fraction(0)] * n
        v[i] = a
        verts.append(tuple(v))
    return LatticePolytope.simplex(verts)


def _separated(p: LatticePolytope, q: LatticePolytope) -> bool:
    """Closed separation by a facet hyperplane of either simplex."""
    for a, b in (p, q), (q, p):
        for normal, beta in a.facet_halfspaces():
            if all(
                sum(n_ * x for n_, x in zip(normal, v)) >= beta
                for v in b.vertices
            ):
                return True
    return False


def _interior_point_witness(p: LatticePolytope, q: LatticePolytope):
    """A point strictly inside both simplices, if one of the candidate
    points works; None is inconclusive."""
    candidates = [p.centroid(), q.centroid()]
    candidates.append(
        tuple((x + y) / 2 for x, y in zip(p.centroid(), q.centroid()))
    )
    for cand in candidates:
        if p.contains(cand, strict=True) and q.contains(cand, strict=True):
            return cand
    return None


def verify_tiling(d: Decomposition) -> TilingReport:
    """Check volume additivity, containment, interior disjointness, and
    each part's unimodular equivalence to its standard simplex."""
    n = d.whole.dimension
    total = Fraction(0)
    for idx, part in enumerate(d.parts):
        poly = part.polytope
        if poly.dimension != n:
            return TilingReport(False, f"part {idx}: wrong dimension")
        total += poly.volume()
        for v in poly.vertices:
            if not d.whole.contains(v):
                return TilingReport(False, f"part {idx}: vertex outside whole")
        std = standard_simplex(part.capacity, n)
        image = part.to_standard.apply_polytope(poly)
        if set(image.vertices) != set(std.vertices):
            return TilingReport(
                False, f"part {idx}: map does not reach the standard simplex"
            )
    if total != d.whole.volume():
        return TilingReport(
            False, f"volumes sum to {total}, expected {d.whole.volume()}"
        )
    for i in range(len(d.parts)):
        for j in range(i + 1, len(d.parts)):
            p, q = d.parts[i].polytope, d.parts[j].polytope
            if _separated(p, q):
                continue
            if _interior_point_witness(p, q) is not None:
                return TilingReport(False, f"parts {i} and {j} overlap")
            return TilingReport(
                False, f"parts {i} and {j}: no separation certificate"
            )
    return TilingReport(True)


# -- the k-slice subdivision of the moment polytope of E(1,...,1,k) -----------


def _theta(n: int) -> UnimodularAffineMap:
    """Fixes x_1..x_{n-1}; x_n -> x_n - 1 + (x_1 + ... + x_{n-1})."""
    lin = [[1 if i == j else 0 for j in range(n)] for i in range(n - 1)]
    lin.append([1] * (n - 1) + [1])
    trans = [Fraction(0)] * (n - 1) + [Fraction(-1)]
    return UnimodularAffineMap.of(lin, trans)


def _slice_part(j: int, n: int) -> LatticePolytope:
    """hull{e_1,...,e_{n-1}, (j-1) e_n, j e_n}."""
    verts = []
    for i in range(n - 1):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        verts.append(tuple(v))
    for last in (j - 1, j):
        v = [Fraction(0)] * n
        v[n - 1] = Fraction(last)
        verts.append(tuple(v))
    return LatticePolytope.simplex(verts)


def subdivide(
    k: int, n: int
) -> Tuple[Tuple[LatticePolytope, ...], UnimodularAffineMap]:
    """The k unit-capacity slices of the moment polytope of E(1^{n-1}, k)
    together with the affine map carrying each slice to the previous one.

    Verifies vertexwise that theta^(j-1) maps slice j onto slice 1 and
    that every slice lies inside the moment polytope; any failure raises
    VerificationFailed (it would be a bug, not bad input).
    """
    if k < 1 or n < 2:
        raise InvalidInput("need k >= 1 and n >= 2")
    theta = _theta(n)
    parts = tuple(_slice_part(j, n) for j in range(1, k + 1))
    whole = moment_polytope([1] * (n - 1) + [k])
    power = UnimodularAffineMap.identity(n)
    for j, part in enumerate(parts, start=1):
        if j > 1:
            power = theta.compose(power)
        image = power.apply_polytope(part)
        if set(image.vertices) != set(parts[0].vertices):
            raise VerificationFailed(f"theta^{j-1} does not map slice {j} to slice 1")
        for v in part.vertices:
            if not whole.contains(v):
                raise VerificationFailed(f"slice {j} leaves the moment polytope")
    return parts, theta


def subdivide_decomposition(k: int, n: int) -> Decomposition:
    """The subdivision packaged with capacity-1 certificates per slice."""
    parts, theta = subdivide(k, n)
    out = []
    power = UnimodularAffineMap.identity(n)
    for j, poly in enumerate(parts, start=1):
        if j > 1:
            power = theta.compose(power)
        out.append(DecompositionPart(poly, Fraction(1), power))
    whole = moment_polytope([1] * (n - 1) + [k])
    return Decomposition(whole, tuple(out))


def check_subdivision_symbolic(k: int, n: int) -> UnimodularAffineMap:
    """Certify the k-slice subdivision without materializing k parts.

    theta's action on vertices is affine in the slice index j, so checking
    the boundary instances j = 1 and j = k pins the whole family:
      - theta fixes e_1, ..., e_{n-1};
      - theta sends j e_n to (j-1) e_n for j in {1, k};
      - slice vertices satisfy the moment-polytope inequalities at j = k.
    """
    if k < 1 or n < 2:
        raise InvalidInput("need k >= 1 and n >= 2")
    theta = _theta(n)
    for i in range(n - 1):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        if theta.apply(e) != tuple(e):
            raise VerificationFailed("theta moves a fixed basis vector")
    for j in (1, k):
        v = [Fraction(0)] * n
        v[n - 1] = Fraction(j)
        out = [Fraction(0)] * n
        out[n - 1] = Fraction(j - 1)
        if theta.apply(v) != tuple(out):
            raise VerificationFailed("theta does not step the last coordinate")
    whole = moment_polytope([1] * (n - 1) + [k])
    for j in (1, k):
        if not all(whole.contains(v) for v in _slice_part(j, n).vertices):
            raise VerificationFailed("boundary slice leaves the moment polytope")
    return theta


# -- the two-parameter triangle decomposition ---------------------------------


def _triangle_to_standard(
    poly: LatticePolytope, capacity: Fraction
) -> UnimodularAffineMap:
    """Find a unimodular affine map carrying the triangle onto the
    standard simplex of the given capacity (tries vertex orderings)."""
    n = poly.dimension
    std = standard_simplex(capacity, n)
    from itertools import permutations

    for perm in permutations(range(n + 1)):
        v0 = poly.vertices[perm[0]]
        cols = [
            [poly.vertices[perm[i + 1]][r] - v0[r] for i in range(n)]
            for r in range(n)
        ]
        # want A * cols = capacity * I, i.e. A = capacity * cols^{-1}
        det = _det(cols)
        if det == 0:
            continue
        inv_cols = []
        ok = True
        for i in range(n):
            rhs = [Fraction(0)] * n
            rhs[i] = capacity
            sol = _solve(cols, rhs)
            if sol is None:
                ok = False
                break
            inv_cols.append(sol)
        if not ok:
            continue
        lin = [[inv_cols[j][i] for j in range(n)] for i in range(n)]
        if any(x.denominator != 1 for row in lin for x in row):
            continue
        if abs(_det([[Fraction(x) for x in row] for row in lin])) != 1:
            continue
        trans = [-sum(lin[i][j] * v0[j] for j in range(n)) for i in range(n)]
        candidate = UnimodularAffineMap.of(lin, trans)
        image = candidate.apply_polytope(poly)
        if set(image.vertices) == set(std.vertices):
            return candidate
    raise VerificationFailed("triangle is not unimodular-standard")


def fig2_decomposition(k: int, x: int) -> Decomposition:
    """Decompose the capacity k^(x+1) triangle into one corner triangle of
    capacity k^(x+1) - k^x and a diagonal strip of 2k-1 alternating
    triangles of capacity k^x."""
    if k < 2 or x < 1:
        raise InvalidInput("need k >= 2 and x >= 1")
    s = k**x
    big = k ** (x + 1)
    whole = moment_polytope([big, big])
    parts: List[DecompositionPart] = []

    corner = moment_polytope([big - s, big - s])
    parts.append(
        DecompositionPart(
            corner,
            Fraction(big - s),
            _triangle_to_standard(corner, Fraction(big - s)),
        )
    )

    def outer(i):  # points on x + y = big
        return _pt((i * s, big - i * s))

    def inner(i):  # points on x + y = big - s
        return _pt((i * s, big - s - i * s))

    strip: List[LatticePolytope] = []
    for i in range(k):
        strip.append(LatticePolytope.simplex([inner(i), outer(i), outer(i + 1)]))
        if i < k - 1:
            strip.append(
                LatticePolytope.simplex([inner(i), inner(i + 1), outer(i + 1)])
            )
    for tri in strip:
        parts.append(
            DecompositionPart(tri, Fraction(s), _triangle_to_standard(tri, Fraction(s)))
        )
    return Decomposition(whole, tuple(parts))


def unit_subdivide(s: int) -> Decomposition:
    """The capacity-s triangle tiled by s^2 unit triangles."""
    if s < 1:
        raise InvalidInput("need s >= 1")
    whole = moment_polytope([s, s])
    parts: List[DecompositionPart] = []
    one = Fraction(1)
    for i in range(s):
        for j in range(s - i):
            up = LatticePolytope.simplex([(i, j), (i + 1, j), (i, j + 1)])
            parts.append(DecompositionPart(up, one, _triangle_to_standard(up, one)))
            if i + j < s - 1:
                down = LatticePolytope.simplex(
                    [(i + 1, j), (i, j + 1), (i + 1, j + 1)]
                )
                parts.append(
                    DecompositionPart(down, one, _triangle_to_standard(down, one))
                )
    return Decomposition(whole, tuple(parts))
