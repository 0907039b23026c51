"""Lattice polytopes, Newton polytopes, polytope tuples and their facings.

Everything is exact integer arithmetic.  Faces are enumerated through the
facets of a polytope inside its affine hull: each face is an intersection of
facets, and the sum of the outer normals of the facets containing it exposes
exactly that face.  The whole polytope is exposed by the zero vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .polyring import MPoly, PolyError

Point = tuple[int, ...]

DEFAULT_MAX_DIM = 6


class PolytopeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# small exact linear algebra


def _rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _int_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)


def affine_dimension(points: Iterable[Point]) -> int:
    pts = list(points)
    if not pts:
        return -1
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    return _rank(diffs) if diffs else 0


def _direction_basis(points: Sequence[Point]) -> list[tuple[int, ...]]:
    """Integer vectors p - p0 forming a basis of the direction space of aff(points)."""
    p0 = points[0]
    basis: list[tuple[int, ...]] = []
    for p in points[1:]:
        d = tuple(a - b for a, b in zip(p, p0))
        if _rank(basis + [d]) > len(basis):
            basis.append(d)
    return basis


def _facet_normals(points: Sequence[Point]) -> list[tuple[tuple[int, ...], int]]:
    """(outer normal, offset) of every facet of conv(points) inside its affine hull.

    Normals lie in the direction space of the affine hull and are primitive.
    """
    pts = list(dict.fromkeys(points))
    if len(pts) <= 1:
        return []
    basis = _direction_basis(pts)
    k = len(basis)
    arr = np.array(pts, dtype=object)
    found: dict[tuple[int, ...], int] = {}
    for combo in itertools.combinations(range(len(pts)), k):
        q0 = pts[combo[0]]
        diffs = [tuple(a - b for a, b in zip(pts[c], q0)) for c in combo[1:]]
        # coefficients lam (in the basis) of a vector orthogonal to every diff
        a = [[sum(x * y for x, y in zip(d, b)) for b in basis] for d in diffs]
        lam = []
        for i in range(k):
            minor = [row[:i] + row[i + 1:] for row in a]
            lam.append((-1) ** i * _int_det(minor))
        if not any(lam):
            continue
        w = [sum(lam[i] * basis[i][c] for i in range(k)) for c in range(len(q0))]
        w = _primitive(w)
        vals = arr.dot(np.array(w, dtype=object))
        top = sum(x * y for x, y in zip(w, q0))
        hi, lo = max(vals), min(vals)
        if hi == top and lo < top:
            found[w] = top
        elif lo == top and hi > top:
            found[tuple(-x for x in w)] = -top
    return sorted(found.items())


def _hull_vertices(points: Iterable[Point]) -> frozenset[Point]:
    pts = list(dict.fromkeys(tuple(int(v) for v in p) for p in points))
    if len(pts) <= 1:
        return frozenset(pts)
    if affine_dimension(pts) == 0:
        return frozenset(pts[:1])
    facets = _facet_normals(pts)
    verts = []
    for p in pts:
        incident = [w for w, off in facets if sum(x * y for x, y in zip(w, p)) == off]
        if not incident:
            continue
        # a point is a vertex iff its incident facets pin it down inside the hull
        others = [q for q in pts if q != p and all(
            sum(x * y for x, y in zip(w, q)) == off for w, off in facets
            if sum(x * y for x, y in zip(w, p)) == off)]
        if not others:
            verts.append(p)
    return frozenset(verts)


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points, stored by its vertices."""

    dim_ambient: int
    vertices: frozenset

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], dim_ambient: int | None = None,
                    max_dim: int = DEFAULT_MAX_DIM) -> "LatticePolytope":
        pts = [tuple(int(v) for v in p) for p in points]
        if not pts:
            raise PolytopeError("a polytope needs at least one point")
        n = len(pts[0]) if dim_ambient is None else dim_ambient
        if any(len(p) != n for p in pts):
            raise PolytopeError("points of different dimensions")
        if n > max_dim:
            raise PolytopeError(f"ambient dimension {n} exceeds the cap {max_dim}")
        if any(v < 0 for p in pts for v in p):
            raise PolytopeError("points must lie in the nonnegative orthant")
        return cls(n, _hull_vertices(pts))

    @property
    def dim(self) -> int:
        return affine_dimension(self.sorted_vertices())

    def sorted_vertices(self) -> list[Point]:
        return sorted(self.vertices)

    def contains_origin(self) -> bool:
        return (0,) * self.dim_ambient in self.vertices

    def support_value(self, w: Sequence[int]) -> int:
        return max(sum(a * b for a, b in zip(w, v)) for v in self.vertices)

    def face(self, w: Sequence[int]) -> "LatticePolytope":
        """Face exposed by w: the points maximizing w . x."""
        top = self.support_value(w)
        return LatticePolytope(self.dim_ambient, frozenset(
            v for v in self.vertices if sum(a * b for a, b in zip(w, v)) == top))

    def contains(self, point: Sequence[int]) -> bool:
        pts = self.sorted_vertices()
        if tuple(point) in self.vertices:
            return True
        if affine_dimension(pts + [tuple(point)]) > affine_dimension(pts):
            return False
        for w, off in _facet_normals(pts):
            if sum(a * b for a, b in zip(w, point)) > off:
                return False
        return True

    def facets(self) -> list[tuple[tuple[int, ...], int]]:
        return _facet_normals(self.sorted_vertices())

    def faces(self) -> list[tuple["LatticePolytope", tuple[int, ...]]]:
        """Every nonempty face together with an exposing normal (zero for the polytope itself)."""
        verts = self.sorted_vertices()
        n = self.dim_ambient
        facets = _facet_normals(verts)
        incid = []
        for w, off in facets:
            incid.append(frozenset(v for v in verts if sum(a * b for a, b in zip(w, v)) == off))
        faces: set[frozenset] = {frozenset(verts)}
        frontier = set(incid)
        while frontier:
            faces |= frontier
            nxt = set()
            for f in frontier:
                for g in incid:
                    h = f & g
                    if h and h not in faces:
                        nxt.add(h)
            frontier = nxt
        out = []
        for fs in faces:
            w = [0] * n
            for (nv, _), inc in zip(facets, incid):
                if fs <= inc:
                    w = [a + b for a, b in zip(w, nv)]
            out.append((LatticePolytope(n, fs), _primitive(w)))
        out.sort(key=lambda t: (t[0].dim, sorted(t[0].vertices)))
        return out

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.sorted_vertices()]

    def __repr__(self):
        return f"LatticePolytope({self.sorted_vertices()})"


def newton_polytope(p: MPoly, include_origin: bool = False) -> LatticePolytope:
    """Convex hull of the support of p, optionally with the origin adjoined."""
    if p.is_zero():
        raise PolyError("the zero polynomial has no Newton polytope")
    pts = list(p.terms)
    if include_origin:
        pts.append((0,) * p.nvars)
    return LatticePolytope.from_points(pts, p.nvars, max_dim=max(DEFAULT_MAX_DIM, p.nvars))


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.dim_ambient != Q.dim_ambient:
        raise PolytopeError("ambient dimensions differ")
    pts = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return LatticePolytope(P.dim_ambient, _hull_vertices(pts))


def restrict_to_face(p: MPoly, sigma: LatticePolytope) -> MPoly:
    """Terms of p whose exponents lie in sigma."""
    if p.nvars != sigma.dim_ambient:
        raise PolytopeError("ambient dimensions differ")
    return MPoly(p.nvars, {m: c for m, c in p.terms.items() if sigma.contains(m)})


# ---------------------------------------------------------------------------
# tuples and facings


@dataclass(frozen=True)
class PolytopeTuple:
    entries: Mapping[int, LatticePolytope]

    def __post_init__(self):
        dims = {P.dim_ambient for P in self.entries.values()}
        if len(dims) > 1:
            raise PolytopeError("polytopes of a tuple must share the ambient space")

    @property
    def support(self) -> list[int]:
        return sorted(self.entries)

    @property
    def dim_ambient(self) -> int:
        return next(iter(self.entries.values())).dim_ambient

    def minkowski(self, indices: Iterable[int] | None = None) -> LatticePolytope:
        idx = self.support if indices is None else sorted(indices)
        acc = LatticePolytope(self.dim_ambient, frozenset([(0,) * self.dim_ambient]))
        for i in idx:
            acc = minkowski_sum(acc, self.entries[i])
        return acc

    def is_origin(self) -> bool:
        return 0 in self.entries and self.entries[0].contains_origin()


def tuple_dimension(polys: Iterable[LatticePolytope]) -> int:
    """dim(sum) - count, with the dimension of a Minkowski sum read off direction spaces."""
    polys = list(polys)
    dirs = []
    for P in polys:
        vs = P.sorted_vertices()
        dirs.extend(tuple(a - b for a, b in zip(v, vs[0])) for v in vs[1:])
    return (_rank(dirs) if dirs else 0) - len(polys)


@dataclass
class Facing:
    indices: tuple[int, ...]
    faces: dict[int, LatticePolytope]
    normal: tuple[int, ...]
    important: bool = False
    origin: bool = False

    @property
    def key(self):
        return (self.indices, tuple(tuple(sorted(self.faces[i].vertices)) for i in self.indices))

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "faces": {str(i): self.faces[i].to_json() for i in self.indices},
            "normal": list(self.normal),
            "important": self.important,
            "origin": self.origin,
        }


def facing_dimension(facing: Facing) -> int:
    return tuple_dimension(facing.faces[i] for i in facing.indices)


def _tuple_faces(T: PolytopeTuple) -> list[tuple[tuple[int, ...], dict[int, LatticePolytope]]]:
    """(normal, tuple-face) for every face of the Minkowski sum, the whole tuple first."""
    total = T.minkowski()
    out = []
    seen = set()
    for _, w in sorted(total.faces(), key=lambda t: (-t[0].dim, sorted(t[0].vertices))):
        faces = {i: T.entries[i].face(w) for i in T.support}
        key = tuple(tuple(sorted(faces[i].vertices)) for i in T.support)
        if key in seen:
            continue
        seen.add(key)
        out.append((w, faces))
    return out


def tuple_facings(T: PolytopeTuple) -> list[Facing]:
    """All facings Gamma'_I over the faces Gamma' of T (including T) and nonempty I.

    Importance and the origin flag are filled in; a facing reached from several
    faces keeps the first witness normal under which it is important (if any).
    """
    if not T.entries:
        raise PolytopeError("empty tuple")
    support = T.support
    faces = _tuple_faces(T)
    result: dict = {}
    for w, face in faces:
        for size in range(1, len(support) + 1):
            for I in itertools.combinations(support, size):
                fac = Facing(I, {i: face[i] for i in I}, w)
                important = _important_under(face, I, support)
                key = fac.key
                if key not in result:
                    fac.important = important
                    fac.origin = 0 in I and face[0].contains_origin()
                    result[key] = fac
                elif important and not result[key].important:
                    result[key].important = True
                    result[key].normal = w
    return sorted(result.values(), key=lambda f: (f.indices, facing_dimension(f), f.key))


def _important_under(face: dict[int, LatticePolytope], I: tuple[int, ...], support) -> bool:
    d = tuple_dimension(face[i] for i in I)
    rest = [j for j in support if j not in I]
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            J = tuple(I) + extra
            if d > tuple_dimension(face[j] for j in J):
                return False
    return True


def important_origin_facings(T: PolytopeTuple) -> list[Facing]:
    if not T.is_origin():
        raise PolytopeError("the tuple is not origin: index 0 with the origin in its polytope")
    return [f for f in tuple_facings(T) if f.important and f.origin]


__all__ = [
    "Facing", "LatticePolytope", "PolytopeError", "PolytopeTuple", "affine_dimension",
    "facing_dimension", "important_origin_facings", "minkowski_sum", "newton_polytope",
    "restrict_to_face", "tuple_dimension", "tuple_facings",
]
