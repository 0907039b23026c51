"""Face-discriminants and the bifurcation superset for Newton non-degenerate inputs.

For a facing Gamma of the Newton tuple of (F, g_1..g_r) the face-discriminant
is the set of critical values of F restricted to the face, on the torus part
of the restricted constraint variety.  The union over important origin
facings, together with F(0), contains the bifurcation values at infinity
when the coefficients are generic (which is assumed, not checked).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .elimination import DegenerateSystemError, make_square, resultant_gcp
from .polyring import MPoly, PolyError, UPoly, squarefree_part
from .polytope import (Facing, PolytopeTuple, important_origin_facings, newton_polytope,
                       restrict_to_face)
from .realroots import AlgebraicNumber, dedupe, isolate_real_roots

DISCLAIMER = ("Newton non-degeneracy of the input is assumed and not verified; "
              "the superset is guaranteed only for generic coefficients.")


@dataclass
class PolyTuple:
    F: MPoly
    constraints: list[MPoly]
    tuple: PolytopeTuple


def make_poly_tuple(F: MPoly, constraints: Sequence[MPoly] = ()) -> PolyTuple:
    """Delta_0 = conv(supp F and the origin); Delta_i = NP(g_i)."""
    n = F.nvars
    entries = {0: newton_polytope(F, include_origin=True) if not F.is_zero()
               else newton_polytope(MPoly.constant(n, 1))}
    for i, g in enumerate(constraints, start=1):
        if g.nvars != n:
            raise PolyError("constraints must live in the ring of the objective")
        entries[i] = newton_polytope(g)
    return PolyTuple(F, list(constraints), PolytopeTuple(entries))


def remark_4_4_mode(f: MPoly) -> PolyTuple:
    """An unconstrained f as a tuple supported on {0}."""
    return make_poly_tuple(f, ())


# ---------------------------------------------------------------------------
# torus reduction


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    m = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def _slice_coordinates(basis: list[list[Fraction]], ncols: int) -> list[int]:
    """Coordinates S on which the weight space projects isomorphically."""
    if not basis:
        return []
    m = [r[:] for r in basis]
    chosen = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        chosen.append(c)
        r += 1
        if r == len(m):
            break
    return chosen


def torus_reduction(F: MPoly, gs: Sequence[MPoly]) -> list[int]:
    """Variables that may be set to 1 without losing critical values on the torus.

    The weights w with w.a = 0 on supp F and w.a constant on each supp g_i
    give a torus action preserving the fibers of F on V*(g); every orbit meets
    the slice {x_S = 1} for the returned S.
    """
    n = F.nvars
    rows = [[Fraction(v) for v in a] for a in F.terms]
    for g in gs:
        sup = list(g.terms)
        rows.extend([Fraction(x - y) for x, y in zip(a, sup[0])] for a in sup[1:])
    rows = [r for r in rows if any(r)]
    return _slice_coordinates(_nullspace(rows, n), n)


def _set_to_one(p: MPoly, fixed: Sequence[int], keep: Sequence[int]) -> MPoly:
    out: dict = {}
    for mono, c in p.terms.items():
        e = tuple(mono[v] for v in keep)
        out[e] = out.get(e, 0) + c
    return MPoly(len(keep), out)


def _substitute(p: MPoly, v: int, num: MPoly, c: int) -> MPoly:
    """c^D * p(x_v = num / c), where D = deg_v p."""
    parts = p.coefficients_in([v])
    D = max((k[0] for k in parts), default=0)
    acc = MPoly.zero(p.nvars)
    for (k,), a in parts.items():
        acc = acc + a * num**k * c ** (D - k)
    return acc


def _linear_pivot(block: list[MPoly], candidates: Sequence[int]):
    """A polynomial of the block that is c*x_v + (terms free of x_v), c constant."""
    for i, p in enumerate(block):
        for v in candidates:
            parts = p.coefficients_in([v])
            if set(parts) == {(0,), (1,)} and parts[(1,)].is_constant():
                return i, v, -parts[(0,)], parts[(1,)].constant_term()
    return None


# ---------------------------------------------------------------------------


def _det(m: list[list[MPoly]]) -> MPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = MPoly.zero(m[0][0].nvars)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _det(minor)
        acc = acc + t if j % 2 == 0 else acc - t
    return acc


def maximal_minors(rows: list[list[MPoly]]) -> list[MPoly]:
    k = len(rows)
    n = len(rows[0]) if rows else 0
    if k > n:
        return []
    return [_det([[r[c] for c in cols] for r in rows]) for cols in itertools.combinations(range(n), k)]


@dataclass
class FaceDiscriminant:
    facing: Facing
    values: list[AlgebraicNumber]
    nonreal: int = 0
    eliminant: UPoly | None = None
    reason: str = ""
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "facing": self.facing.to_json(),
            "values": [v.to_json() for v in self.values],
            "nonreal_count": self.nonreal,
            "eliminant": None if self.eliminant is None else [str(c) for c in self.eliminant.coeffs],
            "reason": self.reason,
            "flags": self.flags,
        }


def face_discriminant(T: PolyTuple, facing: Facing, seed: int = 0, retries: int = 5
                      ) -> FaceDiscriminant:
    """Critical values of F_{Gamma_0} on V*(g_Gamma); empty for non-origin facings."""
    if not facing.origin:
        return FaceDiscriminant(facing, [], reason="not origin")
    F0 = restrict_to_face(T.F, facing.faces[0])
    gs = [restrict_to_face(T.constraints[i - 1], facing.faces[i])
          for i in facing.indices if i != 0]
    if any(len(g.terms) == 1 for g in gs):
        return FaceDiscriminant(facing, [], reason="a restricted constraint is a monomial")
    if F0.is_constant():
        return FaceDiscriminant(facing, [AlgebraicNumber.from_rational(F0.constant_term())],
                                reason="constant restriction")
    n = T.F.nvars
    fixed = torus_reduction(F0, gs)
    keep = [v for v in range(n) if v not in fixed]
    F1 = _set_to_one(F0, fixed, keep)
    g1 = [_set_to_one(g, fixed, keep) for g in gs]
    if F1.is_constant():
        return FaceDiscriminant(facing, [AlgebraicNumber.from_rational(F1.constant_term())],
                                reason="constant on torus orbits")
    m = len(keep)
    jac = [[F1.diff(v) for v in range(m)]] + [[g.diff(v) for v in range(m)] for g in g1]
    block = [g for g in g1 + maximal_minors(jac) if not g.is_zero()]
    if any(g.is_constant() for g in block):
        return FaceDiscriminant(facing, [], reason="inconsistent critical system")
    if len(block) < m:
        return FaceDiscriminant(facing, [], reason="critical system underdetermined",
                                flags=["underdetermined"])
    # ring: x_keep (m vars), t, z
    nv = m + 2
    t_idx, z_idx = m, m + 1

    def lift(p: MPoly) -> MPoly:
        return p.remap(nv, list(range(m)))

    torus = MPoly.var(nv, t_idx)
    for v in range(m):
        torus = torus * MPoly.var(nv, v)
    torus = torus - 1
    fiber = lift(F1) - MPoly.var(nv, z_idx)
    block = [lift(p) for p in block]
    elim = list(range(m))
    # solve away variables that occur linearly with a constant coefficient
    while (piv := _linear_pivot(block, elim)) is not None:
        i, v, num, c = piv
        block.pop(i)
        block = [_substitute(p, v, num, c) for p in block]
        torus = _substitute(torus, v, num, c)
        fiber = _substitute(fiber, v, num, c)
        elim.remove(v)
        block = [p for p in block if not p.is_zero()]
        if any(p.is_constant() for p in block):
            return FaceDiscriminant(facing, [], reason="inconsistent critical system")
    k = len(elim)
    if len(block) < k:
        return FaceDiscriminant(facing, [], reason="critical system underdetermined",
                                flags=["underdetermined"])
    rng = random.Random(seed)
    last = None
    for attempt in range(retries):
        sub_seed = rng.getrandbits(64)
        sq = make_square(block, k, sub_seed) if len(block) > k else block
        system = list(sq) + [torus, fiber]
        try:
            res = resultant_gcp(system, elim + [t_idx])
        except DegenerateSystemError as exc:
            last = exc
            if len(block) == k:
                break
            continue
        u = UPoly.from_mpoly(res.resultant, z_idx) if not res.resultant.is_zero() else UPoly()
        flags = ["excess-components"] if res.valuation > 0 else []
        if u.degree <= 0:
            return FaceDiscriminant(facing, [], 0, u, "eliminant has no roots", flags)
        sqf = squarefree_part(u)
        real = isolate_real_roots(sqf)
        return FaceDiscriminant(facing, real, sqf.degree - len(real), u, "eliminated", flags)
    raise DegenerateSystemError(f"face-discriminant elimination degenerate: {last}")


@dataclass
class NewtonReport:
    superset: list[AlgebraicNumber]
    value_at_origin: Fraction
    discriminants: list[FaceDiscriminant]
    disclaimer: str = DISCLAIMER

    def to_json(self) -> dict:
        return {
            "superset": [v.to_json() for v in self.superset],
            "value_at_origin": f"{self.value_at_origin.numerator}/{self.value_at_origin.denominator}",
            "facings": [d.to_json() for d in self.discriminants],
            "disclaimer": self.disclaimer,
        }


def bifurcation_superset_newton(T: PolyTuple, seed: int = 0) -> NewtonReport:
    """F(0) together with every face-discriminant over the important origin facings."""
    f0 = Fraction(T.F.constant_term())
    discs = []
    values = [AlgebraicNumber.from_rational(f0)]
    for k, facing in enumerate(important_origin_facings(T.tuple)):
        d = face_discriminant(T, facing, seed=seed + k)
        discs.append(d)
        values.extend(d.values)
    return NewtonReport(dedupe(values), f0, discs)


__all__ = [
    "DISCLAIMER", "FaceDiscriminant", "NewtonReport", "PolyTuple", "bifurcation_superset_newton",
    "face_discriminant", "make_poly_tuple", "maximal_minors", "remark_4_4_mode", "torus_reduction",
]
