"""Critical and asymptotic critical values of F restricted to V(g_1, ..., g_r).

C is the (r+1) x n matrix stacking grad F over Jac(g).  For every column
subset I with |I| = r+1, m_I is the maximal minor on I and m_{I,j} the r x r
minor of Jac(g) on I minus column j.  A choice vector picks one j per I and
gives the map x -> (F, w_I, x_1 w_I, ..., x_n w_I) with w_I = m_I / m_{I,j};
the candidate values are the z with (0, z) in the closure of its image.

Only toy instances are eliminated.  The y-coordinates of the image are
projected onto n - r generic linear forms, pulled back along the line
lambda * c, and z is read off at lambda -> 0.  Two independent projections
are intersected to discard values that come from the projection itself.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .acv import MonteCarloFailure
from .bounds import BoundReport, constrained_bounds
from .elimination import DegenerateSystemError, make_square, resultant_gcp
from .newton import maximal_minors
from .optimize import Budget, NumericPoly, descend, gauss_newton, rationalize, select_infimum
from .polyring import MPoly, PolyError, UPoly, squarefree_part, upoly_gcd
from .realroots import AlgebraicNumber, compare, dedupe, isolate_real_roots, refine, sign_at

MAX_VARS = 3
MAX_DEGREE = 3
MAX_MACAULAY_COLUMNS = 400
EXHAUSTIVE_CHOICES = 64
SAMPLED_CHOICES = 16


class ConstrainedError(ValueError):
    pass


# ---------------------------------------------------------------------------
# minors


@dataclass(frozen=True)
class MinorPair:
    subset: tuple[int, ...]
    column: int
    m_i: MPoly
    m_ij: MPoly


def jacobian_matrix(F: MPoly, gs: Sequence[MPoly]) -> list[list[MPoly]]:
    n = F.nvars
    return [[p.diff(v) for v in range(n)] for p in [F, *gs]]


def jacobian_minors(F: MPoly, gs: Sequence[MPoly]) -> list[MinorPair]:
    """All pairs (m_I, m_{I,j}) for |I| = r+1 and j in I."""
    n, r = F.nvars, len(gs)
    if r >= n:
        raise ConstrainedError(f"need fewer constraints than variables (r={r}, n={n})")
    C = jacobian_matrix(F, gs)
    out = []
    for I in itertools.combinations(range(n), r + 1):
        m_i = maximal_minors([[row[c] for c in I] for row in C])[0]
        for j in I:
            cols = [c for c in I if c != j]
            m_ij = maximal_minors([[row[c] for c in cols] for row in C[1:]])[0] if r else MPoly.constant(n, 1)
            out.append(MinorPair(I, j, m_i, m_ij))
    return out


def _by_subset(pairs: Sequence[MinorPair]) -> dict[tuple[int, ...], dict[int, MinorPair]]:
    out: dict = {}
    for p in pairs:
        out.setdefault(p.subset, {})[p.column] = p
    return out


def choice_vectors(pairs: Sequence[MinorPair], seed: int) -> tuple[list[tuple[int, ...]], bool]:
    """Choice vectors (one column per subset); exhaustive when at most 64, else 16 sampled."""
    groups = _by_subset(pairs)
    subsets = sorted(groups)
    options = [sorted(groups[I]) for I in subsets]
    total = math.prod(len(o) for o in options)
    if total <= EXHAUSTIVE_CHOICES:
        return list(itertools.product(*options)), False
    rng = random.Random(f"choices:{seed}")
    seen: set = set()
    while len(seen) < SAMPLED_CHOICES:
        seen.add(tuple(rng.choice(o) for o in options))
    return sorted(seen), True


# ---------------------------------------------------------------------------
# the polynomial set J


@dataclass
class SystemJ:
    polynomials: list[MPoly]
    n: int
    r: int
    s: int
    choice: tuple[int, ...]
    h: MPoly
    var_names: list[str]

    @property
    def cardinality(self) -> int:
        return len(self.polynomials)

    def to_json(self) -> dict:
        return {
            "n": self.n, "r": self.r, "s": self.s, "choice": list(self.choice),
            "cardinality": self.cardinality,
            "variables": self.var_names,
            "h": self.h.to_str(self.var_names[: self.n]),
            "polynomials": [p.to_str(self.var_names) for p in self.polynomials],
        }


def expected_cardinality(n: int, r: int) -> int:
    return r + 1 + (n + 1) * math.comb(n, r + 1) + 1


def _denominator_product(dens: Sequence[MPoly], n: int, seed: int) -> MPoly:
    """h: product of min(s, n) generic combinations of the denominators."""
    live = [p for p in dens if not p.is_zero()]
    k = min(len(live), n)
    combos = make_square(live, k, seed)
    h = MPoly.constant(dens[0].nvars, 1)
    for c in combos:
        h = h * c
    return h


def build_system_J(F: MPoly, gs: Sequence[MPoly], seed: int = 0,
                   choice: Sequence[int] | None = None, names: Sequence[str] | None = None) -> SystemJ:
    """The set J for one choice vector, in the ring (x, t, y_{i,0..n}, z)."""
    n, r = F.nvars, len(gs)
    groups = _by_subset(jacobian_minors(F, gs))
    subsets = sorted(groups)
    s = len(subsets)
    if choice is None:
        choice = tuple(min(groups[I], key=lambda j: groups[I][j].m_ij.is_zero()) for I in subsets)
    choice = tuple(choice)
    chosen = [groups[I][j] for I, j in zip(subsets, choice)]
    dens = [p.m_ij for p in chosen]
    if all(d.is_zero() for d in dens):
        raise ConstrainedError("every denominator vanishes identically for this choice vector")
    nv = n + 1 + s * (n + 1) + 1
    t_idx, z_idx = n, nv - 1

    def lift(p: MPoly) -> MPoly:
        return p.remap(nv, list(range(n)))

    polys = [lift(g) for g in gs] + [lift(F) - MPoly.var(nv, z_idx)]
    for i, pair in enumerate(chosen):
        for k in range(n + 1):
            y = MPoly.var(nv, n + 1 + i * (n + 1) + k)
            xk = MPoly.constant(nv, 1) if k == 0 else MPoly.var(nv, k - 1)
            polys.append(lift(pair.m_ij) * y - xk * lift(pair.m_i))
    h = _denominator_product(dens, n, seed)
    polys.append(MPoly.var(nv, t_idx) * lift(h) - 1)
    xnames = list(names) if names is not None else [f"x{i + 1}" for i in range(n)]
    vnames = xnames + ["t"] + [f"y{i + 1}_{k}" for i in range(s) for k in range(n + 1)] + ["z"]
    return SystemJ(polys, n, r, s, choice, h, vnames)


# ---------------------------------------------------------------------------
# elimination at toy scale


def _macaulay_columns(degrees: Sequence[int], nelim: int) -> int:
    m = sum(max(d, 1) - 1 for d in degrees) + 1
    return math.comb(m + nelim, nelim)


def _univariate_lowest(res: MPoly, lam: int, z: int) -> UPoly:
    """R(lambda, z) / lambda^k evaluated at lambda = 0, as a polynomial in z."""
    low = min(m[lam] for m in res.terms)
    coeffs: dict[int, int] = {}
    for m, c in res.terms.items():
        if m[lam] == low:
            coeffs[m[z]] = coeffs.get(m[z], 0) + c
    top = max(coeffs)
    return UPoly([coeffs.get(i, 0) for i in range(top + 1)])


@dataclass
class ChoiceElimination:
    choice: tuple[int, ...]
    eliminant: UPoly | None
    matrix_columns: int
    status: str

    def to_json(self) -> dict:
        return {"choice": list(self.choice), "status": self.status, "matrix_columns": self.matrix_columns,
                "eliminant": None if self.eliminant is None else [str(c) for c in self.eliminant.coeffs]}


def _projected_system(F: MPoly, gs: Sequence[MPoly], chosen: Sequence[MinorPair], rng: random.Random,
                      h: MPoly) -> tuple[list[MPoly], list[int], int, int]:
    n, r = F.nvars, len(gs)
    nv = n + 3
    t_idx, lam, z_idx = n, n + 1, n + 2

    def lift(p: MPoly) -> MPoly:
        return p.remap(nv, list(range(n)))

    dens = [lift(p.m_ij) for p in chosen]
    D = MPoly.constant(nv, 1)
    for d in dens:
        D = D * d
    polys = [lift(g) for g in gs] + [lift(F) - MPoly.var(nv, z_idx)]
    # cleared numerators of y_{i,k} = x_k m_i / m_{i,j}
    numer = []
    for i, pair in enumerate(chosen):
        others = MPoly.constant(nv, 1)
        for i2, d in enumerate(dens):
            if i2 != i:
                others = others * d
        base = lift(pair.m_i) * others
        for k in range(n + 1):
            xk = MPoly.constant(nv, 1) if k == 0 else MPoly.var(nv, k - 1)
            numer.append(xk * base)
    size = 4 * len(numer) + 1
    for _ in range(n - r):
        acc = MPoly.zero(nv)
        for q in numer:
            acc = acc + q * rng.randint(1, size)
        acc = acc - MPoly.var(nv, lam) * D * rng.randint(1, size)
        polys.append(acc)
    polys.append(MPoly.var(nv, t_idx) * lift(h) - 1)
    return polys, list(range(n)) + [t_idx], lam, z_idx


def eliminate_choice(F: MPoly, gs: Sequence[MPoly], chosen: Sequence[MinorPair], seed: int,
                     retries: int = 4) -> ChoiceElimination:
    """Candidate polynomial in z for one choice vector: gcd over two projections."""
    choice = tuple(p.column for p in chosen)
    if any(p.m_ij.is_zero() for p in chosen):
        return ChoiceElimination(choice, None, 0, "denominator vanishes identically")
    n = F.nvars
    h = _denominator_product([p.m_ij for p in chosen], n, seed)
    rng = random.Random(f"project:{seed}:{choice}")
    found: list[UPoly] = []
    columns = 0
    for _ in range(retries + 2):
        polys, elim, lam, z = _projected_system(F, gs, chosen, rng, h)
        columns = _macaulay_columns([p.degree_in_vars(elim) for p in polys], len(elim))
        if columns > MAX_MACAULAY_COLUMNS:
            return ChoiceElimination(choice, None, columns, "elimination too large")
        try:
            res = resultant_gcp(polys, elim)
        except DegenerateSystemError:
            continue
        if res.resultant.is_zero():
            continue
        found.append(_univariate_lowest(res.resultant, lam, z))
        if len(found) == 2:
            break
    if len(found) < 2:
        raise MonteCarloFailure(f"elimination degenerate for choice vector {choice}")
    g = upoly_gcd(found[0], found[1])
    return ChoiceElimination(choice, g, columns, "eliminated")


def lagrange_values(F: MPoly, gs: Sequence[MPoly], seed: int = 0, retries: int = 4) -> UPoly | None:
    """Polynomial in z vanishing at the critical values of F on V(g) (a superset)."""
    n = F.nvars
    minors = [p.m_i for p in jacobian_minors(F, gs) if p.column == p.subset[0]]
    block = [g for g in list(gs) + minors if not g.is_zero()]
    if any(g.is_constant() for g in block):
        return UPoly([1])
    if len(block) < n:
        return None
    nv = n + 1
    lift = lambda p: p.remap(nv, list(range(n)))  # noqa: E731
    fiber = lift(F) - MPoly.var(nv, n)
    rng = random.Random(f"lagrange:{seed}")
    for _ in range(retries):
        sq = make_square(block, n, rng.getrandbits(64))
        try:
            res = resultant_gcp([lift(p) for p in sq] + [fiber], list(range(n)))
        except DegenerateSystemError:
            continue
        if not res.resultant.is_zero():
            return UPoly.from_mpoly(res.resultant, n)
    return None


# ---------------------------------------------------------------------------
# points on the variety


def _restrict_coeffs(p: MPoly, point: Sequence[Fraction | None], pivot: int) -> list[Fraction]:
    """Coefficients in x_pivot of p with every other coordinate fixed."""
    acc: dict[int, Fraction] = {}
    for mono, c in p.terms.items():
        v = Fraction(c)
        for i, e in enumerate(mono):
            if i != pivot and e:
                v *= point[i] ** e
        acc[mono[pivot]] = acc.get(mono[pivot], 0) + v
    top = max(acc, default=0)
    return [Fraction(acc.get(i, 0)) for i in range(top + 1)]


def _integer_upoly(coeffs: Sequence[Fraction]) -> UPoly:
    """Positive integer multiple of a rational coefficient list."""
    den = math.lcm(*[c.denominator for c in coeffs]) if coeffs else 1
    return UPoly([int(c * den) for c in coeffs])


def _restrict(p: MPoly, point: Sequence[Fraction | None], pivot: int) -> UPoly:
    return _integer_upoly(_restrict_coeffs(p, point, pivot))


@dataclass
class VarietyPoint:
    """Point of V(g): rational coordinates except possibly one algebraic pivot coordinate."""

    coords: tuple[Fraction | None, ...]
    pivot: int
    pivot_value: AlgebraicNumber
    value_sign: int

    def to_json(self) -> dict:
        out = []
        for i, c in enumerate(self.coords):
            if i == self.pivot:
                q = self.pivot_value.as_fraction()
                out.append(f"{q.numerator}/{q.denominator}" if q is not None else self.pivot_value.to_json())
            else:
                out.append(f"{c.numerator}/{c.denominator}")
        return {"point": out, "sign_of_F_minus_r": self.value_sign}


@dataclass
class VarietyVerdict:
    r: Fraction
    low: VarietyPoint | None
    probes: int
    exact: bool = True

    @property
    def sublevel_nonempty(self) -> bool:
        return self.low is not None

    def to_json(self) -> dict:
        return {"r": f"{self.r.numerator}/{self.r.denominator}",
                "sublevel": "nonempty" if self.low is not None else "probably-empty",
                "witness": None if self.low is None else self.low.to_json(),
                "probes": self.probes, "exact": self.exact}


def _points_on_curve(g: MPoly, point: list[Fraction], pivot: int) -> list[AlgebraicNumber]:
    u = _restrict(g, point, pivot)
    if u.degree <= 0:
        return []
    return isolate_real_roots(squarefree_part(u))


def sublevel_witness(F: MPoly, gs: Sequence[MPoly], r, budget: Budget = Budget(), seed: int = 0,
                     inequalities: Sequence[MPoly] = ()) -> VarietyVerdict:
    """Search for x in V(g), q(x) >= 0, with F(x) <= r.

    With one equation the witness is exact: all but one coordinate are random
    rationals and the last is a real root of the restricted equation.  With
    several equations the search is numeric and flagged as such.
    """
    r = Fraction(r)
    n = F.nvars
    rng = random.Random(f"sublevel:{seed}:{r}")
    probes = 0
    if len(gs) == 1:
        g = gs[0]
        radius = Fraction(1)
        for _ in range(budget.rounds):
            for k in range(budget.starts):
                pivot = k % n
                if g.degree_in(pivot) <= 0:
                    continue
                point = [Fraction(rng.randint(-1 << 10, 1 << 10), 1 << 10) * radius for _ in range(n)]
                point[pivot] = None
                for alpha in _points_on_curve(g, point, pivot):
                    probes += 1
                    fc = _restrict_coeffs(F, point, pivot)
                    fc[0] -= r
                    diff = _integer_upoly(fc)
                    sgn = sign_at(alpha, diff)
                    if sgn > 0:
                        continue
                    if all(sign_at(alpha, _restrict(q, point, pivot)) >= 0 for q in inequalities):
                        return VarietyVerdict(r, VarietyPoint(tuple(point), pivot, alpha, sgn), probes)
            radius *= budget.growth
        return VarietyVerdict(r, None, probes)
    return _numeric_sublevel(F, gs, r, budget, rng, inequalities)


def _numeric_sublevel(F, gs, r, budget, rng, inequalities) -> VarietyVerdict:
    n = F.nvars
    penalties = [NumericPoly(g) for g in gs]
    ineq = [NumericPoly(q) for q in inequalities]
    fnum = NumericPoly(F)
    tol = 1e-12

    def phi(x):
        return sum(p(x) ** 2 for p in penalties) + sum(min(0.0, q(x)) ** 2 for q in ineq)

    def dphi(x):
        g = np.zeros(n)
        for p in penalties:
            g += 2 * p(x) * p.grad(x)
        for q in ineq:
            v = q(x)
            if v < 0:
                g += 2 * v * q.grad(x)
        return g

    radius = 1.0
    probes = 0
    for _ in range(budget.rounds):
        for _ in range(budget.starts // 4):
            x = descend(phi, dphi, np.array([rng.uniform(-radius, radius) for _ in range(n)]),
                        budget.descent_steps, stop=tol)
            probes += 1
            if phi(x) < tol and fnum(x) <= float(r):
                pts = rationalize(x)
                coords = pts[0] if pts else tuple(Fraction(0) for _ in range(n))
                point = VarietyPoint(coords, -1, AlgebraicNumber.from_rational(0), -1)
                return VarietyVerdict(r, point, probes, exact=False)
        radius *= budget.growth
    return VarietyVerdict(r, None, probes, exact=False)


# ---------------------------------------------------------------------------
# toy pipeline


@dataclass
class ConstrainedReport:
    status: str                      # finite | unbounded-below | empty | bounds-only
    value: AlgebraicNumber | None
    attained: bool
    candidates: list[AlgebraicNumber]
    lagrange: list[AlgebraicNumber]
    eliminations: list[ChoiceElimination]
    verdicts: list[VarietyVerdict]
    interlacing: list[Fraction]
    seed: int
    flags: list[str] = field(default_factory=list)
    bounds: BoundReport | None = None
    degree_ceiling: int | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "value": None if self.value is None else self.value.to_json(),
            "value_approx": None if self.value is None else repr(float(self.value)),
            "attained": self.attained,
            "candidates": [c.to_json() for c in self.candidates],
            "lagrange_values": [c.to_json() for c in self.lagrange],
            "eliminations": [e.to_json() for e in self.eliminations],
            "sublevel_tests": [v.to_json() for v in self.verdicts],
            "interlacing": [f"{q.numerator}/{q.denominator}" for q in self.interlacing],
            "seed": str(self.seed),
            "flags": self.flags,
            "bounds": None if self.bounds is None else self.bounds.to_json(),
            "degree_ceiling": None if self.degree_ceiling is None else str(self.degree_ceiling),
        }


def _bounds_for(F: MPoly, gs: Sequence[MPoly]) -> BoundReport:
    from .polyring import bitsize

    n = F.nvars
    d1 = max((g.degree() for g in gs), default=1)
    tau = max([bitsize(F)] + [bitsize(g) for g in gs])
    return constrained_bounds(n, max(F.degree(), 1), max(d1, 1), tau, len(gs))


def _real_roots(u: UPoly | None) -> list[AlgebraicNumber]:
    if u is None or u.is_zero() or u.degree <= 0:
        return []
    return isolate_real_roots(squarefree_part(u))


def _attained(F, gs, inequalities, value, lagrange, budget, precision, seed) -> tuple[bool, list[str]]:
    if not any(compare(value, c) == 0 for c in lagrange):
        return False, []
    n = F.nvars
    target = float(refine(value, precision + 8))
    pens = [NumericPoly(g) for g in gs]
    ineq = [NumericPoly(q) for q in inequalities]
    fnum = NumericPoly(F)
    # a critical point on the variety with value f*: F = f*, g = 0, all maximal minors of C vanish
    minors = [NumericPoly(p.m_i) for p in jacobian_minors(F, gs) if p.column == p.subset[0]]
    parts = [fnum] + pens + minors

    def residual(x):
        vals = [fnum(x) - target] + [p(x) for p in pens + minors]
        vals += [min(0.0, q(x)) for q in ineq]
        return np.array(vals)

    def jacobian(x):
        rows = [p.grad(x) for p in parts]
        rows += [q.grad(x) if q(x) < 0 else np.zeros(n) for q in ineq]
        return np.array(rows)

    rng = random.Random(f"attain:{seed}")
    limit = 2.0 ** (2 * budget.rounds)
    for _ in range(budget.starts):
        x = gauss_newton(residual, jacobian, np.array([rng.uniform(-2, 2) for _ in range(n)]))
        rx = residual(x)
        if np.all(np.abs(x) < limit) and float(rx @ rx) < 2.0 ** (-2 * precision):
            return True, ["attainment-by-descent"]
    return False, []


def constrained_infimum_toy(F: MPoly, gs: Sequence[MPoly], seed: int = 0,
                            inequalities: Sequence[MPoly] = (), budget: Budget = Budget(),
                            precision: int = 24) -> ConstrainedReport:
    """Candidates and infimum of F over {g = 0, q >= 0} at toy scale.

    Candidate sets are united over every index set made of all equations plus
    any subset of the inequalities taken as equations.
    """
    n = F.nvars
    gs = list(gs)
    inequalities = list(inequalities)
    flags: list[str] = []
    bounds = _bounds_for(F, gs) if gs else None
    allp = [F, *gs, *inequalities]
    if n > MAX_VARS or any(p.degree() > MAX_DEGREE for p in allp):
        return ConstrainedReport("bounds-only", None, False, [], [], [], [], [], seed,
                                 ["scale-cap-exceeded"], bounds)
    if len(gs) >= n:
        raise ConstrainedError("toy pipeline needs fewer equations than variables")
    candidates: list[AlgebraicNumber] = []
    lagrange: list[AlgebraicNumber] = []
    elims: list[ChoiceElimination] = []
    base_lagrange: list[AlgebraicNumber] = []
    for extra in range(len(inequalities) + 1):
        for S in itertools.combinations(range(len(inequalities)), extra):
            eqs = gs + [inequalities[k] for k in S]
            if len(eqs) > n:
                flags.append("overdetermined-index-set-skipped")
                continue
            if len(eqs) == n:
                vals = _real_roots(_zero_dim_values(F, eqs, seed))
                candidates.extend(vals)
                lagrange.extend(vals)
                continue
            if not eqs:
                from .acv import asymptotic_critical_values

                rep = asymptotic_critical_values(F, seed=seed)
                candidates.extend(rep.candidates())
                lagrange.extend(rep.k0)
                continue
            lv = _real_roots(lagrange_values(F, eqs, seed))
            lagrange.extend(lv)
            if not S:
                base_lagrange = lv
            candidates.extend(lv)
            pairs = jacobian_minors(F, eqs)
            choices, partial = choice_vectors(pairs, seed)
            if partial:
                flags.append("partial-choice-vectors")
            groups = _by_subset(pairs)
            subsets = sorted(groups)
            for choice in choices:
                chosen = [groups[I][j] for I, j in zip(subsets, choice)]
                e = eliminate_choice(F, eqs, chosen, seed)
                elims.append(e)
                if e.status == "elimination too large":
                    return ConstrainedReport("bounds-only", None, False, dedupe(candidates),
                                             dedupe(lagrange), elims, [], [], seed,
                                             flags + ["elimination-too-large"], bounds)
                candidates.extend(_real_roots(e.eliminant))
    candidates = dedupe(candidates)
    lagrange = dedupe(lagrange)
    r_max = max(len(gs), 1)
    d1 = max((g.degree() for g in gs), default=1)
    ceiling = (n * r_max * max(d1, 1)) ** (n * n)
    if any(e.eliminant is not None and e.eliminant.degree > ceiling for e in elims):
        flags.append("degree-ceiling-exceeded")

    def test(r: Fraction) -> VarietyVerdict:
        return sublevel_witness(F, gs, r, budget, seed, inequalities)

    try:
        idx, rats, verdicts = select_infimum(candidates, test)
    except MonteCarloFailure:
        return ConstrainedReport("empty", None, False, candidates, lagrange, elims, [], [], seed,
                                 flags + ["no-point-found-on-variety"], bounds, ceiling)
    if any(not v.exact for v in verdicts):
        flags.append("numeric-witness")
    if idx is None:
        return ConstrainedReport("unbounded-below", None, False, candidates, lagrange, elims, verdicts,
                                 rats, seed, flags, bounds, ceiling)
    value = candidates[idx]
    attained, extra = _attained(F, gs, inequalities, value, lagrange, budget, precision, seed)
    return ConstrainedReport("finite", value, attained, candidates, lagrange, elims, verdicts, rats, seed,
                             flags + extra, bounds, ceiling)


def _zero_dim_values(F: MPoly, eqs: Sequence[MPoly], seed: int) -> UPoly | None:
    n = F.nvars
    nv = n + 1
    polys = [p.remap(nv, list(range(n))) for p in eqs] + [F.remap(nv, list(range(n))) - MPoly.var(nv, n)]
    try:
        res = resultant_gcp(polys, list(range(n)))
    except DegenerateSystemError:
        return None
    return UPoly.from_mpoly(res.resultant, n)


__all__ = [
    "ChoiceElimination", "ConstrainedError", "ConstrainedReport", "MinorPair", "SystemJ", "VarietyPoint",
    "VarietyVerdict", "build_system_J", "choice_vectors", "constrained_infimum_toy", "eliminate_choice",
    "expected_cardinality", "jacobian_matrix", "jacobian_minors", "lagrange_values", "sublevel_witness",
]
