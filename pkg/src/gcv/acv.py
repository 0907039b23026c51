"""Asymptotic critical values of a polynomial map C^n -> C and classical critical values.

The asymptotic part follows the super polar curve construction: n-1 random
combinations g_k of the partial derivatives and of the x_i * df/dx_j cut out a
curve; for each coordinate x_i the curve together with f - z is projected onto
the (x_i, z)-plane and the leading coefficient in x_i of the projection is
kept.  Values z where that coefficient vanishes are where a branch of the
curve escapes to infinity.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

import mpmath

from .elimination import DegenerateSystemError, resultant_gcp
from .polyring import MPoly, PolyError, UPoly, gradient, squarefree_part, upoly_gcd
from .realroots import AlgebraicNumber, count_nonreal_roots, isolate_real_roots

DEFAULT_CONFIDENCE = 100
RETRY_BUDGET = 5


class MonteCarloFailure(RuntimeError):
    """Every retry produced a degenerate elimination."""


@dataclass
class SuperPolarCombos:
    a: list[list[int]]
    b: list[list[list[int]]]
    polys: list[MPoly]
    seed: int
    sample_size: int

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "polys": [g.to_str(names) for g in self.polys],
            "seed": str(self.seed),
            "sample_size": self.sample_size,
        }


def sample_size(n: int, d: int, c: int = DEFAULT_CONFIDENCE) -> int:
    """|S| = 2 c n d^(n-1)."""
    return 2 * c * n * d ** (n - 1)


def super_polar_combos(f: MPoly, c: int = DEFAULT_CONFIDENCE, seed: int = 0) -> SuperPolarCombos:
    """g_k = sum_i a_ki df/dx_i + sum_ij b_kij x_i df/dx_j for k = 1..n-1."""
    n = f.nvars
    if n < 1:
        raise PolyError("f needs at least one variable")
    if f.is_constant():
        raise PolyError("f must be nonconstant")
    size = sample_size(n, f.degree(), c)
    rng = random.Random(seed)
    grad = gradient(f)
    xs = [MPoly.var(n, i) for i in range(n)]
    xgrad = [[xs[i] * grad[j] for j in range(n)] for i in range(n)]
    a_all, b_all, polys = [], [], []
    for _ in range(n - 1):
        a = [rng.randint(1, size) for _ in range(n)]
        b = [[rng.randint(1, size) for _ in range(n)] for _ in range(n)]
        g = MPoly.zero(n)
        for i in range(n):
            g = g + grad[i] * a[i]
            for j in range(n):
                g = g + xgrad[i][j] * b[i][j]
        a_all.append(a)
        b_all.append(b)
        polys.append(g)
    return SuperPolarCombos(a_all, b_all, polys, seed, size)


def _with_z(p: MPoly) -> MPoly:
    """Embed p(x_1..x_n) into the ring (x_1..x_n, z)."""
    return p.remap(p.nvars + 1, list(range(p.nvars)))


def _fiber_poly(f: MPoly) -> MPoly:
    n = f.nvars
    return _with_z(f) - MPoly.var(n + 1, n)


def _univariate(p: MPoly, var: int) -> UPoly:
    return UPoly.from_mpoly(p, var)


def leading_coefficient_in(p: MPoly, var: int) -> MPoly:
    """Coefficient of the highest power of x_var, as a polynomial in the other variables."""
    d = p.degree_in(var)
    out = {}
    for mono, c in p.terms.items():
        if mono[var] == d:
            e = list(mono)
            e[var] = 0
            out[tuple(e)] = c
    return MPoly(p.nvars, out)


@dataclass
class BlockElimination:
    keep: int
    projection: MPoly  # h-bar_i in (x_i, z), embedded in the ring (x, z)
    leading: UPoly  # h_i in z
    valuation: int
    matrix_shape: tuple[int, int]


def eliminate_variable_block(f: MPoly, combos: SuperPolarCombos, keep: int) -> BlockElimination:
    """Project V(g_1..g_{n-1}, f - z) onto (x_keep, z) and take the leading coefficient in x_keep.

    Raises DegenerateSystemError when the projection is identically zero.
    """
    n = f.nvars
    zi = n
    if n == 1:
        proj = _fiber_poly(f)
        lead = leading_coefficient_in(proj, 0)
        return BlockElimination(keep, proj, _univariate(lead, zi), 0, (0, 0))
    elim = [v for v in range(n) if v != keep]
    system = [_with_z(g) for g in combos.polys] + [_fiber_poly(f)]
    res = resultant_gcp(system, elim)
    proj = res.resultant
    if proj.is_zero():
        raise DegenerateSystemError("projection vanished identically")
    proj = proj.primitive()
    lead = leading_coefficient_in(proj, keep)
    return BlockElimination(keep, proj, _univariate(lead, zi), res.valuation, res.matrix_shape)


@dataclass
class CriticalValueReport:
    """Candidate values: roots of h = prod h_i (asymptotic) and of the K0 eliminant."""

    h: UPoly
    factors: list[UPoly]
    asymptotic: list[AlgebraicNumber]
    asymptotic_nonreal: int
    k0: list[AlgebraicNumber] = field(default_factory=list)
    k0_nonreal: int = 0
    k0_eliminant: UPoly | None = None
    seed: int = 0
    attempts: int = 1
    confidence: int = DEFAULT_CONFIDENCE
    combos: SuperPolarCombos | None = None
    flags: list[str] = field(default_factory=list)
    status: str = "ok"

    def candidates(self) -> list[AlgebraicNumber]:
        from .realroots import dedupe

        return dedupe(list(self.asymptotic) + list(self.k0))

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "status": self.status,
            "h": [str(c) for c in self.h.coeffs],
            "factors": [[str(c) for c in u.coeffs] for u in self.factors],
            "asymptotic_candidates": [a.to_json() for a in self.asymptotic],
            "asymptotic_nonreal_count": self.asymptotic_nonreal,
            "k0_eliminant": None if self.k0_eliminant is None
            else [str(c) for c in self.k0_eliminant.coeffs],
            "k0_candidates": [a.to_json() for a in self.k0],
            "k0_nonreal_count": self.k0_nonreal,
            "seed": str(self.seed),
            "attempts": self.attempts,
            "confidence": self.confidence,
            "combos": None if self.combos is None else self.combos.to_json(names),
            "flags": list(self.flags),
        }


def _attempt_seed(seed: int, attempt: int) -> int:
    return seed if attempt == 0 else random.Random(f"{seed}:{attempt}").getrandbits(64)


def _product_and_factors(leads: Sequence[UPoly]) -> tuple[UPoly, list[UPoly]]:
    h = UPoly([1])
    for u in leads:
        h = h * u
    factors: list[UPoly] = []
    for u in leads:
        if u.degree <= 0:
            continue
        u = squarefree_part(u)
        for w in factors:
            g = upoly_gcd(u, w)
            if g.degree > 0:
                from .polyring import upoly_divmod_exact

                u = upoly_divmod_exact(u, g).primitive()
        if u.degree > 0:
            factors.append(u)
    return h, factors


def asymptotic_critical_values(f: MPoly, c: int = DEFAULT_CONFIDENCE, seed: int = 0,
                               with_k0: bool = True, retries: int = RETRY_BUDGET
                               ) -> CriticalValueReport:
    """Candidate set containing every asymptotic critical value of f (Monte Carlo)."""
    if f.is_constant():
        raise PolyError("f must be nonconstant")
    n = f.nvars
    last_error: Exception | None = None
    for attempt in range(retries):
        s = _attempt_seed(seed, attempt)
        combos = super_polar_combos(f, c, s)
        try:
            blocks = [eliminate_variable_block(f, combos, i) for i in range(n)]
        except DegenerateSystemError as exc:
            last_error = exc
            continue
        leads = [b.leading for b in blocks]
        h, factors = _product_and_factors(leads)
        flags = []
        if any(b.valuation > 0 for b in blocks):
            flags.append("excess-components-in-projection")
        sqf = squarefree_part(h)
        roots = isolate_real_roots(sqf)
        report = CriticalValueReport(h, factors, roots, count_nonreal_roots(sqf) if sqf.degree > 0 else 0,
                                     seed=seed, attempts=attempt + 1, confidence=c, combos=combos,
                                     flags=flags)
        if with_k0:
            k0 = critical_values_k0_report(f)
            report.k0 = k0.values
            report.k0_nonreal = k0.nonreal
            report.k0_eliminant = k0.eliminant
            report.flags.extend(k0.flags)
        return report
    raise MonteCarloFailure(f"elimination degenerate after {retries} attempts: {last_error}")


# ---------------------------------------------------------------------------
# classical critical values


@dataclass
class K0Result:
    values: list[AlgebraicNumber]
    nonreal: int
    eliminant: UPoly
    flags: list[str]


def critical_values_k0(f: MPoly) -> list[AlgebraicNumber]:
    """Real critical values of f."""
    return critical_values_k0_report(f).values


def _upoly_roots(u: UPoly, dps: int) -> list:
    if u.degree <= 0:
        return []
    with mpmath.workdps(dps):
        return mpmath.polyroots(list(reversed(u.coeffs)), maxsteps=400, extraprec=4 * dps)


def _coordinate_eliminant(grad: Sequence[MPoly], keep: int) -> tuple[UPoly, int]:
    n = len(grad)
    elim = [v for v in range(n) if v != keep]
    res = resultant_gcp(grad, elim)
    return UPoly.from_mpoly(res.resultant, keep) if not res.resultant.is_zero() else UPoly(), res.valuation


def _numeric_critical_values(f: MPoly, dps: int = 60) -> list | None:
    """Critical values computed from the finite critical set, or None if it may be infinite."""
    n = f.nvars
    grad = gradient(f)
    coords = []
    for i in range(n):
        if n == 1:
            u, val = UPoly.from_mpoly(grad[0], 0), 0
        else:
            u, val = _coordinate_eliminant(grad, i)
        if val > 0 or u.is_zero():
            return None
        if u.degree <= 0:
            return []
        coords.append(_upoly_roots(squarefree_part(u), dps))
    values = []
    with mpmath.workdps(dps):
        scale = max(1, max(abs(c) for g in grad for c in g.terms.values()) if any(grad) else 1)
        tol = mpmath.mpf(10) ** (-(dps // 2))
        for point in itertools.product(*coords):
            ok = True
            bigness = 1 + max(abs(p) for p in point) if point else 1
            for g in grad:
                v = _eval_mp(g, point)
                if abs(v) > tol * scale * bigness ** max(g.degree(), 0):
                    ok = False
                    break
            if ok:
                values.append(_eval_mp(f, point))
    return values


def _eval_mp(p: MPoly, point) -> mpmath.mpc:
    acc = mpmath.mpc(0)
    for mono, c in p.terms.items():
        t = mpmath.mpc(c)
        for x, e in zip(point, mono):
            if e:
                t *= x ** e
        acc += t
    return acc


def critical_values_k0_report(f: MPoly, dps: int = 60) -> K0Result:
    """Critical values from the eliminant of {df/dx_1, ..., df/dx_n, f - z}.

    When the unperturbed resultant vanishes (solutions at infinity or a
    positive-dimensional critical locus), the perturbed eliminant may carry
    extra roots.  If the critical set is finite those are removed by matching
    against numerically computed critical points; otherwise the superset is
    kept and flagged.
    """
    if f.is_constant():
        raise PolyError("f must be nonconstant")
    n = f.nvars
    grad = [_with_z(g) for g in gradient(f)]
    res = resultant_gcp(grad + [_fiber_poly(f)], list(range(n)))
    elim_poly = res.resultant
    u = UPoly.from_mpoly(elim_poly, n) if not elim_poly.is_zero() else UPoly()
    flags: list[str] = []
    if u.degree <= 0:
        return K0Result([], 0, u, flags)
    sqf = squarefree_part(u)
    real = isolate_real_roots(sqf)
    nonreal = sqf.degree - len(real)
    if res.valuation == 0:
        return K0Result(real, nonreal, u, flags)
    numeric = _numeric_critical_values(f, dps)
    if numeric is None:
        flags.append("k0-superset")
        return K0Result(real, nonreal, u, flags)
    flags.append("k0-filtered-numerically")
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-(dps // 3))

        def accepted(z) -> bool:
            return any(abs(z - v) <= tol * (1 + abs(v)) for v in numeric)

        kept_real = [a for a in real if accepted(_mp_value(a, dps))]
        kept_nonreal = sum(1 for z in _upoly_roots(sqf, dps)
                           if abs(mpmath.im(z)) > tol and accepted(z))
    return K0Result(kept_real, kept_nonreal, u, flags)


def _mp_value(a: AlgebraicNumber, dps: int):
    from .realroots import refine

    r = refine(a, int(dps * 3.33) + 8)
    return mpmath.mpf(r.lo.numerator) / r.lo.denominator
