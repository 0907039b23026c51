"""Global infimum of a polynomial over R^n from its Rabier candidate set.

The candidates e_1 < ... < e_m (real critical and asymptotic critical values)
are interlaced by rationals r_0 < e_1 < r_1 < ... < e_m < r_m.  A point p with
f(p) <= r_j is an exact certificate that inf f <= r_j; the first r_j with such
a certificate pins the infimum to e_j, and a certificate at r_0 means f is
unbounded below.  The opposite verdict ("probably empty") comes from a failed
search and is labelled as such.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .acv import DEFAULT_CONFIDENCE, CriticalValueReport, MonteCarloFailure, asymptotic_critical_values
from .polyring import MPoly
from .polytope import newton_polytope
from .realroots import AlgebraicNumber, compare, interlacing_rationals, refine


@dataclass(frozen=True)
class Budget:
    starts: int = 64
    growth: int = 4
    rounds: int = 8
    descent_steps: int = 150

    def to_json(self) -> dict:
        return {"starts": self.starts, "growth": self.growth, "rounds": self.rounds,
                "descent_steps": self.descent_steps}


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass
class Witness:
    point: tuple[Fraction, ...]
    value: Fraction

    def to_json(self) -> dict:
        return {"point": [_frac_str(c) for c in self.point], "value": _frac_str(self.value)}


@dataclass
class FiberVerdict:
    """Outcome of the search at level r: low has f <= r, high has f >= r."""

    r: Fraction
    low: Witness | None
    high: Witness | None
    probes: int

    @property
    def nonempty(self) -> bool:
        return self.low is not None and self.high is not None

    @property
    def sublevel_nonempty(self) -> bool:
        return self.low is not None

    @property
    def verdict(self) -> str:
        return "nonempty" if self.nonempty else "probably-empty"

    def to_json(self) -> dict:
        return {
            "r": _frac_str(self.r),
            "verdict": self.verdict,
            "sublevel": "nonempty" if self.sublevel_nonempty else "probably-empty",
            "low": None if self.low is None else self.low.to_json(),
            "high": None if self.high is None else self.high.to_json(),
            "probes": self.probes,
        }


class NumericPoly:
    """Float evaluation of a polynomial and its gradient."""

    def __init__(self, p: MPoly):
        self.n = p.nvars
        terms = p.sorted_terms()
        self.exps = np.array([m for m, _ in terms], dtype=np.float64).reshape(len(terms), self.n)
        self.coeffs = np.array([float(c) for _, c in terms], dtype=np.float64)

    def __call__(self, x: np.ndarray) -> float:
        with np.errstate(all="ignore"):
            return float(self.coeffs @ np.prod(np.power(x[None, :], self.exps), axis=1))

    def grad(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n)
        with np.errstate(all="ignore"):
            for i in range(self.n):
                e = self.exps.copy()
                c = self.coeffs * e[:, i]
                e[:, i] = np.maximum(e[:, i] - 1, 0)
                out[i] = c @ np.prod(np.power(x[None, :], e), axis=1)
        return out


def descend(fun: Callable[[np.ndarray], float], grad: Callable[[np.ndarray], np.ndarray],
            x0: np.ndarray, steps: int, stop: float = -math.inf) -> np.ndarray:
    """Backtracking gradient descent; halts once fun drops below ``stop``."""
    x = np.array(x0, dtype=np.float64)
    fx = fun(x)
    step = 1.0
    for _ in range(steps):
        if not math.isfinite(fx) or fx < stop:
            break
        g = grad(x)
        gn = float(np.linalg.norm(g))
        if not math.isfinite(gn) or gn == 0.0:
            break
        d = -g / gn
        scale = max(1.0, float(np.linalg.norm(x)))
        t = step * scale
        while t > 1e-14 * scale:
            y = x + t * d
            fy = fun(y)
            if math.isfinite(fy) and fy < fx:
                x, fx = y, fy
                step = min(step * 2.0, 1.0)
                break
            t *= 0.5
        else:
            break
        step = t / scale
    return x


def gauss_newton(residual: Callable[[np.ndarray], np.ndarray], jacobian: Callable[[np.ndarray], np.ndarray],
                 x0: np.ndarray, steps: int = 60) -> np.ndarray:
    """Damped Gauss-Newton on a residual vector (minimum-norm steps)."""
    x = np.array(x0, dtype=np.float64)
    rx = residual(x)
    nx = float(rx @ rx)
    for _ in range(steps):
        if not math.isfinite(nx) or nx == 0.0:
            break
        J = jacobian(x)
        if not np.all(np.isfinite(J)):
            break
        dx = np.linalg.lstsq(J, -rx, rcond=None)[0]
        t = 1.0
        while t > 1e-6:
            y = x + t * dx
            ry = residual(y)
            ny = float(ry @ ry)
            if math.isfinite(ny) and ny < nx:
                x, rx, nx = y, ry, ny
                break
            t *= 0.5
        else:
            break
    return x


def rationalize(x: Sequence[float], max_den: int = 1 << 20) -> list[tuple[Fraction, ...]]:
    """Nearby rational points: a low-height one and the exact binary value."""
    if not all(math.isfinite(v) for v in x):
        return []
    low = tuple(Fraction(v).limit_denominator(max_den) for v in x)
    exact = tuple(Fraction(v) for v in x)
    return [low] if low == exact else [low, exact]


def _exact_value(p: MPoly, point: Sequence[Fraction]) -> Fraction:
    return Fraction(p.evaluate(point))


def _normal_rays(f: MPoly, rounds: int) -> list[tuple[Fraction, ...]]:
    """Points along monomial curves x_i = +-2^(k w_i) for outer facet normals w."""
    n = f.nvars
    if f.is_constant():
        return []
    try:
        P = newton_polytope(f)
    except Exception:
        return []
    normals = [w for w, _ in P.facets()] if P.dim == n else []
    normals += [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    normals += [tuple(-1 if j == i else 0 for j in range(n)) for i in range(n)]
    pts = []
    for w in normals:
        for signs in range(1 << n):
            for k in range(1, rounds + 1):
                pts.append(tuple(Fraction((-1) ** ((signs >> i) & 1)) * Fraction(2) ** (k * w[i])
                                 for i in range(n)))
    return pts


def fiber_nonempty_witness(f: MPoly, r, budget: Budget = Budget(), seed: int = 0) -> FiberVerdict:
    """Search for rational p, q with f(p) <= r <= f(q).

    A found pair certifies that f^-1(r) is nonempty (intermediate values on the
    connected space R^n).  Failure is reported as probably-empty.
    """
    r = Fraction(r)
    n = f.nvars
    rng = random.Random(f"fiber:{seed}:{r}")
    low = high = None
    probes = 0

    def consider(pt) -> None:
        nonlocal low, high, probes
        probes += 1
        v = _exact_value(f, pt)
        if v <= r and (low is None or v < low.value):
            low = Witness(tuple(pt), v)
        if v >= r and (high is None or v > high.value):
            high = Witness(tuple(pt), v)

    consider(tuple(Fraction(0) for _ in range(n)))
    for pt in _normal_rays(f, budget.rounds):
        consider(pt)
        if low is not None and high is not None:
            return FiberVerdict(r, low, high, probes)
    num = NumericPoly(f)
    numg = lambda x: num.grad(x)  # noqa: E731
    radius = 1.0
    for _ in range(budget.rounds):
        starts = []
        for _ in range(budget.starts):
            pt = tuple(Fraction(rng.randint(-1 << 12, 1 << 12), 1 << 12) * Fraction(radius).limit_denominator()
                       for _ in range(n))
            consider(pt)
            starts.append(pt)
        if low is not None and high is not None:
            return FiberVerdict(r, low, high, probes)
        if low is None:
            # descend on f from the most promising starts
            ranked = sorted(starts, key=lambda p: num(np.array([float(c) for c in p])))
            for pt in ranked[:4]:
                x = descend(num, numg, np.array([float(c) for c in pt]), budget.descent_steps,
                            stop=float(r) - 1e-9 * max(1.0, abs(float(r))))
                for q in rationalize(x):
                    consider(q)
                if low is not None:
                    break
        if high is None:
            for pt in starts[:4]:
                x = descend(lambda y: -num(y), lambda y: -num.grad(y),
                            np.array([float(c) for c in pt]), budget.descent_steps // 3,
                            stop=-float(r) - 1.0)
                for q in rationalize(x):
                    consider(q)
        if low is not None and high is not None:
            break
        radius *= budget.growth
    return FiberVerdict(r, low, high, probes)


@dataclass
class InfimumResult:
    status: str                      # finite | unbounded-below | constant
    value: AlgebraicNumber | None
    attained: bool
    witnesses: list[Witness]
    candidates: list[AlgebraicNumber]
    interlacing: list[Fraction]
    verdicts: list[FiberVerdict]
    seed: int
    flags: list[str] = field(default_factory=list)
    report: CriticalValueReport | None = None

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "status": self.status,
            "value": None if self.value is None else self.value.to_json(),
            "value_approx": None if self.value is None else repr(float(self.value)),
            "attained": self.attained,
            "witnesses": [w.to_json() for w in self.witnesses],
            "candidates": [c.to_json() for c in self.candidates],
            "interlacing": [_frac_str(q) for q in self.interlacing],
            "fiber_tests": [v.to_json() for v in self.verdicts],
            "seed": str(self.seed),
            "flags": list(self.flags),
            "critical_values": None if self.report is None else self.report.to_json(names),
        }


def select_infimum(candidates: Sequence[AlgebraicNumber], test: Callable[[Fraction], FiberVerdict]
                   ) -> tuple[int | None, list[Fraction], list[FiberVerdict]]:
    """Scan the interlacing rationals upward.

    Returns (index of the selected candidate or None for unbounded below,
    interlacing rationals, verdicts).  Raises MonteCarloFailure when no level
    has a certified nonempty sublevel set.
    """
    rats = interlacing_rationals(list(candidates))
    verdicts = []
    for j, r in enumerate(rats):
        v = test(r)
        verdicts.append(v)
        if v.sublevel_nonempty:
            return (None if j == 0 else j - 1), rats, verdicts
    raise MonteCarloFailure("no sublevel witness found above the largest candidate")


def _near(point: Sequence[Fraction], f: MPoly, target: AlgebraicNumber, bits: int) -> bool:
    t = refine(target, bits + 4)
    v = _exact_value(f, point)
    return abs(v - t.lo) <= Fraction(1, 1 << bits) + (t.hi - t.lo)


def attainment(f: MPoly, value: AlgebraicNumber, k0: Sequence[AlgebraicNumber], start: Witness | None,
               budget: Budget, precision: int, seed: int) -> tuple[bool, Witness | None, list[str]]:
    """Decide attainment: value must be a critical value and be reached by descent."""
    flags: list[str] = []
    if not any(compare(value, c) == 0 for c in k0):
        return False, None, flags
    q = value.as_fraction()
    num = NumericPoly(f)
    rng = random.Random(f"attain:{seed}")
    starts = [] if start is None else [np.array([float(c) for c in start.point])]
    starts += [np.array([rng.uniform(-2, 2) for _ in range(f.nvars)]) for _ in range(budget.starts // 4)]
    target = float(refine(value, precision + 8))

    def residual(y):
        return np.concatenate([[num(y) - target], num.grad(y)])

    def jacobian(y):
        rows = [num.grad(y)] + [d.grad(y) for d in grads]
        return np.array(rows)

    grads = [NumericPoly(f.diff(i)) for i in range(f.nvars)]
    for x0 in starts:
        x = gauss_newton(residual, jacobian, x0)
        for pt in rationalize(x):
            v = _exact_value(f, pt)
            if q is not None and v == q:
                return True, Witness(pt, v), flags
            if _near(pt, f, value, precision) and float(np.linalg.norm(num.grad(x))) < 2.0 ** -precision:
                flags.append("attainment-by-descent")
                return True, Witness(pt, v), flags
    return False, None, flags


def infimum(f: MPoly, c: int = DEFAULT_CONFIDENCE, seed: int = 0, budget: Budget = Budget(),
            precision: int = 24) -> InfimumResult:
    """Infimum of f over R^n."""
    if f.is_constant():
        v = AlgebraicNumber.from_rational(f.constant_term())
        return InfimumResult("constant", v, True, [], [v], [], [], seed)
    report = asymptotic_critical_values(f, c, seed, with_k0=True)
    candidates = report.candidates()
    flags = list(report.flags)

    def test(r: Fraction) -> FiberVerdict:
        return fiber_nonempty_witness(f, r, budget, seed)

    try:
        idx, rats, verdicts = select_infimum(candidates, test)
    except MonteCarloFailure:
        bigger = Budget(budget.starts * 2, budget.growth, budget.rounds * 2, budget.descent_steps * 2)
        idx, rats, verdicts = select_infimum(candidates, lambda r: fiber_nonempty_witness(f, r, bigger, seed))
        flags.append("budget-escalated")
    if any(not v.sublevel_nonempty for v in verdicts):
        flags.append("probably-empty-verdicts-are-probabilistic")
    last = verdicts[-1]
    if idx is None:
        return InfimumResult("unbounded-below", None, False, [last.low], candidates, rats, verdicts,
                             seed, flags, report)
    value = candidates[idx]
    attained, w, extra = attainment(f, value, report.k0, last.low, budget, precision, seed)
    witnesses = [last.low] + ([w] if w is not None else [])
    return InfimumResult("finite", value, attained, witnesses, candidates, rats, verdicts, seed,
                         flags + extra, report)


__all__ = [
    "Budget", "FiberVerdict", "InfimumResult", "NumericPoly", "Witness", "attainment", "descend", "gauss_newton",
    "fiber_nonempty_witness", "infimum", "rationalize", "select_infimum",
]
