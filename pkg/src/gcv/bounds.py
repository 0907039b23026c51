"""Closed-form degree and magnitude bounds for the optimum value.

Entries whose source statement is asymptotic (O, O~) are evaluated with every
hidden constant equal to 1 and polylogarithmic factors dropped; they carry an
``asymptotic`` flag and are not certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import mpmath

_LOG_GRID = 1 << 20


class DegreeBound(NamedTuple):
    bound: int
    cap: int


def attained_degree_bound(n: int, d: int, r: int = 0, s: int = 0) -> DegreeBound:
    """max_{0<=i<=min(r+s,n)} C(n,i) d^i (d-1)^(n-i), and the cap 2^(n-1) d^n."""
    if min(n, r, s) < 0 or d < 1:
        raise ValueError("need n, r, s >= 0 and d >= 1")
    best = max(math.comb(n, i) * d**i * (d - 1) ** (n - i) for i in range(min(r + s, n) + 1))
    cap = (2 ** (n - 1) * d**n) if n >= 1 else 1
    return DegreeBound(best, cap)


def _exact_log2(x: int) -> Fraction | None:
    if x > 0 and x & (x - 1) == 0:
        return Fraction(x.bit_length() - 1)
    return None


def _log2_upper(x: int) -> Fraction:
    """A rational on the 2^-20 grid that is >= log2(x)."""
    e = _exact_log2(x)
    if e is not None:
        return e
    with mpmath.workprec(128):
        v = mpmath.log(x, 2) * _LOG_GRID
        k = int(mpmath.ceil(v + mpmath.mpf(2) ** -40))
    return Fraction(k, _LOG_GRID)


@dataclass
class LogBound:
    """log2 of a lower bound on |f*|.

    ``value`` is exact when every logarithm is an integer; otherwise it is a
    rational no larger than the exact quantity, so 2^value stays a valid
    lower bound.
    """

    expression: str
    value: Fraction
    exact: bool

    def to_json(self) -> dict:
        return {"expression": self.expression, "value": f"{self.value.numerator}/{self.value.denominator}",
                "exact": self.exact}


def attained_value_log_bound(n: int, d: int, H: int, r: int = 0, s: int = 0) -> LogBound:
    """-n 2^n d^n (5 - n/2 + log2 H~ + n log2 d) with H~ = max(H, n+r+s)."""
    if H < 1 or d < 1 or n < 1:
        raise ValueError("need H, d, n >= 1")
    Ht = max(H, n + r + s)
    scale = n * 2**n * d**n
    lh, ld = _exact_log2(Ht), _exact_log2(d)
    exact = lh is not None and ld is not None
    lh_u = lh if lh is not None else _log2_upper(Ht)
    ld_u = ld if ld is not None else _log2_upper(d)
    value = -scale * (5 - Fraction(n, 2) + lh_u + n * ld_u)
    expr = f"-{scale}*(5 - {n}/2 + log2({Ht}) + {n}*log2({d}))"
    return LogBound(expr, value, exact)


@dataclass
class BoundEntry:
    name: str
    value: Fraction | int
    formula: str
    source: str
    asymptotic: bool

    def to_json(self) -> dict:
        v = self.value
        text = str(v) if isinstance(v, int) else f"{v.numerator}/{v.denominator}"
        return {"name": self.name, "value": text, "formula": self.formula, "source": self.source,
                "asymptotic": self.asymptotic}


@dataclass
class BoundReport:
    scenario: str
    inputs: dict
    entries: list[BoundEntry]
    notes: list[str] = field(default_factory=list)

    def entry(self, name: str) -> BoundEntry:
        return next(e for e in self.entries if e.name == name)

    @property
    def degree(self) -> int:
        return int(self.entry("degree").value)

    def to_json(self) -> dict:
        return {"scenario": self.scenario, "inputs": self.inputs,
                "entries": [e.to_json() for e in self.entries], "notes": self.notes}


def attained_bounds(n: int, d: int, H: int, r: int = 0, s: int = 0) -> BoundReport:
    deg = attained_degree_bound(n, d, r, s)
    lb = attained_value_log_bound(n, d, H, r, s)
    entries = [
        BoundEntry("degree", deg.bound, "max_i C(n,i) d^i (d-1)^(n-i), 0<=i<=min(r+s,n)",
                   "attained minimum, degree", False),
        BoundEntry("degree_cap", deg.cap, "2^(n-1) d^n", "attained minimum, degree", False),
        BoundEntry("log2_lower_bound", lb.value, lb.expression, "attained minimum, magnitude", False),
    ]
    notes = [] if lb.exact else ["log2 terms rounded up on a 2^-20 grid; the value is a safe lower bound"]
    return BoundReport("attained", {"n": n, "d": d, "H": H, "r": r, "s": s}, entries, notes)


def unconstrained_bounds(n: int, d: int, tau: int) -> BoundReport:
    deg = d ** (n - 1)
    eta = n * d ** (n - 1) * tau + n * n
    return BoundReport("unconstrained", {"n": n, "d": d, "tau": tau}, [
        BoundEntry("degree", deg, "d^(n-1)", "unconstrained infimum, degree", True),
        BoundEntry("eta", eta, "n d^(n-1) tau + n^2", "unconstrained infimum, magnitude 2^-eta..2^eta", True),
    ])


def newton_bounds(n: int, d: int, tau: int) -> BoundReport:
    eta = n * n * d ** (n - 1) * (n + tau)
    return BoundReport("newton", {"n": n, "d": d, "tau": tau}, [
        BoundEntry("eta", eta, "n^2 d^(n-1) (n + tau)", "Newton non-degenerate infimum, magnitude", True),
    ])


def constrained_bounds(n: int, d: int, d1: int, tau: int, r: int, scenario: str = "constrained"
                       ) -> BoundReport:
    """Constrained-case bounds; r = 0 dispatches to the unconstrained scenario."""
    if scenario == "newton":
        return newton_bounds(n, d, tau)
    if r == 0:
        rep = unconstrained_bounds(n, d, tau)
        rep.notes.append("r = 0: reported as the unconstrained scenario")
        return rep
    base = (n * r * d1) ** (n * n)
    eta = (r * (d + n + tau) + d1) * base
    return BoundReport("constrained", {"n": n, "d": d, "d1": d1, "tau": tau, "r": r}, [
        BoundEntry("degree", base, "(n r d1)^(n^2)", "constrained infimum, degree", True),
        BoundEntry("eta", eta, "(r (d + n + tau) + d1) (n r d1)^(n^2)",
                   "constrained infimum, magnitude 2^-eta..2^eta", True),
    ], ["eta read as (r(d+n+tau)+d1)*(n r d1)^(n^2); the printed grouping is unbalanced"])


def hyperplane_success_probability(D: int, S_size: int) -> Fraction:
    """max(0, 1 - D/|S|)."""
    if S_size <= 0:
        raise ValueError("|S| must be positive")
    return max(Fraction(0), 1 - Fraction(D, S_size))


__all__ = [
    "BoundEntry", "BoundReport", "DegreeBound", "LogBound", "attained_bounds", "attained_degree_bound",
    "attained_value_log_bound", "constrained_bounds", "hyperplane_success_probability", "newton_bounds",
    "unconstrained_bounds",
]
