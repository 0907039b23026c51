"""Real roots of integer polynomials in isolating-interval representation.

Isolation uses Descartes' rule of signs with dyadic bisection (the
Vincent-Collins-Akritas scheme) on integer coefficients only.  Rational roots
are snapped to zero-width intervals with a linear defining polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .polyring import PolyError, UPoly, squarefree_part, upoly_gcd


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


# ---------------------------------------------------------------------------
# integer helpers


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(coeffs: Iterable[int]) -> int:
    count, last = 0, 0
    for c in coeffs:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def _taylor_shift1(c: Sequence[int]) -> list[int]:
    """Coefficients of p(x + 1)."""
    a = list(c)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _var01(c: Sequence[int]) -> int:
    """Descartes bound for the roots of p in the open interval (0, 1)."""
    return _variations(_taylor_shift1(list(reversed(c))))


def _scaled_eval(coeffs: Sequence[int], num: int, den: int) -> int:
    """den^deg * p(num/den), an integer with the sign of p(num/den)."""
    n = len(coeffs) - 1
    acc = 0
    pw = 1
    for i in range(n, -1, -1):
        acc = acc * num + coeffs[i] * pw
        pw *= den
    return acc


def sign_at_rational(u: UPoly, x: Fraction) -> int:
    if not u.coeffs:
        return 0
    x = Fraction(x)
    return _sign(_scaled_eval(u.coeffs, x.numerator, x.denominator))


def _compose_interval(coeffs: Sequence[int], lo: Fraction, hi: Fraction) -> list[int]:
    """Integer polynomial with the sign pattern of p(lo + (hi - lo) x) on [0, 1]."""
    den = math.lcm(lo.denominator, hi.denominator)
    a = lo.numerator * (den // lo.denominator)
    b = hi.numerator * (den // hi.denominator)
    lin = [a, b - a]  # (a + (b - a) x) / den
    out = [0]
    n = len(coeffs) - 1
    for i in range(n, -1, -1):
        nxt = [0] * (len(out) + 1)
        for k, v in enumerate(out):
            nxt[k] += v * lin[0]
            nxt[k + 1] += v * lin[1]
        nxt[0] += coeffs[i] * den ** (n - i)
        out = nxt
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def descartes_bound(u: UPoly, lo: Fraction, hi: Fraction) -> int:
    """Upper bound (exact when 0 or 1) on the number of roots of u in (lo, hi)."""
    if lo >= hi:
        return 0
    return _var01(_compose_interval(u.coeffs, Fraction(lo), Fraction(hi)))


def root_bound(u: UPoly) -> int:
    """Power of two strictly larger than every |root| (Cauchy bound)."""
    c = u.coeffs
    lc = abs(c[-1])
    m = max((abs(v) for v in c[:-1]), default=0)
    bound = 1 + -(-m // lc)
    return 1 << max(bound.bit_length(), 1)


# ---------------------------------------------------------------------------
# algebraic numbers


@total_ordering
class AlgebraicNumber:
    """A real root of a square-free integer polynomial, isolated in [lo, hi].

    Endpoints are rationals.  Either lo == hi is the (rational) root itself, or
    lo < hi, neither endpoint is a root and the defining polynomial changes sign
    exactly once on the interval.
    """

    __slots__ = ("defining", "lo", "hi")

    def __init__(self, defining: UPoly, lo, hi):
        self.defining = defining
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        if self.lo > self.hi:
            raise ValueError("empty isolating interval")

    @classmethod
    def from_rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(UPoly([-q.numerator, q.denominator]), q, q)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def as_fraction(self) -> Fraction | None:
        return self.lo if self.lo == self.hi else None

    @property
    def degree(self) -> int:
        return self.defining.degree

    def __float__(self) -> float:
        a = refine(self, 60)
        return float((a.lo + a.hi) / 2)

    def __repr__(self):
        if self.is_rational:
            return f"AlgebraicNumber({self.lo})"
        return f"AlgebraicNumber({self.defining.to_str()}, [{self.lo}, {self.hi}])"

    def to_json(self) -> dict:
        return {
            "defining": [str(c) for c in self.defining.coeffs],
            "lo": _frac_str(self.lo),
            "hi": _frac_str(self.hi),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraicNumber":
        return cls(UPoly(int(c) for c in data["defining"]), Fraction(data["lo"]), Fraction(data["hi"]))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber.from_rational(other)
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return compare(self, other) == 0

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber.from_rational(other)
        return compare(self, other) < 0

    __hash__ = None  # equality is decided by refinement, not by representation


def _tighten_endpoints(p: UPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink [lo, hi] (one simple root inside) until neither endpoint is a root."""
    dp = p.derivative()
    # an endpoint root is simple, so p' gives the sign of p just inside the interval
    slo = sign_at_rational(p, lo) or sign_at_rational(dp, lo)
    while sign_at_rational(p, lo) == 0 or sign_at_rational(p, hi) == 0:
        mid = (lo + hi) / 2
        sm = sign_at_rational(p, mid)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _snap_rational(p: UPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Detect a rational root inside [lo, hi] and return it as a zero-width interval."""
    if lo == hi:
        return lo, hi
    lc = abs(p.lc())
    # any two distinct fractions with denominators <= lc differ by >= 1/lc^2
    target = Fraction(1, 2 * lc * lc)
    slo = sign_at_rational(p, lo)
    while hi - lo >= target:
        mid = (lo + hi) / 2
        sm = sign_at_rational(p, mid)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    cand = ((lo + hi) / 2).limit_denominator(lc)
    if lo <= cand <= hi and sign_at_rational(p, cand) == 0:
        return cand, cand
    return lo, hi


def isolate_real_roots(u: UPoly, snap_rationals: bool = True) -> list[AlgebraicNumber]:
    """Disjoint isolating intervals for the distinct real roots of u, in increasing order."""
    if u.is_zero():
        raise PolyError("cannot isolate the roots of the zero polynomial")
    p = squarefree_part(u)
    if p.degree <= 0:
        return []
    found: list[tuple[Fraction, Fraction]] = []
    coeffs = list(p.coeffs)
    if coeffs[0] == 0:
        found.append((Fraction(0), Fraction(0)))
        coeffs = coeffs[1:]
    if len(coeffs) > 1:
        bound = root_bound(UPoly(coeffs))
        for sgn in (1, -1):
            c = [v * (sgn**i) for i, v in enumerate(coeffs)]
            n = len(c) - 1
            scaled = [v * bound**i for i, v in enumerate(c)]  # p(B x)
            for (a, b) in _isolate01(scaled, n):
                lo, hi = a * bound, b * bound
                if sgn < 0:
                    lo, hi = -hi, -lo
                found.append((lo, hi))
    out = []
    for lo, hi in sorted(found):
        if lo != hi:
            lo, hi = _tighten_endpoints(p, lo, hi)
        if snap_rationals and lo != hi:
            lo, hi = _snap_rational(p, lo, hi)
        if lo == hi:
            out.append(AlgebraicNumber.from_rational(lo))
        else:
            out.append(AlgebraicNumber(p, lo, hi))
    out.sort(key=lambda a: (a.lo, a.hi))
    return out


def _isolate01(c: list[int], n: int) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals in (0, 1) for the roots of c (c(0) != 0, c(1) != 0)."""
    out = []
    stack = [(c, 0, 0)]
    while stack:
        q, num, k = stack.pop()
        v = _var01(q)
        if v == 0:
            continue
        if v == 1:
            out.append((Fraction(num, 1 << k), Fraction(num + 1, 1 << k)))
            continue
        deg = len(q) - 1
        left = [qi << (deg - i) for i, qi in enumerate(q)]  # 2^deg q(x/2)
        right = _taylor_shift1(left)
        if right[0] == 0:
            out.append((Fraction(2 * num + 1, 1 << (k + 1)),) * 2)
            right = right[1:]
        stack.append((left, 2 * num, k + 1))
        stack.append((right, 2 * num + 1, k + 1))
    return out


def count_nonreal_roots(u: UPoly) -> int:
    """Number of distinct non-real complex roots of u."""
    p = squarefree_part(u)
    return max(p.degree, 0) - len(isolate_real_roots(p, snap_rationals=False))


def refine(a: AlgebraicNumber, bits: int) -> AlgebraicNumber:
    """Bisect until the interval width is at most 2^-bits."""
    if a.is_rational:
        return a
    p, lo, hi = a.defining, a.lo, a.hi
    target = Fraction(1, 1 << max(bits, 0))
    slo = sign_at_rational(p, lo)
    while hi - lo > target:
        mid = (lo + hi) / 2
        sm = sign_at_rational(p, mid)
        if sm == 0:
            return AlgebraicNumber.from_rational(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return AlgebraicNumber(p, lo, hi)


def _bisect_once(a: AlgebraicNumber) -> AlgebraicNumber:
    return refine(a, max(0, -math.floor(math.log2(a.hi - a.lo))) + 1) if not a.is_rational else a


def sign_at(a: AlgebraicNumber, u: UPoly) -> int:
    """Exact sign of u at the algebraic number a."""
    if u.is_zero():
        return 0
    if a.is_rational:
        return sign_at_rational(u, a.lo)
    g = upoly_gcd(a.defining, u)
    if g.degree > 0:
        if sign_at_rational(g, a.lo) * sign_at_rational(g, a.hi) < 0:
            return 0
    while True:
        slo = sign_at_rational(u, a.lo)
        shi = sign_at_rational(u, a.hi)
        if slo and slo == shi and descartes_bound(u, a.lo, a.hi) == 0:
            return slo
        a = _bisect_once(a)
        if a.is_rational:
            return sign_at_rational(u, a.lo)


def _contains(a: AlgebraicNumber, lo: Fraction, hi: Fraction) -> bool:
    """Whether the value of a lies in [lo, hi]; endpoints must not equal a unless rational."""
    while True:
        if lo <= a.lo and a.hi <= hi:
            return True
        if a.hi < lo or a.lo > hi:
            return False
        a = _bisect_once(a)


def compare(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """-1, 0 or 1 according to a < b, a == b, a > b."""
    if a.is_rational and b.is_rational:
        return _sign(a.lo - b.lo)
    if b.is_rational:
        return -compare(b, a)
    # b is irrational from here on
    if a.is_rational:
        if sign_at_rational(b.defining, a.lo) == 0 and b.lo < a.lo < b.hi:
            return 0
    elif a.hi >= b.lo and b.hi >= a.lo and sign_at(a, b.defining) == 0 and _contains(a, b.lo, b.hi):
        return 0
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        a = _bisect_once(a)
        b = _bisect_once(b)


def dedupe(values: Iterable[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """Sorted list of distinct values."""
    out: list[AlgebraicNumber] = []
    for v in values:
        if not any(compare(v, w) == 0 for w in out):
            out.append(v)
    return sort_numbers(out)


def sort_numbers(values: Iterable[AlgebraicNumber]) -> list[AlgebraicNumber]:
    from functools import cmp_to_key

    return sorted(values, key=cmp_to_key(compare))


def separate(roots: Sequence[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """Refine sorted distinct roots until consecutive intervals are strictly disjoint."""
    rs = list(roots)
    changed = True
    while changed:
        changed = False
        for i in range(len(rs) - 1):
            while not rs[i].hi < rs[i + 1].lo:
                if compare(rs[i], rs[i + 1]) >= 0:
                    raise ValueError("roots must be distinct and sorted")
                rs[i] = _bisect_once(rs[i])
                rs[i + 1] = _bisect_once(rs[i + 1])
                changed = True
    return rs


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in [lo, hi] (Stern-Brocot descent)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty range")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part; recurse on reciprocals of the fractional parts
    inner = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


def interlacing_rationals(roots: Sequence[AlgebraicNumber]) -> list[Fraction]:
    """Rationals r_0 < e_1 < r_1 < ... < e_m < r_m around the sorted distinct roots e_i.

    r_0 and r_m are integers at least one unit beyond the outermost intervals;
    r_i is the simplest rational in the middle half of the gap between
    consecutive isolating intervals.
    """
    if not roots:
        return [Fraction(0)]
    rs = separate(sort_numbers(roots))
    out = [Fraction(math.floor(rs[0].lo) - 1)]
    for a, b in zip(rs, rs[1:]):
        w = b.lo - a.hi
        out.append(simplest_between(a.hi + w / 4, b.lo - w / 4))
    out.append(Fraction(math.ceil(rs[-1].hi) + 1))
    return out


__all__ = [
    "AlgebraicNumber", "compare", "count_nonreal_roots", "dedupe", "descartes_bound",
    "interlacing_rationals", "isolate_real_roots", "refine", "root_bound", "separate",
    "sign_at", "sign_at_rational", "simplest_between", "sort_numbers",
]
