"""Sparse exact polynomials over the integers.

``MPoly`` is a multivariate polynomial stored as a map from exponent tuples
to nonzero Python ints; ``UPoly`` is a dense univariate polynomial stored low
degree first.  Both are immutable.  The module also carries the Kronecker
packing used by the determinant code and the output-size bounds for products
and powers.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class PolyError(ValueError):
    pass


class PolySyntaxError(PolyError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariableError(PolyError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown variable {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


def _lg_ceil_plus1(c: int) -> int:
    # ceil(lg(1 + |c|)) == bit_length(|c|) for every integer
    return abs(c).bit_length()


class MPoly:
    """Multivariate polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise PolyError(f"exponent {mono} has length != {nvars}")
                if c:
                    clean[tuple(mono)] = int(c)
        self.terms = clean
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c: int) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "MPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, int]) -> "MPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # basic queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def degree_in_vars(self, idx: Sequence[int]) -> int:
        return max((sum(m[i] for i in idx) for m in self.terms), default=-1)

    def support(self) -> list[Monomial]:
        return sorted(self.terms)

    def max_norm(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def norm1(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    def content(self) -> int:
        return reduce(math.gcd, self.terms.values(), 0)

    def used_vars(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "MPoly") -> None:
        if self.nvars != other.nvars:
            raise PolyError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MPoly.zero(self.nvars)
            return MPoly._raw(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative exponent")
        result = MPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div_int(self, c: int) -> "MPoly":
        out = {}
        for m, v in self.terms.items():
            q, r = divmod(v, c)
            if r:
                raise PolyError("inexact integer division")
            out[m] = q
        return MPoly._raw(self.nvars, out)

    def primitive(self) -> "MPoly":
        g = self.content()
        if g <= 1:
            return self
        return self.exact_div_int(g)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.constant(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution ------------------------------------------
    def diff(self, i: int) -> "MPoly":
        return partial_derivative(self, i)

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> int | Fraction:
        if len(point) != self.nvars:
            raise PolyError("point has wrong dimension")
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x**e
            total += t
        return total

    def subs(self, values: Mapping[int, int]) -> "MPoly":
        """Substitute integers for some variables, keeping nvars."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            e = list(m)
            for i, v in values.items():
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if c:
                key = tuple(e)
                out[key] = out.get(key, 0) + c
        return MPoly._raw(self.nvars, {m: c for m, c in out.items() if c})

    def remap(self, nvars: int, positions: Sequence[int]) -> "MPoly":
        """Embed into a ring with ``nvars`` variables; variable i goes to positions[i]."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            for i, k in enumerate(m):
                if k:
                    e[positions[i]] += k
            key = tuple(e)
            out[key] = out.get(key, 0) + c
        return MPoly._raw(nvars, {m: c for m, c in out.items() if c})

    def coefficients_in(self, idx: Sequence[int]) -> dict[Monomial, "MPoly"]:
        """Split into {exponents in idx: coefficient polynomial in the other variables}.

        The coefficient polynomials keep all nvars slots (the idx slots are zero).
        """
        idx = list(idx)
        out: dict[Monomial, dict[Monomial, int]] = {}
        for m, c in self.terms.items():
            key = tuple(m[i] for i in idx)
            rest = list(m)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: MPoly._raw(self.nvars, v) for k, v in out.items()}

    # printing -------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        # graded lexicographic, largest first
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, s))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.to_str()!r})"


def bitsize(p: MPoly | "UPoly" | int) -> int:
    """ceil(lg(1 + max |coefficient|)); 0 for the zero polynomial."""
    if isinstance(p, int):
        return _lg_ceil_plus1(p)
    if isinstance(p, UPoly):
        return max((_lg_ceil_plus1(c) for c in p.coeffs), default=0)
    return _lg_ceil_plus1(p.max_norm())


def mul(a: MPoly, b: MPoly) -> MPoly:
    a._check(b)
    return a * b


def partial_derivative(p: MPoly, i: int) -> MPoly:
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    out: dict[Monomial, int] = {}
    for m, c in p.terms.items():
        e = m[i]
        if e:
            mm = list(m)
            mm[i] = e - 1
            out[tuple(mm)] = c * e
    return MPoly._raw(p.nvars, out)


def gradient(p: MPoly) -> list[MPoly]:
    return [partial_derivative(p, i) for i in range(p.nvars)]


def from_rational_terms(nvars: int, terms: Mapping[Monomial, Fraction | int]) -> tuple[MPoly, int]:
    """Clear denominators; returns (integer polynomial, scale) with scale * input == output."""
    scale = 1
    for c in terms.values():
        scale = math.lcm(scale, Fraction(c).denominator)
    out = {}
    for m, c in terms.items():
        v = Fraction(c) * scale
        out[m] = v.numerator
    return MPoly(nvars, out), scale


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = {n: i for i, n in enumerate(names)}
        self.n = len(names)
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if mt is None:  # only trailing whitespace
                break
            if mt.group(1) is not None:
                self.tokens.append(("int", mt.group(1), mt.start(1)))
            elif mt.group(2) is not None:
                self.tokens.append(("name", mt.group(2), mt.start(2)))
            elif mt.group(3) is not None:
                ch = mt.group(3)
                if ch not in "+-*^()":
                    raise PolySyntaxError(f"unexpected character {ch!r}", mt.start(3))
                self.tokens.append(("op", ch, mt.start(3)))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> MPoly:
        if not self.tokens:
            raise PolySyntaxError("empty expression", 0)
        p = self.expr()
        if self.peek() is not None:
            raise PolySyntaxError(f"unexpected token {self.peek()[1]!r}", self.offset())
        return p

    def expr(self) -> MPoly:
        tok = self.peek()
        sign = 1
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term() * sign
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self) -> MPoly:
        p = self.power()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.power()
            elif tok and (tok[0] in ("int", "name") or tok[1] == "("):
                # implicit multiplication, e.g. "3x" or "2(x+1)"
                p = p * self.power()
            else:
                return p

    def power(self) -> MPoly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            tok = self.peek()
            if tok is None or tok[0] != "int":
                raise PolySyntaxError("exponent must be a nonnegative integer", self.offset())
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> MPoly:
        tok = self.peek()
        if tok is None:
            raise PolySyntaxError("unexpected end of input", len(self.text))
        kind, val, off = tok
        if kind == "int":
            self.take()
            return MPoly.constant(self.n, int(val))
        if kind == "name":
            self.take()
            if val not in self.names:
                raise UnknownVariableError(val, off)
            return MPoly.var(self.n, self.names[val])
        if val == "(":
            self.take()
            p = self.expr()
            tok = self.peek()
            if tok is None or tok[1] != ")":
                raise PolySyntaxError("expected ')'", self.offset())
            self.take()
            return p
        if val in "+-":
            # unary sign inside a factor, e.g. "x*-2"
            self.take()
            p = self.power()
            return -p if val == "-" else p
        raise PolySyntaxError(f"unexpected token {val!r}", off)


def parse_poly(text: str, var_names: Sequence[str]) -> MPoly:
    """Parse an integer polynomial written with ``+ - * ^`` and parentheses."""
    if len(set(var_names)) != len(var_names):
        raise PolyError("duplicate variable names")
    return _Parser(text, list(var_names)).parse()


# ---------------------------------------------------------------------------
# univariate polynomials


class UPoly:
    """Dense univariate integer polynomial, coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({list(self.coeffs)})"

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "UPoly":
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, int):
            return UPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "UPoly":
        """Content removed and leading coefficient made positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return UPoly(c // g for c in self.coeffs)

    def to_mpoly(self, nvars: int = 1, i: int = 0) -> MPoly:
        out = {}
        for k, c in enumerate(self.coeffs):
            e = [0] * nvars
            e[i] = k
            out[tuple(e)] = c
        return MPoly(nvars, out)

    @classmethod
    def from_mpoly(cls, p: MPoly, i: int = 0) -> "UPoly":
        if p.used_vars() - {i}:
            raise PolyError("polynomial is not univariate in the requested variable")
        c = [0] * (p.degree_in(i) + 1)
        for m, v in p.terms.items():
            c[m[i]] = v
        return cls(c)

    def to_str(self, name: str = "z") -> str:
        return self.to_mpoly().to_str([name])


def upoly_pseudo_rem(a: UPoly, b: UPoly) -> UPoly:
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(a.coeffs)
    db, lb = b.degree, b.lc()
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [c * lb for c in r]
        for j, bc in enumerate(b.coeffs):
            r[j + k] -= lr * bc
        while r and r[-1] == 0:
            r.pop()
    return UPoly(r)


def upoly_divmod_exact(a: UPoly, b: UPoly) -> UPoly:
    """Quotient a / b over Z; raises if the division is not exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a.coeffs)
    db, lb = b.degree, b.lc()
    q = [0] * max(len(r) - db, 0)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        c, rem = divmod(r[-1], lb)
        if rem:
            raise PolyError("inexact polynomial division")
        q[k] = c
        for j, bc in enumerate(b.coeffs):
            r[j + k] -= c * bc
        while r and r[-1] == 0:
            r.pop()
    if r:
        raise PolyError("inexact polynomial division")
    return UPoly(q)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Primitive gcd over Z[z] via the primitive remainder sequence."""
    a, b = a.primitive(), b.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    g = math.gcd(a.content(), b.content())
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, upoly_pseudo_rem(a, b).primitive()
    return (a.primitive() * g).primitive() if a.degree > 0 else UPoly([1])


def squarefree_part(u: UPoly) -> UPoly:
    """Product of the distinct irreducible factors, primitive, positive leading coefficient."""
    if u.is_zero():
        raise PolyError("square-free part of the zero polynomial")
    u = u.primitive()
    if u.degree <= 0:
        return UPoly([1])
    g = upoly_gcd(u, u.derivative())
    if g.degree <= 0:
        return u
    return upoly_divmod_exact(u, g).primitive()


# ---------------------------------------------------------------------------
# Kronecker packing


def kronecker_strides(caps: Sequence[int]) -> list[int]:
    strides, acc = [], 1
    for cap in caps:
        strides.append(acc)
        acc *= cap + 1
    return strides


def kronecker_substitute(p: MPoly, degree_caps: Sequence[int]) -> UPoly:
    """Pack x_k -> s^(prod_{j<k}(cap_j + 1)); injective while deg_k(p) <= cap_k."""
    if len(degree_caps) != p.nvars:
        raise PolyError("one degree cap per variable is required")
    for k, cap in enumerate(degree_caps):
        if p.degree_in(k) > cap:
            raise PolyError(f"degree {p.degree_in(k)} in variable {k} exceeds cap {cap}")
    strides = kronecker_strides(degree_caps)
    if not p.terms:
        return UPoly()
    top = sum(cap * st for cap, st in zip(degree_caps, strides))
    out = [0] * (top + 1)
    for m, c in p.terms.items():
        out[sum(e * st for e, st in zip(m, strides))] += c
    return UPoly(out)


def kronecker_unpack(u: UPoly, degree_caps: Sequence[int]) -> MPoly:
    nvars = len(degree_caps)
    out = {}
    for k, c in enumerate(u.coeffs):
        if c:
            e = []
            for cap in degree_caps:
                k, r = divmod(k, cap + 1)
                e.append(r)
            if k:
                raise PolyError("packed degree exceeds the caps")
            out[tuple(e)] = c
    return MPoly(nvars, out)


# ---------------------------------------------------------------------------
# output-size bounds for products (lg taken of the output degree, floored at 1)


def _lg(x: int) -> float:
    return math.log2(x) if x > 1 else 0.0


def mul_bitsize_bound(tau1: int, tau2: int, nvars: int, degree: int) -> float:
    """tau1 + tau2 + 2 nu lg(delta) for a two-factor product of total degree ``degree``."""
    return tau1 + tau2 + 2 * nvars * _lg(degree)


def product_bitsize_bound(taus: Sequence[int], nvars: int, degrees: Sequence[int]) -> float:
    """sum tau_i + 12 nu m lg(m) lg(sum delta_i) for an m-fold product."""
    m = len(taus)
    return sum(taus) + 12 * nvars * m * _lg(m) * _lg(sum(degrees))


def power_bitsize_bound(tau: int, nvars: int, degree: int, m: int) -> float:
    """m tau + 12 nu m lg(delta) for f^m; delta is the degree of f^m."""
    return m * tau + 12 * nvars * m * _lg(degree)
