"""Macaulay matrices, exact polynomial determinants and resultants.

Resultants are computed as Macaulay's ratio det(M) / det(M') after the
generalized characteristic polynomial perturbation G_k = g_k + s*x_k^{d_k}.
Matrices with polynomial entries are Kronecker-packed into one variable t.
Small ones are evaluated at a single large power of two (one fraction-free
elimination over big integers); larger ones are evaluated at consecutive
integer nodes modulo word-size primes, interpolated and lifted by CRT.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import gmpy2
import numpy as np

from . import _modular as _mk
from .polyring import MPoly, PolyError, kronecker_strides


class DegenerateSystemError(ArithmeticError):
    """The perturbed resultant vanished identically; resample and retry."""


# ---------------------------------------------------------------------------
# size calculators


def nullstellensatz_degree(n: int, d: int) -> int:
    """Degree m from which the Macaulay matrices give a resultant system: 1 + n(13 d^n - 1)."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    return 1 + n * (13 * d**n - 1)


def resultant_system_size(n: int, d: int, p: int) -> tuple[int, int, int]:
    """(m, nu_m, row bound) for p polynomials of degree d in n homogeneous variables.

    nu_m = C(m+n-1, n-1) columns; every one of the p polynomials contributes at most
    C(m-d+n-1, n-1) shifted rows.
    """
    m = nullstellensatz_degree(n, d)
    nu = math.comb(m + n - 1, n - 1)
    rows = p * math.comb(m - d + n - 1, n - 1)
    return m, nu, rows


def monomials_of_degree(nvars: int, m: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree m, in lexicographic order."""
    if nvars == 0:
        return [()] if m == 0 else []
    out = []
    for first in range(m, -1, -1):
        for rest in monomials_of_degree(nvars - 1, m - first):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# Macaulay matrices


@dataclass
class MacaulayMatrix:
    """Rows are shifts x^alpha * F_i of homogenized polynomials, columns monomials of degree m.

    Homogeneous variable 0 is the homogenizing variable; variable j >= 1 is the
    j-th eliminated variable.  Entries are polynomials in the parameter ring.
    """

    m: int
    degrees: list[int]
    columns: list[tuple[int, ...]]
    rows: list[tuple[tuple[int, ...], int]]
    entries: list[dict[int, MPoly]]
    nparams: int
    param_names: list[str] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def dense(self) -> list[list[MPoly]]:
        zero = MPoly.zero(self.nparams)
        return [[row.get(j, zero) for j in range(len(self.columns))] for row in self.entries]


def homogenize(p: MPoly, elim: Sequence[int], params: Sequence[int], degree: int | None = None
               ) -> tuple[int, dict[tuple[int, ...], MPoly]]:
    """Split p into {homogeneous exponent (x0, x_elim...): coefficient in params}."""
    if degree is None:
        degree = max(p.degree_in_vars(elim), 0)
    out: dict[tuple[int, ...], dict] = {}
    for mono, c in p.terms.items():
        beta = tuple(mono[v] for v in elim)
        key = (degree - sum(beta),) + beta
        if key[0] < 0:
            raise PolyError("polynomial degree exceeds the homogenization degree")
        pm = tuple(mono[v] for v in params)
        out.setdefault(key, {})[pm] = c
    return degree, {k: MPoly(len(params), v) for k, v in out.items()}


def _macaulay_from_forms(forms: list[dict[tuple[int, ...], MPoly]], degrees: list[int],
                         nhom: int, m: int, nparams: int, square: bool) -> MacaulayMatrix:
    columns = monomials_of_degree(nhom, m)
    col_index = {c: j for j, c in enumerate(columns)}
    rows: list[tuple[tuple[int, ...], int]] = []
    if square:
        # Macaulay's assignment: polynomial k is paired with homogeneous variable
        # k+1 for k < nhom-1 and the last polynomial with x0.
        for mono in columns:
            for k, dk in enumerate(degrees):
                hv = k + 1 if k < nhom - 1 else 0
                if mono[hv] >= dk:
                    shift = list(mono)
                    shift[hv] -= dk
                    rows.append((tuple(shift), k))
                    break
            else:  # pragma: no cover - impossible when m = sum(d_k - 1) + 1
                raise PolyError("monomial not covered by any polynomial")
    else:
        for k, dk in enumerate(degrees):
            for shift in monomials_of_degree(nhom, m - dk):
                rows.append((shift, k))
    if not rows:
        raise PolyError(f"degree m={m} is too small for any shift")
    entries = []
    for shift, k in rows:
        row = {}
        for alpha, c in forms[k].items():
            col = tuple(a + b for a, b in zip(alpha, shift))
            row[col_index[col]] = c
        entries.append(row)
    return MacaulayMatrix(m, degrees, columns, rows, entries, nparams)


def macaulay_matrix(polys: Sequence[MPoly], elim: Sequence[int], m: int | None = None,
                    square: bool | None = None) -> MacaulayMatrix:
    """Macaulay matrix of ``polys`` after homogenizing the eliminated variables ``elim``.

    The remaining variables of the ring are parameters; entries are polynomials in them.
    With ``square`` (default when #polys == #elim + 1) only Macaulay's reduced
    assignment of rows is used, so the matrix is nu_m x nu_m.
    """
    if not polys:
        raise PolyError("no polynomials")
    nvars = polys[0].nvars
    params = [v for v in range(nvars) if v not in set(elim)]
    nhom = len(elim) + 1
    forms, degrees = [], []
    for p in polys:
        d, form = homogenize(p, elim, params)
        forms.append(form)
        degrees.append(d)
    if square is None:
        square = len(polys) == nhom
    if m is None:
        m = sum(d - 1 for d in degrees) + 1
    if any(d > m for d in degrees):
        raise PolyError(f"degree m={m} is too small for any shift")
    mm = _macaulay_from_forms(forms, degrees, nhom, m, len(params), square)
    return mm


def _non_reduced(columns, degrees, nhom) -> list[int]:
    out = []
    for j, mono in enumerate(columns):
        hits = 0
        for k, dk in enumerate(degrees):
            hv = k + 1 if k < nhom - 1 else 0
            if mono[hv] >= dk:
                hits += 1
        if hits >= 2:
            out.append(j)
    return out


# ---------------------------------------------------------------------------
# determinants


def _bareiss(mat: list[list]) -> int:
    """Fraction-free determinant of a square matrix of gmpy2 integers."""
    n = len(mat)
    if n == 0:
        return gmpy2.mpz(1)
    a = [row[:] for row in mat]
    sign = 1
    prev = gmpy2.mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return gmpy2.mpz(0)
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            if aik == 0:
                for j in range(k + 1, n):
                    rowi[j] = gmpy2.divexact(rowi[j] * akk, prev)
            else:
                for j in range(k + 1, n):
                    rowi[j] = gmpy2.divexact(rowi[j] * akk - aik * rowk[j], prev)
        prev = akk
    return sign * a[n - 1][n - 1]


def _round_bits(b: int) -> int:
    return max(8, (b + 7) // 8 * 8)


def _pack_value(p: MPoly, strides: Sequence[int], bits: int) -> gmpy2.mpz:
    v = 0
    for mono, c in p.terms.items():
        k = sum(e * st for e, st in zip(mono, strides))
        v += c << (bits * k)
    return gmpy2.mpz(v)


def _unpack_value(q: int, bits: int, length: int, caps: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Decode the signed base-2^bits digits of q into monomial coefficients."""
    nbytes = bits // 8
    half = 1 << (bits - 1)
    offset_digit = half.to_bytes(nbytes, "little")
    offset = int.from_bytes(offset_digit * length, "little")
    qq = int(q) + offset
    if qq < 0 or qq.bit_length() > bits * length:
        raise OverflowError("value does not fit the digit budget")
    raw = qq.to_bytes(nbytes * length, "little")
    out = {}
    for k in range(length):
        digit = int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") - half
        if digit:
            e, kk = [], k
            for cap in caps:
                kk, r = divmod(kk, cap + 1)
                e.append(r)
            out[tuple(e)] = digit
    return out


def _degree_caps_rows(mat: list[list[MPoly]], nparams: int) -> list[int]:
    caps = []
    for v in range(nparams):
        caps.append(sum(max((e.degree_in(v) for e in row if not e.is_zero()), default=0)
                        for row in mat))
    return caps


def _norm_bits(mat: list[list[MPoly]]) -> int:
    """Bits of prod over rows of the row 1-norm; bounds the 1-norm of the determinant."""
    total = 0
    for row in mat:
        s = sum(e.norm1() for e in row)
        if s == 0:
            return 0
        total += s.bit_length()
    return total


def _det_packed(mat: list[list[MPoly]], strides, bits) -> gmpy2.mpz:
    return _bareiss([[_pack_value(e, strides, bits) for e in row] for row in mat])


# multi-modular evaluation / interpolation in the Kronecker variable

_CHUNK_ELEMENTS = 1 << 23


def _primes_below(limit: int):
    p = limit
    while True:
        p = int(gmpy2.prev_prime(p))
        yield p


class _PackedMatrix:
    """Flat term arrays of a polynomial matrix, ready for the compiled evaluator."""

    def __init__(self, mat: list[list[MPoly]], caps: Sequence[int]):
        self.n = len(mat)
        nparams = len(caps)
        self.strides = np.array(kronecker_strides(caps), dtype=np.int64)
        ei, ej, ptr, coeffs, exps = [], [], [0], [], []
        maxdeg = [0] * nparams
        for i, row in enumerate(mat):
            for j, e in enumerate(row):
                if e.is_zero():
                    continue
                ei.append(i)
                ej.append(j)
                for mono, c in e.terms.items():
                    coeffs.append(c)
                    exps.append(mono)
                    for v in range(nparams):
                        maxdeg[v] = max(maxdeg[v], mono[v])
                ptr.append(len(coeffs))
        self.ent_i = np.array(ei, dtype=np.int64)
        self.ent_j = np.array(ej, dtype=np.int64)
        self.term_ptr = np.array(ptr, dtype=np.int64)
        self.coeffs = coeffs
        self.term_e = np.array(exps, dtype=np.int64).reshape(len(exps), nparams)
        self.maxdeg = np.array(maxdeg, dtype=np.int64)

    def dets(self, nodes: np.ndarray, p: int) -> np.ndarray:
        if self.n == 0:
            return np.ones(len(nodes), dtype=np.uint64)
        pu = np.uint64(p)
        term_c = np.array([c % p for c in self.coeffs], dtype=np.uint64)
        chunk = max(1, _CHUNK_ELEMENTS // (self.n * self.n))
        out = np.empty(len(nodes), dtype=np.uint64)
        for start in range(0, len(nodes), chunk):
            part = nodes[start:start + chunk]
            a = np.zeros((len(part), self.n, self.n), dtype=np.uint64)
            _mk.fill_entries(a, part, self.strides, self.maxdeg, self.ent_i, self.ent_j,
                             self.term_ptr, term_c, self.term_e, pu)
            out[start:start + chunk] = _mk.det_batch(a, pu)
        return out


def _modular_ratio(num_mat, den_mat, caps: Sequence[int], bits: int) -> dict[tuple[int, ...], int]:
    """Coefficients of det(num)/det(den), known to be a polynomial within ``caps``.

    ``bits`` bounds the coefficient size: |c| < 2^(bits-1).  The packed ratio is
    evaluated at consecutive nodes modulo several primes, interpolated and
    lifted with the Chinese remainder theorem.
    """
    strides = kronecker_strides(caps)
    length = sum(c * st for c, st in zip(caps, strides)) + 1
    num_packed = _PackedMatrix(num_mat, caps)
    den_packed = _PackedMatrix(den_mat, caps)
    residues: list[np.ndarray] = []
    moduli: list[int] = []
    modulus = 1
    bad_primes = 0
    for p in _primes_below(1 << _mk.PRIME_BITS):
        if modulus.bit_length() > bits + 1:
            break
        base = p // 3
        nodes = np.arange(base, base + length, dtype=np.uint64)
        den = den_packed.dets(nodes, p)
        if not den.all():
            bad_primes += 1
            if bad_primes > 8:
                raise DegenerateSystemError("extraneous minor vanishes identically")
            continue
        num = num_packed.dets(nodes, p)
        pu = np.uint64(p)
        vals = _mk.mul_all(num, _mk.inverse_all(den, pu), pu)
        residues.append(_mk.interpolate_consecutive(vals, np.uint64(base), pu))
        moduli.append(p)
        modulus *= p
    coeffs = _crt_signed(residues, moduli)
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            e, kk = [], k
            for cap in caps:
                kk, r = divmod(kk, cap + 1)
                e.append(r)
            out[tuple(e)] = c
    return out


def _split_pencil(mat, s_index: int):
    """Write a matrix linear in s with constant s-part as (A over the parameters, D)."""
    n = len(mat)
    a = [[None] * n for _ in range(n)]
    d = [[0] * n for _ in range(n)]
    for i, row in enumerate(mat):
        for j, e in enumerate(row):
            terms = {}
            for mono, c in e.terms.items():
                k = mono[s_index]
                if k == 0:
                    terms[mono[:s_index]] = c
                elif k == 1 and not any(mono[:s_index]):
                    d[i][j] = c
                else:
                    return None
            a[i][j] = MPoly(s_index, terms)
    return a, d


class _PackedPencil:
    def __init__(self, mat, s_index: int, caps: Sequence[int]):
        a, d = _split_pencil(mat, s_index)
        self.n = len(mat)
        self.a = _PackedMatrix(a, caps)
        self.d = d
        self.cols = np.array([j for j in range(self.n) if any(r[j] for r in d)], dtype=np.int64)

    def coefficients(self, nodes: np.ndarray, p: int) -> np.ndarray:
        """Row b holds the s-coefficients of det(A(nodes[b]) + s D) mod p."""
        k = len(self.cols)
        out = np.zeros((len(nodes), k + 1), dtype=np.uint64)
        if self.n == 0:
            out[:, 0] = 1
            return out
        pu = np.uint64(p)
        dm = np.array([[c % p for c in r] for r in self.d], dtype=np.uint64)
        term_c = np.array([c % p for c in self.a.coeffs], dtype=np.uint64)
        rng = random.Random(p)
        chunk = max(1, _CHUNK_ELEMENTS // (self.n * self.n))
        for start in range(0, len(nodes), chunk):
            part = nodes[start:start + chunk]
            a = np.zeros((len(part), self.n, self.n), dtype=np.uint64)
            _mk.fill_entries(a, part, self.a.strides, self.a.maxdeg, self.a.ent_i, self.a.ent_j,
                             self.a.term_ptr, term_c, self.a.term_e, pu)
            for b in range(len(part)):
                # a singular a + sigma*D for two random sigma means the pencil vanishes
                for _ in range(2):
                    ok, c = _mk.pencil_poly(a[b], dm, self.cols, np.uint64(rng.randrange(1, p)), pu)
                    if ok:
                        out[start + b] = c
                        break
        return out


def _lowest_column(c: np.ndarray) -> int:
    nz = np.flatnonzero(c.any(axis=0))
    return int(nz[0]) if len(nz) else -1


def _modular_lowest_s(num_mat, den_mat, s_index: int, caps: Sequence[int], bits: int):
    """Lowest s-coefficient of det(num)/det(den) for matrices linear in s.

    Each node yields the whole s-polynomial of both determinants from one
    solve and one characteristic polynomial, so the s-degree never enters the
    interpolation.  Returns (coefficient map over the parameters, s-valuation),
    or None when the s-part is not a constant matrix.
    """
    if _split_pencil(num_mat, s_index) is None or _split_pencil(den_mat, s_index) is None:
        return None
    strides = kronecker_strides(caps)
    length = sum(c * st for c, st in zip(caps, strides)) + 1
    num_p = _PackedPencil(num_mat, s_index, caps)
    den_p = _PackedPencil(den_mat, s_index, caps)
    residues: list[np.ndarray] = []
    moduli: list[int] = []
    modulus = 1
    bad_primes = 0
    valuations = None
    for p in _primes_below(1 << _mk.PRIME_BITS):
        if modulus.bit_length() > bits + 1:
            break
        base = p // 3
        nodes = np.arange(base, base + length, dtype=np.uint64)
        den = den_p.coefficients(nodes, p)
        vd = _lowest_column(den)
        num = num_p.coefficients(nodes, p)
        vn = _lowest_column(num)
        if vn < 0 and valuations is None and bad_primes >= 2:
            raise DegenerateSystemError("perturbed resultant vanished identically")
        if vd < 0 or vn < 0 or (valuations is not None and (vn, vd) != valuations) \
                or not den[:, vd].all():
            bad_primes += 1
            if bad_primes > 8:
                raise DegenerateSystemError("extraneous minor vanishes identically")
            continue
        valuations = (vn, vd)
        pu = np.uint64(p)
        vals = _mk.mul_all(np.ascontiguousarray(num[:, vn]),
                           _mk.inverse_all(np.ascontiguousarray(den[:, vd]), pu), pu)
        residues.append(_mk.interpolate_consecutive(vals, np.uint64(base), pu))
        moduli.append(p)
        modulus *= p
    coeffs = _crt_signed(residues, moduli)
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            e, kk = [], k
            for cap in caps:
                kk, r = divmod(kk, cap + 1)
                e.append(r)
            out[tuple(e)] = c
    return out, valuations[0] - valuations[1]


def _crt_signed(residues: list[np.ndarray], moduli: list[int]) -> list[int]:
    """Symmetric-range CRT lift of coefficient vectors."""
    acc = [int(v) for v in residues[0]]
    mod = moduli[0]
    for res, p in zip(residues[1:], moduli[1:]):
        inv = pow(mod, -1, p)
        acc = [a + mod * ((int(r) - a) * inv % p) for a, r in zip(acc, res)]
        mod *= p
    half = mod // 2
    return [v - mod if v > half else v for v in acc]


# below this size the single-point big-integer elimination is faster
_MODULAR_THRESHOLD = 12


def determinant_poly(M: MacaulayMatrix | Sequence[Sequence[MPoly]]) -> MPoly:
    """Exact determinant of a square matrix whose entries are integer polynomials."""
    mat = M.dense() if isinstance(M, MacaulayMatrix) else [list(r) for r in M]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise PolyError("matrix is not square")
    if n == 0:
        raise PolyError("empty matrix")
    nparams = mat[0][0].nvars
    caps = _degree_caps_rows(mat, nparams)
    return MPoly(nparams, _ratio(mat, [], caps, _norm_bits(mat) + 2))


def _ratio(num_mat, den_mat, caps, coeff_bits: int) -> dict[tuple[int, ...], int]:
    """det(num_mat) / det(den_mat) as a coefficient map, given caps and a coefficient bound."""
    if len(num_mat) > _MODULAR_THRESHOLD:
        return _modular_ratio(num_mat, den_mat, caps, coeff_bits + 1)
    bits = _round_bits(coeff_bits)
    strides = kronecker_strides(caps)
    length = sum(c * st for c, st in zip(caps, strides)) + 1
    den = _det_packed(den_mat, strides, bits) if den_mat else gmpy2.mpz(1)
    if den == 0:
        raise DegenerateSystemError("extraneous minor vanishes identically")
    num = _det_packed(num_mat, strides, bits)
    q, r = gmpy2.f_divmod(num, den)
    if r != 0:
        raise ArithmeticError("Macaulay ratio is not exact; degree caps too small")
    return _unpack_value(q, bits, length, caps)


def determinant_cofactor(mat: Sequence[Sequence[MPoly]]) -> MPoly:
    """Laplace expansion along the first row; exponential, for checking only."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = MPoly.zero(mat[0][0].nvars)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * determinant_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


# ---------------------------------------------------------------------------
# resultants


@dataclass
class EliminationResult:
    """Lowest nonvanishing s-coefficient of the perturbed Macaulay resultant."""

    resultant: MPoly
    valuation: int
    matrix_shape: tuple[int, int]
    minor_shape: tuple[int, int]
    m: int
    degrees: list[int]
    perturbed: list[bool]

    @property
    def plain_vanishes(self) -> bool:
        """True when the unperturbed resultant is identically zero."""
        return self.valuation > 0

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "resultant": self.resultant.to_str(names),
            "perturbation_exponent": self.valuation,
            "matrix_shape": list(self.matrix_shape),
            "minor_shape": list(self.minor_shape),
            "m": self.m,
            "degrees": self.degrees,
            "perturbed": self.perturbed,
        }


def _resultant_caps(forms, degrees, nparams) -> list[int]:
    """Per-parameter degree bounds for the resultant from homogeneity and isobaric weight."""
    nhom = len(degrees)
    total = math.prod(degrees)
    dk = [math.prod(degrees[:k] + degrees[k + 1:]) for k in range(nhom)]
    caps = []
    for v in range(nparams):
        simple = sum(dk[k] * max((c.degree_in(v) for c in forms[k].values()), default=0)
                     for k in range(nhom))
        best = simple
        for h in range(nhom):
            w = total
            for k in range(nhom):
                if forms[k]:
                    w += dk[k] * max(c.degree_in(v) - a[h] for a, c in forms[k].items())
            best = min(best, w)
        caps.append(max(best, 0))
    return caps


def resultant_gcp(polys: Sequence[MPoly], elim: Sequence[int],
                  perturb: Sequence[bool] | str | None = None) -> EliminationResult:
    """Eliminate the variables ``elim`` from the square system ``polys``.

    Polynomial k < len(elim) is perturbed by s * x_{elim[k]}^{d_k}; the last one is
    paired with the homogenizing variable and is left unperturbed unless
    ``perturb="all"``.  Returns the lowest nonzero coefficient in s of
    det(M)/det(M'), a polynomial in the remaining variables of the ring (the
    eliminated slots are zero).
    """
    polys = list(polys)
    elim = list(elim)
    if len(polys) != len(elim) + 1:
        raise PolyError("resultant_gcp needs exactly one more polynomial than eliminated variables")
    nvars = polys[0].nvars
    if any(p.nvars != nvars for p in polys):
        raise PolyError("variable count mismatch")
    if perturb is None or perturb == "leading":
        perturb = [True] * len(elim) + [False]
    elif perturb == "all":
        perturb = [True] * len(polys)
    perturb = list(perturb)
    params = [v for v in range(nvars) if v not in set(elim)]
    nhom = len(elim) + 1
    npar = len(params)
    s_index = npar  # s is appended after the parameters

    forms, degrees = [], []
    for k, p in enumerate(polys):
        d = p.degree_in_vars(elim)
        if p.is_zero():
            d = 1
        d = max(d, 0)
        _, form = homogenize(p, elim, params, d)
        form = {a: c.remap(npar + 1, list(range(npar))) for a, c in form.items()}
        if perturb[k]:
            hv = k + 1 if k < nhom - 1 else 0
            key = tuple(d if i == hv else 0 for i in range(nhom))
            svar = MPoly.var(npar + 1, s_index)
            new = form.get(key, MPoly.zero(npar + 1)) + svar
            form[key] = new
            if new.is_zero():
                del form[key]
        forms.append(form)
        degrees.append(d)

    def _lift(r: MPoly) -> MPoly:
        return r.remap(nvars, params)

    # a form of degree zero is a parameter polynomial c: Res = c^(prod other degrees)
    for k, d in enumerate(degrees):
        if d == 0:
            c = forms[k].get((0,) * nhom, MPoly.zero(npar + 1))
            power = math.prod(degrees[:k] + degrees[k + 1:])
            lowest, val = _lowest_in_s(c ** power, s_index)
            if lowest is None:
                raise DegenerateSystemError("zero polynomial in the system")
            return EliminationResult(_lift(_drop_s(lowest, npar)), val, (1, 1), (0, 0), 0,
                                     degrees, perturb)

    m = sum(d - 1 for d in degrees) + 1
    mm = _macaulay_from_forms(forms, degrees, nhom, m, npar + 1, square=True)
    dense = mm.dense()
    minor_idx = _non_reduced(mm.columns, degrees, nhom)
    minor = [[dense[i][j] for j in minor_idx] for i in minor_idx]

    caps = _resultant_caps(forms, degrees, npar + 1)
    bits = sum(caps) + _norm_bits(dense) + 2
    fast = None
    if len(dense) > _MODULAR_THRESHOLD:
        fast = _modular_lowest_s(dense, minor, s_index, caps[:npar], bits + 1)
    if fast is not None:
        coeffs, val = fast
        if not coeffs:
            raise DegenerateSystemError("perturbed resultant vanished identically")
        result = MPoly(npar, coeffs)
    else:
        full = MPoly(npar + 1, _ratio(dense, minor, caps, bits))
        lowest, val = _lowest_in_s(full, s_index)
        if lowest is None:
            raise DegenerateSystemError("perturbed resultant vanished identically")
        result = _drop_s(lowest, npar)
    return EliminationResult(_lift(result), val, mm.shape,
                             (len(minor_idx), len(minor_idx)), m, degrees, perturb)


def _lowest_in_s(p: MPoly, s_index: int) -> tuple[MPoly | None, int]:
    if p.is_zero():
        return None, -1
    val = min(mono[s_index] for mono in p.terms)
    out = {}
    for mono, c in p.terms.items():
        if mono[s_index] == val:
            e = list(mono)
            e[s_index] = 0
            out[tuple(e)] = c
    return MPoly(p.nvars, out), val


def _drop_s(p: MPoly, npar: int) -> MPoly:
    return MPoly(npar, {mono[:npar]: c for mono, c in p.terms.items()})


def sylvester_resultant(p: MPoly, q: MPoly, var: int) -> MPoly:
    """Resultant of p and q with respect to one variable via the Sylvester determinant."""
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp < 0 or dq < 0:
        return MPoly.zero(p.nvars)
    cp = p.coefficients_in([var])
    cq = q.coefficients_in([var])
    zero = MPoly.zero(p.nvars)
    n = dp + dq
    if n == 0:
        return MPoly.constant(p.nvars, 1)
    mat = []
    for i in range(dq):
        row = [zero] * n
        for k in range(dp + 1):
            row[i + dp - k] = cp.get((k,), zero)
        mat.append(row)
    for i in range(dp):
        row = [zero] * n
        for k in range(dq + 1):
            row[i + dq - k] = cq.get((k,), zero)
        mat.append(row)
    return determinant_poly(mat)


# ---------------------------------------------------------------------------
# squaring overdetermined systems


def make_square(polys: Sequence[MPoly], n: int, seed: int, degree: int | None = None
                ) -> list[MPoly]:
    """Replace p >= n polynomials by n combinations f1 + g f2 + ... + g^(p-1) fp.

    The g's are distinct integers drawn from {1, ..., p d^n + 1}.
    """
    polys = list(polys)
    p = len(polys)
    if p < n:
        raise ValueError(f"need at least {n} polynomials, got {p}")
    if p == n:
        return polys
    d = degree if degree is not None else max(max(q.degree() for q in polys), 1)
    size = gamma_set_size(p, d, n)
    rng = random.Random(seed)
    gammas = rng.sample(range(1, size + 1), n)
    out = []
    for g in gammas:
        acc = MPoly.zero(polys[0].nvars)
        for j, q in enumerate(polys):
            acc = acc + q * (g**j)
        out.append(acc)
    return out


def gamma_set_size(p: int, d: int, n: int) -> int:
    return p * d**n + 1


__all__ = [
    "DegenerateSystemError", "EliminationResult", "MacaulayMatrix", "determinant_cofactor",
    "determinant_poly", "gamma_set_size", "homogenize", "macaulay_matrix", "make_square",
    "monomials_of_degree", "nullstellensatz_degree", "resultant_gcp", "resultant_system_size",
    "sylvester_resultant",
]

