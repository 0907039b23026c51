import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P
from gcv.elimination import (DegenerateSystemError, determinant_cofactor, determinant_poly, gamma_set_size,
                             macaulay_matrix, make_square, nullstellensatz_degree, resultant_gcp,
                             resultant_system_size, sylvester_resultant)
from gcv.polyring import MPoly, PolyError, UPoly, squarefree_part


def random_bivariate(rng: random.Random, d: int) -> MPoly:
    """Random p(x, z) of degree exactly d in x and total degree <= 3."""
    terms = {(d, 0): rng.choice([-3, -2, -1, 1, 2, 3])}
    for _ in range(rng.randint(1, 5)):
        a = rng.randint(0, d)
        b = rng.randint(0, 3 - a) if a < 3 else 0
        terms[(a, b)] = rng.randint(-9, 9)
    terms[(0, 0)] = terms.get((0, 0), 0) or rng.randint(1, 9)
    return MPoly(2, {k: v for k, v in terms.items() if v})


def agrees_with_sylvester(p: MPoly, q: MPoly) -> bool:
    """Equality of square-free parts in z; identically vanishing resultants must coincide."""
    syl = sylvester_resultant(p, q, 0)
    try:
        out = resultant_gcp([p, q], [0])
    except DegenerateSystemError:
        return syl.is_zero()
    if syl.is_zero() or out.plain_vanishes:
        return syl.is_zero() and out.plain_vanishes
    res = out.resultant
    us, ur = UPoly.from_mpoly(syl, 1), UPoly.from_mpoly(res, 1)
    if us.degree <= 0 or ur.degree <= 0:
        return us.degree <= 0 and ur.degree <= 0
    return squarefree_part(us) == squarefree_part(ur)


def count_sylvester_mismatches(count: int, seed: int) -> int:
    rng = random.Random(seed)
    return sum(not agrees_with_sylvester(random_bivariate(rng, rng.randint(1, 3)),
                                         random_bivariate(rng, rng.randint(1, 3)))
               for _ in range(count))


class TestSizes:
    @pytest.mark.parametrize("n,d,m", [(1, 1, 13), (2, 2, 103), (2, 1, 25)])
    def test_nullstellensatz_degree(self, n, d, m):
        assert nullstellensatz_degree(n, d) == m

    def test_resultant_system_size(self):
        m, nu, _ = resultant_system_size(2, 2, 3)
        assert (m, nu) == (103, 104)

    def test_gamma_set(self):
        assert gamma_set_size(3, 2, 2) == 13


class TestMacaulay:
    def test_column_count(self):
        # two quadrics in one affine variable, m = 3: homogeneous degree-3 monomials in 2 variables
        M = macaulay_matrix([P("x^2 + z", "x,z"), P("x^2 - 1", "x,z")], [0])
        assert M.m == 3 and len(M.columns) == 4 and M.shape == (4, 4)

    def test_linear_case_is_sylvester(self):
        a, b = P("2*x + z", "x,z"), P("x - 3", "x,z")
        M = macaulay_matrix([a, b], [0])
        assert M.shape == (2, 2)
        det = UPoly.from_mpoly(determinant_poly(M), 0)
        syl = UPoly.from_mpoly(sylvester_resultant(a, b, 0), 1)
        assert det in (syl, -syl)


class TestResultant:
    def test_no_common_root(self):
        r = resultant_gcp([P("x - 1", "x"), P("x - 2", "x")], [0]).resultant
        assert r.is_constant() and abs(r.constant_term()) == 1

    def test_shared_root_reported_as_vanishing(self):
        r = resultant_gcp([P("x - 1", "x"), P("x - 1", "x")], [0])
        assert r.plain_vanishes and not r.resultant.is_zero()

    def test_root_fixed_by_perturbation_is_degenerate(self):
        with pytest.raises(DegenerateSystemError):
            resultant_gcp([P("x", "x,z"), P("3*x", "x,z")], [0])

    def test_projection_divisible(self):
        r = resultant_gcp([P("x^2 - z", "x,z"), P("x - 1", "x,z")], [0]).resultant
        assert r.evaluate((0, 1)) == 0

    def test_wrong_shape(self):
        with pytest.raises(PolyError):
            resultant_gcp([P("x"), P("y"), P("x+y")], [0])

    def test_against_sylvester(self):
        assert count_sylvester_mismatches(60, seed=11) == 0

    @given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 2 ** 32))
    def test_vanishes_at_projection_of_common_zero(self, a, b, c, seed):
        rng = random.Random(seed)
        # three polynomials in (x, y, z) through (a, b, c) only at z = c; eliminate x and y
        ps = []
        for _ in range(3):
            q = MPoly(3, {(rng.randint(0, 2), rng.randint(0, 1), 0): rng.randint(-5, 5) for _ in range(4)})
            q = q + MPoly.var(3, rng.randint(0, 1), 2) * rng.randint(1, 3)
            q = q + MPoly.var(3, 2) * rng.choice([-2, -1, 1, 2])
            ps.append(q - q.evaluate((a, b, c)))
        res = resultant_gcp(ps, [0, 1]).resultant
        assert res.evaluate((0, 0, c)) == 0


def _cofactor_oracle(m):
    if len(m) == 1:
        return m[0][0]
    acc = MPoly.zero(m[0][0].nvars)
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor_oracle(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


class TestDeterminant:
    def test_examples(self):
        z = P("z", "z")
        one = MPoly.constant(1, 1)
        zero = MPoly.zero(1)
        assert determinant_poly([[z, one], [one, z]]) == P("z^2 - 1", "z")
        assert determinant_poly([[one, zero], [zero, one]]) == one

    @given(st.integers(1, 5), st.integers(0, 2 ** 32))
    def test_matches_cofactor(self, n, seed):
        rng = random.Random(seed)
        m = [[MPoly(1, {(0,): rng.randint(-4, 4), (1,): rng.randint(-4, 4)}) for _ in range(n)]
             for _ in range(n)]
        oracle = _cofactor_oracle(m)
        assert determinant_poly(m) == oracle
        assert determinant_cofactor(m) == oracle


class TestMakeSquare:
    def test_identity_when_square(self):
        polys = [P("x"), P("y")]
        assert make_square(polys, 2, seed=1) == polys

    def test_three_lines(self):
        out = make_square([P("x"), P("y"), P("x + y")], 2, seed=4)
        assert len(out) == 2
        assert all(p.evaluate((0, 0)) == 0 for p in out)
        r = resultant_gcp([o.remap(3, [0, 1]) for o in out] + [MPoly.var(3, 2) - 1], [0, 1])
        assert not r.resultant.is_zero()

    def test_too_few(self):
        with pytest.raises(ValueError):
            make_square([P("x")], 2, seed=0)

    @given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=3),
           st.integers(0, 2 ** 32))
    def test_common_zeros_survive(self, pts, seed):
        a, b = pts[0]
        rng = random.Random(seed)
        polys = []
        for _ in range(4):
            p = MPoly(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-5, 5) for _ in range(3)})
            polys.append(p - p.evaluate((a, b)))
        for q in make_square(polys, 2, seed):
            assert q.evaluate((a, b)) == 0
