from fractions import Fraction

import pytest

from conftest import P
from corpus import SMALL
from gcv.acv import (MonteCarloFailure, asymptotic_critical_values, critical_values_k0, eliminate_variable_block,
                     sample_size, super_polar_combos)
from gcv.polyring import MPoly, PolyError, UPoly, bitsize, gradient, parse_poly
from gcv.realroots import AlgebraicNumber, compare


def _has(values, q) -> bool:
    target = AlgebraicNumber.from_rational(q)
    return any(compare(v, target) == 0 for v in values)


def rabier_path_value(f: MPoly, path, ells=(10, 100, 1000, 10000)):
    """Check |x| |grad f(x)| -> 0 along the path and return the limit estimate of f."""
    prods, vals = [], []
    for ell in ells:
        pt = path(Fraction(ell))
        norm2 = sum(c * c for c in pt)
        g2 = sum(g.evaluate(pt) ** 2 for g in gradient(f))
        prods.append(float(norm2 * g2))
        vals.append(f.evaluate(pt))
    assert all(b < a for a, b in zip(prods, prods[1:])) and prods[-1] < 1e-3
    return vals[-1]


class TestCombos:
    def test_sample_size(self):
        assert sample_size(2, 3, 100) == 1200

    def test_univariate_has_no_combos(self):
        assert super_polar_combos(P("x^3", "x")).polys == []

    def test_bitsize_of_samples(self):
        c = super_polar_combos(P("x^3 + y"), seed=3)
        assert c.sample_size == 1200
        assert all(0 < v <= 1200 and bitsize(v) <= 11 for row in c.a for v in row)
        assert all(0 < v <= 1200 for mat in c.b for row in mat for v in row)

    def test_symbolic_expansion(self):
        f = P("x + x^2*y")
        c = super_polar_combos(f, seed=9)
        (a1, a2), ((b11, b12), (b21, b22)) = c.a[0], c.b[0]
        x, y = P("x"), P("y")
        fx, fy = P("1 + 2*x*y"), P("x^2")
        expected = fx * a1 + fy * a2 + x * fx * b11 + x * fy * b12 + y * fx * b21 + y * fy * b22
        assert c.polys == [expected]

    def test_reproducible(self):
        f = P("x*y^2 + x^2 + y")
        assert super_polar_combos(f, seed=5).to_json() == super_polar_combos(f, seed=5).to_json()

    def test_constant_rejected(self):
        with pytest.raises(PolyError):
            super_polar_combos(P("3"))


class TestBlockElimination:
    def test_univariate(self):
        f = P("x^3", "x")
        b = eliminate_variable_block(f, super_polar_combos(f), 0)
        assert b.leading == UPoly([1])

    def test_proper_map_has_constant_leads(self):
        f = P("x^2 + y^2")
        combos = super_polar_combos(f, seed=2)
        assert all(eliminate_variable_block(f, combos, i).leading.degree <= 0 for i in range(2))


class TestCriticalValues:
    def test_univariate_has_no_asymptotic_values(self):
        assert asymptotic_critical_values(P("x^3", "x")).asymptotic == []

    def test_broughton(self):
        rep = asymptotic_critical_values(P("x + x^2*y"), seed=7)
        assert [v.as_fraction() for v in rep.asymptotic] == [0]
        assert rep.k0 == []

    def test_unattained(self):
        rep = asymptotic_critical_values(P("(x*y-1)^2 + x^2"), seed=7)
        assert _has(rep.asymptotic, 0)

    @pytest.mark.parametrize("text,names,expected", [
        ("x^2 + y^2", "x,y", [0]),
        ("x + x^2*y", "x,y", []),
        ("x^3 - 3*x", "x", [-2, 2]),
    ])
    def test_k0(self, text, names, expected):
        assert [v.as_fraction() for v in critical_values_k0(P(text, names))] == expected

    def test_constant_rejected(self):
        with pytest.raises(PolyError):
            asymptotic_critical_values(P("4"))

    def test_determinism(self):
        f = P("x^2*y^2 + x")
        assert (asymptotic_critical_values(f, seed=12).to_json()
                == asymptotic_critical_values(f, seed=12).to_json())

    @pytest.mark.parametrize("text,names", SMALL)
    def test_degree_claim(self, text, names):
        f = P(text, names)
        n, d = f.nvars, f.degree()
        combos = super_polar_combos(f, seed=1)
        for i in range(n):
            assert eliminate_variable_block(f, combos, i).leading.degree <= d ** (n - 1)


@pytest.mark.parametrize("text,path", [
    ("x + x^2*y", lambda l: (-1 / (2 * l) + l ** -3, l)),
    # x chosen so that df/dx vanishes exactly; df/dy then decays like l^-3
    ("(x*y-1)^2 + x^2", lambda l: (l / (l * l + 1), l)),
    ("x^2*y^2 + x", lambda l: (-1 / (2 * l ** 2), l)),
])
def test_rabier_paths_are_covered(text, path):
    f = P(text)
    limit = rabier_path_value(f, path)
    nearest = round(limit)
    assert abs(limit - nearest) < Fraction(1, 100)
    assert _has(asymptotic_critical_values(f, seed=1).candidates(), nearest)


def test_monte_carlo_repetition_keeps_oracle_values():
    f = P("x + x^2*y")
    sets = [asymptotic_critical_values(f, seed=s).candidates() for s in (1, 2, 3)]
    common = [v for v in sets[0] if all(any(compare(v, w) == 0 for w in other) for other in sets[1:])]
    assert _has(common, 0)
