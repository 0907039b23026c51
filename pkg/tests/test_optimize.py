from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P
from gcv.acv import MonteCarloFailure
from gcv.optimize import (Budget, FiberVerdict, Witness, fiber_nonempty_witness, infimum, rationalize,
                          select_infimum)
from gcv.polyring import UPoly, parse_poly
from gcv.realroots import AlgebraicNumber, compare, isolate_real_roots


def univariate_infimum(coeffs: list[int]) -> Fraction | None:
    """Calculus oracle for a univariate polynomial whose critical points are rational."""
    u = UPoly(coeffs)
    if u.degree % 2 == 1 or u.lc() < 0:
        return None
    crit = isolate_real_roots(u.derivative())
    assert all(c.is_rational for c in crit)
    return min(Fraction(u(c.lo)) for c in crit)


class TestFiberWitness:
    def test_sublevel_witness(self):
        v = fiber_nonempty_witness(P("x^2 + y^2"), Fraction(1))
        assert v.sublevel_nonempty and v.low.value <= 1

    def test_empty_level(self):
        v = fiber_nonempty_witness(P("x^2 + y^2"), Fraction(-1), Budget(starts=8, rounds=3))
        assert not v.sublevel_nonempty and v.to_json()["verdict"] == "probably-empty"

    def test_unattained_example(self):
        f = P("(x*y-1)^2 + x^2")
        v = fiber_nonempty_witness(f, Fraction(1, 100))
        assert v.low is not None and f.evaluate(v.low.point) == v.low.value <= Fraction(1, 100)

    def test_witnesses_are_exact(self):
        f = P("x^3 - 3*x*y + y^2")
        v = fiber_nonempty_witness(f, Fraction(-5), seed=4)
        if v.low is not None:
            assert f.evaluate(v.low.point) == v.low.value <= -5


class TestSelection:
    def _fake(self, nonempty_from: Fraction):
        def test(r):
            w = Witness((Fraction(0),), r) if r >= nonempty_from else None
            return FiberVerdict(r, w, None, 1)
        return test

    def test_first_nonempty_level(self):
        cands = [AlgebraicNumber.from_rational(q) for q in (0, 1, 2)]
        idx, rats, verdicts = select_infimum(cands, self._fake(Fraction(1, 2)))
        assert idx == 0 and rats[1] == Fraction(1, 2)
        assert [v.sublevel_nonempty for v in verdicts] == [False, True]

    def test_unbounded(self):
        cands = [AlgebraicNumber.from_rational(0)]
        idx, _, _ = select_infimum(cands, self._fake(Fraction(-100)))
        assert idx is None

    def test_no_witness_raises(self):
        with pytest.raises(MonteCarloFailure):
            select_infimum([AlgebraicNumber.from_rational(0)], self._fake(Fraction(10 ** 9)))


class TestInfimum:
    def test_attained(self):
        r = infimum(P("x^2 + y^2"), seed=1)
        assert r.status == "finite" and r.value.as_fraction() == 0 and r.attained

    def test_unattained(self):
        r = infimum(P("(x*y-1)^2 + x^2"), seed=1)
        assert r.status == "finite" and r.value.as_fraction() == 0 and not r.attained

    def test_unbounded(self):
        r = infimum(P("x", "x"), seed=1)
        assert r.status == "unbounded-below" and r.value is None
        assert r.witnesses[0].value <= r.interlacing[0]

    def test_embedded_linear(self):
        assert infimum(P("x"), seed=3).status == "unbounded-below"

    def test_constant(self):
        r = infimum(P("7"))
        assert r.status == "constant" and r.value.as_fraction() == 7

    def test_irrational_minimum(self):
        # x^4 - 2x^2 + x has an irrational minimizer; the value must be one of the candidates
        r = infimum(P("x^4 - 2*x^2 + x", "x"), seed=2)
        assert r.status == "finite" and r.attained
        assert any(compare(r.value, c) == 0 for c in r.candidates)

    def test_value_is_a_candidate_and_selection_is_monotone(self):
        r = infimum(P("x^4 + y^4 - x*y"), seed=5)
        assert r.value.as_fraction() == Fraction(-1, 8) and r.attained
        assert any(compare(r.value, c) == 0 for c in r.candidates)
        flags = [v.sublevel_nonempty for v in r.verdicts]
        assert flags[-1] and not any(flags[:-1])

    def test_json_is_deterministic(self):
        f = P("x^4 - 8*x^2 + y^2 + 4*y")
        assert infimum(f, seed=9).to_json() == infimum(f, seed=9).to_json()

    @settings(max_examples=8)
    @given(st.integers(1, 3), st.integers(-3, 3), st.integers(0, 2))
    def test_separable_corpus(self, a, b, kind):
        # u(x) = x^4 - 2 a^2 x^2 has minimum -a^4; v(y) is quadratic, quartic or cubic
        u = [0, 0, -2 * a * a, 0, 1]
        v = [[0, 2 * b, 1], [0, 0, -2 * b * b, 0, 1], [0, 0, 0, 1]][kind]
        text = " + ".join(f"({c})*x^{i}" for i, c in enumerate(u)) + " + " + \
               " + ".join(f"({c})*y^{i}" for i, c in enumerate(v))
        f = parse_poly(text, ["x", "y"])
        mu, mv = univariate_infimum(u), univariate_infimum(v)
        r = infimum(f, seed=a + 7 * b + 49 * kind)
        if mu is None or mv is None:
            assert r.status == "unbounded-below"
        else:
            assert r.status == "finite" and r.value.as_fraction() == mu + mv and r.attained


def test_rationalize():
    pts = rationalize([0.5, 0.333333333333])
    assert (Fraction(1, 2), Fraction(1, 3)) in pts
