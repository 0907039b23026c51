from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P
from gcv.bounds import (attained_bounds, attained_degree_bound, attained_value_log_bound, constrained_bounds,
                        hyperplane_success_probability, newton_bounds, unconstrained_bounds)
from gcv.optimize import infimum


class TestAttainedDegree:
    def test_examples(self):
        assert attained_degree_bound(2, 2, 1, 0) == (4, 8)
        assert attained_degree_bound(1, 3, 0, 0).bound == 2
        assert attained_degree_bound(3, 1, 2, 1).bound == 1

    def test_invalid(self):
        with pytest.raises(ValueError):
            attained_degree_bound(2, 0)

    def test_cap_holds_everywhere(self):
        for n in range(1, 11):
            for d in range(1, 11):
                for rs in range(0, n + 1):
                    b = attained_degree_bound(n, d, rs, 0)
                    assert b.bound <= b.cap == 2 ** (n - 1) * d ** n

    @given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 12), st.integers(0, 12))
    def test_total_and_capped(self, n, d, r, s):
        b = attained_degree_bound(n, d, r, s)
        assert 0 <= b.bound <= b.cap


class TestAttainedValue:
    def test_example(self):
        lb = attained_value_log_bound(1, 2, 1)
        assert lb.value == -22 and lb.exact

    def test_height_dominates(self):
        assert "log2(1000)" in attained_value_log_bound(1, 2, 1000).expression

    def test_inexact_rounding_is_safe(self):
        lb = attained_value_log_bound(2, 3, 5)
        import math
        exact = -2 * 4 * 9 * (5 - 1 + math.log2(5) + 2 * math.log2(3))
        assert not lb.exact and float(lb.value) <= exact and exact - float(lb.value) < 1e-3

    @pytest.mark.parametrize("text,names,H", [
        ("x^4 - 8*x^2 + y^2 + 4*y", "x,y", 8),
        ("x^4 + y^4 - x*y", "x,y", 1),
        ("x^4 - 2*x^2", "x", 2),
    ])
    def test_solved_instances_respect_bounds(self, text, names, H):
        f = P(text, names)
        r = infimum(f, seed=1)
        assert r.attained
        n, d = f.nvars, f.degree()
        q = r.value.as_fraction()
        assert r.value.degree <= attained_degree_bound(n, d).cap
        if q != 0:
            assert abs(q) >= Fraction(2) ** int(attained_value_log_bound(n, d, H).value)


class TestScenarios:
    def test_unconstrained(self):
        rep = unconstrained_bounds(2, 3, 4)
        assert rep.degree == 3 and rep.entry("eta").value == 28 and rep.entry("eta").asymptotic
        rep = unconstrained_bounds(3, 2, 1)
        assert rep.degree == 4 and rep.entry("eta").value == 21
        assert unconstrained_bounds(1, 7, 2).degree == 1

    def test_newton(self):
        assert newton_bounds(2, 2, 3).entry("eta").value == 40

    def test_constrained(self):
        assert constrained_bounds(2, 2, 2, 3, 1).degree == 256

    def test_constrained_r0_dispatch(self):
        rep = constrained_bounds(2, 3, 1, 4, 0)
        assert rep.scenario == "unconstrained" and rep.notes

    def test_attained_report(self):
        rep = attained_bounds(1, 2, 1)
        assert rep.entry("log2_lower_bound").value == -22
        assert rep.to_json()["entries"][2]["value"] == "-22/1"

    def test_hyperplane_probability(self):
        assert hyperplane_success_probability(4, 8) == Fraction(1, 2)
        assert hyperplane_success_probability(0, 8) == 1
        assert hyperplane_success_probability(9, 8) == 0
        with pytest.raises(ValueError):
            hyperplane_success_probability(1, 0)
