import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P
from gcv.constrained import (ConstrainedError, build_system_J, choice_vectors, constrained_infimum_toy,
                             expected_cardinality, jacobian_minors, lagrange_values, sublevel_witness)
from gcv.polyring import MPoly
from gcv.realroots import AlgebraicNumber, compare


def _has(values, q) -> bool:
    return any(compare(v, AlgebraicNumber.from_rational(q)) == 0 for v in values)


def _random_poly(rng: random.Random, n: int) -> MPoly:
    terms = {}
    for _ in range(4):
        e = [0] * n
        for _ in range(rng.randint(0, 2)):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = rng.randint(-5, 5)
    for i in range(n):
        terms[tuple(int(j == i) for j in range(n))] = rng.randint(1, 5)
    return MPoly(n, {k: v for k, v in terms.items() if v})


class TestMinors:
    def test_parallel_linear_gradients(self):
        pairs = jacobian_minors(P("x + y"), [P("2*x + 2*y - 1")])
        assert len(pairs) == 2 and all(p.m_i.is_zero() for p in pairs)
        assert all(not p.m_ij.is_zero() for p in pairs)

    def test_circle(self):
        pairs = jacobian_minors(P("x"), [P("x^2 + y^2 - 1")])
        assert pairs[0].m_i == P("2*y")

    def test_too_many_constraints(self):
        with pytest.raises(ConstrainedError):
            jacobian_minors(P("x"), [P("x"), P("y")])

    def test_choice_vectors_exhaustive(self):
        choices, partial = choice_vectors(jacobian_minors(P("x + y + w", "x,y,w"), [P("x*y - 1", "x,y,w")]), 0)
        assert len(choices) == 8 and not partial


class TestSystemJ:
    @pytest.mark.parametrize("n,r,expected", [(2, 1, 6), (3, 1, 15), (3, 2, 8)])
    def test_examples(self, n, r, expected):
        assert expected_cardinality(n, r) == expected

    @settings(max_examples=15)
    @given(st.integers(2, 6), st.data())
    def test_cardinality_matches_closed_form(self, n, data):
        r = data.draw(st.integers(1, n - 1))
        rng = random.Random(data.draw(st.integers(0, 2 ** 32)))
        J = build_system_J(_random_poly(rng, n), [_random_poly(rng, n) for _ in range(r)], seed=1)
        assert J.cardinality == expected_cardinality(n, r)
        assert J.to_json()["cardinality"] == J.cardinality


class TestLagrange:
    def test_line(self):
        u = lagrange_values(P("x^2 + y^2"), [P("x + y - 1")], seed=0)
        assert u is not None and u(Fraction(1, 2)) == 0

    def test_circle(self):
        u = lagrange_values(P("x"), [P("x^2 + y^2 - 1")], seed=0)
        assert u(1) == 0 and u(-1) == 0


class TestToy:
    def test_line(self):
        rep = constrained_infimum_toy(P("x^2 + y^2"), [P("x + y - 1")], seed=1)
        assert _has(rep.candidates, Fraction(1, 2))
        assert rep.status == "finite" and rep.value.as_fraction() == Fraction(1, 2) and rep.attained

    def test_circle(self):
        rep = constrained_infimum_toy(P("x"), [P("x^2 + y^2 - 1")], seed=1)
        assert _has(rep.candidates, 1) and _has(rep.candidates, -1)
        assert rep.value.as_fraction() == -1 and rep.attained

    def test_hyperbola(self):
        rep = constrained_infimum_toy(P("x"), [P("x*y - 1")], seed=1)
        assert _has(rep.candidates, 0)
        assert rep.status == "unbounded-below"

    def test_hyperbola_branch(self):
        rep = constrained_infimum_toy(P("x"), [P("x*y - 1")], seed=1, inequalities=[P("x")])
        assert rep.status == "finite" and rep.value.as_fraction() == 0 and not rep.attained

    def test_degree_ceiling_respected(self):
        for F, g in (("x^2 + y^2", "x + y - 1"), ("x", "x^2 + y^2 - 1"), ("x*y", "x^2 + 2*y^2 - 3")):
            rep = constrained_infimum_toy(P(F), [P(g)], seed=2)
            assert "degree-ceiling-exceeded" not in rep.flags
            for e in rep.eliminations:
                assert e.eliminant is None or e.eliminant.degree <= rep.degree_ceiling

    def test_three_variables(self):
        rep = constrained_infimum_toy(P("x + y + w", "x,y,w"), [P("x^2 + y^2 - 1", "x,y,w"), P("w - 1", "x,y,w")],
                                      seed=1)
        assert rep.status == "finite" and rep.attained
        assert abs(float(rep.value) - (1 - 2 ** 0.5)) < 1e-9

    def test_scale_cap(self):
        rep = constrained_infimum_toy(P("x^4 + y"), [P("x + y")], seed=0)
        assert rep.status == "bounds-only" and rep.bounds is not None

    def test_square_system_rejected(self):
        with pytest.raises(ConstrainedError):
            constrained_infimum_toy(P("x"), [P("x"), P("y")])

    def test_json_deterministic(self):
        a = constrained_infimum_toy(P("x"), [P("x^2 + y^2 - 1")], seed=4).to_json()
        b = constrained_infimum_toy(P("x"), [P("x^2 + y^2 - 1")], seed=4).to_json()
        assert a == b


class TestSublevelWitness:
    def test_exact_witness_on_circle(self):
        v = sublevel_witness(P("x"), [P("x^2 + y^2 - 1")], Fraction(-1, 2), seed=0)
        assert v.sublevel_nonempty and v.exact

    def test_empty_below_minimum(self):
        v = sublevel_witness(P("x"), [P("x^2 + y^2 - 1")], Fraction(-2), seed=0)
        assert not v.sublevel_nonempty
