import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P, mpolys, points
from gcv.polyring import (MPoly, PolyError, PolySyntaxError, UnknownVariableError, UPoly, bitsize,
                          gradient, kronecker_substitute, kronecker_unpack, mul, mul_bitsize_bound,
                          parse_poly, partial_derivative, power_bitsize_bound, product_bitsize_bound,
                          squarefree_part, upoly_divmod_exact, upoly_gcd)


class TestParse:
    def test_transcription(self):
        p = P("x^2*y + 3*x - 2")
        assert p.terms == {(2, 1): 1, (1, 0): 3, (0, 0): -2}

    def test_zero(self):
        p = parse_poly("0", ["x"])
        assert p.is_zero() and p.terms == {}

    def test_broughton(self):
        p = P("x + x^2*y")
        assert p.terms == {(1, 0): 1, (2, 1): 1}

    def test_parentheses_and_powers(self):
        assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")
        assert P("-(x - 1)*(x + 1)") == P("1 - x^2")

    def test_syntax_error_reports_offset(self):
        with pytest.raises(PolySyntaxError) as exc:
            P("x + * y")
        assert exc.value.offset == 4

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError) as exc:
            P("x + w")
        assert exc.value.name == "w" and exc.value.offset == 4

    def test_duplicate_names(self):
        with pytest.raises(PolyError):
            parse_poly("x", ["x", "x"])

    @given(mpolys())
    def test_round_trip_through_text(self, p):
        assert P(p.to_str(["x", "y"])) == p


class TestArithmetic:
    def test_difference_of_squares(self):
        assert mul(P("x+1"), P("x-1")) == P("x^2-1")

    def test_absorbing_zero(self):
        assert (P("x*y+3") * MPoly.zero(2)).is_zero()

    def test_mismatched_rings(self):
        with pytest.raises(PolyError):
            mul(P("x"), parse_poly("x", ["x"]))

    @given(mpolys(), mpolys(), mpolys())
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert (a - a).is_zero()

    @given(mpolys(), mpolys(), points())
    def test_evaluation_is_a_homomorphism(self, a, b, pt):
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
        assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)

    def test_no_zero_coefficients_stored(self):
        p = P("x + y") - P("y")
        assert p.terms == {(1, 0): 1}


class TestBitsize:
    @pytest.mark.parametrize("text,expected", [("3*x - 2", 2), ("0", 0), ("1024*x", 11)])
    def test_examples(self, text, expected):
        assert bitsize(parse_poly(text, ["x"])) == expected

    def test_ints_and_upoly(self):
        assert bitsize(-255) == 8
        assert bitsize(UPoly([1, -256])) == 9


class TestDerivative:
    def test_broughton_partials(self):
        f = P("x + x^2*y")
        assert partial_derivative(f, 0) == P("1 + 2*x*y")
        assert partial_derivative(f, 1) == P("x^2")

    def test_constant(self):
        assert partial_derivative(P("7"), 0).is_zero()

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            partial_derivative(P("x"), 5)

    @given(mpolys(), mpolys())
    def test_leibniz(self, a, b):
        for i in range(2):
            assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)

    def test_gradient(self):
        assert gradient(P("x^2 + y^2")) == [P("2*x"), P("2*y")]


class TestKronecker:
    def test_example(self):
        # (x1, x2, z) with caps (2, 3, 4): x2 -> s^3, z -> s^(3*4)
        p = parse_poly("x2*z", ["x1", "x2", "z"])
        assert kronecker_substitute(p, [2, 3, 4]) == UPoly([0] * 15 + [1])

    def test_constant(self):
        assert kronecker_substitute(MPoly.constant(2, 5), [1, 1]) == UPoly([5])

    def test_cap_violation(self):
        with pytest.raises(PolyError):
            kronecker_substitute(P("x^3"), [2, 2])

    @given(mpolys(nvars=3, max_degree=4))
    def test_decode_encode_identity(self, p):
        caps = [max(p.degree_in(i), 0) + 1 for i in range(3)]
        assert kronecker_unpack(kronecker_substitute(p, caps), caps) == p

    @given(mpolys(), mpolys())
    def test_packing_is_multiplicative(self, a, b):
        caps = [a.degree_in(i) + b.degree_in(i) + 1 if not (a.is_zero() or b.is_zero()) else 1
                for i in range(2)]
        if a.is_zero() or b.is_zero():
            return
        assert kronecker_substitute(a * b, caps) == kronecker_substitute(a, caps) * kronecker_substitute(b, caps)


class TestSquarefree:
    def test_examples(self):
        assert squarefree_part(UPoly([1, -2, 1])) == UPoly([-1, 1])
        assert squarefree_part(UPoly([-2, 0, 1])) == UPoly([-2, 0, 1])
        assert squarefree_part(UPoly([0, -4, 0, 4])) == UPoly([0, -1, 0, 1])

    def test_zero_rejected(self):
        with pytest.raises(PolyError):
            squarefree_part(UPoly())

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(1, 3), min_size=4, max_size=4))
    def test_divides_and_is_squarefree(self, roots, mults):
        u = UPoly([1])
        for r, m in zip(roots, mults):
            for _ in range(m):
                u = u * UPoly([-r, 1])
        s = squarefree_part(u)
        assert s.degree == len(set(roots))
        assert not upoly_divmod_exact(u, s).is_zero()
        assert upoly_gcd(s, s.derivative()).degree == 0


def _random_poly(rng, nu, delta, tau):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        e = [0] * nu
        budget = rng.randint(0, delta)
        for _ in range(budget):
            e[rng.randrange(nu)] += 1
        terms[tuple(e)] = rng.choice([-1, 1]) * rng.randint(1, (1 << tau) - 1)
    return MPoly(nu, terms)


def count_bitsize_violations(count: int, seed: int) -> int:
    """Random products, m-fold products and powers checked against the output-size bounds."""
    rng = random.Random(seed)
    violations = 0
    for k in range(count):
        nu, tau = rng.randint(1, 4), rng.randint(1, 16)
        if k % 3 == 0:
            a, b = _random_poly(rng, nu, 3, tau), _random_poly(rng, nu, 3, rng.randint(1, 16))
            prod = a * b
            bound = mul_bitsize_bound(bitsize(a), bitsize(b), nu, max(prod.degree(), 1))
        elif k % 3 == 1:
            fs = [_random_poly(rng, nu, 2, rng.randint(1, 16)) for _ in range(rng.randint(2, 3))]
            prod = MPoly.constant(nu, 1)
            for f in fs:
                prod = prod * f
            bound = product_bitsize_bound([bitsize(f) for f in fs], nu, [f.degree() for f in fs])
        else:
            f = _random_poly(rng, nu, 2, tau)
            m = rng.randint(1, 3)
            prod = f**m
            bound = power_bitsize_bound(bitsize(f), nu, max(prod.degree(), 1), m)
        violations += bitsize(prod) > bound
    return violations


def test_bitsize_bounds_on_random_products_and_powers():
    assert count_bitsize_violations(300, seed=7) == 0
