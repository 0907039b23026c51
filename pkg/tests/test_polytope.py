import itertools

import pytest
from hypothesis import given

from conftest import P, mpolys
from gcv.polyring import MPoly, PolyError
from gcv.polytope import (LatticePolytope, PolytopeError, PolytopeTuple, affine_dimension,
                          facing_dimension, important_origin_facings, minkowski_sum, newton_polytope,
                          restrict_to_face, tuple_dimension, tuple_facings)

XYZ = "x,y,z"


def _section_tuple():
    F, g1, g2 = P("1 + x + x^2", XYZ), P("-2 + x + 2*y - y^2", XYZ), P("1 + 2*x - 3*y + 4*z", XYZ)
    return PolytopeTuple({0: newton_polytope(F, include_origin=True), 1: newton_polytope(g1),
                          2: newton_polytope(g2)})


class TestNewtonPolytope:
    def test_segment(self):
        assert newton_polytope(P("1 + x + x^2", XYZ)).sorted_vertices() == [(0, 0, 0), (2, 0, 0)]

    def test_interior_support_point_dropped(self):
        Q = newton_polytope(P("-2 + x + 2*y - y^2", XYZ))
        assert Q.sorted_vertices() == [(0, 0, 0), (0, 2, 0), (1, 0, 0)]
        assert Q.contains((0, 1, 0))

    def test_constant_is_a_point(self):
        assert newton_polytope(P("5")).sorted_vertices() == [(0, 0)]

    def test_zero_rejected(self):
        with pytest.raises(PolyError):
            newton_polytope(MPoly.zero(2))

    def test_origin_adjoined(self):
        assert newton_polytope(P("x + x^2*y"), include_origin=True).sorted_vertices() == [(0, 0), (1, 0), (2, 1)]


class TestMinkowski:
    def test_unit_square(self):
        S = minkowski_sum(newton_polytope(P("1 + x")), newton_polytope(P("1 + y")))
        assert S.sorted_vertices() == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_identity(self):
        Q = newton_polytope(P("x^2 + x*y^3 + 1"))
        assert minkowski_sum(Q, newton_polytope(P("1"))).vertices == Q.vertices

    def test_section_sum_is_three_dimensional(self):
        assert _section_tuple().minkowski().dim == 3

    def test_dimension_mismatch(self):
        with pytest.raises(PolytopeError):
            minkowski_sum(newton_polytope(P("x")), newton_polytope(P("x", XYZ)))

    @given(mpolys(max_terms=4), mpolys(max_terms=4))
    def test_newton_polytope_of_product_is_additive(self, p, q):
        if p.is_zero() or q.is_zero():
            return
        assert newton_polytope(p * q).vertices == minkowski_sum(newton_polytope(p), newton_polytope(q)).vertices


class TestTupleDimension:
    def test_single_segment(self):
        assert tuple_dimension([newton_polytope(P("1 + x"))]) == 0

    def test_section_triple(self):
        T = _section_tuple()
        assert tuple_dimension(T.entries[i] for i in T.support) == 0

    def test_vertex(self):
        assert tuple_dimension([newton_polytope(P("x"))]) == -1


class TestRestrict:
    def test_bottom_face(self):
        g2 = P("1 + 2*x - 3*y + 4*z", XYZ)
        face = newton_polytope(g2).face((0, 0, -1))
        assert restrict_to_face(g2, face) == P("1 + 2*x - 3*y", XYZ)

    def test_whole_polytope(self):
        p = P("x + x^2*y - 7")
        assert restrict_to_face(p, newton_polytope(p)) == p

    def test_missing_vertex_gives_zero(self):
        origin = LatticePolytope.from_points([(0, 0)])
        assert restrict_to_face(P("x + x^2*y"), origin).is_zero()

    @given(mpolys(), mpolys())
    def test_idempotent_and_linear(self, p, q):
        if p.is_zero():
            return
        Q = newton_polytope(p)
        for face, _ in Q.faces():
            r = restrict_to_face(p, face)
            assert restrict_to_face(r, face) == r
            assert restrict_to_face(p + q, face) == r + restrict_to_face(q, face)


class TestFacings:
    def test_bottom_facing_is_important_and_origin(self):
        T = _section_tuple()
        bottom = [f for f in important_origin_facings(T) if f.indices == (0, 1, 2)
                  and f.faces[2].sorted_vertices() == [(0, 0, 0), (0, 1, 0), (1, 0, 0)]]
        assert bottom
        f = bottom[0]
        assert f.faces[0].vertices == T.entries[0].vertices
        assert f.faces[1].vertices == T.entries[1].vertices

    def test_important_origin_subset(self):
        T = _section_tuple()
        keys = {f.key for f in tuple_facings(T)}
        assert all(f.key in keys for f in important_origin_facings(T))

    def test_requires_origin_tuple(self):
        T = PolytopeTuple({0: newton_polytope(P("x + y"))})
        with pytest.raises(PolytopeError):
            important_origin_facings(T)

    @pytest.mark.parametrize("texts", [
        ["x + x^2*y"],
        ["(x*y - 1)^2 + x^2"],
        ["1 + x + x^2", "-2 + x + 2*y - y^2"],
        ["x^3 + y^2 + x*y", "x + y - 1"],
    ])
    def test_facing_sums_are_exposed_faces(self, texts):
        polys = [P(t) for t in texts]
        T = PolytopeTuple({0: newton_polytope(polys[0], include_origin=True),
                           **{i: newton_polytope(g) for i, g in enumerate(polys[1:], start=1)}})
        for f in tuple_facings(T):
            total = T.minkowski(f.indices)
            gamma = total.face(f.normal)
            summed = T.minkowski([])
            for i in f.indices:
                summed = minkowski_sum(summed, f.faces[i])
            assert summed.vertices == gamma.vertices
            for i in f.indices:
                assert f.faces[i].vertices == T.entries[i].face(f.normal).vertices

    @pytest.mark.parametrize("texts", [
        ["x + x^2*y"],
        ["1 + x + x^2", "-2 + x + 2*y - y^2"],
    ])
    def test_importance_brute_force(self, texts):
        polys = [P(t) for t in texts]
        T = PolytopeTuple({0: newton_polytope(polys[0], include_origin=True),
                           **{i: newton_polytope(g) for i, g in enumerate(polys[1:], start=1)}})
        for f in important_origin_facings(T):
            full = {i: T.entries[i].face(f.normal) for i in T.support}
            d = facing_dimension(f)
            rest = [j for j in T.support if j not in f.indices]
            for k in range(len(rest) + 1):
                for extra in itertools.combinations(rest, k):
                    assert d <= tuple_dimension(full[j] for j in f.indices + extra)


def test_affine_dimension():
    assert affine_dimension([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_dimension([(0, 0)]) == 0
