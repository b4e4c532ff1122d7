import itertools
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stackypoly import linalg
from stackypoly.polytope import (
    Empty,
    HPolytope,
    NotSimple,
    RedundantFacet,
    Unbounded,
    ZeroNormal,
)
from stackypoly.scalar import QQ, RealAlgebraicField

K = RealAlgebraicField([-2, 0, 1], [1, 2])


def P(field, normals, offsets):
    return HPolytope(field, [[field(x) for x in v] for v in normals], [field(L) for L in offsets])


TRIANGLE = ([(-1, 0), (0, -1), (1, 1)], [0, 0, 1])
SQUARE = ([(-1, 0), (0, -1), (1, 0), (0, 1)], [0, 0, 1, 1])


def simplex(n):
    normals = [tuple(-int(i == j) for j in range(n)) for i in range(n)] + [(1,) * n]
    return P(QQ, normals, [0] * n + [1])


def points(poly):
    return sorted(tuple(x.to_fraction() for x in v.point) for v in poly.vertices())


def test_triangle_vertices():
    T = P(QQ, *TRIANGLE)
    assert points(T) == [(0, 0), (0, 1), (1, 0)]


def test_square_vertices():
    S = P(QQ, *SQUARE)
    assert len(S.vertices()) == 4
    assert all(len(v.active_set) == 2 for v in S.vertices())


def test_irrational_triangle_vertices():
    T = P(K, [(-1, 0), (0, -1), (1, K.gen)], [0, 0, 1])
    pts = {tuple(v.point) for v in T.vertices()}
    assert pts == {(K(0), K(0)), (K(1), K(0)), (K(0), K.gen / 2)}


def test_face_counts():
    T = P(QQ, *TRIANGLE)
    by_dim = [sum(1 for f in T.face_lattice() if f.dim == k) for k in range(3)]
    assert by_dim == [3, 3, 1]
    S = P(QQ, *SQUARE)
    assert [sum(1 for f in S.face_lattice() if f.dim == k) for k in range(3)] == [4, 4, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_face_count(n):
    faces = simplex(n).face_lattice()
    proper = [f for f in faces if f.active_set]
    assert len(proper) == 2 ** (n + 1) - 2
    assert len(faces) == len(proper) + 1


def test_ann_examples():
    T = P(QQ, *TRIANGLE)
    edge = T.face((1,))
    assert T.ann(edge) == [(QQ(0), QQ(-1))]
    assert len(T.ann(T.face((0, 1)))) == 2
    interior = [f for f in T.face_lattice() if not f.active_set][0]
    assert T.ann(interior) == []


@pytest.mark.parametrize(
    "normals, offsets, err",
    [
        ([(-1, 0), (1, 0), (0, 1)], [0, 1, 1], Unbounded),
        ([(-1, 0), (0, -1), (1, 1)], [0, 0, -1], Empty),
        ([(-1, 0), (0, -1), (1, 0), (0, 1), (1, 1)], [0, 0, 1, 1, 3], RedundantFacet),
        ([(-1, 0), (0, -1), (0, 0)], [0, 0, 1], ZeroNormal),
        ([(-1, 0), (0, -1), (1, 0), (0, 1), (1, 1)], [0, 0, 1, 1, 1], NotSimple),
    ],
)
def test_degenerate_inputs_rejected(normals, offsets, err):
    with pytest.raises(err):
        P(QQ, normals, offsets).validate()


def test_octahedron_not_simple():
    normals = [s for s in itertools.product((-1, 1), repeat=3)]
    with pytest.raises(NotSimple):
        P(QQ, normals, [1] * 8).validate()


small = st.integers(-3, 3)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(small, small), min_size=3, max_size=6), st.lists(st.integers(1, 4), min_size=6, max_size=6))
def test_polygon_invariants(normals, offsets):
    try:
        poly = P(QQ, normals, offsets[: len(normals)])
        poly.validate()
    except Exception:
        return
    verts = poly.vertices()
    for v in verts:
        for i in range(poly.d):
            assert poly.slack(v.point, i).sign() == (0 if i in v.active_set else 1)
    assert sum(len(v.active_set) for v in verts) == 2 * len(verts)
    for f in poly.face_lattice():
        assert linalg.rank(poly.ann(f)) == f.codim if f.active_set else True
    # polygons: as many vertices as edges
    assert len(verts) == poly.d
