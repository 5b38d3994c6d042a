from fractions import Fraction
from math import atan2

import pytest
from hypothesis import assume, given, settings, strategies as st

from mixedhstar.intlinalg import integer_kernel, lattice_basis_from_generators, saturated_basis
from mixedhstar.polytope import (GeometryError, build_complex, count_points, dilate_counts,
                                 interior_count, polytope, regular_from_heights,
                                 trivial_complex)

from mixedhstar.laurent import T

import oracles

CUBE = [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)]
SQUARE = [[0, 0], [1, 0], [0, 1], [1, 1]]


@st.composite
def simplices(draw, max_dim=3, max_coord=3):
    d = draw(st.integers(1, max_dim))
    verts = draw(st.lists(st.tuples(*[st.integers(0, max_coord)] * d), min_size=d + 1, max_size=d + 1,
                          unique=True))
    P = polytope(verts)
    assume(P.dim == d)
    return [list(v) for v in verts], P


def fvector(P):
    out = {}
    for f in P.faces():
        k = P.face_dim(f)
        out[k] = out.get(k, 0) + 1
    return out


def test_cube_faces_and_volume():
    P = polytope(CUBE)
    f = fvector(P)
    assert (f[0], f[1], f[2], f[3]) == (8, 12, 6, 1)
    assert P.normalized_volume() == 6
    assert P.face_lattice().is_eulerian()
    assert count_points(P, 2) == 27 and interior_count(P, 2) == 1


def test_non_extreme_points_are_dropped():
    P = polytope([[0, 0], [2, 0], [0, 2], [1, 0], [1, 1]])
    assert len(P.vertices) == 3


def test_lower_dimensional_polytope_uses_its_own_lattice():
    P = polytope([[0, 0, 0], [2, 2, 0]])
    assert P.dim == 1 and P.normalized_volume() == 2
    assert len(P.lattice_points()) == 3
    Q = polytope([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert Q.dim == 2 and Q.normalized_volume() == 1


def test_coarser_lattice_basis():
    basis = [[Fraction(1, 3)] * 5] + [[int(i == j) for i in range(5)] for j in range(1, 5)]
    verts = [[0] * 5] + [[int(i == j) for i in range(5)] for j in range(5)]
    P = polytope(verts, basis)
    assert P.normalized_volume() == 3
    assert len(P.lattice_points()) == 6


def test_integer_linear_algebra():
    assert integer_kernel([[1, 1, 1]], 3) == [[-1, 1, 0], [-1, 0, 1]]
    assert saturated_basis([[2, 2, 0]], 3) == [[1, 1, 0]]
    rows = lattice_basis_from_generators([[1, 0], [0, 1], [Fraction(1, 2), Fraction(1, 2)]])
    assert abs(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]) == Fraction(1, 2)


@settings(max_examples=40, deadline=None)
@given(simplices())
def test_counts_match_brute_force(data):
    verts, P = data
    d = P.dim
    if d != len(verts[0]):
        return
    for m in (1, 2):
        closed, inner = oracles.simplex_counts(verts, m)
        assert count_points(P, m) == closed
        assert interior_count(P, m) == inner


@st.composite
def polygons(draw):
    pts = draw(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=3, max_size=8, unique=True))
    P = polytope(pts)
    assume(P.dim == 2)
    return P


def shoelace2(vertices) -> int:
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    ring = sorted(vertices, key=lambda v: atan2(v[1] - cy, v[0] - cx))
    return abs(sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1])))


@settings(max_examples=40, deadline=None)
@given(polygons())
def test_polygon_volume_and_pick(P):
    area2 = shoelace2(P.vertices)
    assert P.normalized_volume() == area2
    inner = interior_count(P, 1)
    boundary = count_points(P, 1) - inner
    assert area2 == 2 * inner + boundary - 2


@settings(max_examples=30, deadline=None)
@given(polygons())
def test_pulling_triangulation_covers_polygon(P):
    tri = P.pulling_triangulation()
    assert len(tri) == len(P.vertices) - 2
    assert all(len(set(s)) == 3 for s in tri)


def test_regular_from_heights_segment():
    P = polytope([[0], [2]])
    flat = regular_from_heights(P, [[0], [1], [2]], [0, 0, 0])
    assert len(flat.maximal) == 1
    split = regular_from_heights(P, [[0], [1], [2]], [0, -1, 0])
    assert len(split.maximal) == 2 and split.regular


def test_regular_from_heights_square():
    P = polytope(SQUARE)
    S = regular_from_heights(P, SQUARE, [0, 0, 0, 1])
    assert len(S.maximal) == 2 and S.is_unimodular()
    assert S.to_sfs().h() == 1 + T


def test_complex_validation_errors():
    P = polytope(SQUARE)
    with pytest.raises(GeometryError) as exc:
        build_complex(P, [[0, 1, 2]], points=SQUARE)
    assert exc.value.code == "gap"
    with pytest.raises(GeometryError) as exc:
        build_complex(P, [[0, 1, 2], [0, 1, 3], [1, 2, 3]], points=SQUARE)
    assert exc.value.code == "overlap"
    with pytest.raises(GeometryError):
        build_complex(P, [[0, 1, 3], [0, 2, 3], [0, 1, 2]], points=SQUARE)
    with pytest.raises(GeometryError):
        regular_from_heights(P, SQUARE[:3], [0, 0, 0])


def test_carrier_link_and_restriction():
    P = polytope([[0], [2]])
    S = build_complex(P, [[0, 1], [1, 2]], points=[[0], [1], [2]])
    mid = frozenset([1])
    assert S.carrier(mid) == frozenset(range(2))
    assert len(S.link(mid)) == 3
    edge = regular_from_heights(polytope(CUBE), CUBE, [0, 0, 0, 0, 1, 1, 1, 3])
    for face in edge.P.faces():
        if face and edge.P.face_dim(face) < 3:
            sub = edge.restrict(face)
            assert sub.P.dim == edge.P.face_dim(face)


def test_refinement():
    P = polytope([[0, 0], [2, 0], [0, 2], [2, 2]])
    pts = [[x, y] for x in range(3) for y in range(3)]
    coarse = trivial_complex(P)
    fine = regular_from_heights(P, pts, [x * x + y * y for x, y in pts])
    assert fine.refines(coarse) and not coarse.refines(fine)
    m = fine.refinement_map(coarse)
    top = coarse.face_index[coarse.maximal[0]]
    assert all(m[fine.face_index[c]] == top for c in fine.maximal)


def test_dilate_counts_start_at_one():
    assert dilate_counts(polytope(SQUARE), 3) == [1, 4, 9, 16]
