from hypothesis import assume, given, settings, strategies as st

from mixedhstar import ehrhart as E
from mixedhstar.laurent import ONE, T, U, V, W, substitute
from mixedhstar.polytope import GeometryError, polytope, regular_from_heights, trivial_complex

import oracles

CUBE = [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)]
REEVE = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 3]]


def coeffs(p):
    return p.coeff_list("t") if p else []


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


@st.composite
def full_simplices(draw, max_dim=3, max_coord=3):
    d = draw(st.integers(1, max_dim))
    verts = draw(st.lists(st.tuples(*[st.integers(0, max_coord)] * d), min_size=d + 1, max_size=d + 1,
                          unique=True))
    try:
        P = polytope(verts)
    except GeometryError:
        assume(False)
    assume(P.dim == d)
    return [list(v) for v in verts], P


@st.composite
def subdivisions(draw):
    shapes = [[[0], [3]], [[0, 0], [2, 0], [0, 2]], [[0, 0], [2, 0], [0, 2], [2, 2]],
              [[0, 0], [3, 1], [1, 2]], [[0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2]], REEVE]
    P = polytope(draw(st.sampled_from(shapes)))
    pts = P.lattice_points()
    hs = draw(st.lists(st.integers(0, 3), min_size=len(pts), max_size=len(pts)))
    return regular_from_heights(P, pts, hs)


def failing(rows):
    return [r.line() for r in rows if not r.ok]


def test_known_values():
    assert E.hstar(polytope([[0, 0], [1, 0], [0, 1]])) == ONE
    assert E.hstar(polytope(CUBE)) == 1 + 4 * T + T ** 2
    assert E.hstar(polytope(REEVE)) == 1 + 2 * T ** 2
    assert E.local_hstar(polytope(REEVE)) == 2 * T ** 2
    assert E.hstar(None) == ONE and E.local_hstar(None) == ONE


def test_segment_mixed():
    P = polytope([[0], [2]])
    assert E.hstar(P) == 1 + T
    assert E.local_hstar(P) == T
    assert E.mixed_hstar(P) == 1 + U * V


@settings(max_examples=30, deadline=None)
@given(full_simplices())
def test_hstar_from_brute_force_counts(data):
    verts, P = data
    d = P.dim
    counts = [1] + [oracles.simplex_counts(verts, m)[0] for m in range(1, d + 1)]
    assert coeffs(E.hstar(P)) == trim(oracles.hstar_from_counts(counts, d))


@settings(max_examples=30, deadline=None)
@given(full_simplices(max_dim=3, max_coord=2))
def test_box_points_give_hstar_and_lstar(data):
    verts, P = data
    h = [0] * (P.dim + 1)
    for k in oracles.box_points(verts):
        h[k] += 1
    l = [0] * (P.dim + 2)
    for k in oracles.box_points(verts, strict=True):
        l[k] += 1
    assert coeffs(E.hstar(P)) == trim(h)
    assert coeffs(E.local_hstar(P)) == trim(l)


@settings(max_examples=30, deadline=None)
@given(full_simplices())
def test_reciprocity_and_polytope_battery(data):
    _, P = data
    for m in range(1, P.dim + 2):
        assert E.ehrhart_value(P, -m) == (-1) ** P.dim * P.count(m, strict=True)
    assert not failing(E.check_polytope(P))


@settings(max_examples=20, deadline=None)
@given(full_simplices())
def test_mixed_hstar_specialisations(data):
    _, P = data
    m = E.mixed_hstar(P)
    assert substitute(m, {"u": V, "v": U}) == m
    assert m.subs(v=1) == substitute(E.hstar(P), {"t": U})


def test_nonunimodal_simplex():
    basis = [["1/3"] * 5] + [[int(i == j) for i in range(5)] for j in range(1, 5)]
    P = polytope([[0] * 5] + [[int(i == j) for i in range(5)] for j in range(5)], basis)
    assert E.local_hstar(P) == T ** 2 + T ** 4
    l, h = E.hstar_box_oracle(P)
    assert l == T ** 2 + T ** 4 and h == E.hstar(P)


def test_unit_cube_subdivision_invariants():
    P = polytope(CUBE)
    S = regular_from_heights(P, CUBE, [0, 0, 0, 0, 1, 1, 1, 3])
    inv = E.SubdivisionInvariants(S)
    assert inv.refined() == 1 + 4 * U * V * W ** 2 + U ** 2 * V ** 2 * W ** 4
    assert not failing(E.check_subdivision(S))


@settings(max_examples=12, deadline=None)
@given(subdivisions())
def test_subdivision_battery(S):
    assert not failing(E.check_subdivision(S, restrictions=False))


@settings(max_examples=12, deadline=None)
@given(subdivisions())
def test_limit_specialisations(S):
    inv = E.SubdivisionInvariants(S)
    h, l = inv.limit()
    assert h.subs(v=1) == substitute(E.hstar(S.P), {"t": U})
    assert inv.refined().subs(w=1) == h


def test_trivial_subdivision_reduces_to_polytope():
    P = polytope([[0, 0], [2, 0], [0, 2], [2, 2]])
    inv = E.SubdivisionInvariants(trivial_complex(P))
    assert inv.limit()[0] == E.mixed_hstar(P)


def test_refinement_identities():
    P = polytope([[0, 0], [2, 0], [0, 2], [2, 2]])
    pts = P.lattice_points()
    coarse = regular_from_heights(P, pts, [0] * len(pts))
    fine = regular_from_heights(P, pts, [x * x + x * y + y * y for x, y in pts])
    assert not failing(E.check_refinement(fine, coarse))


def test_diamond_rendering():
    D = E.polytope_diamonds(None)
    assert E.render_text(D["hstar"]) == "1"
    P = polytope([[0, 0], [2, 0], [0, 2], [2, 2]])
    D = E.polytope_diamonds(P)
    rows = E.render_text(D["hstar"]).splitlines()
    assert len(rows) == 3
    svg = E.render_svg(D["hstar"])
    assert svg == E.render_svg(E.polytope_diamonds(P)["hstar"])
    assert svg.startswith("<svg") and "time" not in svg


def test_zero_local_diamond_is_a_single_entry():
    P = polytope(CUBE)
    S = regular_from_heights(P, CUBE, [0, 0, 0, 0, 1, 1, 1, 3])
    D = E.diamonds(E.SubdivisionInvariants(S))
    assert D["layers"][0].size == 1
    assert E.render_text(D["layers"][0]).strip() == str(D["layers"][0][(0, 0)])


def test_small_terms_reconstruct_dim3():
    P = polytope([[0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2]])
    pts = P.lattice_points()
    S = regular_from_heights(P, pts, [x * x + y * y + z * z + x * y for x, y, z in pts])
    inv = E.SubdivisionInvariants(S)
    assert E.refined_from_small_terms(inv) == inv.refined()


def test_diamond_stacking():
    P = polytope([[0, 0, 0], [3, 0, 0], [0, 2, 0], [1, 1, 2]])
    pts = P.lattice_points()
    S = regular_from_heights(P, pts, [(x - 1) ** 2 + y * y + z for x, y, z in pts])
    D = E.diamonds(E.SubdivisionInvariants(S))
    n = D["hstar"].size
    for p in range(n):
        for q in range(n):
            assert D["hstar"][(p, q)] == sum(L[(p, q)] for L in D["layers"] if p < L.size and q < L.size)
