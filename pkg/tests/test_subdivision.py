import pytest
from hypothesis import given, settings, strategies as st

from mixedhstar import kls
from mixedhstar.constructions import chan_example, simplicial_complex
from mixedhstar.laurent import ONE, T, U, V, substitute
from mixedhstar.poset import bits, boolean_algebra
from mixedhstar.polytope import polytope, regular_from_heights
from mixedhstar.subdivision import (SFSError, barycentric_sfs, check_all, check_composition, compose,
                                    fij_from_mixed, fij_table, identity_sfs, restrict, simplicial_local_h,
                                    simplicial_mixed_h, small_case_counts, small_case_local,
                                    small_case_mixed, validate_sfs)


def failing(rows):
    return [r.line() for r in rows if not r.ok]


@st.composite
def geometric_sfs(draw):
    """Face posets of random regular subdivisions of small lattice polygons."""
    k = draw(st.integers(1, 3))
    P = polytope([[0, 0], [k, 0], [0, k]] if draw(st.booleans()) else [[0, 0], [2, 0], [0, 2], [2, 2]])
    pts = P.lattice_points()
    hs = draw(st.lists(st.integers(0, 4), min_size=len(pts), max_size=len(pts)))
    return regular_from_heights(P, pts, hs).to_sfs()


def test_identity_subdivision():
    B = boolean_algebra(3)
    s = identity_sfs(B)
    assert s.h() == ONE
    assert s.mixed_h() == ONE
    assert s.local_h() == 0


def test_chan_example():
    s = chan_example()
    assert s.h() == 1 + T
    assert s.local_h() == -(T ** 2)
    assert s.mixed_h() == 1 + U * V * (U + V) - (U * V) ** 2
    assert not failing(check_all(s))


def test_split_segment_local_h():
    gamma = simplicial_complex([(0, 1), (1, 2)])
    base = boolean_algebra(2, labels=["0", "2"])
    sigma = {"{}": "{}", "{0}": "{0}", "{2}": "{2}", "{1}": "{0,2}", "{0,1}": "{0,2}", "{1,2}": "{0,2}"}
    s = validate_sfs(gamma, base, sigma)
    assert s.local_h() == T
    assert s.mixed_h() == 1 + U * V


def test_validation_errors_carry_witness():
    gamma = simplicial_complex([(0, 1), (1, 2)])
    base = boolean_algebra(2, labels=["0", "2"])
    bad = {"{}": "{}", "{0}": "{0}", "{2}": "{2}", "{1}": "{0}", "{0,1}": "{0,2}", "{1,2}": "{0,2}"}
    with pytest.raises(SFSError) as exc:
        validate_sfs(gamma, base, bad)
    assert exc.value.code in ("order", "alternating", "surjective")
    assert exc.value.witness is not None
    with pytest.raises(SFSError):
        validate_sfs(gamma, base, {"{}": "{}"})


def test_rank_decreasing_map_rejected():
    B = boolean_algebra(2)
    with pytest.raises(SFSError) as exc:
        validate_sfs(B, B, [0, 0, 0, 0])
    assert exc.value.code in ("rank", "surjective", "alternating")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_barycentric_battery(n):
    assert not failing(check_all(barycentric_sfs(boolean_algebra(n))))


@settings(max_examples=15, deadline=None)
@given(geometric_sfs())
def test_battery_on_geometric_subdivisions(s):
    assert not failing(check_all(s))


@settings(max_examples=15, deadline=None)
@given(geometric_sfs())
def test_restrictions_match_small_case_forms(s):
    for y in range(len(s.gamma)):
        for x in bits(s.base.up[s.sigma[y]]):
            r = restrict(s, x, y)
            n, rr = r.base.rk(), r.gamma.rk()
            c = small_case_counts(r)
            assert r.local_h() == small_case_local(n, rr - n, c["beta"])
            assert r.mixed_h() == small_case_mixed(n, rr - n, **c)


@settings(max_examples=15, deadline=None)
@given(geometric_sfs())
def test_mixed_h_properties(s):
    m = s.mixed_h()
    assert substitute(m, {"u": V, "v": U}) == m
    assert m.subs(v=1) == substitute(s.h(), {"t": U})
    assert m.is_nonnegative() and s.local_h().is_nonnegative()


@settings(max_examples=10, deadline=None)
@given(geometric_sfs())
def test_simplicial_formulas_agree(s):
    if not s.gamma.is_simplicial():
        return
    if s.base.rk() != 3 or len(s.base) != 8:
        return
    assert simplicial_local_h(s) == s.local_h()
    assert simplicial_mixed_h(s) == s.mixed_h()
    assert fij_from_mixed(s.mixed_h(), s.gamma.rk()) == {k: v for k, v in fij_table(s).items() if v}


def test_composition_with_barycentric():
    s = barycentric_sfs(boolean_algebra(3))
    tau = barycentric_sfs(s.gamma)
    assert not failing(check_composition(tau, s))
    both = compose(tau, s)
    assert both.h() == kls.h_polynomial(tau.gamma)


def test_simplicial_formulas_on_fine_triangulation():
    P = polytope([[0, 0], [2, 0], [0, 2]])
    pts = P.lattice_points()
    s = regular_from_heights(P, pts, [x * x + x * y + y * y for x, y in pts]).to_sfs()
    assert s.gamma.is_simplicial()
    assert simplicial_local_h(s) == s.local_h() == 0
    assert s.h() == 1 + 3 * T
    assert simplicial_mixed_h(s) == s.mixed_h()
