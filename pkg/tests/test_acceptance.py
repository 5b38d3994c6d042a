"""Acceptance criteria, each exact and timed.

Every criterion records one PASS/FAIL line; conftest.py prints them at the
end of the session.  Run directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from mixedhstar import ehrhart as E  # noqa: E402
from mixedhstar.cli import battery  # noqa: E402
from mixedhstar.constructions import chan_example  # noqa: E402
from mixedhstar.io import load_case  # noqa: E402
from mixedhstar.laurent import LaurentPoly, T, U, V  # noqa: E402
from mixedhstar.polytope import GeometryError, polytope, regular_from_heights  # noqa: E402
from mixedhstar.poset import bits, boolean_algebra  # noqa: E402
from mixedhstar.subdivision import (barycentric_sfs, restrict, small_case_counts, small_case_local,  # noqa: E402
                                    small_case_mixed)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
SEED = 20240601
RESULTS: list = []


def record(n: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = "") -> None:
    ok_time = elapsed < limit
    status = "PASS" if ok and ok_time else "FAIL"
    extra = "" if ok_time else f" over the {limit:.0f}s budget"
    line = f"criterion {n}: {status}  {title} ({elapsed:.2f}s{extra})"
    if status == "FAIL" and detail:
        line += f"  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, detail or title
    assert ok_time, f"took {elapsed:.2f}s, budget {limit}s"


def poly_t(d: dict) -> LaurentPoly:
    return sum((c * T ** k for k, c in d.items()), LaurentPoly())


def poly_uv(d: dict) -> LaurentPoly:
    return sum((c * U ** a * V ** b for (a, b), c in d.items()), LaurentPoly())


def corpus_cases():
    cases = []
    for f in sorted(CORPUS.glob("*.json")):
        try:
            cases.append(load_case(f))
        except GeometryError:
            continue  # deliberately invalid inputs
    return cases


def test_criterion_1_barycentric_permutation_statistics():
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 6):
        s = barycentric_sfs(boolean_algebra(n))
        if s.h() != poly_t(oracles.eulerian(n)):
            bad.append(f"h for n={n}")
        if s.local_h() != poly_t(oracles.derangement_excedances(n)):
            bad.append(f"local h for n={n}")
        if s.mixed_h() != poly_uv(oracles.mixed_excedances(n)):
            bad.append(f"mixed h for n={n}")
    record(1, "barycentric subdivisions vs permutation enumeration, n=2..5",
           not bad, time.perf_counter() - t0, 10, ", ".join(bad))


def test_criterion_2_nonunimodal_local_hstar():
    t0 = time.perf_counter()
    E.clear_caches()
    P = load_case(CORPUS / "nonunimodal_simplex.json").polytope
    want = T ** 2 + T ** 4
    alt = E.local_hstar(P)
    box, _ = E.hstar_box_oracle(P)
    l = [alt.coefficient(t=i) for i in range(P.dim + 2)]
    h = [E.hstar(P).coefficient(t=i) for i in range(P.dim + 2)]
    # l*_1 = #interior points <= l*_i, and Hibi's bound h*_1 <= h*_i once interior points exist
    lower_ok = l[1] == P.count(1, strict=True) and all(l[1] <= l[i] for i in range(1, P.dim))
    if P.count(1, strict=True):
        lower_ok &= all(h[1] <= h[i] for i in range(1, P.dim))
    # a strict dip between two larger coefficients
    dips = any(l[j] < min(max(l[1:j]), max(l[j + 1:P.dim + 1])) for j in range(2, P.dim))
    ok = alt == want and box == want and lower_ok and dips
    record(2, "non-unimodal local h* by alternating sum and by box points", ok,
           time.perf_counter() - t0, 5, f"alternating {alt}, box {box}")


def _random_small_sfs(rng, count):
    """Face posets of random regular subdivisions of lattice polygons and segments (rank <= 3)."""
    shapes = [[[0], [3]], [[0, 0], [2, 0], [0, 2]], [[0, 0], [3, 0], [0, 2]], [[0, 0], [2, 0], [0, 2], [2, 2]],
              [[0, 0], [3, 1], [1, 2]], [[0, 0], [2, 0], [3, 1], [1, 2], [0, 1]]]
    out = []
    while len(out) < count:
        P = polytope(rng.choice(shapes))
        pts = P.lattice_points()
        out.append(regular_from_heights(P, pts, [rng.randint(0, 3) for _ in pts]).to_sfs())
    return out


def test_criterion_3_small_case_closed_forms():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    bad = []
    checked = 0
    for s in _random_small_sfs(rng, 24):
        # the instance itself and every restriction of it
        for y in range(len(s.gamma)):
            for x in bits(s.base.up[s.sigma[y]]):
                r = restrict(s, x, y)
                n, rr = r.base.rk(), r.gamma.rk()
                c = small_case_counts(r)
                checked += 1
                if r.local_h() != small_case_local(n, rr - n, c["beta"]):
                    bad.append(("local", n, rr - n))
                if r.mixed_h() != small_case_mixed(n, rr - n, **c):
                    bad.append(("mixed", n, rr - n))
    record(3, f"small-case local and mixed h on 24 random subdivisions ({checked} restrictions)",
           not bad, time.perf_counter() - t0, 5, str(bad[:3]))


def test_criterion_4_interpolation_vs_box_and_reciprocity():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    E.clear_caches()
    done, bad = 0, []
    while done < 50:
        d = rng.randint(1, 4)
        verts = [[rng.randint(0, 4) for _ in range(d)] for _ in range(d + 1)]
        try:
            P = polytope(verts)
        except GeometryError:
            continue
        if P.dim != d:
            continue
        done += 1
        _, hbox = E.hstar_box_oracle(P)
        if hbox != E.hstar(P):
            bad.append(f"h* {verts}")
        for m in range(1, d + 2):
            if E.ehrhart_value(P, -m) != (-1) ** d * P.count(m, strict=True):
                bad.append(f"reciprocity {verts} m={m}")
    record(4, "50 random simplices: interpolated h* = box h*, reciprocity m=1..d+1",
           not bad, time.perf_counter() - t0, 60, "; ".join(bad[:3]))


def test_criterion_5_pushforward_and_refinement():
    t0 = time.perf_counter()
    triples = [c for c in corpus_cases() if c.fine is not None]
    bad = []
    for c in triples:
        rows = E.check_refinement(c.fine, c.complex)
        for S in (c.complex, c.fine):
            rows += E.check_pushforward(E.SubdivisionInvariants(S))
        bad += [f"{c.name}: {r.name}" for r in rows if not r.ok]
    ok = not bad and len(triples) >= 10 and all(c.complex.P.dim <= 3 for c in triples)
    record(5, f"pushforward and refinement identities on {len(triples)} nested triples", ok,
           time.perf_counter() - t0, 60, "; ".join(bad[:3]))


def test_criterion_6_property_battery():
    t0 = time.perf_counter()
    bad, total = [], 0
    for c in corpus_cases():
        rows = battery(c)
        total += len(rows)
        bad += [f"{c.name}: {r.name}" for r in rows if not r.ok]
    record(6, f"full property battery on the corpus ({total} checks)", not bad,
           time.perf_counter() - t0, 300, "; ".join(bad[:3]))


def test_criterion_7_chan_example():
    t0 = time.perf_counter()
    s = chan_example()
    ok = (s.mixed_h() == 1 + U * V * (U + V) - (U * V) ** 2 and s.local_h() == -(T ** 2)
          and s.h() == 1 + T and not s.geometric)
    record(7, "Chan's non-geometric subdivision", ok, time.perf_counter() - t0, 1)


def test_criterion_8_dim3_small_terms():
    t0 = time.perf_counter()
    cases = [c for c in corpus_cases() if c.complex is not None and c.complex.P.dim == 3]
    bad = []
    for c in cases:
        for S in [S for S in (c.complex, c.fine) if S is not None]:
            inv = E.SubdivisionInvariants(S)
            R = inv.refined()
            entries = sum(L for L in (R - 1).terms.values())
            if entries + 1 != S.P.normalized_volume():
                bad.append(f"{c.name}: sum {entries}")
            if E.refined_from_small_terms(inv) != R:
                bad.append(f"{c.name}: reconstruction")
    record(8, f"dim-3 reconstruction from boundary terms ({len(cases)} cases)", bool(cases) and not bad,
           time.perf_counter() - t0, 30, "; ".join(bad[:3]))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
