"""Regenerate corpus/*.json.

Hand-picked cases carry expected values computed by independent means
(closed forms or permutation counts); random regular subdivisions only carry
the identity battery.  Seed is fixed and printed.

    python scripts/make_corpus.py [--out corpus] [--seed 20240601] [--random 14]
"""
from __future__ import annotations

import argparse
import json
import random
from fractions import Fraction
from pathlib import Path

from mixedhstar.constructions import chan_example
from mixedhstar.polytope import GeometryError, polytope, regular_from_heights

SEED = 20240601


def write(out: Path, name: str, obj: dict) -> None:
    obj = {"name": name, **obj}
    (out / f"{name}.json").write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def unit(d, k=1):
    return [[0] * d] + [[k if i == j else 0 for i in range(d)] for j in range(d)]


def fixed_cases() -> dict:
    chan = chan_example()
    cases = {
        "empty": {"empty": True},
        "unit_triangle": {"vertices": unit(2), "expected": {"hstar": "1", "local_hstar": "0"}},
        "nonunimodal_simplex": {
            "vertices": unit(5),
            "lattice_basis": [["1/3"] * 5] + unit(5)[1:],
            "expected": {"hstar": "1 + t^2 + t^4", "local_hstar": "t^2 + t^4"},
        },
        "reeve_r3": {"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 3]],
                     "expected": {"hstar": "1 + 2*t^2", "local_hstar": "2*t^2"}},
        "unit_cube": {"vertices": [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)],
                      "expected": {"hstar": "1 + 4*t + t^2"}},
        "chan": {"gamma": chan.gamma.to_json(), "base": chan.base.to_json(),
                 "sigma": {chan.gamma.elements[y]: chan.base.elements[x] for y, x in enumerate(chan.sigma)},
                 "expected": {"h": "1 + t", "local_h": "-t^2", "mixed_h": "1 + u^2*v + u*v^2 - u^2*v^2"}},
        "bary_b2": {"barycentric": {"boolean": 2},
                    "expected": {"h": "1 + t", "local_h": "t"}},
        "bary_b3": {"barycentric": {"boolean": 3},
                    "expected": {"h": "1 + 4*t + t^2", "local_h": "t + t^2"}},
        "bary_b4": {"barycentric": {"boolean": 4},
                    "expected": {"h": "1 + 11*t + 11*t^2 + t^3", "local_h": "t + 7*t^2 + t^3"}},
        "boolean_b4_poset": {"boolean": 4, "expected": {"g": "1", "h": "1"}},
        "square_boundary": {"elements": ["0", "a", "b", "c", "d", "ab", "bc", "cd", "da", "1"],
                            "covers": [["0", x] for x in "abcd"]
                            + [[x, e] for e in ("ab", "bc", "cd", "da") for x in e]
                            + [[e, "1"] for e in ("ab", "bc", "cd", "da")],
                            "expected": {"g": "1 + t"}},
        "segment_split": {"vertices": [[0], [2]], "points": [[0], [1], [2]], "cells": [[0, 1], [1, 2]],
                          "regular": True,
                          "expected": {"hstar": "1 + t", "local_h": "t", "limit_mixed": "1 + u*v"}},
        "segment_trivial": {"vertices": [[0], [2]], "cells": [[0, 1]], "regular": True,
                            "expected": {"hstar": "1 + t"}},
        "square_unimodular": {"vertices": [[0, 0], [1, 0], [0, 1], [1, 1]], "cells": [[0, 1, 2], [1, 2, 3]],
                              "regular": True, "expected": {"hstar": "1 + t", "limit_mixed": "1 + u*v"}},
        "square_2x2_trivial": {"vertices": [[0, 0], [2, 0], [0, 2], [2, 2]],
                               "cells": [[0, 2, 6, 8]], "regular": True,
                               "fine_heights": [0, 1, 1, 0, 1, 2, 1, 2, 3],
                               "points": [[x, y] for x in range(3) for y in range(3)]},
        "cube_split": {"vertices": [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)],
                       "heights": [0, 0, 0, 0, 1, 1, 1, 3], "regular": True,
                       "expected": {"refined": "1 + 4*u*v*w^2 + u^2*v^2*w^4"}},
        "bad_overlap": {"vertices": [[0, 0], [1, 0], [0, 1], [1, 1]],
                        "cells": [[0, 1, 2], [0, 1, 3], [1, 2, 3]], "expect_error": "overlap"},
    }
    return cases


def _try(P, pts, heights):
    try:
        return regular_from_heights(P, pts, heights)
    except GeometryError:
        return None


def random_cases(n: int, seed: int) -> dict:
    """Nested regular subdivisions (coarse heights, perturbed fine heights) in dims 1..3."""
    rng = random.Random(seed)
    shapes = {
        1: [[[0], [3]], [[0], [4]]],
        2: [unit(2, 2), unit(2, 3), [[0, 0], [2, 0], [0, 2], [2, 2]], [[0, 0], [3, 1], [1, 2]],
            [[0, 0], [2, 0], [3, 1], [1, 2], [0, 1]]],
        3: [unit(3, 2), [[0, 0, 0], [3, 0, 0], [0, 2, 0], [1, 1, 2]],
            [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)] + [[1, 1, 2]],
            [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]]],
    }
    out = {}
    while len(out) < n:
        d = 1 + len(out) % 3
        verts = rng.choice(shapes[d])
        P = polytope(verts)
        pts = [list(p) for p in P.lattice_points()]
        coarse = [rng.randint(0, 3) for _ in pts]
        fine = [Fraction(a) + Fraction(rng.randint(0, 5), 1000) for a in coarse]
        S, T = _try(P, pts, coarse), _try(P, pts, fine)
        if S is None or T is None or not T.refines(S):
            continue
        out[f"random_d{d}_{len(out):02d}"] = {
            "vertices": [list(v) for v in P.vertices], "points": pts, "regular": True,
            "heights": coarse, "fine_heights": [str(h) for h in fine]}
    return out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    ap.add_argument("--seed", type=int, default=SEED)
    ap.add_argument("--random", type=int, default=14)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"seed {args.seed}")
    cases = {**fixed_cases(), **random_cases(args.random, args.seed)}
    for name, obj in cases.items():
        write(out, name, obj)
    print(f"wrote {len(cases)} cases to {out}")


if __name__ == "__main__":
    main()
