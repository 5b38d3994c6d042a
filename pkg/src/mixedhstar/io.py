"""JSON input formats.

Poset:     {"elements": [...], "covers": [[a, b], ...], "rank": {...}}
           or {"boolean": n} or {"facets": [[...], ...]} (simplicial complex)
SFS:       {"gamma": <poset>, "base": <poset>, "sigma": {gamma_id: base_id}}
           or {"barycentric": <poset>}
Polytope:  {"vertices": [[...]], "lattice_basis": [[...]]} or {"empty": true}
Complex:   polytope plus "cells" (point indices or explicit vectors, with
           optional "points") or "points" and "heights"; "fine_heights"
           adds a refining subdivision.

Any case may carry "expected": {name: polynomial text} and "regular": true.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .constructions import simplicial_complex
from .laurent import from_json, parse, to_json
from .polytope import (CellComplex, GeometryError, LatticePolytope, build_complex, polytope,
                       regular_from_heights, to_lattice_coords)
from .poset import RankedPoset, barycentric, boolean_algebra, build
from .subdivision import SFS, validate_sfs


class InputError(ValueError):
    """Malformed JSON or missing fields (exit code 2)."""


@dataclass
class Case:
    """One parsed input; exactly one of the object fields is the primary one."""
    kind: str                       # poset | sfs | polytope | complex | empty
    name: str = ""
    poset: RankedPoset | None = None
    sfs: SFS | None = None
    polytope: LatticePolytope | None = None
    complex: CellComplex | None = None
    fine: CellComplex | None = None
    expected: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


def read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def poset_from_json(obj) -> RankedPoset:
    if not isinstance(obj, dict):
        raise InputError("poset block must be an object")
    if "boolean" in obj:
        return boolean_algebra(int(obj["boolean"]))
    if "facets" in obj:
        return simplicial_complex(obj["facets"])
    if "elements" not in obj:
        raise InputError("poset block needs 'elements'")
    return build(obj["elements"], [tuple(c) for c in obj.get("covers", [])], obj.get("rank"))


def sfs_from_json(obj) -> SFS:
    if "barycentric" in obj:
        p = poset_from_json(obj["barycentric"])
        gamma, sigma = barycentric(p)
        return validate_sfs(gamma, p, sigma)
    for key in ("gamma", "base", "sigma"):
        if key not in obj:
            raise InputError(f"subdivision needs '{key}'")
    gamma = poset_from_json(obj["gamma"])
    base = poset_from_json(obj["base"])
    sigma = obj["sigma"]
    if not isinstance(sigma, (dict, list)):
        raise InputError("'sigma' must be an object or a list")
    return validate_sfs(gamma, base, sigma, geometric=bool(obj.get("geometric", False)))


def _points(obj, key, basis) -> list:
    try:
        return to_lattice_coords(obj[key], basis)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise InputError(f"bad '{key}': {exc}") from None


def complex_from_json(obj, P: LatticePolytope, heights_key: str = "heights") -> CellComplex:
    basis = obj.get("lattice_basis")
    if heights_key in obj:
        pts = _points(obj, "points", basis) if "points" in obj else list(P.vertices)
        S = regular_from_heights(P, pts, [_rational(h) for h in obj[heights_key]])
        return S
    pts = _points(obj, "points", basis) if "points" in obj else None
    cells = obj["cells"]
    if pts is None:
        verts = list(to_lattice_coords(obj["vertices"], basis))
        if cells and all(isinstance(i, int) for c in cells for i in c):
            cells = [[verts[i] for i in c] for c in cells]
        else:
            cells = [to_lattice_coords(c, basis) for c in cells]
        S = build_complex(P, cells)
    else:
        S = build_complex(P, cells, points=pts)
    S.regular = bool(obj.get("regular", False))
    return S


def _rational(h):
    try:
        return Fraction(h) if not isinstance(h, float) else Fraction(str(h))
    except (TypeError, ValueError):
        raise InputError(f"bad height {h!r}") from None


def case_from_json(obj, name: str = "") -> Case:
    if not isinstance(obj, dict):
        raise InputError("top-level JSON must be an object")
    expected = obj.get("expected", {})
    try:
        expected = {k: parse(v) if isinstance(v, str) else parse(v["text"]) for k, v in expected.items()}
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad expected polynomial: {exc}") from None
    case = Case(kind="", name=name or obj.get("name", ""), expected=expected, raw=obj)
    if obj.get("empty"):
        case.kind = "empty"
    elif "vertices" in obj:
        P = polytope(obj["vertices"], obj.get("lattice_basis"))
        case.polytope = P
        if "cells" in obj or "heights" in obj:
            case.kind = "complex"
            case.complex = complex_from_json(obj, P)
            if obj.get("regular"):
                case.complex.regular = True
            if "fine_heights" in obj:
                case.fine = complex_from_json(obj, P, "fine_heights")
        else:
            case.kind = "polytope"
    elif "gamma" in obj or "barycentric" in obj:
        case.kind = "sfs"
        case.sfs = sfs_from_json(obj)
    elif "elements" in obj or "boolean" in obj or "facets" in obj:
        case.kind = "poset"
        case.poset = poset_from_json(obj)
    else:
        raise InputError("cannot tell what this input describes")
    return case


def load_case(path) -> Case:
    return case_from_json(read_json(path), name=Path(path).stem)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def polys_to_json(polys: dict) -> dict:
    return {k: to_json(v) for k, v in polys.items()}


def polys_from_json(obj: dict) -> dict:
    return {k: from_json(v) for k, v in obj.items()}

