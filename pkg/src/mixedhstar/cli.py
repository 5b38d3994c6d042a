"""Command line interface.

Exit codes: 0 success, 2 unreadable input, 3 invalid poset/subdivision/
geometry, 4 a checked identity failed or an expected value did not match.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import ehrhart as E
from . import kls
from .io import Case, InputError, case_from_json, dumps, load_case, polys_to_json
from .laurent import ONE, to_string
from .polytope import GeometryError, polytope
from .poset import PosetError, barycentric, boolean_algebra
from .subdivision import Check, SFSError, check_all, validate_sfs

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CHECK = 0, 2, 3, 4

COMMANDS = ("gpoly", "hpoly", "local-h", "mixed-h", "hstar", "local-hstar", "mixed-hstar",
            "limit-mixed", "refined", "diamond", "check", "bary")


@dataclass
class JobSpec:
    command: str
    input_path: str | None = None
    output_format: str = "text"
    regular: bool = False
    oracle: bool = False
    table: str = "all"
    boolean: int | None = None
    extra: dict = field(default_factory=dict)


class CheckFailure(Exception):
    """An identity that must hold did not (exit code 4)."""


def _sfs_of(case: Case):
    if case.sfs is not None:
        return case.sfs
    if case.complex is not None:
        return case.complex.to_sfs()
    raise InputError(f"this command needs a subdivision, got a {case.kind}")


def _poly_of(case: Case):
    if case.kind == "empty":
        return None
    if case.polytope is None:
        raise InputError(f"this command needs a polytope, got a {case.kind}")
    return case.polytope


def _complex_of(case: Case):
    if case.complex is None:
        raise InputError(f"this command needs a lattice subdivision, got a {case.kind}")
    return case.complex


def compute(command: str, case: Case, oracle: bool = False) -> dict:
    """Named polynomials produced by ``command``."""
    if command == "gpoly":
        if case.poset is not None:
            return {"g": kls.g_polynomial(case.poset)}
        if case.polytope is not None:
            return {"g": kls.g_polynomial(case.polytope.face_lattice())}
        return {"g": kls.g_polynomial(_sfs_of(case).base)}
    if command == "hpoly":
        if case.poset is not None:
            return {"h": kls.h_polynomial(case.poset)}
        return {"h": _sfs_of(case).h()}
    if command == "local-h":
        return {"local_h": _sfs_of(case).local_h()}
    if command == "mixed-h":
        return {"mixed_h": _sfs_of(case).mixed_h()}
    if command in ("hstar", "local-hstar", "mixed-hstar"):
        P = _poly_of(case)
        fn = {"hstar": E.hstar, "local-hstar": E.local_hstar, "mixed-hstar": E.mixed_hstar}[command]
        out = {command.replace("-", "_"): fn(P)}
        if oracle and P is not None and command != "mixed-hstar":
            if not P.is_simplex():
                raise InputError("--oracle needs a simplex")
            bl, bh = E.hstar_box_oracle(P)
            got = bh if command == "hstar" else bl
            if got != out[command.replace("-", "_")]:
                raise CheckFailure(f"box oracle gives {to_string(got)}")
        return out
    if command == "limit-mixed":
        if case.kind == "empty":
            return {"limit_mixed": ONE, "local_limit_mixed": ONE}
        inv = E.SubdivisionInvariants(_complex_of(case))
        h, l = inv.limit()
        return {"limit_mixed": h, "local_limit_mixed": l}
    if command == "refined":
        if case.kind == "empty":
            return {"refined": ONE}
        return {"refined": E.SubdivisionInvariants(_complex_of(case)).refined()}
    raise InputError(f"unknown command {command}")


def all_invariants(case: Case) -> dict:
    """Every polynomial that makes sense for this kind of input."""
    out = {}
    if case.kind == "poset":
        p = case.poset
        if p.top() is not None and p.is_eulerian():
            out["g"] = kls.g_polynomial(p)
        if p.bottom() is not None and p.is_lower_eulerian():
            out["h"] = kls.h_polynomial(p)
    elif case.kind == "sfs":
        s = case.sfs
        out.update(h=s.h(), local_h=s.local_h(), mixed_h=s.mixed_h())
    elif case.kind == "empty":
        out.update(hstar=ONE, local_hstar=ONE, mixed_hstar=ONE)
    else:
        P = case.polytope
        out.update(hstar=E.hstar(P), local_hstar=E.local_hstar(P), mixed_hstar=E.mixed_hstar(P))
        if case.complex is not None:
            s = case.complex.to_sfs()
            inv = E.SubdivisionInvariants(case.complex)
            h, l = inv.limit()
            out.update(h=s.h(), local_h=s.local_h(), mixed_h=s.mixed_h(),
                       limit_mixed=h, local_limit_mixed=l, refined=inv.refined())
    return out


def compare_expected(case: Case, values: dict | None = None) -> list:
    if not case.expected:
        return []
    values = values if values is not None else all_invariants(case)
    out = []
    for k, v in sorted(case.expected.items()):
        got = values.get(k)
        out.append(Check(f"expected {k}", got == v,
                         "" if got == v else f"got {to_string(got) if got is not None else 'nothing'}"))
    return out


def battery(case: Case) -> list:
    """All identities for one input."""
    if case.kind == "poset":
        p = case.poset
        rows = [Check("locally Eulerian", p.is_locally_eulerian())]
        if p.is_locally_eulerian():
            G = kls.gamma(p)
            rows.append(Check("kernel q^rho satisfies kappa * kappa-bar = 1", kls.is_kernel(kls.kernel(p))))
            rows.append(Check("gamma inverse", G * kls.gamma_inverse(p) == kls.identity(p)))
            if len(p) <= 80:
                rows.append(Check("gamma totally acceptable", kls.is_totally_acceptable(G)))
        return rows
    if case.kind == "sfs":
        return check_all(case.sfs)
    if case.kind == "empty":
        D = E.polytope_diamonds(None)
        return [Check("empty polytope renders 1", E.render_text(D["hstar"]) == "1")]
    if case.kind == "polytope":
        return E.check_polytope(case.polytope)
    rows = check_all(case.complex.to_sfs())
    rows += E.check_subdivision(case.complex)
    if case.fine is not None:
        rows += E.check_refinement(case.fine, case.complex)
        rows += [Check("fine: " + c.name, c.ok, c.detail) for c in E.check_subdivision(case.fine, restrictions=False)]
    return rows


def render_polys(polys: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps({"polynomials": polys_to_json(polys)})
    if len(polys) == 1:
        return to_string(next(iter(polys.values()))) + "\n"
    return "".join(f"{k}: {to_string(v)}\n" for k, v in polys.items())


def render_diamonds(case: Case, fmt: str, table: str = "all") -> str:
    if case.kind == "empty":
        D = E.polytope_diamonds(None)
    elif case.complex is not None:
        D = E.diamonds(E.SubdivisionInvariants(case.complex))
    else:
        D = E.polytope_diamonds(_poly_of(case))
    tables = [D["hstar"], D["local"]] + list(D["layers"])
    if table != "all":
        if table in ("hstar", "local"):
            tables = [D[table]]
        else:
            r = int(table)
            if not 0 <= r < len(D["layers"]):
                raise InputError(f"no {r}-local diamond")
            tables = [D["layers"][r]]
    if fmt == "json":
        return dumps({"diamonds": [t.to_json() for t in tables]})
    if fmt == "svg":
        if len(tables) != 1:
            tables = tables[:1]
        return E.render_svg(tables[0])
    if case.kind == "empty":
        return "1\n"
    return "\n\n".join(f"{t.title()}\n{E.render_text(t)}" for t in tables) + "\n"


def run(spec: JobSpec, out=None) -> int:
    """Execute one job; returns the exit code."""
    out = out or sys.stdout
    try:
        if spec.command == "bary":
            if spec.boolean is not None:
                p = boolean_algebra(spec.boolean)
            else:
                case = load_case(spec.input_path)
                p = case.poset if case.poset is not None else _sfs_of(case).gamma
            gamma, sigma = barycentric(p)
            case = Case(kind="sfs", sfs=validate_sfs(gamma, p, sigma))
            polys = all_invariants(case)
            out.write(render_polys(polys, spec.output_format))
            return EXIT_OK
        case = load_case(spec.input_path)
        if spec.regular and case.complex is not None:
            case.complex.regular = True
        if spec.command == "diamond":
            out.write(render_diamonds(case, spec.output_format, spec.table))
            return EXIT_OK
        if spec.command == "check":
            rows = battery(case) + compare_expected(case)
            for r in rows:
                out.write(r.line() + "\n")
            polys = all_invariants(case)
            for k, v in polys.items():
                out.write(f"{k}: {to_string(v)}\n")
            return EXIT_OK if all(r.ok for r in rows) else EXIT_CHECK
        polys = compute(spec.command, case, oracle=spec.oracle)
        bad = [c for c in compare_expected(case, polys) if not c.ok and c.name[9:] in polys]
        out.write(render_polys(polys, spec.output_format))
        if bad:
            for c in bad:
                sys.stderr.write(c.line() + "\n")
            return EXIT_CHECK
        return EXIT_OK
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_PARSE
    except (SFSError, GeometryError, PosetError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except CheckFailure as exc:
        sys.stderr.write(f"identity failed: {exc}\n")
        return EXIT_CHECK


# corpus

def random_cases(n: int, seed: int) -> list:
    """Random regular subdivisions (dim 1..3) with a nested refinement."""
    from fractions import Fraction
    rng = random.Random(seed)
    cases = []
    while len(cases) < n:
        d = rng.randint(1, 3)
        k = rng.randint(1, 2 if d == 3 else 3)
        verts = [[0] * d] + [[k if i == j else 0 for i in range(d)] for j in range(d)]
        if rng.random() < 0.5:
            verts = [[rng.randint(0, 2) for _ in range(d)] for _ in range(d + 1 + rng.randint(0, 2))]
        try:
            P = polytope(verts)
        except GeometryError:
            continue
        if P.dim != d:
            continue
        pts = P.lattice_points()
        if len(pts) > 16:
            continue
        om = [rng.randint(0, 3) for _ in pts]
        om2 = [rng.randint(0, 5) for _ in pts]
        obj = {"name": f"random-{len(cases)}", "vertices": [list(v) for v in P.vertices],
               "points": [list(p) for p in pts], "heights": om,
               "fine_heights": [str(a + Fraction(b, 100)) for a, b in zip(om, om2)]}
        cases.append(obj)
    return cases


def run_corpus(directory: str | None, n_random: int = 0, seed: int = 0, out=None,
               verbose: bool = False) -> int:
    out = out or sys.stdout
    files = sorted(Path(directory).glob("*.json")) if directory else []
    items = [(f.stem, None, f) for f in files]
    if n_random:
        out.write(f"random cases: {n_random} with seed {seed}\n")
        items += [(o["name"], o, None) for o in random_cases(n_random, seed)]
    if not items:
        sys.stderr.write("warning: no cases found\n")
        out.write("0 cases\n")
        return EXIT_OK
    worst = EXIT_OK
    passed = 0
    t0 = time.time()
    for name, obj, path in items:
        try:
            case = case_from_json(obj, name) if obj is not None else load_case(path)
            if case.raw.get("expect_error"):
                out.write(f"FAIL  {name}: expected a validation error\n")
                worst = max(worst, EXIT_CHECK)
                continue
            rows = battery(case) + compare_expected(case)
            bad = [r for r in rows if not r.ok]
            if bad:
                worst = max(worst, EXIT_CHECK)
                out.write(f"FAIL  {name}: " + "; ".join(r.name + (f" ({r.detail})" if r.detail else "")
                                                       for r in bad) + "\n")
            else:
                passed += 1
                out.write(f"PASS  {name} ({len(rows)} checks)\n")
                if verbose:
                    for r in rows:
                        out.write("      " + r.line() + "\n")
        except InputError as exc:
            worst = max(worst, EXIT_PARSE)
            out.write(f"FAIL  {name}: input error: {exc}\n")
        except (SFSError, GeometryError, PosetError) as exc:
            raw = obj if obj is not None else json.loads(Path(path).read_text())
            if raw.get("expect_error") and getattr(exc, "code", None) in (raw["expect_error"], None):
                passed += 1
                out.write(f"PASS  {name} (rejected: {exc})\n")
            else:
                worst = max(worst, EXIT_INVALID)
                out.write(f"FAIL  {name}: invalid input: {exc}\n")
    out.write(f"{passed}/{len(items)} cases passed in {time.time() - t0:.1f}s\n")
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mixedhstar", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?" if name == "bary" else None)
        p.add_argument("--format", choices=("text", "json", "svg"), default="text")
        p.add_argument("--regular", action="store_true", help="mark the subdivision as regular")
        p.add_argument("--oracle", action="store_true", help="cross-check h*/l* with the box oracle")
        if name == "diamond":
            p.add_argument("--table", default="all", help="hstar, local, an integer r, or all")
        if name == "bary":
            p.add_argument("--boolean", type=int, help="use the Boolean algebra of this rank")
    c = sub.add_parser("corpus", help="run the identity battery over a directory of cases")
    c.add_argument("directory", nargs="?")
    c.add_argument("--random", type=int, default=0, help="add this many random cases")
    c.add_argument("--seed", type=int, default=20240601)
    c.add_argument("--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        return run_corpus(args.directory, args.random, args.seed, verbose=args.verbose)
    if args.command == "bary" and args.input is None and args.boolean is None:
        sys.stderr.write("bary needs an input file or --boolean\n")
        return EXIT_PARSE
    spec = JobSpec(args.command, args.input, args.format, args.regular, args.oracle,
                   getattr(args, "table", "all"), getattr(args, "boolean", None))
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
