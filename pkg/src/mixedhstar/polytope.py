"""Exact lattice polytopes, face lattices and lattice polyhedral subdivisions.

Every polytope is stored in an intrinsic frame: an integer origin plus a
Z-basis of the lattice points of its affine span.  In that frame it is a
full-dimensional polytope in Z^k, which is where faces, volumes and
lattice-point counts are computed.  A non-standard working lattice M is
handled once at input by rewriting coordinates in a Z-basis of M.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

import numpy as np

from . import intlinalg as la
from .poset import RankedPoset, subset_name
from .subdivision import SFS, validate_sfs


class GeometryError(ValueError):
    """Invalid geometric input; ``code`` is one of overlap, gap, lattice, dimension, input."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def _vec(v) -> tuple:
    return tuple(Fraction(a) for a in v)


def to_lattice_coords(points, basis) -> list:
    """Rewrite ambient rational points in the Z-basis ``basis`` of M (must be integral)."""
    if basis is None:
        out = []
        for p in points:
            q = _vec(p)
            if any(a.denominator != 1 for a in q):
                raise GeometryError("lattice", f"point {p} is not in the lattice")
            out.append(tuple(int(a) for a in q))
        return out
    basis = la.lattice_basis_from_generators(basis)
    d = len(basis[0])
    if len(basis) != d:
        raise GeometryError("input", "lattice generators must span the ambient space")
    cols = basis
    out = []
    for p in points:
        c = la.solve_in_span(cols, _vec(p))
        if c is None or any(a.denominator != 1 for a in c):
            raise GeometryError("lattice", f"point {p} is not in the lattice")
        out.append(tuple(int(a) for a in c))
    return out


class LatticePolytope:
    """Convex hull of integer points (coordinates already in a basis of M)."""

    def __init__(self, points, canonicalize: bool = True):
        pts = []
        seen = set()
        for p in points:
            p = tuple(int(a) for a in p)
            if p not in seen:
                seen.add(p)
                pts.append(p)
        if not pts:
            raise GeometryError("input", "use EMPTY for the empty polytope")
        self.ambient_dim = len(pts[0])
        self.origin = pts[0]
        diffs = [tuple(a - b for a, b in zip(p, self.origin)) for p in pts[1:]]
        if self.ambient_dim and any(diffs):
            basis = la.saturated_basis(diffs, self.ambient_dim)
        else:
            basis = []
        if len(basis) == self.ambient_dim:
            basis = [[1 if i == j else 0 for i in range(self.ambient_dim)] for j in range(self.ambient_dim)]
        self.frame = basis
        self.dim = len(basis)
        local = [self.to_local(p) for p in pts]
        facets = _facets(local, self.dim)
        # extreme points: the intersection of facets through a vertex is the vertex alone
        keep = []
        for i in range(len(pts)):
            common = set(range(len(pts)))
            for _, _, fs in facets:
                if i in fs:
                    common &= fs
            if self.dim == 0 or common == {i}:
                keep.append(i)
        self.dropped = [pts[i] for i in range(len(pts)) if i not in keep]
        if self.dropped and not canonicalize:
            raise GeometryError("input", f"non-extreme points {self.dropped}")
        re = {old: new for new, old in enumerate(keep)}
        self.vertices = tuple(pts[i] for i in keep)
        self.local = tuple(local[i] for i in keep)
        self.facets = tuple((a, b, frozenset(re[i] for i in fs if i in re)) for a, b, fs in facets)
        self._faces = None
        self._poset = None

    # coordinates
    def to_local(self, p) -> tuple:
        d = [a - b for a, b in zip(p, self.origin)]
        if not self.frame:
            if any(d):
                raise GeometryError("dimension", "point outside the affine span")
            return ()
        if len(self.frame) == self.ambient_dim and all(
                self.frame[j][i] == (1 if i == j else 0) for i in range(self.ambient_dim) for j in range(self.dim)):
            return tuple(d)
        c = la.solve_in_span(self.frame, d)
        if c is None:
            raise GeometryError("dimension", "point outside the affine span")
        return tuple(int(a) if a.denominator == 1 else a for a in c)

    def key(self) -> frozenset:
        return frozenset(self.vertices)

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={len(self.vertices)})"

    def contains(self, p, strict: bool = False) -> bool:
        try:
            x = self.to_local(p)
        except GeometryError:
            return False
        for a, b, _ in self.facets:
            s = sum(ai * xi for ai, xi in zip(a, x))
            if s > b or (strict and s == b):
                return False
        return True

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    # faces
    def faces(self) -> list:
        """All faces as frozensets of vertex indices, including the empty face and P."""
        if self._faces is None:
            full = frozenset(range(len(self.vertices)))
            found = {full}
            frontier = [fs for _, _, fs in self.facets]
            for f in frontier:
                found.add(f)
            while frontier:
                nxt = []
                for f in frontier:
                    for _, _, g in self.facets:
                        h = f & g
                        if h not in found:
                            found.add(h)
                            nxt.append(h)
                frontier = nxt
            found.add(frozenset())
            self._faces = sorted(found, key=lambda s: (len(s), sorted(s)))
        return self._faces

    def face_dim(self, face) -> int:
        face = list(face)
        if not face:
            return -1
        base = self.local[face[0]]
        return la.rank([[a - b for a, b in zip(self.local[i], base)] for i in face[1:]]) if len(face) > 1 else 0

    def face_polytope(self, face) -> "LatticePolytope | None":
        if not face:
            return None
        return LatticePolytope([self.vertices[i] for i in sorted(face)])

    def face_lattice(self) -> RankedPoset:
        if self._poset is None:
            fs = self.faces()
            pos = {f: i for i, f in enumerate(fs)}
            down = []
            for f in fs:
                m = 0
                for g in fs:
                    if g <= f:
                        m |= 1 << pos[g]
                down.append(m)
            names = [subset_name(f) for f in fs]
            self._poset = RankedPoset(names, [self.face_dim(f) + 1 for f in fs], down)
        return self._poset

    # volume and counting
    def normalized_volume(self) -> int:
        """dim! times the Euclidean volume in the intrinsic lattice, by a pulling triangulation."""
        if self.dim == 0:
            return 1
        total = 0
        for simplex in self.pulling_triangulation():
            v0 = self.local[simplex[0]]
            m = [[a - b for a, b in zip(self.local[i], v0)] for i in simplex[1:]]
            total += abs(la.det(m))
        return int(total)

    def pulling_triangulation(self) -> list:
        faces = self.faces()
        dims = {f: self.face_dim(f) for f in faces}

        def tri(f):
            d = dims[f]
            if d == len(f) - 1:
                return [tuple(sorted(f))]
            v0 = min(f)
            out = []
            for g in faces:
                if dims[g] == d - 1 and g < f and v0 not in g:
                    out.extend((v0,) + s for s in tri(g))
            return out

        return tri(frozenset(range(len(self.vertices))))

    def _box(self, m: int):
        lo = [m * min(v[i] for v in self.local) for i in range(self.dim)]
        hi = [m * max(v[i] for v in self.local) for i in range(self.dim)]
        return lo, hi

    def count(self, m: int, strict: bool = False) -> int:
        """#(mP cap M), or the relative interior count when ``strict``."""
        if m == 0:
            return 0 if (strict and self.dim > 0) else 1
        if self.dim == 0:
            return 1
        A = np.array([a for a, _, _ in self.facets], dtype=np.int64)
        b = np.array([m * bb for _, bb, _ in self.facets], dtype=np.int64)
        lo, hi = self._box(m)
        total = 0
        if self.dim == 1:
            xs = np.arange(lo[0], hi[0] + 1, dtype=np.int64)[:, None]
            vals = xs @ A.T
            ok = (vals < b) if strict else (vals <= b)
            return int(ok.all(axis=1).sum())
        rest = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo[1:], hi[1:])]
        grid = np.stack(np.meshgrid(*rest, indexing="ij"), axis=-1).reshape(-1, self.dim - 1)
        partial = grid @ A[:, 1:].T
        for x0 in range(lo[0], hi[0] + 1):
            vals = partial + x0 * A[:, 0]
            ok = (vals < b) if strict else (vals <= b)
            total += int(ok.all(axis=1).sum())
        return total

    def lattice_points(self, strict: bool = False) -> list:
        """Ambient coordinates of the lattice points of P (or of its relative interior)."""
        if self.dim == 0:
            return [] if strict else [self.vertices[0]]
        out = []
        lo, hi = self._box(1)
        import itertools
        for x in itertools.product(*[range(l, h + 1) for l, h in zip(lo, hi)]):
            good = True
            for a, b, _ in self.facets:
                s = sum(ai * xi for ai, xi in zip(a, x))
                if s > b or (strict and s == b):
                    good = False
                    break
            if good:
                out.append(self.from_local(x))
        return out

    def from_local(self, x) -> tuple:
        p = list(self.origin)
        for c, bvec in zip(x, self.frame):
            for i in range(self.ambient_dim):
                p[i] += c * bvec[i]
        return tuple(int(a) for a in p)


def _facets(local, k: int) -> list:
    """(normal, rhs, index set) for each facet of the full-dimensional point set in Z^k."""
    if k == 0:
        return []
    out = {}
    n = len(local)
    for sub in combinations(range(n), k):
        p0 = local[sub[0]]
        diffs = [[a - b for a, b in zip(local[i], p0)] for i in sub[1:]]
        if k > 1 and la.rank(diffs) != k - 1:
            continue
        normal = la.integer_kernel(diffs, k) if k > 1 else [[1]]
        if len(normal) != 1:
            continue
        a = normal[0]
        b = sum(x * y for x, y in zip(a, p0))
        vals = [sum(x * y for x, y in zip(a, q)) for q in local]
        if all(v <= b for v in vals):
            pass
        elif all(v >= b for v in vals):
            a = [-x for x in a]
            b = -b
            vals = [-v for v in vals]
        else:
            continue
        fs = frozenset(i for i in range(n) if vals[i] == b)
        if len(fs) == n:
            continue
        out.setdefault(fs, (tuple(a), b, fs))
    return list(out.values())


def polytope(vertices, lattice_basis=None) -> LatticePolytope:
    """Lattice polytope from ambient vertices (optionally w.r.t. generators of M)."""
    return LatticePolytope(to_lattice_coords(vertices, lattice_basis))


def face_lattice(P: LatticePolytope) -> RankedPoset:
    return P.face_lattice()


def count_points(P: LatticePolytope, m: int) -> int:
    return P.count(m)


def interior_count(P: LatticePolytope, m: int = 1) -> int:
    return P.count(m, strict=True)


# subdivisions

class CellComplex:
    """Lattice polyhedral subdivision of P.

    ``points`` are integer points in the coordinates of P's vertices, ``faces`` all
    cells (frozensets of point indices, including the empty cell).
    """

    def __init__(self, P: LatticePolytope, points, maximal, regular: bool = False, heights=None):
        self.P = P
        self.points = [tuple(p) for p in points]
        self.maximal = [frozenset(c) for c in maximal]
        self.regular = regular
        self.heights = heights
        self._cell_poly: dict = {}
        self._sfs = None
        faces = {frozenset()}
        for c in self.maximal:
            poly = self.cell(c)
            gids = sorted(c, key=lambda i: self.points[i])
            vid = {}
            for i in gids:
                vid[poly.vertices.index(self.points[i])] = i
            for f in poly.faces():
                faces.add(frozenset(vid[j] for j in f))
        self.faces = sorted(faces, key=lambda s: (len(s), sorted(s)))
        self.face_index = {f: i for i, f in enumerate(self.faces)}

    def cell(self, c) -> LatticePolytope:
        c = frozenset(c)
        poly = self._cell_poly.get(c)
        if poly is None:
            poly = LatticePolytope([self.points[i] for i in sorted(c)], canonicalize=False)
            self._cell_poly[c] = poly
        return poly

    def cell_dim(self, c) -> int:
        return -1 if not c else self.cell(c).dim

    def poset(self) -> RankedPoset:
        fs = self.faces
        pos = self.face_index
        down = []
        for f in fs:
            m = 0
            for g in fs:
                if g <= f:
                    m |= 1 << pos[g]
            down.append(m)
        return RankedPoset([subset_name(f) for f in fs], [self.cell_dim(f) + 1 for f in fs], down)

    def carrier(self, F) -> frozenset:
        """Smallest face of P (as a set of P-vertex indices) containing cell F."""
        F = frozenset(F)
        full = frozenset(range(len(self.P.vertices)))
        if not F:
            return frozenset()
        res = full
        loc = [self.P.to_local(self.points[i]) for i in F]
        for a, b, fs in self.P.facets:
            if all(sum(x * y for x, y in zip(a, p)) == b for p in loc):
                res = res & fs
        return res

    def to_sfs(self) -> SFS:
        if self._sfs is None:
            gamma = self.poset()
            base = self.P.face_lattice()
            sigma = {subset_name(f): subset_name(self.carrier(f)) for f in self.faces}
            self._sfs = validate_sfs(gamma, base, sigma, geometric=True)
        return self._sfs

    def link(self, F) -> RankedPoset:
        g = self.to_sfs().gamma
        y = self.face_index[frozenset(F)]
        return g.subposet(g.up[y])

    def restrict(self, Q) -> "CellComplex":
        """Subdivision of the face Q (P-vertex indices) induced by S."""
        Q = frozenset(Q)
        cells = [f for f in self.faces if f and self.carrier(f) <= Q]
        maximal = [f for f in cells if not any(f < g for g in cells)]
        Qpoly = LatticePolytope([self.P.vertices[i] for i in sorted(Q)])
        pts = sorted({i for c in maximal for i in c})
        re = {o: n for n, o in enumerate(pts)}
        sub_points = [self.points[i] for i in pts]
        return CellComplex(Qpoly, sub_points, [frozenset(re[i] for i in c) for c in maximal],
                           regular=self.regular)

    def is_unimodular(self) -> bool:
        return all(self.cell(c).is_simplex() and self.cell(c).normalized_volume() == 1 for c in self.maximal)

    def refines(self, other: "CellComplex") -> bool:
        """Every cell of self lies in a cell of other (both in the same frame)."""
        polys = [other.cell(c) for c in other.maximal]
        for c in self.maximal:
            if not any(all(q.contains(self.points[i]) for i in c) for q in polys):
                return False
        return True

    def refinement_map(self, other: "CellComplex") -> dict:
        """Cell of self -> smallest cell of other containing it (by index in ``faces``)."""
        out = {}
        cand = [(len(g), g, other.cell(g)) for g in other.faces if g]
        cand.sort(key=lambda t: (t[0], sorted(t[1])))
        for f in self.faces:
            if not f:
                out[self.face_index[f]] = other.face_index[frozenset()]
                continue
            # minimal containing cell: the one of least dimension
            best = None
            for _, g, poly in cand:
                if all(poly.contains(self.points[i]) for i in f):
                    if best is None or poly.dim < best[1].dim:
                        best = (g, poly)
            if best is None:
                raise GeometryError("overlap", "cell not contained in any coarser cell")
            out[self.face_index[f]] = other.face_index[best[0]]
        return out


def build_complex(P: LatticePolytope, cells, points=None, regular: bool = False,
                  heights=None) -> CellComplex:
    """Validate a subdivision of P.

    ``cells`` are lists of indices into ``points`` (points in the same
    coordinates as P's vertices) or lists of explicit points.
    """
    if points is not None:
        pts = [tuple(int(a) for a in p) for p in points]
        raw_cells = [[pts[i] for i in c] for c in cells]
    else:
        raw_cells = [[tuple(int(a) for a in p) for p in c] for c in cells]
    uniq: dict = {}
    idx_cells = []
    for c in raw_cells:
        ic = []
        for p in c:
            if len(p) != P.ambient_dim:
                raise GeometryError("dimension", f"point {p} has the wrong dimension")
            x = P.to_local(p)
            if any(Fraction(a).denominator != 1 for a in x):
                raise GeometryError("lattice", f"point {p} is not a lattice point of aff(P)")
            uniq.setdefault(p, len(uniq))
            ic.append(uniq[p])
        idx_cells.append(ic)
    pts = sorted(uniq, key=lambda p: uniq[p])
    # canonicalise cells to their extreme points
    maximal = []
    for ic in idx_cells:
        poly = LatticePolytope([pts[i] for i in ic])
        maximal.append(frozenset(i for i in ic if pts[i] in poly.vertices))
    if len(set(maximal)) != len(maximal):
        raise GeometryError("overlap", "repeated cell")
    _validate_cells(P, pts, maximal)
    return CellComplex(P, pts, maximal, regular=regular, heights=heights)


def _validate_cells(P: LatticePolytope, points, maximal) -> None:
    k = P.dim
    polys = [LatticePolytope([points[i] for i in sorted(c)]) for c in maximal]
    for c, poly in zip(maximal, polys):
        if poly.dim != k:
            raise GeometryError("dimension", f"cell {sorted(c)} has dimension {poly.dim}, expected {k}")
        for i in c:
            if not P.contains(points[i]):
                raise GeometryError("overlap", f"cell {sorted(c)} leaves P")
    vol = sum(p.normalized_volume() for p in polys)
    if vol < P.normalized_volume():
        raise GeometryError("gap", f"cells cover volume {vol} < {P.normalized_volume()}")
    if vol > P.normalized_volume():
        raise GeometryError("overlap", f"cells cover volume {vol} > {P.normalized_volume()}")
    if k == 0:
        return
    # facet matching: every facet is on the boundary or shared with one cell on the other side
    owners: dict = {}
    for ci, (c, poly) in enumerate(zip(maximal, polys)):
        order = [poly.vertices.index(points[i]) for i in sorted(c)]
        gid = dict(zip(order, sorted(c)))
        for a, b, fs in poly.facets:
            key = frozenset(gid[j] for j in fs)
            owners.setdefault(key, []).append((ci, a, b))
    for key, lst in owners.items():
        loc = [P.to_local(points[i]) for i in key]
        on_boundary = any(all(sum(x * y for x, y in zip(a, p)) == b for p in loc)
                          for a, b, _ in P.facets)
        if on_boundary:
            if len(lst) != 1:
                raise GeometryError("overlap", f"boundary facet {sorted(key)} used twice")
            continue
        if len(lst) != 2:
            raise GeometryError("gap" if len(lst) == 1 else "overlap",
                                f"interior facet {sorted(key)} belongs to {len(lst)} cells")
        (_, a1, _), (_, a2, _) = lst
        if tuple(a1) != tuple(-x for x in a2):
            raise GeometryError("overlap", f"cells sharing facet {sorted(key)} lie on the same side")
    # pairwise intersections
    for (c1, p1), (c2, p2) in combinations(zip(maximal, polys), 2):
        common = c1 & c2
        for c, p, other in ((c1, p1, c2), (c2, p2, c1)):
            fset = frozenset(p.vertices.index(points[i]) for i in common)
            if fset not in set(p.faces()):
                raise GeometryError("overlap", f"cells {sorted(c1)} and {sorted(c2)} meet in a non-face")
            for i in other - common:
                if p.contains(points[i]):
                    raise GeometryError("overlap", f"vertex {points[i]} of one cell lies in another")


def trivial_complex(P: LatticePolytope) -> CellComplex:
    return build_complex(P, [list(P.vertices)])


def regular_from_heights(P: LatticePolytope, points, heights) -> CellComplex:
    """Project the lower faces of the lifted point configuration."""
    pts = [tuple(int(a) for a in p) for p in points]
    for v in P.vertices:
        if v not in pts:
            raise GeometryError("input", f"vertex {v} of P missing from the point set")
    loc = [tuple(int(a) for a in P.to_local(p)) for p in pts]
    w = [Fraction(h) for h in heights]
    if len(w) != len(loc):
        raise GeometryError("input", "one height per point is required")
    k = P.dim
    cells = set()
    if k == 0:
        cells.add(frozenset([0]))
    for sub in combinations(range(len(loc)), k + 1):
        mat = [list(loc[i]) + [1] for i in sub]
        sol = la.solve(mat, [w[i] for i in sub])
        if sol is None:
            continue
        c, c0 = sol[:k], sol[k]
        on = []
        ok = True
        for j, x in enumerate(loc):
            hv = sum(ci * xi for ci, xi in zip(c, x)) + c0
            if w[j] < hv:
                ok = False
                break
            if w[j] == hv:
                on.append(j)
        if ok:
            cells.add(frozenset(on))
    cells = sorted(cells, key=sorted)
    return build_complex(P, [[pts[i] for i in c] for c in cells], regular=True, heights=list(heights))


EMPTY_DIM = -1


def dilate_counts(P: LatticePolytope, upto: int) -> list:
    return [P.count(m) for m in range(upto + 1)]


def simplex_volume(P: LatticePolytope) -> int:
    v0 = P.local[0]
    return int(abs(la.det([[a - b for a, b in zip(v, v0)] for v in P.local[1:]])))


def euclidean_volume(P: LatticePolytope) -> Fraction:
    return Fraction(P.normalized_volume(), factorial(P.dim))
