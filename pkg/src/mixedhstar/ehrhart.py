"""h*-polynomials of lattice polytopes and the invariants of lattice subdivisions.

Polytope level: ``hstar`` (interpolation from dilate counts), ``local_hstar``
(alternating face sum), ``mixed_hstar`` and the box-point oracle for
simplices.  Subdivision level: :class:`SubdivisionInvariants` computes the
limit mixed, local limit mixed and refined limit mixed h*-polynomials of a
:class:`~mixedhstar.polytope.CellComplex` for every face of P, using the
relative h- and local h-polynomials of the induced subdivision of posets.

The empty polytope is represented by ``None`` (dimension -1, h* = l* = 1).
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import comb

import numpy as np

from . import intlinalg as la
from . import kls
from .kls import g_coeffs, g_dual_coeffs, padd, pmul, reverse, tminus1
from .laurent import ONE, ZERO, LaurentPoly, set_zero, substitute
from .polytope import CellComplex, GeometryError, LatticePolytope, trivial_complex
from .poset import bits
from .subdivision import (SFS, UV, U_OVER_V, Check, coeffs_at, pushforward, validate_sfs,
                          vpow)

U, V, W, T = (LaurentPoly.var(n) for n in "uvwt")
UVW2 = (0, 2, 2, 4)   # t -> u v w^2

_HSTAR: dict = {}
_LSTAR: dict = {}
_BOX: dict = {}
# per-cache entry limit; a full cache is simply emptied
CACHE_SIZE = int(os.environ.get("MIXEDHSTAR_CACHE_SIZE", "20000"))


def _store(cache: dict, key, value):
    if len(cache) >= CACHE_SIZE:
        cache.clear()
    cache[key] = value
    return value


def _dim(P) -> int:
    return -1 if P is None else P.dim


def clear_caches() -> None:
    _HSTAR.clear()
    _LSTAR.clear()
    _BOX.clear()


# polytope invariants

def hstar_coeffs(P: LatticePolytope | None) -> tuple:
    """h*(P) from f_P(0..dim P) by the binomial transform."""
    if P is None:
        return (1,)
    key = frozenset(P.vertices)
    hit = _HSTAR.get(key)
    if hit is None:
        d = P.dim
        f = [P.count(m) for m in range(d + 1)]
        h = [sum((-1) ** i * comb(d + 1, i) * f[j - i] for i in range(j + 1)) for j in range(d + 1)]
        hit = kls._trim(h)
        _store(_HSTAR, key, hit)
    return hit


def hstar(P: LatticePolytope | None) -> LaurentPoly:
    return kls.to_poly(hstar_coeffs(P))


def _faces(P: LatticePolytope):
    """(face polytopes or None, face lattice, index of P)."""
    B = P.face_lattice()
    cache = P.__dict__.setdefault("_face_polys", {})
    polys = []
    for f in P.faces():
        if f not in cache:
            cache[f] = P.face_polytope(f)
        polys.append(cache[f])
    return polys, B, B.top()


def lstar_coeffs(P: LatticePolytope | None) -> tuple:
    """l*(P) = sum_Q (-1)^{dim P - dim Q} h*(Q) g([Q,P]^*)."""
    if P is None:
        return (1,)
    key = frozenset(P.vertices)
    hit = _LSTAR.get(key)
    if hit is None:
        polys, B, top = _faces(P)
        acc: tuple = ()
        for x, Q in enumerate(polys):
            sign = -1 if (P.dim - _dim(Q)) % 2 else 1
            term = pmul(hstar_coeffs(Q), g_dual_coeffs(B, x, top))
            acc = padd(acc, tuple(sign * c for c in term))
        hit = acc
        _store(_LSTAR, key, hit)
    return hit


def local_hstar(P: LatticePolytope | None) -> LaurentPoly:
    return kls.to_poly(lstar_coeffs(P))


def hstar_from_local(P: LatticePolytope) -> LaurentPoly:
    """sum_Q l*(Q) g([Q,P]); must equal h*(P)."""
    polys, B, top = _faces(P)
    acc: tuple = ()
    for x, Q in enumerate(polys):
        acc = padd(acc, pmul(lstar_coeffs(Q), g_coeffs(B, x, top)))
    return kls.to_poly(acc)


def mixed_hstar(P: LatticePolytope | None) -> LaurentPoly:
    """h*(P;u,v) = sum_Q v^{dim Q+1} l*(Q; u/v) g([Q,P]; uv)."""
    if P is None:
        return ONE
    polys, B, top = _faces(P)
    out = ZERO
    for x, Q in enumerate(polys):
        a = coeffs_at(lstar_coeffs(Q), U_OVER_V, vpow(_dim(Q) + 1))
        if a:
            out = out + a * coeffs_at(g_coeffs(B, x, top), UV)
    return out


def box_local_coeffs(P: LatticePolytope | None) -> tuple:
    """l*(P) of a simplex by counting lattice points in the open parallelepiped.

    The cone generators are (v_i, 1) in the intrinsic frame.  A point w is
    inside iff all barycentric coordinates adj(A) w / det(A) lie in (0, 1).
    """
    if P is None:
        return (1,)
    if not P.is_simplex():
        raise GeometryError("input", "box oracle needs a simplex")
    key = frozenset(P.vertices)
    hit = _BOX.get(key)
    if hit is not None:
        return hit
    k = P.dim
    A = [[P.local[j][i] for j in range(k + 1)] for i in range(k)] + [[1] * (k + 1)]
    D = int(la.det(A))
    inv = _inverse(A)
    adj = np.array([[int(x * D) for x in row] for row in inv], dtype=np.int64)
    if D < 0:
        adj, D = -adj, -D
    lo = [sum(min(0, a) for a in row) for row in A]
    hi = [sum(max(0, a) for a in row) for row in A]
    counts = [0] * (k + 2)
    rest = [np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in range(1, k + 1)]
    grid = np.stack(np.meshgrid(*rest, indexing="ij"), axis=-1).reshape(-1, k) if k else np.zeros((1, 0), np.int64)
    partial = grid @ adj[:, 1:].T
    for w0 in range(lo[0], hi[0] + 1):
        bary = partial + w0 * adj[:, 0]
        ok = ((bary > 0) & (bary < D)).all(axis=1)
        if ok.any():
            heights = bary[ok].sum(axis=1) // D
            for h in heights.tolist():
                counts[h] += 1
    hit = kls._trim(counts)
    _store(_BOX, key, hit)
    return hit


def _inverse(A) -> list:
    n = len(A)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        cols.append(la.solve(A, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def hstar_box_oracle(P: LatticePolytope) -> tuple:
    """(l*(P), h*(P)) for a simplex via box points of P and of all its faces."""
    l = box_local_coeffs(P)
    polys, _, _ = _faces(P)
    h: tuple = ()
    for Q in polys:
        h = padd(h, box_local_coeffs(Q))
    return kls.to_poly(l), kls.to_poly(h)


def ehrhart_value(P: LatticePolytope, m: int) -> Fraction:
    """Value at an arbitrary integer m of the polynomial interpolating f_P(0..dim P)."""
    d = P.dim
    xs = list(range(d + 1))
    ys = [P.count(x) for x in xs]
    total = Fraction(0)
    for i, xi in enumerate(xs):
        term = Fraction(ys[i])
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(m - xj, xi - xj)
        total += term
    return total


def check_polytope(P: LatticePolytope, oracle: bool = True) -> list:
    """Single-polytope identities: h*, l*, mixed h*, reciprocity, box oracle."""
    d = P.dim
    h = hstar_coeffs(P)
    l = lstar_coeffs(P)
    hp, lp = kls.to_poly(h), kls.to_poly(l)
    interior = P.count(1, strict=True)
    out = [
        Check("h*_0 = 1", h[:1] == (1,)),
        Check("h*(1) = normalized volume", sum(h) == P.normalized_volume(), f"{sum(h)}"),
        Check("h*_dim = interior points", (h[d] if len(h) > d else 0) == interior),
        Check("degree h* <= dim P", len(h) <= d + 1),
        Check("h* and l* non-negative", all(c >= 0 for c in h) and all(c >= 0 for c in l)),
        Check("l* symmetric", kls.to_poly(reverse(l, d + 1)) == lp if len(l) <= d + 2 else False, str(lp)),
        Check("l*_0 = 0, l*_1 = l*_dim = h*_dim",
              (l[0] if l else 0) == 0 and _at(l, 1) == _at(l, d) == _at(h, d) if d >= 1 else l == ()),
        Check("h* recovered from local h*", hstar_from_local(P) == hp),
    ]
    m = mixed_hstar(P)
    swap = substitute(m, {"u": V, "v": U})
    top = coeffs_at(l, U_OVER_V, vpow(d + 1))
    out.append(Check("mixed h* u<->v symmetric", m == swap))
    out.append(Check("mixed h* at v=1 is h*", substitute(m, {"v": 1, "u": T}) == hp))
    out.append(Check("mixed h* top combined degree slice",
                     (m.is_zero() or m.total_degree("uv") <= d + 1) and m.graded_part(d + 1) == top))
    out.append(Check("Ehrhart reciprocity", all(
        ehrhart_value(P, -k) == (-1) ** d * P.count(k, strict=True) for k in range(1, d + 2))))
    B = P.face_lattice()
    polys, _, _ = _faces(P)
    eta = kls.PosetFunction(B, {x: LaurentPoly.monomial(t=Fraction(-(_dim(Q) + 1), 2)) * hstar(Q)
                                for x, Q in enumerate(polys)})
    out.append(Check("eta of P acceptable", kls.is_acceptable(eta)))
    if oracle and P.is_simplex():
        bl, bh = hstar_box_oracle(P)
        out.append(Check("box oracle l*", bl == lp, str(bl)))
        out.append(Check("box oracle h*", bh == hp, str(bh)))
    return out


def _at(c, i: int) -> int:
    return c[i] if 0 <= i < len(c) else 0


# subdivisions

class SubdivisionInvariants:
    """Limit mixed, local limit mixed and refined invariants of a lattice subdivision.

    Values are indexed by the faces x of P (indices into the face lattice)
    and describe the restricted subdivision of that face.
    """

    def __init__(self, S: CellComplex):
        self.S = S
        self.P = S.P
        self.sfs: SFS = S.to_sfs()
        self.B = self.sfs.base
        self.G = self.sfs.gamma
        self.top = self.sfs.top()
        self.dim = self.P.dim
        self.cell_polys = [S.cell(f) if f else None for f in S.faces]
        self.cell_lstar = [lstar_coeffs(c) for c in self.cell_polys]
        self.cell_dim = [_dim(c) for c in self.cell_polys]
        self._limit: dict = {}
        self._refined: dict = {}
        self._interior: list | None = None

    def face_polytope(self, x: int) -> LatticePolytope | None:
        polys, _, _ = _faces(self.P)
        return polys[x]

    def face_dim(self, x: int) -> int:
        return self.B.rank[x] - 1

    def limit(self, x: int | None = None) -> tuple:
        """(h*(Q, S|_Q; u, v), l*(Q, S|_Q; u, v)) for the face Q = x."""
        x = self.top if x is None else x
        hit = self._limit.get(x)
        if hit is None:
            hit = limit_sums(self.sfs, x, self.cell_lstar)
            self._limit[x] = hit
        return hit

    def limit_mixed(self, x=None) -> LaurentPoly:
        return self.limit(x)[0]

    def local_limit_mixed(self, x=None) -> LaurentPoly:
        return self.limit(x)[1]

    def refined(self, x: int | None = None) -> LaurentPoly:
        """sum_{Q' <= Q} w^{dim Q'+1} l*(Q', S|_Q'; u, v) g([Q', Q]; u v w^2)."""
        x = self.top if x is None else x
        hit = self._refined.get(x)
        if hit is None:
            hit = ZERO
            for x2 in bits(self.B.down[x]):
                lx = self.local_limit_mixed(x2)
                if lx:
                    wk = LaurentPoly({(0, 0, 0, 2 * self.B.rank[x2]): 1})
                    hit = hit + wk * lx * coeffs_at(g_coeffs(self.B, x2, x), UVW2)
            self._refined[x] = hit
        return hit

    def interior_counts(self) -> list:
        """#(Int F cap M) for every cell F (0 for the empty cell)."""
        if self._interior is None:
            self._interior = [0 if c is None else c.count(1, strict=True) for c in self.cell_polys]
        return self._interior


def limit_sums(s: SFS, x: int, lstar: list) -> tuple:
    """sum over cells y with sigma(y) <= x of v^{rho(y)} l*(y; u/v) times h or l of the link, at t = uv."""
    G = s.gamma
    r0 = G.rank[s.bottom()]
    h = ZERO
    l = ZERO
    for y in bits(s.pre[x]):
        a = lstar[y]
        if not a:
            continue
        a = coeffs_at(a, U_OVER_V, vpow(G.rank[y] - r0))
        hc = s.h_coeffs(x, y)
        if hc:
            h = h + a * coeffs_at(hc, UV)
        lc = s.l_coeffs(x, y)
        if lc:
            l = l + a * coeffs_at(lc, UV)
    return h, l


def limit_mixed_hstar(S: CellComplex) -> LaurentPoly:
    return SubdivisionInvariants(S).limit_mixed()


def local_limit_mixed_hstar(S: CellComplex) -> LaurentPoly:
    return SubdivisionInvariants(S).local_limit_mixed()


def refined_limit_mixed_hstar(S: CellComplex) -> LaurentPoly:
    return SubdivisionInvariants(S).refined()


def refinement_sfs(fine: CellComplex, coarse: CellComplex) -> SFS:
    """The subdivision of posets S' -> S sending a cell to the smallest cell containing it."""
    if not fine.refines(coarse):
        raise GeometryError("overlap", "the finer complex does not refine the coarser one")
    m = fine.refinement_map(coarse)
    return validate_sfs(fine.to_sfs().gamma, coarse.to_sfs().gamma, [m[i] for i in range(len(fine.faces))],
                        geometric=True)


# helpers for the batteries

def _swap(p: LaurentPoly) -> LaurentPoly:
    return substitute(p, {"u": V, "v": U})


def _nonneg(*ps) -> bool:
    return all(c >= 0 for p in ps for _, c in p.items())


def _gdual_uv(B, x, top, img=UV) -> LaurentPoly:
    return coeffs_at(g_dual_coeffs(B, x, top), img)


def check_pushforward(inv: SubdivisionInvariants) -> list:
    """The four pushforward identities for h* and l*, plus acceptability of eta over S."""
    s, G, B, P = inv.sfs, inv.G, inv.B, inv.P
    top, d = inv.top, inv.dim
    hP = hstar(P)
    lP = local_hstar(P)
    eta_S = kls.PosetFunction(G, {y: LaurentPoly.monomial(t=Fraction(-(inv.cell_dim[y] + 1), 2))
                                  * hstar(inv.cell_polys[y]) for y in range(len(G))})
    polys, _, _ = _faces(P)
    eta_P = kls.PosetFunction(B, {x: LaurentPoly.monomial(t=Fraction(-(_dim(Q) + 1), 2)) * hstar(Q)
                                  for x, Q in enumerate(polys)})
    out = [Check("pushforward of eta over S is eta of P", pushforward(s, eta_S) == eta_P)]
    acc: tuple = ()
    for y in bits(s.fiber[top]):
        acc = padd(acc, pmul(hstar_coeffs(inv.cell_polys[y]), tminus1(d - inv.cell_dim[y])))
    out.append(Check("h* as interior cell sum", kls.to_poly(acc) == hP))
    h3: tuple = ()
    l4: tuple = ()
    for y in range(len(G)):
        a = inv.cell_lstar[y]
        h3 = padd(h3, pmul(a, s.h_coeffs(top, y)))
        l4 = padd(l4, pmul(a, s.l_coeffs(top, y)))
    out.append(Check("h* = sum l*(F) h(link F)", kls.to_poly(h3) == hP))
    out.append(Check("l* = sum l*(F) l(link F)", kls.to_poly(l4) == lP))
    if len(G) <= 400:
        out.append(Check("eta over S acceptable", kls.is_acceptable(eta_S)))
    out.append(Check("h* >= h(S) and l* >= l(S)",
                     _nonneg(hP - s.h(), lP - s.local_h())))
    return out


def check_basic(inv: SubdivisionInvariants) -> list:
    """The seven properties of the limit mixed h*-polynomials."""
    B, P, top, d = inv.B, inv.P, inv.top, inv.dim
    h, l = inv.limit()
    out = [Check("(1) u<->v symmetry", h == _swap(h) and l == _swap(l))]
    out.append(Check("(2) v=1 gives h* and l*",
                     substitute(h, {"v": 1, "u": T}) == hstar(P) and substitute(l, {"v": 1, "u": T}) == local_hstar(P)))
    inv_h = substitute(h, {"u": U ** -1, "v": V ** -1}) * (U * V) ** (d + 1)
    rhs = ZERO
    for x in range(len(B)):
        rhs = rhs + inv.limit_mixed(x) * (U * V - 1) ** (d - inv.face_dim(x))
    inv_l = substitute(l, {"u": U ** -1, "v": V ** -1}) * (U * V) ** (d + 1)
    out.append(Check("(3) symmetry", inv_h == rhs and inv_l == l))
    out.append(Check("(4) constant terms", set_zero(h, "u") == ONE and set_zero(l, "u").is_zero()))
    triv = SubdivisionInvariants(trivial_complex(P))
    th, tl = triv.limit()
    out.append(Check("(5) trivial subdivision",
                     th == mixed_hstar(P) and tl == coeffs_at(lstar_coeffs(P), U_OVER_V, vpow(d + 1))))
    out.append(Check("(6) non-negativity", _nonneg(h, l)))
    acc_h = ZERO
    acc_l = ZERO
    for x in range(len(B)):
        acc_h = acc_h + inv.local_limit_mixed(x) * coeffs_at(g_coeffs(B, x, top), UV)
        sign = -1 if (d - inv.face_dim(x)) % 2 else 1
        acc_l = acc_l + sign * inv.limit_mixed(x) * _gdual_uv(B, x, top)
    out.append(Check("(7) inversion", acc_h == h and acc_l == l))
    return out


def check_combinatorics(inv: SubdivisionInvariants) -> list:
    """The eight properties of the refined limit mixed h*-polynomial."""
    B, P, top, d = inv.B, inv.P, inv.top, inv.dim
    R = inv.refined()
    h, l = inv.limit()
    out = [Check("(1) interchange symmetries", R == _swap(R)
                 and R == substitute(R, {"u": U ** -1, "v": V ** -1, "w": U * V * W}))]
    out.append(Check("(2) specializations", substitute(R, {"w": 1}) == h and
                     substitute(R, {"u": U * W ** -1, "v": 1}) == substitute(mixed_hstar(P), {"v": W})))
    lhs = substitute(R, {"u": U ** -1, "v": V ** -1, "w": W ** -1}) * (U * V * W * W) ** (d + 1)
    rhs = ZERO
    for x in range(len(B)):
        rhs = rhs + inv.refined(x) * (U * V * W * W - 1) ** (d - inv.face_dim(x))
    out.append(Check("(3) symmetry", lhs == rhs))
    out.append(Check("(4) constant terms", set_zero(R, "u") == ONE and set_zero(R, "w") == ONE))
    triv = SubdivisionInvariants(trivial_complex(P))
    out.append(Check("(5) trivial subdivision",
                     triv.refined() == substitute(mixed_hstar(P), {"u": U * W, "v": V * W})))
    out.append(Check("(6) non-negativity", _nonneg(R)))
    acc = ZERO
    for x in range(len(B)):
        sign = -1 if (d - inv.face_dim(x)) % 2 else 1
        acc = acc + sign * inv.refined(x) * _gdual_uv(B, x, top, UVW2)
    out.append(Check("(7) inversion", acc == W ** (d + 1) * l))
    parts = R.split_by("w")
    deg_ok = all(e <= d + 1 for e in parts)
    out.append(Check("(8) w-degree and top coefficient",
                     deg_ok and parts.get(Fraction(d + 1), ZERO) == l))
    return out


def check_restrictions(inv: SubdivisionInvariants) -> list:
    """Face values computed inside S agree with a complex rebuilt on each face."""
    ok = True
    for x, f in enumerate(inv.P.faces()):
        if not f or len(f) == len(inv.P.vertices):
            continue
        sub = SubdivisionInvariants(inv.S.restrict(f))
        ok &= sub.limit() == inv.limit(x) and sub.refined() == inv.refined(x)
    return [Check("restricted complexes agree with face values", ok)]


def check_refinement(fine: CellComplex, coarse: CellComplex) -> list:
    """The three refinement identities for S' refining S."""
    tau = refinement_sfs(fine, coarse)
    fi = SubdivisionInvariants(fine)
    ci = SubdivisionInvariants(coarse)
    s, G, d, top = ci.sfs, ci.G, ci.dim, ci.top
    lstar_fine = fi.cell_lstar
    per_cell = [limit_sums(tau, y, lstar_fine) for y in range(len(G))]
    h1 = ZERO
    for y in bits(s.fiber[top]):
        h1 = h1 + per_cell[y][0] * (U * V - 1) ** (d - ci.cell_dim[y])
    h2 = ZERO
    l3 = ZERO
    for y in range(len(G)):
        lf = per_cell[y][1]
        if not lf:
            continue
        h2 = h2 + lf * coeffs_at(s.h_coeffs(top, y), UV)
        l3 = l3 + lf * coeffs_at(s.l_coeffs(top, y), UV)
    H, L = fi.limit()
    return [
        Check("refinement: interior cell sum", h1 == H),
        Check("refinement: h* via links", h2 == H),
        Check("refinement: l* via links", l3 == L),
        Check("refinement: tau pushforward is a valid subdivision", tau.rank == 0),
    ]


# diamonds

class DiamondTable:
    """Entries (p, q) -> int placed at (q - p, p + q); ``size`` is the number of values per side."""

    def __init__(self, kind: str, size: int, entries: dict, r: int | None = None):
        self.kind = kind
        self.size = size
        self.entries = {k: v for k, v in entries.items()}
        self.r = r

    def __getitem__(self, pq) -> int:
        return self.entries.get(pq, 0)

    def __eq__(self, other):
        return isinstance(other, DiamondTable) and (self.kind, self.size, self.entries, self.r) == (
            other.kind, other.size, other.entries, other.r)

    def title(self) -> str:
        if self.kind == "r-local":
            return f"{self.r}-local h*-diamond"
        return {"hstar": "h*-diamond", "local": "local h*-diamond"}[self.kind]

    def to_json(self) -> dict:
        return {"kind": self.kind, "size": self.size, "r": self.r,
                "entries": [[p, q, v] for (p, q), v in sorted(self.entries.items())]}


def _uv_entries(p: LaurentPoly, extra_w: int | None = None) -> dict:
    out = {}
    for (t2, u2, v2, w2), c in p.items():
        if extra_w is not None and w2 != 2 * extra_w:
            continue
        out[(u2 // 2 - 1, v2 // 2 - 1)] = c
    return out


def diamonds(inv: SubdivisionInvariants) -> dict:
    """h*-diamond, local h*-diamond and r-local h*-diamonds of (P, S)."""
    d = inv.dim
    h, l = inv.limit()
    R = inv.refined()
    out = {"hstar": DiamondTable("hstar", d, _uv_entries(h - ONE)),
           "local": DiamondTable("local", d, _uv_entries(l))}
    body = R - ONE
    layers = []
    for r in range(d):
        layers.append(DiamondTable("r-local", r + 1, _uv_entries(body, extra_w=r + 2), r))
    out["layers"] = layers
    return out


def polytope_diamonds(P: LatticePolytope | None) -> dict:
    """Diamonds of P alone: those of its trivial subdivision."""
    if P is None:
        return {"hstar": DiamondTable("hstar", 0, {}), "local": DiamondTable("local", 0, {}), "layers": []}
    return diamonds(SubdivisionInvariants(trivial_complex(P)))


def render_text(t: DiamondTable) -> str:
    m = t.size - 1
    if m < 0:
        return "1"
    width = max([len(str(v)) for v in t.entries.values()] + [1])
    lines = []
    for y in range(2 * m, -1, -1):
        cells = []
        for x in range(-m, m + 1):
            s = ""
            if (x + y) % 2 == 0:
                p, q = (y - x) // 2, (y + x) // 2
                if 0 <= p <= m and 0 <= q <= m:
                    s = str(t[(p, q)])
            cells.append(s.center(width))
        lines.append(" ".join(cells).rstrip())
    return "\n".join(lines)


def render_svg(t: DiamondTable, cell: int = 40) -> str:
    m = t.size - 1
    if m < 0:
        return ('<svg xmlns="http://www.w3.org/2000/svg" width="40" height="40">'
                '<text x="20" y="25" text-anchor="middle">1</text></svg>\n')
    w = (2 * m + 2) * cell // 2 + cell
    h = (2 * m + 2) * cell // 2 + cell
    cx = w // 2

    def pos(x, y):
        return cx + x * cell // 2, h - cell // 2 - y * cell // 2 - cell // 4

    top = pos(0, 2 * m + 1)
    bot = pos(0, -1)
    left = pos(-m - 1, m)
    right = pos(m + 1, m)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
             f'<polygon points="{bot[0]},{bot[1]} {right[0]},{right[1]} {top[0]},{top[1]} {left[0]},{left[1]}" '
             'fill="none" stroke="black"/>']
    for p in range(m + 1):
        for q in range(m + 1):
            x, y = pos(q - p, p + q)
            parts.append(f'<text x="{x}" y="{y + 5}" text-anchor="middle" font-size="14">{t[(p, q)]}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cell_sum(inv: SubdivisionInvariants, pred) -> int:
    ic = inv.interior_counts()
    total = 0
    for y in range(len(inv.G)):
        if y == inv.sfs.bottom():
            continue
        dF = inv.cell_dim[y]
        dS = inv.B.rank[inv.sfs.sigma[y]] - 1
        if pred(dF, dS):
            total += ic[y]
    return total


def small_terms(inv: SubdivisionInvariants) -> dict:
    """Coefficients h*_{p,q,r} given by sums of interior point counts of cells."""
    d = inv.dim
    vals = {}
    for r in range(1, d):
        for q in range(1, r + 1):
            v = _cell_sum(inv, lambda dF, dS, q=q, r=r: dF == q + 1 and dS == r + 1)
            for key in ((0, q, r), (q, 0, r), (r, r - q, r), (r - q, r, r)):
                vals[key] = v
        v = _cell_sum(inv, lambda dF, dS, r=r: dF <= 1 and dS == r + 1)
        vals[(0, 0, r)] = vals[(r, r, r)] = v
    if d >= 1:
        vals[(0, 0, 0)] = _cell_sum(inv, lambda dF, dS: dF <= 1 and dS <= 1) - d - 1
    return vals


def refined_from_small_terms(inv: SubdivisionInvariants) -> LaurentPoly:
    """Rebuild the refined polynomial for dim P <= 3 from boundary counts and the total sum.

    The sum of all h*_{p,q,r} is the normalized volume minus one (the
    constant term 1 is not among them).
    """
    d = inv.dim
    if d > 3:
        raise ValueError("closed form only for dim P <= 3")
    if d <= 0:
        return ONE
    vals = small_terms(inv)
    if d == 3:
        known = sum(v for k, v in vals.items())
        vals[(1, 1, 2)] = inv.P.normalized_volume() - 1 - known
    body = ZERO
    for (p, q, r), c in vals.items():
        if c:
            body = body + c * U ** p * V ** q * W ** r
    return ONE + U * V * W * W * body


def check_diamonds(inv: SubdivisionInvariants) -> list:
    d = inv.dim
    if d < 1:
        return [Check("diamonds trivial for a point", inv.refined() == ONE and inv.limit() == (ONE, ZERO))]
    D = diamonds(inv)
    H, L, layers = D["hstar"], D["local"], D["layers"]
    h, l = inv.limit()
    R = inv.refined()
    rng = range(d)
    out = []
    shape = all(0 <= p < d and 0 <= q < d for p, q in list(H.entries) + list(L.entries)) and all(
        0 <= p <= t.r and 0 <= q <= t.r for t in layers for p, q in t.entries)
    rebuilt = ONE + sum((c * U ** (p + 1) * V ** (q + 1) * W ** (t.r + 2)
                         for t in layers for (p, q), c in t.entries.items()), ZERO)
    out.append(Check("diamond shapes", shape and rebuilt == R))
    out.append(Check("stacking h*_{p,q} = sum_r h*_{p,q,r}",
                     all(H[(p, q)] == sum(t[(p, q)] for t in layers) for p in rng for q in rng)))
    out.append(Check("local diamond is the top layer", L.entries == layers[-1].entries if layers else True))
    hs, ls = hstar_coeffs(inv.P), lstar_coeffs(inv.P)
    out.append(Check("diagonal sums recover h* and l*",
                     all(_at(hs, i + 1) == sum(H[(i, q)] for q in rng) for i in rng)
                     and all(_at(ls, i + 1) == sum(L[(i, q)] for q in rng) for i in rng)))
    mp = _uv_entries(mixed_hstar(inv.P) - ONE)
    out.append(Check("layer diagonal sums recover the strips of P's diamond",
                     all(mp.get((a, t.r - a), 0) == sum(t[(a, q)] for q in range(t.r + 1))
                         for t in layers for a in range(t.r + 1))))
    out.append(Check("layer symmetries", all(
        t[(p, q)] == t[(q, p)] == t[(t.r - p, t.r - q)] for t in layers for p in range(t.r + 1) for q in range(t.r + 1))))
    out.append(Check("diamond symmetries", all(H[(p, q)] == H[(q, p)] and L[(p, q)] == L[(q, p)]
                                               and L[(p, q)] == L[(d - 1 - p, d - 1 - q)] for p in rng for q in rng)))
    # boundary formulas from interior point counts
    ok = True
    for q in range(1, d):
        v = _cell_sum(inv, lambda dF, dS, q=q: dF == q + 1)
        ok &= H[(0, q)] == H[(q, 0)] == v
        w = _cell_sum(inv, lambda dF, dS, q=q: dF == q + 1 and dS == d)
        ok &= L[(0, q)] == L[(q, 0)] == L[(d - 1, d - 1 - q)] == L[(d - 1 - q, d - 1)] == w
        ok &= H[(d - 1, d - 1 - q)] == H[(d - 1 - q, d - 1)] == w
    ok &= d + 1 + H[(0, 0)] == _cell_sum(inv, lambda dF, dS: dF <= 1)
    w0 = _cell_sum(inv, lambda dF, dS: dF <= 1 and dS == d)
    ok &= L[(0, 0)] == L[(d - 1, d - 1)] == H[(d - 1, d - 1)] == w0
    out.append(Check("boundary entries from interior counts", ok))
    if d == 3:
        w2 = _cell_sum(inv, lambda dF, dS: dF == 2 and dS == 3)
        wb = _cell_sum(inv, lambda dF, dS: dF == 2 and dS < 3)
        out.append(Check("middle entries in dimension 3",
                         _at(ls, 2) == L[(1, 1)] + 2 * w2 and _at(hs, 2) == H[(1, 1)] + 2 * w2 + wb))
    st = small_terms(inv)
    out.append(Check("refined coefficients from interior counts",
                     all(layers[r][(p, q)] == v for (p, q, r), v in st.items())))
    if d <= 3:
        out.append(Check("refined polynomial from small terms", refined_from_small_terms(inv) == R))
    out.append(Check("diamonds non-negative", _nonneg(h, l, R)))
    if len(inv.S.maximal) == 1:
        out.append(Check("trivial subdivision: zero above the middle strip",
                         all(v == 0 for (p, q), v in H.entries.items() if p + q > d - 1)
                         and all(v == 0 for t in layers for (p, q), v in t.entries.items() if p + q != t.r)))
    if inv.S.is_unimodular():
        out.append(Check("unimodular: concentrated on the central vertical strip",
                         all(v == 0 for (p, q), v in list(H.entries.items()) + list(L.entries.items()) if p != q)
                         and all(v == 0 for t in layers for (p, q), v in t.entries.items() if p != q)))
        out.append(Check("unimodular: h*(P,S;u,v) = h*(P;uv), h*(P;u,v) = h_P(S;u,v)",
                         h == substitute(hstar(inv.P), {"t": U * V})
                         and mixed_hstar(inv.P) == inv.sfs.mixed_h()))
    return out


def _unimodal(seq) -> bool:
    i = 0
    n = len(seq)
    while i + 1 < n and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < n and seq[i] >= seq[i + 1]:
        i += 1
    return i >= n - 1


def check_bounds(inv: SubdivisionInvariants) -> list:
    """Lower bound theorems, and vertical-strip unimodality for regular subdivisions."""
    d = inv.dim
    hs, ls = hstar_coeffs(inv.P), lstar_coeffs(inv.P)
    interior = inv.P.count(1, strict=True)
    out = []
    if interior:
        out.append(Check("Hibi lower bound h*_1 <= h*_i", all(_at(hs, 1) <= _at(hs, i) for i in range(1, d))))
    out.append(Check("l*_1 = interior points <= l*_i",
                     d < 1 or (_at(ls, 1) == interior and all(_at(ls, 1) <= _at(ls, i) for i in range(1, d + 1)))))
    h, l = inv.limit()
    out.append(Check("h*(P,S) >= l*(P,S) coefficientwise", _nonneg(h - l)))
    if d < 1:
        return out
    D = diamonds(inv)
    H, L, layers = D["hstar"], D["local"], D["layers"]
    ok = True
    for t in layers:
        r = t.r
        for k in range(r + 1):
            ok &= all(t[(k, 0)] <= t[(k - i, i)] for i in range(k + 1))
            ok &= all(t[(r, k)] <= t[(r - i, k + i)] for i in range(r - k + 1))
    out.append(Check("first entry of each layer strip is a lower bound", ok))
    ok = True
    for tb in (H, L):
        for k in range(d):
            ok &= all(tb[(k, 0)] <= tb[(k - i, i)] for i in range(k + 1))
            ok &= all(tb[(d - 1, k)] <= tb[(d - 1 - i, k + i)] for i in range(d - k))
    out.append(Check("first entry of each diamond strip is a lower bound", ok))
    if inv.S.regular:
        ok = True
        for t in layers:
            r = t.r
            for k in range(r + 1):
                for seq in ([t[(k + i, i)] for i in range(r - k + 1)], [t[(i, k + i)] for i in range(r - k + 1)]):
                    ok &= seq == seq[::-1] and _unimodal(seq) and all(c >= 0 for c in seq)
        out.append(Check("regular: vertical strips symmetric and unimodal", ok))
    return out


def check_subdivision(S: CellComplex, restrictions: bool = True) -> list:
    """Full battery for one lattice subdivision."""
    inv = SubdivisionInvariants(S)
    out = check_polytope(inv.P)
    out += check_pushforward(inv)
    out += check_basic(inv)
    out += check_combinatorics(inv)
    out += check_diamonds(inv)
    out += check_bounds(inv)
    if restrictions:
        out += check_restrictions(inv)
    return out
