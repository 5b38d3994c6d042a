"""Slow, independent reference computations used by the tests.

Nothing here imports the invariant code of the package: polynomials are
plain coefficient lists or dicts keyed by exponent tuples.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import comb


def excedances(w) -> int:
    return sum(1 for i, a in enumerate(w) if a > i)


def inverse(w):
    out = [0] * len(w)
    for i, a in enumerate(w):
        out[a] = i
    return tuple(out)


def eulerian(n: int) -> dict:
    """{k: #permutations of n with k excedances}."""
    out: dict = {}
    for w in permutations(range(n)):
        k = excedances(w)
        out[k] = out.get(k, 0) + 1
    return out


def derangement_excedances(n: int) -> dict:
    out: dict = {}
    for w in permutations(range(n)):
        if any(a == i for i, a in enumerate(w)):
            continue
        k = excedances(w)
        out[k] = out.get(k, 0) + 1
    return out


def mixed_excedances(n: int) -> dict:
    """{(ex(w), ex(w^-1)): count}."""
    out: dict = {}
    for w in permutations(range(n)):
        key = (excedances(w), excedances(inverse(w)))
        out[key] = out.get(key, 0) + 1
    return out


# toric g and h by Stanley's recursion, on plain coefficient lists

def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _tm1(k):
    return [comb(k, i) * (-1) ** (k - i) for i in range(k + 1)]


def _below(p, x):
    m, out, i = p.down[x], [], 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def toric_g(p, bottom: int, top: int, memo=None) -> list:
    """g([bottom, top]) by truncating (1 - t) * f, f = sum over x < top of g([bottom, x]) (t-1)^(d - rho)."""
    memo = {} if memo is None else memo
    key = (bottom, top)
    if key in memo:
        return memo[key]
    n = p.rank[top] - p.rank[bottom]
    if n == 0:
        memo[key] = [1]
        return [1]
    d = n - 1
    f = [0]
    for x in _below(p, top):
        if x == top or not (p.down[x] >> bottom) & 1:
            continue
        f = _add(f, _mul(toric_g(p, bottom, x, memo), _tm1(d - (p.rank[x] - p.rank[bottom]))))
    f = f + [0] * (d + 1 - len(f))
    g = [f[0]] + [f[i] - f[i - 1] for i in range(1, d // 2 + 1)]
    memo[key] = g
    return g


def toric_h(p, bottom: int) -> list:
    """Reverse of sum_x g([bottom, x]) (t-1)^(n - rho(x)), n the rank of p."""
    n = max(p.rank) - p.rank[bottom]
    memo: dict = {}
    f = [0]
    for x in range(len(p)):
        if (p.down[x] >> bottom) & 1:
            f = _add(f, _mul(toric_g(p, bottom, x, memo), _tm1(n - (p.rank[x] - p.rank[bottom]))))
    f = f + [0] * (n + 1 - len(f))
    return f[::-1]


def h_from_f(fvec: list) -> list:
    """h-vector of a pure simplicial complex from (f_{-1}, f_0, ..., f_{d-1})."""
    d = len(fvec) - 1
    h = [0] * (d + 1)
    for i, f in enumerate(fvec):
        for j, c in enumerate(_tm1(d - i)):
            h[j] += f * c
    return h[::-1]


# lattice points by brute force

def _solve(A, b):
    """Exact Gaussian elimination for a square system."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                k = M[r][c] / M[c][c]
                M[r] = [a - k * b for a, b in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def simplex_counts(verts, m: int) -> tuple:
    """(#(mP), #int(mP)) for a full-dimensional lattice simplex in Z^d, by scanning a box."""
    d = len(verts[0])
    A = [[v[i] for v in verts] for i in range(d)] + [[1] * (d + 1)]
    lo = [m * min(v[i] for v in verts) for i in range(d)]
    hi = [m * max(v[i] for v in verts) for i in range(d)]
    closed = inner = 0
    for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        lam = _solve(A, list(x) + [m])
        if all(c >= 0 for c in lam):
            closed += 1
            if all(c > 0 for c in lam):
                inner += 1
    return closed, inner


def hstar_from_counts(counts: list, d: int) -> list:
    """h* from f(0), ..., f(d) via the binomial transform."""
    return [sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(j + 1)) for j in range(d + 1)]


def box_points(verts, strict: bool = False) -> list:
    """Heights of lattice points in the half-open (or open) fundamental parallelepiped of a simplex."""
    d = len(verts[0])
    A = [[v[i] for v in verts] for i in range(d)] + [[1] * (d + 1)]
    cols = [_solve(A, [int(i == j) for i in range(d + 1)]) for j in range(d + 1)]
    lo = [sum(min(v[i], 0) for v in verts) for i in range(d)]
    hi = [sum(max(v[i], 0) for v in verts) for i in range(d)]
    heights = []
    for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        for h in range(d + 1):
            rhs = list(x) + [h]
            lam = [sum(cols[j][k] * rhs[j] for j in range(d + 1)) for k in range(d + 1)]
            if all((0 < c if strict else 0 <= c) and c < 1 for c in lam):
                heights.append(h)
    return heights
