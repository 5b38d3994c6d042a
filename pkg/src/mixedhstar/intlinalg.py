"""Small exact linear algebra over Z and Q (lists of ints / Fractions)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def rank(rows) -> int:
    return len(_echelon([list(map(Fraction, r)) for r in rows])[1])


def _echelon(m):
    """Row echelon form over Q; returns (matrix, pivot columns)."""
    m = [row[:] for row in m]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, ncols: int) -> list:
    """Basis of {x : rows . x = 0} over Q, scaled to primitive integer vectors."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m, piv = _echelon([list(map(Fraction, r)) for r in rows])
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(piv):
            x[pc] = -m[i][f]
        out.append(primitive(x))
    return out


def primitive(x) -> list:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    d = 1
    for a in x:
        d = lcm(d, Fraction(a).denominator)
    ints = [int(Fraction(a) * d) for a in x]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints] if g else ints


def solve(mat, b):
    """Unique solution of the square system mat . x = b over Q (None if singular)."""
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(mat, b)]
    m, piv = _echelon(aug)
    if piv != list(range(n)):
        return None
    return [m[i][n] for i in range(n)]


def solve_in_span(cols, b):
    """Coefficients c with sum c_j cols[j] = b (cols independent), or None."""
    k = len(cols)
    d = len(b)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(b[i])] for i in range(d)]
    m, piv = _echelon(aug)
    if k in piv:
        return None
    if piv != list(range(k)):
        return None
    return [m[i][k] for i in range(k)]


def det(mat) -> Fraction:
    m = [list(map(Fraction, r)) for r in mat]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def integer_kernel(A, ncols: int) -> list:
    """Z-basis of {x in Z^n : A x = 0} via unimodular column operations."""
    M = [list(map(int, r)) for r in A]
    n = ncols
    Ucols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]  # list of columns
    Mcols = [[M[i][j] for i in range(len(M))] for j in range(n)]
    col = 0
    for i in range(len(M)):
        if col >= n:
            break
        while True:
            nz = [j for j in range(col, n) if Mcols[j][i] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(Mcols[j][i]))
            Mcols[col], Mcols[jmin] = Mcols[jmin], Mcols[col]
            Ucols[col], Ucols[jmin] = Ucols[jmin], Ucols[col]
            done = True
            piv = Mcols[col][i]
            for j in range(col + 1, n):
                if Mcols[j][i]:
                    q = Mcols[j][i] // piv
                    Mcols[j] = [a - q * b for a, b in zip(Mcols[j], Mcols[col])]
                    Ucols[j] = [a - q * b for a, b in zip(Ucols[j], Ucols[col])]
                    if Mcols[j][i]:
                        done = False
            if done:
                break
        if any(Mcols[j][i] for j in range(col, n)):
            col += 1
    return [Ucols[j] for j in range(col, n)]


def saturated_basis(vectors, dim: int) -> list:
    """Z-basis of span_Q(vectors) intersected with Z^dim."""
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return []
    normals = nullspace(vecs, dim)
    if not normals:
        return [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    return integer_kernel(normals, dim)


def row_hnf(rows) -> list:
    """Basis (non-zero rows) of the Z-row-lattice of an integer matrix."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    out = []
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            imin = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[imin] = m[imin], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            out.append(m[r])
            r += 1
        if r == len(m):
            break
    return out


def lattice_basis_from_generators(gens) -> list:
    """Z-basis of the lattice generated by rational vectors ``gens``."""
    gens = [[Fraction(a) for a in g] for g in gens]
    d = 1
    for g in gens:
        for a in g:
            d = lcm(d, a.denominator)
    ints = [[int(a * d) for a in g] for g in gens]
    return [[Fraction(a, d) for a in row] for row in row_hnf(ints)]
