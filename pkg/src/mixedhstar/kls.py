"""Incidence algebra calculus on locally Eulerian posets.

g- and h-polynomials are computed with plain integer coefficient tuples
(index = power of t) and memoised on the poset; they are turned into
:class:`LaurentPoly` values at the API boundary.  The kernel is
``kappa(x, x') = q^rho`` with ``q = t^{1/2} - t^{-1/2}``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .laurent import ONE, Q, ZERO, LaurentPoly, involute
from .poset import PosetError, RankedPoset, bits


# univariate helpers on coefficient tuples

def _trim(a: list) -> tuple:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b) -> tuple:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def pmul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


_TM1: dict = {}


def tminus1(k: int) -> tuple:
    """Coefficients of (t - 1)^k."""
    hit = _TM1.get(k)
    if hit is None:
        hit = tuple(comb(k, i) * (-1) ** (k - i) for i in range(k + 1))
        _TM1[k] = hit
    return hit


def reverse(a, n: int) -> tuple:
    """Coefficients of t^n a(1/t); requires deg a <= n."""
    if len(a) > n + 1:
        raise ValueError("degree exceeds reversal length")
    out = [0] * (n + 1)
    for i, c in enumerate(a):
        out[n - i] = c
    return _trim(out)


def to_poly(a, var: str = "t") -> LaurentPoly:
    return LaurentPoly.from_coeffs(a, var)


# g and h

def g_coeffs(p: RankedPoset, x: int, y: int) -> tuple:
    """g([x, y]; t) as a coefficient tuple, memoised per interval."""
    key = ("g", x, y)
    hit = p._cache.get(key)
    if hit is not None:
        return hit
    n = p.rank[y] - p.rank[x]
    if n < 0 or not p.leq(x, y):
        raise PosetError("g-polynomial of an empty interval")
    if n == 0 or p.is_boolean_interval(x, y):
        res = (1,)
    else:
        mask = p.up[x] & p.down[y] & ~(1 << y)
        rhs: tuple = ()
        for z in bits(mask):
            rhs = padd(rhs, pmul(g_coeffs(p, x, z), tminus1(n - (p.rank[z] - p.rank[x]))))
        g = [rhs[n - i] if n - i < len(rhs) else 0 for i in range((n + 1) // 2)]
        res = _trim(g)
        # the remaining coefficients must match; otherwise the interval is not Eulerian
        if padd(reverse(res, n), tuple(-c for c in res)) != rhs:
            raise PosetError(f"interval [{p.elements[x]}, {p.elements[y]}] is not Eulerian")
    p._cache[key] = res
    return res


def dual_poset(p: RankedPoset) -> RankedPoset:
    d = p._cache.get("dual")
    if d is None:
        d = p.dual()
        p._cache["dual"] = d
    return d


def g_dual_coeffs(p: RankedPoset, x: int, y: int) -> tuple:
    """g([x, y]^*; t): the interval with its order reversed."""
    return g_coeffs(dual_poset(p), y, x)


def h_coeffs(p: RankedPoset, mask: int, bottom: int, n: int) -> tuple:
    """h-polynomial of the lower Eulerian sub-poset ``mask`` with minimum ``bottom`` and rank ``n``."""
    rhs: tuple = ()
    r0 = p.rank[bottom]
    for z in bits(mask):
        k = n - (p.rank[z] - r0)
        if k < 0:
            raise PosetError("element above the declared rank")
        rhs = padd(rhs, pmul(g_coeffs(p, bottom, z), tminus1(k)))
    return reverse(rhs, n)


def _ends(p: RankedPoset, x, y):
    x = p.bottom() if x is None else p.i(x)
    y = p.top() if y is None else p.i(y)
    if x is None or y is None:
        raise PosetError("poset needs a minimum and a maximum")
    return x, y


def g_polynomial(p: RankedPoset, x=None, y=None) -> LaurentPoly:
    """g([x, y]; t); defaults to the whole poset."""
    x, y = _ends(p, x, y)
    if not p.is_locally_eulerian():
        raise PosetError("g-polynomial needs an Eulerian poset")
    return to_poly(g_coeffs(p, x, y))


def g_dual(p: RankedPoset, x=None, y=None) -> LaurentPoly:
    x, y = _ends(p, x, y)
    return to_poly(g_dual_coeffs(p, x, y))


def h_polynomial(p: RankedPoset, mask: int | None = None, bottom=None, n: int | None = None) -> LaurentPoly:
    """h-polynomial of a lower Eulerian poset (or of a sub-poset given by ``mask``)."""
    if mask is None:
        mask = p.full
    b = p.bottom() if bottom is None else p.i(bottom)
    if b is None or (mask & ~p.up[b]):
        raise PosetError("h-polynomial needs a minimum element")
    if n is None:
        n = max(p.rank[z] for z in bits(mask)) - p.rank[b]
    return to_poly(h_coeffs(p, mask, b, n))


# incidence algebra

class IncidenceFunction:
    """Map from intervals ``(x, y)`` (indices, x <= y) to Laurent polynomials."""

    def __init__(self, poset: RankedPoset, values: dict | None = None):
        self.poset = poset
        self.values = {k: v for k, v in (values or {}).items() if v}

    def __call__(self, x, y) -> LaurentPoly:
        return self.values.get((self.poset.i(x), self.poset.i(y)), ZERO)

    def __mul__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        p = self.poset
        by_left: dict = {}
        for (y, z), g in other.values.items():
            by_left.setdefault(y, []).append((z, g))
        out: dict = {}
        for (x, y), f in self.values.items():
            for z, g in by_left.get(y, ()):
                out[(x, z)] = out.get((x, z), ZERO) + f * g
        return IncidenceFunction(p, out)

    def __add__(self, other):
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, ZERO) + v
        return IncidenceFunction(self.poset, out)

    def involute(self) -> "IncidenceFunction":
        return IncidenceFunction(self.poset, {k: involute(v) for k, v in self.values.items()})

    def substitute(self, **images) -> "IncidenceFunction":
        return IncidenceFunction(self.poset, {k: v.subs(**images) for k, v in self.values.items()})

    def __eq__(self, other):
        return isinstance(other, IncidenceFunction) and self.values == other.values


class PosetFunction:
    """Map from elements (indices) to Laurent polynomials."""

    def __init__(self, poset: RankedPoset, values: dict | None = None):
        self.poset = poset
        self.values = {k: v for k, v in (values or {}).items() if v}

    def __call__(self, x) -> LaurentPoly:
        return self.values.get(self.poset.i(x), ZERO)

    def __mul__(self, f: IncidenceFunction) -> "PosetFunction":
        if f.poset is not self.poset:
            raise PosetError("poset function and incidence function live on different posets")
        out: dict = {}
        for (x, y), v in f.values.items():
            a = self.values.get(x)
            if a is not None:
                out[y] = out.get(y, ZERO) + a * v
        return PosetFunction(self.poset, out)

    def involute(self) -> "PosetFunction":
        return PosetFunction(self.poset, {k: involute(v) for k, v in self.values.items()})

    def __eq__(self, other):
        return isinstance(other, PosetFunction) and self.values == other.values


def basis(p: RankedPoset, x) -> PosetFunction:
    return PosetFunction(p, {p.i(x): ONE})


def identity(p: RankedPoset) -> IncidenceFunction:
    return IncidenceFunction(p, {(i, i): ONE for i in range(len(p))})


def _pairs(p: RankedPoset):
    for y in range(len(p)):
        for x in bits(p.down[y]):
            yield x, y


def kernel(p: RankedPoset) -> IncidenceFunction:
    """kappa(x, x') = q^{rho(x, x')}."""
    powers = {}
    out = {}
    for x, y in _pairs(p):
        r = p.rank[y] - p.rank[x]
        if r not in powers:
            powers[r] = Q ** r
        out[(x, y)] = powers[r]
    return IncidenceFunction(p, out)


def is_kernel(f: IncidenceFunction) -> bool:
    return f * f.involute() == identity(f.poset)


def _half_power(r: int) -> LaurentPoly:
    return LaurentPoly.monomial(t=Fraction(-r, 2))


def gamma(p: RankedPoset) -> IncidenceFunction:
    """gamma(x, x') = t^{-rho/2} g([x, x'])."""
    if not p.is_locally_eulerian():
        raise PosetError("gamma needs a locally Eulerian poset")
    return IncidenceFunction(p, {(x, y): _half_power(p.rank[y] - p.rank[x]) * to_poly(g_coeffs(p, x, y))
                                 for x, y in _pairs(p)})


def gamma_inverse(p: RankedPoset) -> IncidenceFunction:
    """(-1)^rho t^{-rho/2} g([x, x']^*)."""
    if not p.is_locally_eulerian():
        raise PosetError("gamma needs a locally Eulerian poset")
    out = {}
    for x, y in _pairs(p):
        r = p.rank[y] - p.rank[x]
        out[(x, y)] = _half_power(r) * to_poly(g_dual_coeffs(p, x, y)) * (-1) ** r
    return IncidenceFunction(p, out)


def is_acceptable(f: PosetFunction, p: RankedPoset | None = None) -> bool:
    """f-bar == f * kappa."""
    p = p or f.poset
    return f.involute() == f * kernel(p)


def is_totally_acceptable(F: IncidenceFunction) -> bool:
    return F.involute() == F * kernel(F.poset)
