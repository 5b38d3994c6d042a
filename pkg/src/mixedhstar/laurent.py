"""Exact Laurent polynomials in t, u, v, w with half-integer exponents.

Exponents are stored doubled, so ``t^{1/2}`` is the key ``(1, 0, 0, 0)``.
Coefficients are Python integers.  Values are immutable.

    >>> t = LaurentPoly.var("t")
    >>> q = t.sqrt_monomial() - t.sqrt_monomial().involute()
    >>> str(q)
    '-t^{-1/2} + t^{1/2}'
    >>> str(q.involute())
    't^{-1/2} - t^{1/2}'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

VARS = ("t", "u", "v", "w")
_NV = len(VARS)
_ZERO = (0, 0, 0, 0)


def _doubled(e) -> int:
    d = Fraction(e) * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return int(d)


def _idx(var: str) -> int:
    try:
        return VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}") from None


class LaurentPoly:
    """Sparse Laurent polynomial; ``terms`` maps doubled exponent tuples to ints."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    if len(k) != _NV:
                        raise ValueError("exponent vectors must have length 4")
                    clean[tuple(k)] = int(c)
        self._terms = clean
        self._hash = None

    # construction
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({_ZERO: c})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls.monomial(**{name: 1})

    @classmethod
    def monomial(cls, coef: int = 1, **exps) -> "LaurentPoly":
        key = [0] * _NV
        for name, e in exps.items():
            key[_idx(name)] = _doubled(e)
        return cls({tuple(key): coef})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], var: str = "t", low=0) -> "LaurentPoly":
        """``sum coeffs[i] * var^(low+i)``."""
        i0 = _idx(var)
        base = _doubled(low)
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                key = [0] * _NV
                key[i0] = base + 2 * i
                out[tuple(key)] = c
        return cls(out)

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot treat {type(x).__name__} as a Laurent polynomial")

    # basic access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, **exps) -> int:
        key = [0] * _NV
        for name, e in exps.items():
            key[_idx(name)] = _doubled(e)
        return self._terms.get(tuple(key), 0)

    def variables(self) -> tuple:
        used = set()
        for k in self._terms:
            used.update(i for i in range(_NV) if k[i])
        return tuple(VARS[i] for i in sorted(used))

    def degree(self, var: str) -> Fraction:
        i = _idx(var)
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return Fraction(max(k[i] for k in self._terms), 2)

    def min_degree(self, var: str) -> Fraction:
        i = _idx(var)
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return Fraction(min(k[i] for k in self._terms), 2)

    def total_degree(self, vars: Iterable[str]) -> Fraction:
        idx = [_idx(v) for v in vars]
        return Fraction(max(sum(k[i] for i in idx) for k in self._terms), 2)

    def graded_part(self, degree, vars: Iterable[str] = ("u", "v")) -> "LaurentPoly":
        """Terms whose combined degree in ``vars`` equals ``degree``."""
        idx = [_idx(v) for v in vars]
        d2 = _doubled(degree)
        return LaurentPoly({k: c for k, c in self._terms.items() if sum(k[i] for i in idx) == d2})

    def split_by(self, var: str) -> dict:
        """Map exponent of ``var`` (Fraction) to the coefficient polynomial."""
        i = _idx(var)
        parts: dict = {}
        for k, c in self._terms.items():
            kk = list(k)
            e = kk[i]
            kk[i] = 0
            parts.setdefault(Fraction(e, 2), {})[tuple(kk)] = c
        return {e: LaurentPoly(d) for e, d in parts.items()}

    def coeff_list(self, var: str = "t") -> list:
        """Dense coefficient list of a polynomial in one variable (exponents 0..deg)."""
        i = _idx(var)
        if not self._terms:
            return []
        for k in self._terms:
            if any(k[j] for j in range(_NV) if j != i) or k[i] < 0 or k[i] % 2:
                raise ValueError(f"{self} is not a polynomial in {var}")
        top = max(k[i] for k in self._terms) // 2
        out = [0] * (top + 1)
        for k, c in self._terms.items():
            out[k[i] // 2] = c
        return out

    def value_at_one(self) -> int:
        return sum(self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # arithmetic
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only unit monomials have negative powers")
            (k, c), = self._terms.items()
            return LaurentPoly({tuple(e * n for e in k): c ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def sqrt_monomial(self) -> "LaurentPoly":
        """Square root of a monic monomial, e.g. t -> t^{1/2}."""
        if not self.is_monomial():
            raise ValueError("square root of a non-monomial")
        (k, c), = self._terms.items()
        if c != 1 or any(e % 2 for e in k):
            raise ValueError(f"{self} has no monomial square root with half-integer exponents")
        return LaurentPoly({tuple(e // 2 for e in k): 1})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # involution / substitution
    def involute(self) -> "LaurentPoly":
        return involute(self)

    def subs(self, **images) -> "LaurentPoly":
        return substitute(self, images)

    def __repr__(self):
        return f"LaurentPoly({to_string(self)!r})"

    def __str__(self):
        return to_string(self)


def const(c: int) -> LaurentPoly:
    return LaurentPoly.const(c)


T = LaurentPoly.var("t")
U = LaurentPoly.var("u")
V = LaurentPoly.var("v")
W = LaurentPoly.var("w")
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
Q = LaurentPoly.monomial(t=Fraction(1, 2)) - LaurentPoly.monomial(t=Fraction(-1, 2))


def involute(p: LaurentPoly) -> LaurentPoly:
    """Bar involution: negate every exponent."""
    return LaurentPoly({tuple(-e for e in k): c for k, c in p.items()})


def _image(x) -> tuple:
    """Normalise a substitution target to (sign, doubled exponent vector)."""
    p = LaurentPoly.coerce(x)
    if not p.is_monomial():
        raise ValueError(f"substitution image {p} is not a signed monomial")
    (k, c), = p.items()
    if c not in (1, -1):
        raise ValueError(f"substitution image {p} must have coefficient +-1")
    return c, k


def substitute(p: LaurentPoly, images: Mapping[str, object]) -> LaurentPoly:
    """Ring map sending each named variable to a signed monomial.

    Unnamed variables are fixed.  A half-integer power of a negative image
    is rejected.
    """
    table = []
    for i, name in enumerate(VARS):
        if name in images:
            table.append(_image(images[name]))
        else:
            key = [0] * _NV
            key[i] = 2
            table.append((1, tuple(key)))
    out: dict = {}
    for k, c in p.items():
        new = [0, 0, 0, 0]
        sign = 1
        for i, e2 in enumerate(k):
            if not e2:
                continue
            s, img = table[i]
            if s < 0:
                if e2 % 2:
                    raise ValueError("half-integer power of a negative monomial")
                if (e2 // 2) % 2:
                    sign = -sign
            for j in range(_NV):
                if img[j]:
                    prod = img[j] * e2
                    if prod % 2:
                        raise ValueError("substitution leaves the half-integer lattice")
                    new[j] += prod // 2
        key = tuple(new)
        out[key] = out.get(key, 0) + sign * c
    return LaurentPoly(out)


def set_zero(p: LaurentPoly, var: str) -> LaurentPoly:
    """Specialise ``var`` to 0; the polynomial must not contain negative powers of it."""
    i = _idx(var)
    if any(k[i] < 0 for k, _ in p.items()):
        raise ValueError(f"{p} has negative powers of {var}")
    return LaurentPoly({k: c for k, c in p.items() if k[i] == 0})


# coefficient sequences

@dataclass(frozen=True)
class CoeffProfile:
    """Coefficients of a univariate Laurent polynomial from exponent ``low`` in unit steps."""

    low: Fraction
    coefficients: tuple

    @property
    def high(self) -> Fraction:
        return self.low + len(self.coefficients) - 1

    @property
    def center(self) -> Fraction:
        return (self.low + self.high) / 2

    def at(self, e) -> int:
        j = Fraction(e) - self.low
        if j.denominator != 1 or j < 0 or j >= len(self.coefficients):
            return 0
        return self.coefficients[int(j)]

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    def is_symmetric(self, center=None) -> bool:
        c = self.center if center is None else Fraction(center)
        lo = min(self.low, 2 * c - self.high) if self.coefficients else c
        hi = 2 * c - lo
        e = lo
        while e <= hi:
            if self.at(e) != self.at(2 * c - e):
                return False
            e += 1
        return True

    def is_unimodal(self) -> bool:
        seq = self.coefficients
        i = 0
        while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
            i += 1
        while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
            i += 1
        return i >= len(seq) - 1


def profile(p: LaurentPoly, var: str = "t", low=None, high=None) -> CoeffProfile:
    """Coefficient profile of a polynomial in ``var`` alone.

    ``low``/``high`` pad the window with zeros (useful when the declared
    support is wider than the non-zero terms).
    """
    i = _idx(var)
    for k, _ in p.items():
        if any(k[j] for j in range(_NV) if j != i):
            raise ValueError(f"{p} is not univariate in {var}")
    exps = [k[i] for k, _ in p.items()]
    if exps and len({e % 2 for e in exps}) > 1:
        raise ValueError("mixed integer and half-integer exponents")
    if not exps and low is None:
        return CoeffProfile(Fraction(0), ())
    lo2 = min(exps) if exps else _doubled(low)
    hi2 = max(exps) if exps else lo2
    if low is not None:
        lo2 = min(lo2, _doubled(low))
    if high is not None:
        hi2 = max(hi2, _doubled(high))
    coeffs = [0] * ((hi2 - lo2) // 2 + 1)
    for k, c in p.items():
        coeffs[(k[i] - lo2) // 2] = c
    return CoeffProfile(Fraction(lo2, 2), tuple(coeffs))


# text form

def _fmt_exp(e2: int) -> str:
    f = Fraction(e2, 2)
    if f == 1:
        return ""
    if f.denominator == 1 and f > 0:
        return f"^{f.numerator}"
    return "^{" + str(f) + "}"


def to_string(p: LaurentPoly) -> str:
    """Deterministic text: terms in increasing lexicographic exponent order."""
    if p.is_zero():
        return "0"
    pieces = []
    for k in sorted(p._terms):
        c = p._terms[k]
        mono = "*".join(VARS[i] + _fmt_exp(e) for i, e in enumerate(k) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)


_FACTOR = re.compile(r"([tuvw])(?:\^(?:\{([-0-9/]+)\}|(-?\d+)))?$")


def parse(text: str) -> LaurentPoly:
    """Inverse of :func:`to_string` (also accepts ``**`` and spaces loosely)."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return ZERO
    # split into signed terms, ignoring signs inside braces
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and s[i - 1] not in "+-^{":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    out = ZERO
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            sign = -sign if term[0] == "-" else sign
            term = term[1:]
        coef = 1
        key = [0] * _NV
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"bad term in {text!r}")
            if factor.isdigit():
                coef *= int(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            e = Fraction(m.group(2)) if m.group(2) else Fraction(int(m.group(3) or 1))
            key[_idx(m.group(1))] += _doubled(e)
        out = out + LaurentPoly({tuple(key): sign * coef})
    return out


def to_json(p: LaurentPoly) -> dict:
    return {"text": to_string(p), "terms": [[c, list(k)] for k, c in sorted(p.items())]}


def from_json(obj) -> LaurentPoly:
    if isinstance(obj, str):
        return parse(obj)
    if isinstance(obj, int):
        return LaurentPoly.const(obj)
    if "terms" in obj:
        return LaurentPoly({tuple(k): c for c, k in obj["terms"]})
    return parse(obj["text"])
