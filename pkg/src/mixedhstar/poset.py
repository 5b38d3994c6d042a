"""Finite ranked posets stored as bitsets.

Elements carry string ids; algorithms work on indices.  ``down[i]`` and
``up[i]`` are Python ints used as bitsets of the elements below/above
``i`` (both include ``i``).  Construction validates acyclicity and that
every cover relation raises the supplied rank by exactly one, which is
what local gradedness means here.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence


class PosetError(ValueError):
    """Invalid poset data (cycle, rank inconsistency, unknown element)."""


def bits(mask: int):
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


class RankedPoset:
    """A finite poset with an explicit integer rank function.

    Use :func:`build` (or :meth:`from_relations`) rather than the raw
    constructor, which trusts its input.
    """

    def __init__(self, elements: Sequence[str], rank: Sequence[int], down: Sequence[int]):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise PosetError("duplicate element ids")
        self.rank = tuple(rank)
        self.down = tuple(down)
        n = len(self.elements)
        up = [0] * n
        for j in range(n):
            for i in bits(self.down[j]):
                up[i] |= 1 << j
        self.up = tuple(up)
        self.full = (1 << n) - 1
        self.even = sum(1 << i for i in range(n) if self.rank[i] % 2 == 0)
        self._covers_down = None
        self._cache: dict = {}

    # construction
    @classmethod
    def from_relations(cls, elements: Sequence[str], relations: Iterable[tuple],
                       rank: Mapping[str, int] | Sequence[int] | None = None) -> "RankedPoset":
        """Build from generating relations ``(a, b)`` meaning ``a < b``.

        The relations need not be covers; the transitive closure is taken
        and the true covers are checked against ``rank``.  When ``rank`` is
        omitted it is inferred as the longest chain from a minimal element.
        """
        elements = [str(e) for e in elements]
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise PosetError("duplicate element ids")
        n = len(elements)
        preds = [set() for _ in range(n)]
        for a, b in relations:
            a, b = str(a), str(b)
            if a not in index or b not in index:
                raise PosetError(f"relation ({a}, {b}) uses an unknown element")
            if a == b:
                raise PosetError(f"cycle detected at {a}")
            preds[index[b]].add(index[a])
        # topological order (Kahn)
        succ = [[] for _ in range(n)]
        indeg = [len(p) for p in preds]
        for b in range(n):
            for a in preds[b]:
                succ[a].append(b)
        order = [i for i in range(n) if indeg[i] == 0]
        k = 0
        while k < len(order):
            a = order[k]
            k += 1
            for b in succ[a]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    order.append(b)
        if len(order) != n:
            raise PosetError("cycle detected in relations")
        down = [0] * n
        for b in order:
            m = 1 << b
            for a in preds[b]:
                m |= down[a]
            down[b] = m
        if rank is None:
            r = [0] * n
            for b in order:
                r[b] = max((r[a] + 1 for a in preds[b]), default=0)
            rk = r
        elif isinstance(rank, Mapping):
            rank = {str(k): v for k, v in rank.items()}
            missing = [e for e in elements if e not in rank]
            if missing:
                raise PosetError(f"rank missing for {missing[:3]}")
            rk = [int(rank[e]) for e in elements]
        else:
            rk = [int(x) for x in rank]
            if len(rk) != n:
                raise PosetError("rank list has wrong length")
        p = cls(elements, rk, down)
        p.check_graded()
        return p

    def check_graded(self) -> None:
        for b in range(len(self)):
            for a in self.covers_down(b):
                if self.rank[b] - self.rank[a] != 1:
                    raise PosetError(
                        f"rank inconsistency: cover {self.elements[a]} < {self.elements[b]} "
                        f"has rank gap {self.rank[b] - self.rank[a]}")

    # basic queries
    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"RankedPoset({len(self)} elements)"

    def i(self, x) -> int:
        """Index of an element given by id or index."""
        if isinstance(x, int):
            return x
        try:
            return self.index[x]
        except KeyError:
            raise PosetError(f"unknown element {x!r}") from None

    def leq(self, x, y) -> bool:
        return bool(self.down[self.i(y)] >> self.i(x) & 1)

    def rho(self, x, y) -> int:
        return self.rank[self.i(y)] - self.rank[self.i(x)]

    def interval_mask(self, x, y) -> int:
        return self.up[self.i(x)] & self.down[self.i(y)]

    def covers_down(self, b: int) -> list:
        if self._covers_down is None:
            cov = []
            for j in range(len(self)):
                dj = self.down[j]
                cov.append([a for a in bits(dj & ~(1 << j))
                            if popcount(self.up[a] & dj) == 2])
            self._covers_down = cov
        return self._covers_down[b]

    def cover_pairs(self) -> list:
        return [(a, b) for b in range(len(self)) for a in self.covers_down(b)]

    def minimal(self) -> list:
        return [i for i in range(len(self)) if self.down[i] == 1 << i]

    def maximal(self) -> list:
        return [i for i in range(len(self)) if self.up[i] == 1 << i]

    def bottom(self):
        """Index of the minimum element, or None."""
        m = self.minimal()
        return m[0] if len(m) == 1 and self.up[m[0]] == self.full else None

    def top(self):
        m = self.maximal()
        return m[0] if len(m) == 1 and self.down[m[0]] == self.full else None

    def max_rank(self) -> int:
        return max(self.rank) if self.rank else 0

    def rk(self) -> int:
        """Length of the longest chain from the minimum (rank of a lower Eulerian poset)."""
        b = self.bottom()
        if b is None:
            raise PosetError("poset has no minimum")
        return self.max_rank() - self.rank[b]

    # Euler checks
    def _balanced(self, mask: int) -> bool:
        e = popcount(mask & self.even)
        return 2 * e == popcount(mask)

    def is_locally_eulerian(self) -> bool:
        key = "loc_euler"
        if key not in self._cache:
            ok = True
            for y in range(len(self)):
                for x in bits(self.down[y] & ~(1 << y)):
                    if not self._balanced(self.up[x] & self.down[y]):
                        ok = False
                        break
                if not ok:
                    break
            self._cache[key] = ok
        return self._cache[key]

    def is_eulerian(self) -> bool:
        return self.bottom() is not None and self.top() is not None and self.is_locally_eulerian()

    def is_lower_eulerian(self) -> bool:
        return self.bottom() is not None and self.is_locally_eulerian()

    # Boolean structure
    def is_boolean_interval(self, x, y) -> bool:
        """True when [x, y] is isomorphic to a Boolean algebra (ranks respected)."""
        x, y = self.i(x), self.i(y)
        key = ("bool", x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ok = self._boolean_check(x, y)
        self._cache[key] = ok
        return ok

    def _boolean_check(self, x: int, y: int) -> bool:
        mask = self.up[x] & self.down[y]
        if not mask >> y & 1:
            return False
        n = self.rank[y] - self.rank[x]
        if popcount(mask) != 1 << n:
            return False
        atoms = 0
        for z in bits(mask):
            if self.rank[z] == self.rank[x] + 1:
                atoms |= 1 << z
        seen = set()
        for z in bits(mask):
            k = self.rank[z] - self.rank[x]
            a = atoms & self.down[z]
            if popcount(a) != k or popcount(mask & self.down[z]) != 1 << k or a in seen:
                return False
            seen.add(a)
        return True

    def is_simplicial(self) -> bool:
        """Has a minimum and every lower interval is Boolean."""
        b = self.bottom()
        return b is not None and all(self.is_boolean_interval(b, y) for y in range(len(self)))

    # derived posets
    def subposet(self, mask: int) -> "RankedPoset":
        """Induced sub-poset on the elements of ``mask`` (ranks kept)."""
        old = list(bits(mask))
        new_of = {o: k for k, o in enumerate(old)}
        down = []
        for o in old:
            m = 0
            for a in bits(self.down[o] & mask):
                m |= 1 << new_of[a]
            down.append(m)
        return RankedPoset([self.elements[o] for o in old], [self.rank[o] for o in old], down)

    def interval(self, x, y) -> "RankedPoset":
        if not self.leq(x, y):
            raise PosetError(f"{x} is not below {y}")
        return self.subposet(self.interval_mask(x, y))

    def dual(self) -> "RankedPoset":
        top = self.max_rank()
        return RankedPoset(self.elements, [top - r for r in self.rank], self.up)

    def mobius(self, x, y) -> int:
        x, y = self.i(x), self.i(y)
        if not self.leq(x, y):
            raise PosetError("mobius needs x <= y")
        mask = self.up[x] & self.down[y]
        order = sorted(bits(mask), key=lambda z: self.rank[z])
        mu = {}
        for z in order:
            if z == x:
                mu[z] = 1
            else:
                mu[z] = -sum(mu[w] for w in bits(self.down[z] & mask & ~(1 << z)))
        return mu[y]

    def to_json(self) -> dict:
        return {"elements": list(self.elements),
                "covers": [[self.elements[a], self.elements[b]] for a, b in self.cover_pairs()],
                "rank": {e: r for e, r in zip(self.elements, self.rank)}}


def build(elements: Sequence[str], covers: Iterable[tuple], rank=None) -> RankedPoset:
    """Validated poset from elements, cover (or generating) relations and ranks."""
    return RankedPoset.from_relations(elements, covers, rank)


def is_eulerian(p: RankedPoset) -> bool:
    return p.is_eulerian()


def is_locally_eulerian(p: RankedPoset) -> bool:
    return p.is_locally_eulerian()


def is_lower_eulerian(p: RankedPoset) -> bool:
    return p.is_lower_eulerian()


def mobius(p: RankedPoset, x, y) -> int:
    return p.mobius(x, y)


def dual(p: RankedPoset) -> RankedPoset:
    return p.dual()


def interval(p: RankedPoset, x, y) -> RankedPoset:
    return p.interval(x, y)


def subset_name(s: Iterable) -> str:
    return "{" + ",".join(str(a) for a in sorted(s)) + "}"


def boolean_algebra(r: int, labels: Sequence | None = None) -> RankedPoset:
    """Subsets of an r-set ordered by inclusion, rank = cardinality."""
    if r < 0:
        raise PosetError("negative rank")
    labels = list(labels) if labels is not None else list(range(1, r + 1))
    if len(labels) != r:
        raise PosetError("need r labels")
    n = 1 << r
    names = [subset_name(labels[j] for j in range(r) if s >> j & 1) for s in range(n)]
    rank = [popcount(s) for s in range(n)]
    down = []
    for s in range(n):
        m = 0
        sub = s
        while True:
            m |= 1 << sub
            if sub == 0:
                break
            sub = (sub - 1) & s
        down.append(m)
    return RankedPoset(names, rank, down)


def chain_poset(k: int) -> RankedPoset:
    """Chain 0 < 1 < ... < k-1 with rank equal to position."""
    return RankedPoset([str(i) for i in range(k)], list(range(k)),
                       [(1 << (i + 1)) - 1 for i in range(k)])


def barycentric(p: RankedPoset, sep: str = "<"):
    """Chains containing the minimum, ordered by refinement.

    Returns ``(poset, sigma)`` where ``sigma`` maps each chain id to the id
    of its top element.  The rank of a chain is its number of non-minimum
    entries.
    """
    b = p.bottom()
    if b is None:
        raise PosetError("barycentric subdivision needs a minimum element")
    chains = []

    def grow(chain):
        chains.append(chain)
        last = chain[-1]
        for z in bits(p.up[last] & ~(1 << last)):
            grow(chain + (z,))

    grow((b,))
    pos = {c: k for k, c in enumerate(chains)}
    names, rank, down = [], [], []
    for c in chains:
        names.append(sep.join(p.elements[z] for z in c))
        k = len(c) - 1
        rank.append(k)
        m = 0
        rest = c[1:]
        for size in range(k + 1):
            for sub in combinations(rest, size):
                m |= 1 << pos[(b,) + sub]
        down.append(m)
    gamma = RankedPoset(names, rank, down)
    sigma = {names[k]: p.elements[c[-1]] for k, c in enumerate(chains)}
    return gamma, sigma
