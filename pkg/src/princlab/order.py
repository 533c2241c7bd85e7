"""Finite posets and lattices.

Elements are opaque strings.  Internally every structure works on dense
indices ``0..n-1`` in list order, and order relations are stored as bit
masks: ``down[i]`` has bit ``j`` set iff ``j <= i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    CyclicCovers,
    NotALattice,
    NotComparable,
    NotTransitivelyReduced,
    UnknownElement,
)


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """A finite ordered set given by its cover relation."""

    __slots__ = (
        "elements", "index", "covers", "down", "up",
        "lower_covers", "upper_covers", "name", "_hash",
    )

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]], name=None):
        elements = tuple(str(e) for e in elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise UnknownElement("duplicate element names")
        pairs = set()
        for lo, hi in covers:
            if lo not in index or hi not in index:
                raise UnknownElement(f"cover ({lo!r}, {hi!r}) names an unknown element")
            if lo == hi:
                raise CyclicCovers(f"self-loop at {lo!r}")
            pairs.add((index[lo], index[hi]))
        self._setup(elements, index, frozenset(pairs), name)
        self._close()
        for lo, hi in self.covers:
            # a cover pair implied by a longer path is rejected
            for mid in self.upper_covers[lo]:
                if mid != hi and self.down[hi] >> mid & 1:
                    raise NotTransitivelyReduced(
                        f"({elements[lo]!r}, {elements[hi]!r}) is implied via {elements[mid]!r}"
                    )

    def _setup(self, elements, index, covers, name):
        self.elements = elements
        self.index = index
        self.covers = covers
        self.name = name
        self._hash = None
        n = len(elements)
        lower = [[] for _ in range(n)]
        upper = [[] for _ in range(n)]
        for lo, hi in sorted(covers):
            lower[hi].append(lo)
            upper[lo].append(hi)
        self.lower_covers = tuple(tuple(x) for x in lower)
        self.upper_covers = tuple(tuple(x) for x in upper)

    def _close(self):
        n = len(self.elements)
        indeg = [len(self.lower_covers[i]) for i in range(n)]
        order = [i for i in range(n) if indeg[i] == 0]
        down = [1 << i for i in range(n)]
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            for j in self.upper_covers[i]:
                down[j] |= down[i]
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != n:
            raise CyclicCovers("cover relation contains a cycle")
        up = [0] * n
        for j in range(n):
            for i in bits(down[j]):
                up[i] |= 1 << j
        self.down = tuple(down)
        self.up = tuple(up)

    @classmethod
    def _from_masks(cls, elements, down, name=None):
        """Build from reflexive down-set masks (trusted input); covers are derived."""
        n = len(elements)
        covers = set()
        for j in range(n):
            strict = down[j] & ~(1 << j)
            below = strict
            for i in bits(strict):
                below &= ~(down[i] & ~(1 << i))
            for i in bits(below):
                covers.add((i, j))
        obj = cls.__new__(cls)
        Poset._setup(obj, tuple(elements), {e: i for i, e in enumerate(elements)}, frozenset(covers), name)
        obj.down = tuple(down)
        up = [0] * n
        for j in range(n):
            for i in bits(down[j]):
                up[i] |= 1 << j
        obj.up = tuple(up)
        return obj

    @classmethod
    def from_leq(cls, elements: Sequence[str], leq, name=None) -> "Poset":
        """Build from a full order given as a predicate ``leq(x, y)`` on names."""
        elements = tuple(elements)
        down = []
        for j, y in enumerate(elements):
            m = 0
            for i, x in enumerate(elements):
                if i == j or leq(x, y):
                    m |= 1 << i
            down.append(m)
        return Poset._from_masks(elements, down, name)

    # basic queries

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<{type(self).__name__}{label} n={len(self)}>"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.elements, self.covers))
        return self._hash

    @property
    def n(self) -> int:
        return len(self.elements)

    def le(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def leq(self, x: str, y: str) -> bool:
        return self.le(self._idx(x), self._idx(y))

    def _idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not an element") from None

    def cover_names(self) -> list[tuple[str, str]]:
        e = self.elements
        return [(e[a], e[b]) for a, b in sorted(self.covers)]

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if not self.lower_covers[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not self.upper_covers[i]]

    def comparable(self, i: int, j: int) -> bool:
        return self.le(i, j) or self.le(j, i)

    def heights(self) -> list[int]:
        """Length of the longest chain from a minimal element up to each element."""
        h = [0] * self.n
        for j in self.linear_extension():
            for i in self.lower_covers[j]:
                h[j] = max(h[j], h[i] + 1)
        return h

    def depths(self) -> list[int]:
        d = [0] * self.n
        for j in reversed(self.linear_extension()):
            for k in self.upper_covers[j]:
                d[j] = max(d[j], d[k] + 1)
        return d

    def linear_extension(self) -> list[int]:
        return sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i))

    def dual(self, name=None) -> "Poset":
        return Poset(self.elements, [(b, a) for a, b in self.cover_names()], name=name)

    def subposet(self, indices: Iterable[int], name=None) -> "Poset":
        """Induced suborder on ``indices`` (kept in increasing index order)."""
        idx = sorted(set(indices))
        pos = {v: k for k, v in enumerate(idx)}
        down = []
        for j in idx:
            m = 0
            for i in bits(self.down[j]):
                if i in pos:
                    m |= 1 << pos[i]
            down.append(m)
        return Poset._from_masks([self.elements[i] for i in idx], down, name)

    def relabel(self, names: Mapping[str, str] | Sequence[str], name=None):
        """Same structure, element names replaced (mapping or positional list)."""
        if isinstance(names, Mapping):
            new = [names[e] for e in self.elements]
        else:
            new = list(names)
        e = self.elements
        pos = {x: new[i] for i, x in enumerate(e)}
        return Poset(new, [(pos[a], pos[b]) for a, b in self.cover_names()], name=name or self.name)

    def to_dict(self) -> dict:
        d = {"elements": list(self.elements), "covers": [list(c) for c in self.cover_names()]}
        if self.name:
            d["name"] = self.name
        return d


class Lattice(Poset):
    """A poset with all binary joins and meets; build via :func:`validate_lattice`."""

    __slots__ = ("join", "meet", "bottom", "top")

    def __init__(self, *args, **kwargs):
        raise TypeError("use validate_lattice() or Lattice.from_poset()")

    @classmethod
    def from_poset(cls, p: Poset) -> "Lattice":
        return validate_lattice(p)

    @property
    def poset(self) -> Poset:
        return Poset._from_masks(self.elements, self.down, self.name)

    def join_of(self, x: str, y: str) -> str:
        return self.elements[self.join[self._idx(x)][self._idx(y)]]

    def meet_of(self, x: str, y: str) -> str:
        return self.elements[self.meet[self._idx(x)][self._idx(y)]]

    def dual(self, name=None) -> "Lattice":
        return validate_lattice(Poset.dual(self, name=name))

    def relabel(self, names, name=None) -> "Lattice":
        return validate_lattice(Poset.relabel(self, names, name=name))

    def is_chain(self) -> bool:
        return all(len(c) <= 1 for c in self.upper_covers)


def validate_lattice(p: Poset) -> Lattice:
    """Check that every pair has a least upper and greatest lower bound."""
    n = p.n
    if n == 0:
        raise NotALattice(None, None, "bound")
    by_up = {m: i for i, m in enumerate(p.up)}
    by_down = {m: i for i, m in enumerate(p.down)}
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        join[i][i] = meet[i][i] = i
        for j in range(i + 1, n):
            k = by_up.get(p.up[i] & p.up[j])
            if k is None:
                raise NotALattice(p.elements[i], p.elements[j], "join")
            m = by_down.get(p.down[i] & p.down[j])
            if m is None:
                raise NotALattice(p.elements[i], p.elements[j], "meet")
            join[i][j] = join[j][i] = k
            meet[i][j] = meet[j][i] = m
    full = (1 << n) - 1
    L = Lattice.__new__(Lattice)
    Poset._setup(L, p.elements, p.index, p.covers, p.name)
    L.down, L.up = p.down, p.up
    L.join = tuple(tuple(r) for r in join)
    L.meet = tuple(tuple(r) for r in meet)
    L.bottom = by_up[full]
    L.top = by_down[full]
    return L


def _ji_indices(L: Lattice) -> list[int]:
    return [i for i in range(L.n) if len(L.lower_covers[i]) == 1]


def join_irreducibles(L: Lattice) -> frozenset[str]:
    return frozenset(L.elements[i] for i in _ji_indices(L))


def jplus(L: Lattice) -> frozenset[str]:
    return join_irreducibles(L) | {L.elements[L.bottom], L.elements[L.top]}


def ji_poset(L: Lattice) -> Poset:
    """J(L) as an ordered set."""
    return L.subposet(_ji_indices(L))


def max_antichain_at_least(p: Poset, k: int) -> bool:
    """True iff ``p`` has ``k`` pairwise incomparable elements."""
    n = p.n
    if k <= 1:
        return n >= k
    comp = [p.down[i] | p.up[i] for i in range(n)]

    def grow(allowed, need):
        if need == 0:
            return True
        if popcount(allowed) < need:
            return False
        for i in bits(allowed):
            allowed &= ~(1 << i)
            if grow(allowed & ~comp[i], need - 1):
                return True
        return False

    return grow((1 << n) - 1, k)


def sectional_complement(L: Lattice, a: str, b: str) -> str | None:
    """Some ``w`` with ``a ∧ w = 0`` and ``a ∨ w = b``, or None."""
    i, j = L._idx(a), L._idx(b)
    if not L.le(i, j):
        raise NotComparable(f"{a!r} is not below {b!r}")
    w = _complement_in(L, i, j)
    return None if w is None else L.elements[w]


def _complement_in(L: Lattice, i: int, j: int) -> int | None:
    for w in bits(L.down[j]):
        if L.meet[i][w] == L.bottom and L.join[i][w] == j:
            return w
    return None


def is_sectionally_complemented(L: Lattice) -> bool:
    for j in range(L.n):
        for i in bits(L.down[j]):
            if _complement_in(L, i, j) is None:
                return False
    return True


# isomorphism


@dataclass(frozen=True)
class IsoMap:
    """An order isomorphism, as a mapping between element names."""

    mapping: dict

    def __call__(self, x):
        return self.mapping[x]

    def inverse(self) -> "IsoMap":
        return IsoMap({v: k for k, v in self.mapping.items()})

    def compose(self, other: "IsoMap") -> "IsoMap":
        """``other`` after ``self``."""
        return IsoMap({k: other.mapping[v] for k, v in self.mapping.items()})


def iter_isomorphisms(A: Poset, B: Poset) -> Iterator[dict[int, int]]:
    """All order isomorphisms ``A -> B`` as index maps."""
    n = A.n
    if n != B.n or len(A.covers) != len(B.covers):
        return
    # colour refinement along covers with one ranking shared by both sides
    def shared(p, q):
        ca = _base_colors(p)
        cb = _base_colors(q)
        while True:
            sa = [(ca[i], tuple(sorted(ca[j] for j in p.lower_covers[i])),
                   tuple(sorted(ca[j] for j in p.upper_covers[i]))) for i in range(n)]
            sb = [(cb[i], tuple(sorted(cb[j] for j in q.lower_covers[i])),
                   tuple(sorted(cb[j] for j in q.upper_covers[i]))) for i in range(n)]
            if sorted(sa) != sorted(sb):
                return None, None
            ranks = {s: r for r, s in enumerate(sorted(set(sa)))}
            na = [ranks[s] for s in sa]
            nb = [ranks[s] for s in sb]
            if len(set(na)) == len(set(ca)):
                return na, nb
            ca, cb = na, nb

    ca, cb = shared(A, B)
    if ca is None:
        return
    by_color: dict[int, list[int]] = {}
    for j in range(n):
        by_color.setdefault(cb[j], []).append(j)
    # rarest colour first, then by linear extension to keep neighbours close
    order = sorted(range(n), key=lambda i: (len(by_color[ca[i]]), popcount(A.down[i]), i))
    fwd = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def extend(k):
        if k == n:
            yield dict(enumerate(fwd))
            return
        x = order[k]
        for y in by_color[ca[x]]:
            if used[y]:
                continue
            ok = True
            for z in assigned:
                w = fwd[z]
                if A.le(z, x) != B.le(w, y) or A.le(x, z) != B.le(y, w):
                    ok = False
                    break
            if not ok:
                continue
            fwd[x] = y
            used[y] = True
            assigned.append(x)
            yield from extend(k + 1)
            assigned.pop()
            used[y] = False
            fwd[x] = -1

    yield from extend(0)


def _base_colors(p: Poset) -> list[tuple]:
    h, d = p.heights(), p.depths()
    return [
        (h[i], d[i], len(p.lower_covers[i]), len(p.upper_covers[i]),
         popcount(p.down[i]), popcount(p.up[i]))
        for i in range(p.n)
    ]


def find_isomorphism(A: Poset, B: Poset) -> IsoMap | None:
    for m in iter_isomorphisms(A, B):
        iso = IsoMap({A.elements[i]: B.elements[j] for i, j in m.items()})
        if isinstance(A, Lattice) and isinstance(B, Lattice):
            for x in range(A.n):
                for y in range(x + 1, A.n):
                    assert m[A.join[x][y]] == B.join[m[x]][m[y]]
                    assert m[A.meet[x][y]] == B.meet[m[x]][m[y]]
        return iso
    return None


def automorphisms(p: Poset) -> list[dict[int, int]]:
    return list(iter_isomorphisms(p, p))


def is_isomorphic(A: Poset, B: Poset) -> bool:
    return next(iter_isomorphisms(A, B), None) is not None


def antichains(p: Poset, min_size: int = 0) -> Iterator[int]:
    """All antichains of ``p`` as bit masks (the empty one included when min_size is 0)."""
    n = p.n
    comp = [p.down[i] | p.up[i] for i in range(n)]

    def rec(start, allowed, mask, size):
        if size >= min_size:
            yield mask
        for i in range(start, n):
            if allowed >> i & 1:
                yield from rec(i + 1, allowed & ~comp[i], mask | 1 << i, size + 1)

    yield from rec(0, (1 << n) - 1, 0, 0)


def pairs(n: int):
    return combinations(range(n), 2)
