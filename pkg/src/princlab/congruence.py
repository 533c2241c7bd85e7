"""Congruences of finite lattices.

A congruence is stored as a tuple of block bit masks sorted by their lowest
element index, so two congruences of the same lattice are equal iff their
block tuples are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import NoLargestCollapsedElement, NotSectionallyComplemented
from .order import (
    Lattice, Poset, antichains, bits, is_sectionally_complemented, jplus, validate_lattice,
)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def closure_labels(L: Lattice, seeds: Iterable[tuple[int, int]]) -> list[int]:
    """Class label (smallest member index) of every element under the
    congruence generated by the index pairs ``seeds``.

    Each successful union records its pair; those pairs generate the
    equivalence, so translating each of them by every ``z`` reaches the
    fixpoint of compatibility closure.
    """
    n = L.n
    join, meet = L.join, L.meet
    parent = list(range(n))
    queue = []

    def union(x, y):
        rx, ry = _find(parent, x), _find(parent, y)
        if rx == ry:
            return
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        queue.append((x, y))

    for x, y in seeds:
        union(x, y)
    k = 0
    while k < len(queue):
        x, y = queue[k]
        k += 1
        jx, jy, mx, my = join[x], join[y], meet[x], meet[y]
        for z in range(n):
            if jx[z] != jy[z]:
                union(jx[z], jy[z])
            if mx[z] != my[z]:
                union(mx[z], my[z])
    return [_find(parent, x) for x in range(n)]


def _blocks(labels) -> tuple[int, ...]:
    acc: dict[int, int] = {}
    for i, r in enumerate(labels):
        acc[r] = acc.get(r, 0) | 1 << i
    return tuple(sorted(acc.values(), key=lambda m: (m & -m)))


@dataclass(frozen=True)
class Congruence:
    """A compatible partition of a lattice's elements."""

    blocks: tuple[int, ...]
    lattice: Lattice = field(compare=False, hash=False, repr=False)

    @classmethod
    def from_labels(cls, L: Lattice, labels) -> "Congruence":
        return cls(_blocks(labels), L)

    @classmethod
    def from_names(cls, L: Lattice, blocks: Iterable[Iterable[str]]) -> "Congruence":
        labels = list(range(L.n))
        for block in blocks:
            idx = [L._idx(x) for x in block]
            for i in idx:
                labels[i] = min(idx)
        return cls.from_labels(L, labels)

    @property
    def labels(self) -> list[int]:
        out = [0] * self.lattice.n
        for b in self.blocks:
            low = (b & -b).bit_length() - 1
            for i in bits(b):
                out[i] = low
        return out

    def block_of(self, i: int) -> int:
        for b in self.blocks:
            if b >> i & 1:
                return b
        raise IndexError(i)

    def collapses(self, x: int, y: int) -> bool:
        return bool(self.block_of(x) >> y & 1)

    def __le__(self, other: "Congruence") -> bool:
        return all(any(b & ~c == 0 for c in other.blocks) for b in self.blocks)

    def __lt__(self, other: "Congruence") -> bool:
        return self != other and self <= other

    def join(self, other: "Congruence") -> "Congruence":
        L = self.lattice
        parent = list(range(L.n))
        for b in self.blocks + other.blocks:
            first = (b & -b).bit_length() - 1
            for i in bits(b):
                ra, rb = _find(parent, first), _find(parent, i)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return Congruence.from_labels(L, [_find(parent, i) for i in range(L.n)])

    def meet(self, other: "Congruence") -> "Congruence":
        blocks = [b & c for b in self.blocks for c in other.blocks if b & c]
        return Congruence(tuple(sorted(blocks, key=lambda m: m & -m)), self.lattice)

    def is_compatible(self) -> bool:
        L = self.lattice
        lab = self.labels
        for b in self.blocks:
            members = list(bits(b))
            x = members[0]
            for y in members[1:]:
                for z in range(L.n):
                    if lab[L.join[x][z]] != lab[L.join[y][z]] or lab[L.meet[x][z]] != lab[L.meet[y][z]]:
                        return False
        return True

    def name_blocks(self) -> list[list[str]]:
        e = self.lattice.elements
        return [[e[i] for i in bits(b)] for b in self.blocks]

    def __str__(self):
        return "{" + "|".join(",".join(b) for b in self.name_blocks()) + "}"


def zero(L: Lattice) -> Congruence:
    return Congruence(tuple(1 << i for i in range(L.n)), L)


def one(L: Lattice) -> Congruence:
    return Congruence(((1 << L.n) - 1,), L)


def principal_congruence(L: Lattice, a: str, b: str) -> Congruence:
    i, j = L._idx(a), L._idx(b)
    return Congruence.from_labels(L, closure_labels(L, [(i, j)]))


def _con(L: Lattice, i: int, j: int) -> Congruence:
    return Congruence.from_labels(L, closure_labels(L, [(i, j)]))


@dataclass
class ConLattice:
    """Con L ordered by refinement, with Princ L marked.

    ``lattice`` names the congruences ``c0..ck``; ``c0`` is the identity.
    """

    source: Lattice
    congruences: list[Congruence]
    lattice: Lattice
    principal: frozenset[int]
    generators: dict[int, tuple[str, str]]

    def __len__(self):
        return len(self.congruences)

    def index_of(self, theta: Congruence) -> int:
        return self.congruences.index(theta)

    def name_of(self, theta: Congruence) -> str:
        return self.lattice.elements[self.index_of(theta)]

    @property
    def principal_names(self) -> list[str]:
        return [self.lattice.elements[k] for k in sorted(self.principal)]

    def join_irreducible_indices(self) -> list[int]:
        return [k for k in range(len(self)) if len(self.lattice.lower_covers[k]) == 1]

    def to_dict(self) -> dict:
        d = self.lattice.to_dict()
        d["principal"] = self.principal_names
        d["blocks"] = {self.lattice.elements[k]: str(c) for k, c in enumerate(self.congruences)}
        return d


def congruence_lattice(L: Lattice) -> ConLattice:
    """All congruences, as joins of down-sets of the prime-interval congruences.

    The distinct cover congruences are exactly the join-irreducibles of
    Con L, so each congruence is fixed by the set of them it contains and
    the refinement order is inclusion of those sets.
    """
    gens = []
    pairs = []
    cover_gen = {}
    for a, b in sorted(L.covers):
        c = _con(L, a, b)
        if c not in gens:
            gens.append(c)
            pairs.append((a, b))
        cover_gen[(a, b)] = gens.index(c)
    m = len(gens)
    below = [sum(1 << s for s in range(m) if gens[t].collapses(*pairs[s])) for t in range(m)]
    gp = Poset._from_masks([str(t) for t in range(m)], below)
    by_mask = {}
    for anti in antichains(gp):
        mask = 0
        for t in bits(anti):
            mask |= below[t]
        parent = list(range(L.n))
        for t in bits(mask):
            for blk in gens[t].blocks:
                first = (blk & -blk).bit_length() - 1
                for i in bits(blk):
                    ra, rb = _find(parent, first), _find(parent, i)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        by_mask[mask] = Congruence.from_labels(L, [_find(parent, i) for i in range(L.n)])
    order = sorted(by_mask, key=lambda k: (-len(by_mask[k].blocks), by_mask[k].blocks))
    congs = [by_mask[k] for k in order]
    names = [f"c{k}" for k in range(len(congs))]
    down = []
    for mj in order:
        down.append(sum(1 << i for i, mi in enumerate(order) if mi & ~mj == 0))
    con_lat = validate_lattice(Poset._from_masks(names, down, name=f"Con({L.name or ''})"))
    pos = {mk: k for k, mk in enumerate(order)}
    masks = _principal_masks(L, [below[cover_gen[c]] for c in sorted(L.covers)], sorted(L.covers))
    generators: dict[int, tuple[str, str]] = {}
    for j in range(L.n):
        for i in bits(L.down[j]):
            generators.setdefault(pos[masks[(i, j)]], (L.elements[i], L.elements[j]))
    return ConLattice(L, congs, con_lat, frozenset(generators), generators)


def principal_set(L: Lattice) -> frozenset[Congruence]:
    """{con(a, b) : a <= b}; every other pair gives con(a ∧ b, a ∨ b)."""
    return frozenset(_con(L, i, j) for j in range(L.n) for i in bits(L.down[j]))


def check_sandwich(L: Lattice) -> bool:
    C = congruence_lattice(L)
    jp = {C.lattice.index[x] for x in jplus(C.lattice)}
    return jp <= C.principal <= set(range(len(C)))


def folklore_generator(L: Lattice, theta: Congruence) -> str:
    """Largest element collapsed with the bottom; it generates ``theta``."""
    if not is_sectionally_complemented(L):
        raise NotSectionallyComplemented(L.name or "lattice")
    block = theta.block_of(L.bottom)
    top = [a for a in bits(block) if L.down[a] & block == block]
    if not top:
        raise NoLargestCollapsedElement(str(theta))
    a = top[0]
    if _con(L, L.bottom, a) != theta:
        raise NoLargestCollapsedElement(f"con(0, {L.elements[a]}) != {theta}")
    return L.elements[a]


def _principal_masks(L: Lattice, cover_masks, covers) -> dict[tuple[int, int], int]:
    """con(x, y) for x <= y as a join-irreducible mask: the OR of the cover
    masks along any maximal chain from x to y."""
    of_cover = dict(zip(covers, cover_masks))
    masks: dict[tuple[int, int], int] = {}
    for x in range(L.n):
        masks[(x, x)] = 0
    for y in L.linear_extension():
        for x in bits(L.down[y]):
            if x == y:
                continue
            for z in L.lower_covers[y]:
                if L.down[z] >> x & 1:
                    masks[(x, y)] = masks[(x, z)] | of_cover[(z, y)]
                    break
    return masks


# compact profile used by the witness search


@dataclass(frozen=True)
class Profile:
    """Con L reduced to the ordered set of its join-irreducibles.

    ``ji_down[k]`` is the mask of join-irreducible congruences below the
    k-th one; ``principal`` holds each principal congruence as the mask of
    join-irreducibles it contains.
    """

    ji_down: tuple[int, ...]
    principal: frozenset[int]
    ji_pairs: tuple[tuple[int, int], ...]


def profile(L: Lattice) -> Profile:
    cover_label = {}
    reps: list[tuple[int, int]] = []
    rep_labels: list[list[int]] = []
    key_of: dict[tuple, int] = {}
    for a, b in sorted(L.covers):
        lab = closure_labels(L, [(a, b)])
        key = tuple(lab)
        k = key_of.get(key)
        if k is None:
            k = key_of[key] = len(reps)
            reps.append((a, b))
            rep_labels.append(lab)
        cover_label[(a, b)] = k
    m = len(reps)
    ji_down = []
    for k in range(m):
        lab = rep_labels[k]
        ji_down.append(sum(1 << t for t in range(m) if lab[reps[t][0]] == lab[reps[t][1]]))
    covers = sorted(L.covers)
    masks = _principal_masks(L, [ji_down[cover_label[c]] for c in covers], covers)
    principal = frozenset(masks.values())
    return Profile(tuple(ji_down), principal, tuple(reps))


def ji_count(L: Lattice) -> int:
    return len({tuple(closure_labels(L, [c])) for c in L.covers})

