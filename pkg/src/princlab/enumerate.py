"""Isomorph-free generation of finite lattices and distributive lattices.

A lattice with n >= 2 elements is a finite meet-semilattice with n - 1
elements plus an adjoined top.  Removing a maximal element from a
meet-semilattice leaves a meet-semilattice, so every class is reached by
adding one new maximal element above a nonempty antichain of a smaller
semilattice.  Children are deduplicated by their nauty certificate.
"""

from __future__ import annotations

import hashlib
import os
import string
from typing import Iterator

import pynauty

from .birkhoff import downset_lattice
from .errors import BoundTooLarge
from .order import Lattice, Poset, antichains, bits, popcount, validate_lattice

DEFAULT_CAP = 12
DISTRIBUTIVE_CAP = 12


def size_cap() -> int:
    return int(os.environ.get("PRINCLAB_MAX_SIZE", DEFAULT_CAP))


def _covers_of(down) -> list[list[int]]:
    """Upper-cover adjacency from reflexive down masks."""
    n = len(down)
    adj = [[] for _ in range(n)]
    for j in range(n):
        strict = down[j] & ~(1 << j)
        below = strict
        for i in bits(strict):
            below &= ~(down[i] & ~(1 << i))
        for i in bits(below):
            adj[i].append(j)
    return adj


def _graph(down) -> pynauty.Graph:
    adj = _covers_of(down)
    return pynauty.Graph(len(down), directed=True, adjacency_dict={i: a for i, a in enumerate(adj) if a})


def _canonical(down) -> tuple[bytes, tuple[int, ...]]:
    """Certificate plus the structure relabelled into a canonical linear extension."""
    g = _graph(down)
    cert = pynauty.certificate(g)
    lab = pynauty.canon_label(g)
    rank = {v: k for k, v in enumerate(lab)}
    order = sorted(range(len(down)), key=lambda v: (popcount(down[v]), rank[v]))
    pos = {v: k for k, v in enumerate(order)}
    new = []
    for v in order:
        new.append(sum(1 << pos[u] for u in bits(down[v])))
    return cert, tuple(new)


def canonical_form(p: Poset) -> bytes:
    """Canonical encoding of the cover relation; equal iff isomorphic."""
    if p.n == 0:
        return b""
    return p.n.to_bytes(2, "big") + pynauty.certificate(_graph(p.down))


def form_hash(p: Poset) -> str:
    return hashlib.sha1(canonical_form(p)).hexdigest()[:12]


class _SemilatticeLevels:
    """Meet-semilattices (with 0) by size, grown on demand and memoised."""

    def __init__(self):
        self.levels: list[list[tuple[int, ...]]] = [[], [(1,)]]

    def get(self, m: int) -> list[tuple[int, ...]]:
        while len(self.levels) <= m:
            self.levels.append(self._grow(self.levels[-1]))
        return self.levels[m]

    @staticmethod
    def _grow(parents):
        found: dict[bytes, tuple[int, ...]] = {}
        for down in parents:
            m = len(down)
            by_mask = set(down)
            p = Poset._from_masks([str(i) for i in range(m)], down)
            for a in antichains(p, min_size=1):
                below = 0
                for i in bits(a):
                    below |= down[i]
                if all((below & d) in by_mask for d in down):
                    child = down + (below | 1 << m,)
                    cert, canon = _canonical(child)
                    if cert not in found:
                        found[cert] = canon
        return [found[c] for c in sorted(found)]


_SEMI = _SemilatticeLevels()


def _names(n: int) -> list[str]:
    letters = string.ascii_lowercase
    return ["0"] + [letters[k] if k < 26 else f"e{k}" for k in range(n - 2)] + ["1"]


def _lattice_from_semilattice(down, name) -> Lattice:
    m = len(down)
    full = (1 << (m + 1)) - 1
    masks = list(down) + [full]
    return validate_lattice(Poset._from_masks(_names(m + 1), masks, name=name))


def _check(n, cap):
    if n < 1 or n > cap:
        raise BoundTooLarge(f"size {n} outside 1..{cap}")


def enumerate_lattices(n: int) -> Iterator[Lattice]:
    """Every n-element lattice once up to isomorphism, in a deterministic order."""
    _check(n, size_cap())
    if n == 1:
        yield validate_lattice(Poset(["0"], [], name="L1_0"))
        return
    for k, down in enumerate(_SEMI.get(n - 1)):
        yield _lattice_from_semilattice(down, f"L{n}_{k}")


def count_lattices(n: int) -> int:
    _check(n, size_cap())
    return 1 if n == 1 else len(_SEMI.get(n - 1))


def lattices_upto(n: int) -> Iterator[Lattice]:
    for k in range(1, n + 1):
        yield from enumerate_lattices(k)


class _PosetLevels:
    """Posets by size, pruned to those with at most ``limit`` down-sets."""

    def __init__(self):
        self.limit = 0
        self.levels: list[list[tuple[int, ...]]] = []

    def get(self, k: int, limit: int) -> list[tuple[int, ...]]:
        if limit > self.limit:
            self.limit = limit
            self.levels = [[()]]
        while len(self.levels) <= k:
            self.levels.append(self._grow(self.levels[-1]))
        return self.levels[k]

    def _grow(self, parents):
        found: dict[bytes, tuple[int, ...]] = {}
        for down in parents:
            m = len(down)
            p = Poset._from_masks([str(i) for i in range(m)], down)
            for a in antichains(p):
                below = 0
                for i in bits(a):
                    below |= down[i]
                child = down + (below | 1 << m,)
                q = Poset._from_masks([str(i) for i in range(m + 1)], child)
                if sum(1 for _ in antichains(q)) > self.limit:
                    continue
                cert, canon = _canonical(child)
                found.setdefault(cert, canon)
        return [found[c] for c in sorted(found)]


_POSETS = _PosetLevels()


def enumerate_distributive(n: int) -> Iterator[Lattice]:
    """Every n-element distributive lattice once up to isomorphism.

    These are the down-set lattices of the posets with exactly n down-sets;
    such posets have at most n - 1 elements.
    """
    _check(n, DISTRIBUTIVE_CAP)
    limit = max(n, _POSETS.limit)
    seen = set()
    k_out = 0
    for k in range(0, n):
        for down in _POSETS.get(k, limit):
            p = Poset._from_masks([f"p{i + 1}" for i in range(k)], down)
            if sum(1 for _ in antichains(p)) != n:
                continue
            form = canonical_form(p)
            if form in seen:
                continue
            seen.add(form)
            yield downset_lattice(p, name=f"D{n}_{k_out}")
            k_out += 1


_ALL_POSETS = _PosetLevels()


def enumerate_posets(k: int) -> Iterator[Poset]:
    """Every k-element poset once up to isomorphism (k <= 7 is quick)."""
    for j, down in enumerate(_ALL_POSETS.get(k, 1 << 62)):
        yield Poset._from_masks([f"p{i + 1}" for i in range(k)], down, name=f"P{k}_{j}")


def bounded_posets(n: int) -> Iterator[Poset]:
    """Every bounded poset with n >= 2 elements: some P⁻ with 0 and 1 adjoined."""
    from .library import bounded

    for p in enumerate_posets(n - 2):
        yield bounded(p, name=f"B{p.name}")
