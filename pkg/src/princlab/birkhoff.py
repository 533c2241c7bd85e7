"""Finite distributive lattices via down-sets of their join-irreducibles."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCandidate, NotDistributive
from .order import (
    Lattice, Poset, antichains, bits, ji_poset, jplus, max_antichain_at_least, validate_lattice,
)


def downset_lattice(p: Poset, name=None) -> Lattice:
    """Down-sets of ``p`` ordered by inclusion, named by their sorted members."""
    seen = set()
    for a in antichains(p):
        m = 0
        for i in bits(a):
            m |= p.down[i]
        seen.add(m)
    sets = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    names = ["{" + ",".join(p.elements[i] for i in bits(m)) + "}" for m in sets]
    down = []
    for t in sets:
        down.append(sum(1 << k for k, s in enumerate(sets) if s & ~t == 0))
    return validate_lattice(Poset._from_masks(names, down, name=name))


def is_distributive(L: Lattice) -> bool:
    j, m = L.join, L.meet
    r = range(L.n)
    return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]] for x in r for y in r for z in r)


def _require(D: Lattice):
    if not is_distributive(D):
        raise NotDistributive(D.name or "lattice")


def is_planar_distributive(D: Lattice) -> bool:
    """Planar iff J(D) has no 3-element antichain (distributive D only)."""
    _require(D)
    return not max_antichain_at_least(ji_poset(D), 3)


def dual_atoms(L: Lattice) -> list[str]:
    return [L.elements[i] for i in L.lower_covers[L.top]]


def czedli_fully_representable(D: Lattice) -> bool:
    """Planar, and at most one dual atom is join-reducible."""
    if not is_planar_distributive(D):
        return False
    reducible = [x for x in D.lower_covers[D.top] if len(D.lower_covers[x]) > 1]
    return len(reducible) <= 1


def join_reducible_nonbound(D: Lattice) -> list[str]:
    """D − J⁺(D), in element order."""
    jp = jplus(D)
    return [x for x in D.elements if x not in jp]


@dataclass(frozen=True)
class Candidate:
    """A subset Q with J⁺(D) ⊆ Q ⊆ D."""

    d: Lattice
    members: frozenset

    def __post_init__(self):
        unknown = set(self.members) - set(self.d.elements)
        if unknown:
            raise InvalidCandidate(f"not elements of D: {sorted(unknown)}")
        missing = jplus(self.d) - self.members
        if missing:
            raise InvalidCandidate(f"J+(D) not contained in Q; missing {sorted(missing)}")

    @property
    def proper(self) -> bool:
        return len(self.members) != self.d.n

    @property
    def omitted(self) -> list[str]:
        return [x for x in self.d.elements if x not in self.members]

    @property
    def mask(self) -> int:
        return sum(1 << self.d.index[x] for x in self.members)

    def to_dict(self) -> dict:
        return {"d": self.d.name, "q": [x for x in self.d.elements if x in self.members]}

    @classmethod
    def from_dict(cls, obj: dict, d: Lattice) -> "Candidate":
        if obj.get("d") not in (None, d.name):
            raise InvalidCandidate(f"candidate refers to {obj['d']!r}, not {d.name!r}")
        return cls(d, frozenset(obj["q"]))

    def __repr__(self):
        return f"Candidate({self.d.name}, omit={self.omitted})"


def candidates(D: Lattice) -> list[Candidate]:
    """All candidates, ordered by the bit mask over the join-reducible elements."""
    _require(D)
    free = join_reducible_nonbound(D)
    base = jplus(D)
    out = []
    for m in range(1 << len(free)):
        out.append(Candidate(D, frozenset(base | {free[k] for k in bits(m)})))
    return out


def full_candidate(D: Lattice) -> Candidate:
    return Candidate(D, frozenset(D.elements))


def jplus_candidate(D: Lattice) -> Candidate:
    return Candidate(D, jplus(D))


def ji_unit(D: Lattice) -> bool:
    return len(D.lower_covers[D.top]) == 1
