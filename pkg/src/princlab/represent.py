"""Bounded search for lattices representing a candidate Q ⊆ D.

A witness is a finite lattice L with an isomorphism Con L ≅ D carrying
Princ L onto Q.  Since Con L is distributive it is determined by the
ordered set of its join-irreducibles, and each congruence is the down-set
of join-irreducibles below it; the search compares those compact
profiles and only materialises Con L for the witness it reports.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from . import enumerate as enum
from .birkhoff import (
    Candidate, candidates, czedli_fully_representable, is_distributive, is_planar_distributive,
    ji_unit,
)
from .congruence import congruence_lattice, profile
from .construct import build_principal_lattice
from .errors import InvalidCandidate, NotDistributive
from .library import boolean, grid
from .order import IsoMap, Lattice, Poset, bits, iter_isomorphisms, ji_poset, jplus, validate_lattice


# D side


class Target:
    """D described through J(D): element masks, automorphisms, candidate lookup."""

    def __init__(self, D: Lattice):
        if not is_distributive(D):
            raise NotDistributive(D.name or "lattice")
        self.D = D
        self.ji = [i for i in range(D.n) if len(D.lower_covers[i]) == 1]
        self.jposet = D.subposet(self.ji)
        self.form = enum.canonical_form(self.jposet)
        pos = {j: k for k, j in enumerate(self.ji)}
        self.mask_of = [sum(1 << pos[j] for j in self.ji if D.le(j, x)) for x in range(D.n)]
        self.element_of = {m: x for x, m in enumerate(self.mask_of)}
        self.autos = list(iter_isomorphisms(self.jposet, self.jposet))

    def q_masks(self, Q: Candidate) -> frozenset[int]:
        return frozenset(self.mask_of[self.D.index[x]] for x in Q.members)

    @staticmethod
    def apply(perm: dict[int, int], mask: int) -> int:
        return sum(1 << perm[k] for k in bits(mask))


def _profile_entry(L: Lattice):
    pr = profile(L)
    m = len(pr.ji_down)
    jp = Poset._from_masks([str(k) for k in range(m)], pr.ji_down)
    return enum.canonical_form(jp), pr.ji_down, pr.principal


def _profiles_of_downs(downs, n):
    out = []
    for k, down in downs:
        L = enum._lattice_from_semilattice(down, f"L{n}_{k}")
        out.append((k, *_profile_entry(L)))
    return out


class _ProfileIndex:
    """Per size: J(Con L) form -> [(index, ji_down, principal masks)]."""

    def __init__(self):
        self.levels: dict[int, dict[bytes, list]] = {}

    def level(self, n: int, workers: int = 1) -> dict[bytes, list]:
        if n in self.levels:
            return self.levels[n]
        index: dict[bytes, list] = {}
        if n == 1:
            L = next(enum.enumerate_lattices(1))
            rows = [(0, *_profile_entry(L))]
        else:
            enum._check(n, enum.size_cap())
            downs = list(enumerate(enum._SEMI.get(n - 1)))
            if workers > 1 and len(downs) > 2000:
                size = -(-len(downs) // (workers * 4))
                chunks = [downs[i:i + size] for i in range(0, len(downs), size)]
                with ProcessPoolExecutor(workers) as pool:
                    rows = [r for part in pool.map(_profiles_of_downs, chunks, [n] * len(chunks)) for r in part]
            else:
                rows = _profiles_of_downs(downs, n)
        for k, form, ji_down, principal in rows:
            index.setdefault(form, []).append((k, ji_down, principal))
        self.levels[n] = index
        return index


PROFILES = _ProfileIndex()


def lattice_at(n: int, k: int) -> Lattice:
    if n == 1:
        return next(enum.enumerate_lattices(1))
    return enum._lattice_from_semilattice(enum._SEMI.get(n - 1)[k], f"L{n}_{k}")


# reports


@dataclass
class WitnessReport:
    d: Lattice
    q: Candidate
    witness: Lattice | None
    iso: IsoMap | None
    search_bound: int
    elapsed: float
    method: str = "enumeration"
    examined: int = 0

    def __post_init__(self):
        if self.witness is not None:
            verify_witness(self.witness, self.iso, self.q)

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def outcome(self) -> str:
        if self.found:
            return f"Witness(|L|={self.witness.n})"
        return f"NoneUpTo({self.search_bound})"

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "d": self.d.name,
            "q": self.q.to_dict()["q"],
            "omitted": self.q.omitted,
            "outcome": "witness" if self.found else "none_up_to",
            "search_bound": self.search_bound,
            "method": self.method,
        }
        if self.found:
            d["lattice"] = self.witness.to_dict()
            d["iso"] = dict(sorted(self.iso.mapping.items(), key=lambda kv: int(kv[0][1:])))
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d


def verify_witness(L: Lattice, iso: IsoMap, Q: Candidate) -> None:
    """Recompute Con L from scratch and check iso is an order isomorphism onto D
    carrying Princ L onto Q; raises AssertionError otherwise."""
    C = congruence_lattice(L)
    D = Q.d
    CL = C.lattice
    m = iso.mapping
    assert set(m) == set(CL.elements) and set(m.values()) == set(D.elements), "not a bijection"
    for x in CL.elements:
        for y in CL.elements:
            assert CL.leq(x, y) == D.leq(m[x], m[y]), "not an order isomorphism"
    image = {m[x] for x in C.principal_names}
    assert image == set(Q.members), "Princ L does not map onto Q"


def _build_iso(L: Lattice, T: Target, ji_down, principal, Qm) -> IsoMap | None:
    m = len(ji_down)
    jp = Poset._from_masks([str(k) for k in range(m)], ji_down)
    psi = next(iter_isomorphisms(jp, T.jposet), None)
    if psi is None:
        return None
    image = frozenset(Target.apply(psi, pm) for pm in principal)
    for alpha in T.autos:
        if frozenset(Target.apply(alpha, x) for x in image) != Qm:
            continue
        full = {k: alpha[psi[k]] for k in range(m)}
        # congruence of L -> mask of join-irreducibles below it -> element of D
        C = congruence_lattice(L)
        pr = profile(L)
        mapping = {}
        for idx, theta in enumerate(C.congruences):
            mask = sum(1 << full[t] for t, (a, b) in enumerate(pr.ji_pairs) if theta.collapses(a, b))
            mapping[C.lattice.elements[idx]] = T.D.elements[T.element_of[mask]]
        return IsoMap(mapping)
    return None


def _matches(T: Target, rows, Qm_orbit) -> Iterable:
    for k, ji_down, principal in rows:
        m = len(ji_down)
        jp = Poset._from_masks([str(t) for t in range(m)], ji_down)
        psi = next(iter_isomorphisms(jp, T.jposet), None)
        if psi is None:
            continue
        image = frozenset(Target.apply(psi, pm) for pm in principal)
        if image in Qm_orbit:
            yield k, ji_down, principal


def _orbit(T: Target, Qm: frozenset[int]) -> set[frozenset[int]]:
    return {frozenset(Target.apply(a, x) for x in Qm) for a in T.autos}


def _check_candidate(D: Lattice, Q: Candidate):
    if Q.d is not D and (Q.d.elements != D.elements or Q.d.covers != D.covers):
        raise InvalidCandidate("candidate belongs to a different lattice")


def search_witness(D: Lattice, Q: Candidate, max_size: int, workers: int = 1,
                   constructive: bool = False) -> WitnessReport:
    """First lattice (by size, then enumeration order) representing Q, or NoneUpTo.

    With ``constructive`` the known constructions are tried once the
    enumeration up to ``max_size`` is exhausted.
    """
    T = Target(D)
    _check_candidate(D, Q)
    enum._check(max_size, enum.size_cap())
    t0 = time.perf_counter()
    Qm = T.q_masks(Q)
    orbit = _orbit(T, Qm)
    examined = 0
    for n in range(1, max_size + 1):
        level = PROFILES.level(n, workers)
        rows = level.get(T.form, [])
        examined += sum(len(v) for v in level.values())
        for k, ji_down, principal in _matches(T, rows, orbit):
            L = lattice_at(n, k)
            iso = _build_iso(L, T, ji_down, principal, Qm)
            return WitnessReport(D, Q, L, iso, max_size, time.perf_counter() - t0, "enumeration", examined)
    if constructive:
        rep = constructive_witness(D, Q, max_size, workers)
        if rep is not None:
            return rep
    return WitnessReport(D, Q, None, None, max_size, time.perf_counter() - t0, "enumeration", examined)


def witness_from_lattice(L: Lattice, D: Lattice, Q: Candidate, method: str, bound: int = 0) -> WitnessReport | None:
    """Witness report for a given L if it represents Q, else None."""
    T = Target(D)
    pr = profile(L)
    Qm = T.q_masks(Q)
    iso = _build_iso(L, T, pr.ji_down, pr.principal, Qm)
    if iso is None:
        return None
    return WitnessReport(D, Q, L, iso, bound, 0.0, method)


def jplus_construction(D: Lattice) -> Lattice:
    """build_principal_lattice on J⁺(D); represents Q = J⁺(D) when the unit is join-irreducible."""
    jp = D.subposet(D.index[x] for x in jplus(D))
    jp.name = f"Jp({D.name})"
    return build_principal_lattice(jp).lattice


def representable_candidates_desk(D: Lattice, max_size: int, workers: int = 1) -> dict[Candidate, WitnessReport]:
    """search_witness over all candidates, with the J⁺(D) construction as fallback."""
    cands = candidates(D)
    out = _search_many(D, cands, max_size, workers)
    return {c: out[k] for k, c in enumerate(cands)}


def _search_many(D: Lattice, cands: list[Candidate], max_size: int, workers: int = 1,
                 fallback: bool = True) -> list[WitnessReport]:
    T = Target(D)
    enum._check(max_size, enum.size_cap())
    t0 = time.perf_counter()
    masks = [T.q_masks(c) for c in cands]
    orbits = [_orbit(T, m) for m in masks]
    result: list[WitnessReport | None] = [None] * len(cands)
    examined = 0
    for n in range(1, max_size + 1):
        if all(r is not None for r in result):
            break
        level = PROFILES.level(n, workers)
        examined += sum(len(v) for v in level.values())
        rows = level.get(T.form, [])
        if not rows:
            continue
        for k, ji_down, principal in rows:
            open_ = [c for c in range(len(cands)) if result[c] is None]
            if not open_:
                break
            m = len(ji_down)
            jp = Poset._from_masks([str(t) for t in range(m)], ji_down)
            psi = next(iter_isomorphisms(jp, T.jposet), None)
            if psi is None:
                continue
            image = frozenset(Target.apply(psi, pm) for pm in principal)
            for c in open_:
                if image in orbits[c]:
                    L = lattice_at(n, k)
                    iso = _build_iso(L, T, ji_down, principal, masks[c])
                    result[c] = WitnessReport(D, cands[c], L, iso, max_size,
                                              time.perf_counter() - t0, "enumeration", examined)
    elapsed = time.perf_counter() - t0
    for c, Q in enumerate(cands):
        if result[c] is None and fallback:
            result[c] = constructive_witness(D, Q, max_size, workers)
        if result[c] is None:
            result[c] = WitnessReport(D, Q, None, None, max_size, elapsed, "enumeration", examined)
    return result


def _sublattice(D: Lattice, mask: int, name) -> Lattice:
    sub = D.subposet(bits(mask))
    sub.name = name
    return validate_lattice(sub)


def constructive_witness(D: Lattice, Q: Candidate, max_size: int, workers: int = 1,
                         depth: int = 3) -> WitnessReport | None:
    """Witness built from known constructions rather than found by enumeration.

    - Q = J⁺(D) with join-irreducible unit: the frame-and-gadget lattice of J⁺(D).
    - join-irreducible unit with lower cover u ∈ Q: M3 with an atom replaced
      by a witness for Q − {1} in ↓u.
    - D = ↓w with a square glued on top and the square's upper three in Q:
      the square with an atom replaced by a witness for Q ∩ ↓w.
    - D ≅ D1 × D2 and Q = Q1 × Q2: the product of witnesses, since
      congruences and principal congruences of a product are products.
    """
    from .construct import glue_top_square, m3_atom_replace

    if depth < 0 or D.n < 2:
        return None
    top = D.elements[D.top]
    if ji_unit(D) and Q.members == jplus(D):
        rep = witness_from_lattice(jplus_construction(D), D, Q, "construction:jplus", max_size)
        if rep is not None:
            return rep
    parts = []
    if ji_unit(D):
        u = D.lower_covers[D.top][0]
        if D.elements[u] in Q.members and u != D.bottom:
            parts.append(("m3", u, m3_atom_replace))
    co = D.lower_covers[D.top]
    if len(co) == 2:
        w = D.meet[co[0]][co[1]]
        outside = [x for x in range(D.n) if not D.le(x, w) and not D.le(w, x)]
        square = {D.top, *co}
        if not outside and D.n - bin(D.down[w]).count("1") == 3 and \
                all(D.elements[x] in Q.members for x in square):
            parts.append(("square", w, glue_top_square))
    for label, w, build in parts:
        sub = _sublattice(D, D.down[w], f"{D.name}|{D.elements[w]}")
        keep = Q.members - {top} if label == "m3" else Q.members & set(sub.elements)
        try:
            q_sub = Candidate(sub, frozenset(keep))
        except InvalidCandidate:
            continue
        inner = _search_many(sub, [q_sub], max_size, workers, fallback=False)[0]
        if not inner.found:
            inner = constructive_witness(sub, q_sub, max_size, workers, depth - 1)
        if inner is None or not inner.found:
            continue
        rep = witness_from_lattice(build(inner.witness), D, Q, f"construction:{label}[{inner.method}]", max_size)
        if rep is not None:
            return rep
    return _product_witness(D, Q, max_size, workers, depth)


def _factor(D: Lattice):
    """(a, b) with D ≅ ↓a × ↓b via x -> (x ∧ a, x ∧ b), or None."""
    jp = ji_poset(D)
    if jp.n < 2:
        return None
    # grow the comparability component of the first join-irreducible
    comp = {0}
    frontier = [0]
    while frontier:
        k = frontier.pop()
        for t in range(jp.n):
            if t not in comp and jp.comparable(k, t):
                comp.add(t)
                frontier.append(t)
    if len(comp) == jp.n:
        return None
    a = b = D.bottom
    for t in range(jp.n):
        x = D.index[jp.elements[t]]
        if t in comp:
            a = D.join[a][x]
        else:
            b = D.join[b][x]
    return a, b


def _product_witness(D, Q, max_size, workers, depth):
    from .library import product

    fac = _factor(D)
    if fac is None:
        return None
    a, b = fac
    names = Q.members
    q1 = {x for x in names if D.le(D.index[x], a)}
    q2 = {x for x in names if D.le(D.index[x], b)}
    joined = {D.elements[D.join[D.index[x]][D.index[y]]] for x in q1 for y in q2}
    if joined != set(names):
        return None
    inner = []
    for w, q in ((a, q1), (b, q2)):
        sub = _sublattice(D, D.down[w], f"{D.name}|{D.elements[w]}")
        try:
            cand = Candidate(sub, frozenset(q))
        except InvalidCandidate:
            return None
        rep = _search_many(sub, [cand], max_size, workers, fallback=False)[0]
        if not rep.found:
            rep = constructive_witness(sub, cand, max_size, workers, depth - 1)
        if rep is None or not rep.found:
            return None
        inner.append(rep)
    L = product(inner[0].witness, inner[1].witness, name=f"{inner[0].witness.name}x{inner[1].witness.name}")
    return witness_from_lattice(L, D, Q, f"construction:product[{inner[0].method},{inner[1].method}]", max_size)


# paper-specific checks


def check_lemma_two(L: Lattice) -> bool:
    """At most one non-principal congruence when Con L ≅ B3 (vacuously true otherwise)."""
    pr = profile(L)
    if len(pr.ji_down) != 3 or any(d != 1 << k for k, d in enumerate(pr.ji_down)):
        return True
    return 8 - len(pr.principal) <= 1


def c3sq_candidate() -> tuple[Lattice, Candidate]:
    """C3² with Q = {0, a, b, c, d, a∨c, 1} where a < b, c < d are the join-irreducibles."""
    D = grid(3, 3, name="C3^2")
    q = {"(0,0)", "(1,0)", "(2,0)", "(0,1)", "(0,2)", "(1,1)", "(2,2)"}
    return D, Candidate(D, frozenset(q))


def verify_c3sq_nonrepresentable(max_size: int, workers: int = 1) -> WitnessReport:
    D, Q = c3sq_candidate()
    return search_witness(D, Q, max_size, workers)


def _is_downset(D: Lattice, subset: set[str]) -> bool:
    return all(x in subset for y in subset for x in D.elements if D.leq(x, y))


def verify_downset_corollary() -> dict:
    """A representable Q whose Q − {1} is not a down-set.

    Princ C4 inside Con C4 ≅ B3 omits a dual atom, so Q − {1} is still a
    down-set; putting C4 in place of an atom of M3 adds a new unit above the
    old one, and then the omitted dual atom sits below a member of Q⁻.
    """
    from .construct import m3_atom_replace
    from .library import chain

    out = {}
    for label, L in (("C4", chain(4)), ("M3[C4]", m3_atom_replace(chain(4)))):
        C = congruence_lattice(L)
        D = C.lattice
        Q = set(C.principal_names) - {D.elements[D.top]}
        missing = [
            (x, y) for y in sorted(Q) for x in D.elements
            if D.leq(x, y) and x not in Q
        ]
        out[label] = {
            "con_size": len(C), "princ_size": len(C.principal),
            "q_minus_is_downset": _is_downset(D, Q),
            "counterexample": list(missing[0]) if missing else None,
        }
    out["holds"] = any(not v["q_minus_is_downset"] for v in out.values() if isinstance(v, dict))
    return out


def verify_planarity_necessity(max_d_size: int, max_l_size: int, workers: int = 1) -> dict:
    """Fully representable at desk scale implies planar; non-planar D get the antichain probe."""
    rows = []
    ok = True
    for n in range(2, max_d_size + 1):
        for D in enum.enumerate_distributive(n):
            planar = is_planar_distributive(D)
            reports = _search_many(D, candidates(D), max_l_size, workers)
            full = all(r.found for r in reports)
            row = {"d": D.name, "size": n, "planar": planar, "desk_fully_representable": full}
            if full and not planar:
                ok = False
            if not planar:
                Q = antichain_probe(D)
                rep = search_witness(D, Q, max_l_size, workers)
                row["probe_q"] = Q.to_dict()["q"]
                row["probe_outcome"] = rep.outcome
                if rep.found:
                    ok = False
            rows.append(row)
    return {"ok": ok, "rows": rows, "max_d_size": max_d_size, "max_l_size": max_l_size}


def antichain_probe(D: Lattice) -> Candidate:
    """Q = J(D) ∪ {α, 0, 1} with α the join of the first 3-antichain in J(D)."""
    jp = ji_poset(D)
    for tri in combinations(range(jp.n), 3):
        if all(not jp.comparable(x, y) for x, y in combinations(tri, 2)):
            a, b, c = (D.index[jp.elements[t]] for t in tri)
            alpha = D.join[D.join[a][b]][c]
            return Candidate(D, frozenset(jplus(D) | {D.elements[alpha]}))
    raise ValueError(f"{D.name} has no 3-element antichain in J(D)")


# atlas


@dataclass
class AtlasEntry:
    d: Lattice
    reports: list[WitnessReport]
    planar: bool
    czedli_prediction: bool
    expectations: list[str | None]

    @property
    def fully_representable(self) -> bool:
        return all(r.found for r in self.reports)

    def to_dict(self, timing=False) -> dict:
        return {
            "d": self.d.name,
            "size": self.d.n,
            "lattice": self.d.to_dict(),
            "planar": self.planar,
            "czedli_prediction": self.czedli_prediction,
            "fully_representable_up_to_bound": self.fully_representable,
            "czedli_agrees": self.czedli_prediction == self.fully_representable,
            "candidates": [
                {**r.to_dict(timing), "expected": e} for r, e in zip(self.reports, self.expectations)
            ],
        }


@dataclass
class AtlasReport:
    entries: list[AtlasEntry]
    max_d_size: int
    max_l_size: int
    elapsed: float = 0.0
    problems: list[str] = field(default_factory=list)

    @property
    def status(self) -> int:
        """0 all expectations hold, 3 a desk expectation fails, 4 bounds were insufficient."""
        if any(p.startswith("expectation") for p in self.problems):
            return 3
        if any(p.startswith("bound") for p in self.problems):
            return 4
        return 0

    def to_dict(self, timing=False) -> dict:
        d = {
            "max_d_size": self.max_d_size,
            "max_l_size": self.max_l_size,
            "entries": [e.to_dict(timing) for e in self.entries],
            "problems": self.problems,
            "status": self.status,
        }
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    def table(self) -> str:
        head = f"{'D':<8}{'|D|':>4}{'cand':>6}{'wit':>5}{'none':>6}  {'planar':<7}{'pred':<7}{'desk':<6}agree"
        lines = [head, "-" * len(head)]
        for e in self.entries:
            w = sum(r.found for r in e.reports)
            lines.append(
                f"{e.d.name:<8}{e.d.n:>4}{len(e.reports):>6}{w:>5}{len(e.reports) - w:>6}  "
                f"{str(e.planar):<7}{str(e.czedli_prediction):<7}{str(e.fully_representable):<6}"
                f"{e.czedli_prediction == e.fully_representable}"
            )
        lines.append(f"bounds: |D| <= {self.max_d_size}, |L| <= {self.max_l_size}; status {self.status}")
        for p in self.problems:
            lines.append(f"  ! {p}")
        return "\n".join(lines) + "\n"


def is_b3(D: Lattice) -> bool:
    return D.n == 8 and enum.canonical_form(D) == enum.canonical_form(boolean(3))


def expectation(D: Lattice, Q: Candidate) -> str | None:
    """What the known results say about Q: "representable", "not_representable" or None."""
    if Q.members == set(D.elements):
        return "representable"
    if ji_unit(D) and Q.members == jplus(D):
        return "representable"
    if D.n <= 7:
        return "representable"
    if is_b3(D):
        return "representable" if len(Q.omitted) <= 1 else "not_representable"
    return None


def atlas(max_d_size: int, max_l_size: int, workers: int = 1, min_d_size: int = 2) -> AtlasReport:
    t0 = time.perf_counter()
    entries = []
    problems = []
    for n in range(min_d_size, max_d_size + 1):
        for D in enum.enumerate_distributive(n):
            cands = candidates(D)
            reports = _search_many(D, cands, max_l_size, workers)
            exp = [expectation(D, Q) for Q in cands]
            entry = AtlasEntry(D, reports, is_planar_distributive(D), czedli_fully_representable(D), exp)
            entries.append(entry)
            for r, e in zip(reports, exp):
                if e == "representable" and not r.found:
                    problems.append(f"bound: {D.name} omit={r.q.omitted} NoneUpTo({max_l_size})")
                if e == "not_representable" and r.found:
                    problems.append(f"expectation: {D.name} omit={r.q.omitted} has a witness")
            if n <= 7 and entry.fully_representable and not entry.czedli_prediction:
                problems.append(f"expectation: planarity prediction disagrees on {D.name}")
            if is_b3(D) and entry.czedli_prediction:
                problems.append("expectation: planarity prediction calls B3 fully representable")
    return AtlasReport(entries, max_d_size, max_l_size, time.perf_counter() - t0, problems)


def d75_family() -> list[Lattice]:
    """7-element distributive lattices with join-irreducible unit and exactly two
    join-reducible elements u ≺ v."""
    out = []
    for D in enum.enumerate_distributive(7):
        red = [x for x in range(D.n) if len(D.lower_covers[x]) > 1]
        if ji_unit(D) and len(red) == 2 and (tuple(red) in D.covers or tuple(red[::-1]) in D.covers):
            out.append(D)
    return out

