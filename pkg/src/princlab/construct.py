"""Lattices whose principal congruences form a prescribed bounded order.

The frame has bottom ``o``, top ``i``, one element ``a_p`` for each bound of
P and a covering pair ``a_p < b_p`` for every other ``p``; all these middle
elements are pairwise complementary except within a pair.  For every
``p < q`` in P⁻ a copy of an 11-element gadget is inserted that forces
con(a_p, b_p) < con(a_q, b_q).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import pynauty

from .congruence import Congruence, closure_labels, congruence_lattice, profile
from .errors import GadgetContractViolated, NoGadgetFound, NotBounded, RoleMismatch
from .order import Lattice, Poset, bits, validate_lattice

BASE_ROLES = ("o", "ap", "bp", "aq", "bq", "i")


@dataclass
class FrameSpec:
    """Role labels of a constructed lattice."""

    o: str
    i: str
    a: dict[str, str]
    b: dict[str, str]
    bottom: str
    top: str
    copies: dict[tuple[str, str], list[str]] = field(default_factory=dict)

    @property
    def a0(self):
        return self.a[self.bottom]

    @property
    def a1(self):
        return self.a[self.top]

    def middle_pairs(self):
        return [(p, self.a[p], self.b[p]) for p in self.a if p not in (self.bottom, self.top)]

    def to_dict(self):
        return {
            "o": self.o, "i": self.i, "a": self.a, "b": self.b,
            "bottom": self.bottom, "top": self.top,
            "copies": {f"{p}<{q}": v for (p, q), v in self.copies.items()},
        }


@dataclass
class Construction:
    lattice: Lattice
    poset: Poset
    roles: FrameSpec


def _bounds(P: Poset) -> tuple[int, int]:
    lo, hi = P.minimal(), P.maximal()
    if P.n < 2 or len(lo) != 1 or len(hi) != 1:
        raise NotBounded(f"{P.name or 'poset'} needs a distinct zero and unit")
    return lo[0], hi[0]


def _frame_relations(P: Poset):
    """Elements, strict order pairs and roles of the frame F(P)."""
    z, u = _bounds(P)
    names = ["o"]
    rel = set()
    a, b = {}, {}
    for k, p in enumerate(P.elements):
        if k in (z, u):
            a[p] = b[p] = f"a_{p}"
            names.append(a[p])
        else:
            a[p], b[p] = f"a_{p}", f"b_{p}"
            names += [a[p], b[p]]
            rel.add((a[p], b[p]))
    names.append("i")
    for x in names[1:-1]:
        rel.add(("o", x))
        rel.add((x, "i"))
    rel.add(("o", "i"))
    roles = FrameSpec("o", "i", a, b, P.elements[z], P.elements[u])
    return names, rel, roles


def _lattice_from_relations(names, rel, name=None) -> Lattice:
    idx = {x: k for k, x in enumerate(names)}
    n = len(names)
    down = [1 << k for k in range(n)]
    for lo, hi in rel:
        down[idx[hi]] |= 1 << idx[lo]
    # transitive closure over masks
    changed = True
    while changed:
        changed = False
        for j in range(n):
            m = down[j]
            for i in bits(m & ~(1 << j)):
                m |= down[i]
            if m != down[j]:
                down[j] = m
                changed = True
    for j in range(n):
        for i in bits(down[j] & ~(1 << j)):
            if down[i] >> j & 1:
                raise GadgetContractViolated("assembled order has a cycle")
    return validate_lattice(Poset._from_masks(names, down, name=name))


def frame(P: Poset) -> Lattice:
    names, rel, _ = _frame_relations(P)
    return _lattice_from_relations(names, rel, name=f"F({P.name or ''})")


def frame_construction(P: Poset) -> Construction:
    names, rel, roles = _frame_relations(P)
    return Construction(_lattice_from_relations(names, rel, name=f"F({P.name or ''})"), P, roles)


# gadget templates


@dataclass
class GadgetTemplate:
    """Lattice S(p, q) with the six base roles marked."""

    lattice: Lattice
    roles: dict[str, str]

    @property
    def extras(self) -> list[str]:
        base = set(self.roles.values())
        return [x for x in self.lattice.elements if x not in base]

    def role_index(self) -> dict[str, int]:
        return {r: self.lattice.index[x] for r, x in self.roles.items()}

    def to_dict(self) -> dict:
        d = self.lattice.to_dict()
        d["roles"] = dict(self.roles)
        return d

    @classmethod
    def from_dict(cls, obj: dict) -> "GadgetTemplate":
        from .io import lattice_from_dict

        roles = obj.get("roles")
        if not isinstance(roles, dict) or set(roles) != set(BASE_ROLES):
            raise RoleMismatch(f"gadget roles must be exactly {BASE_ROLES}")
        S = lattice_from_dict(obj)
        unknown = sorted(str(x) for x in roles.values() if x not in S.index)
        if unknown or len(set(roles.values())) != len(BASE_ROLES):
            raise RoleMismatch(f"roles must name six distinct elements; unknown {unknown}")
        return cls(S, dict(roles))

    def certificate(self) -> bytes:
        return _role_certificate(self.lattice, self.role_index())


def _role_certificate(S: Lattice, r: dict[str, int]) -> bytes:
    adj = {i: list(S.upper_covers[i]) for i in range(S.n) if S.upper_covers[i]}
    base = [r[k] for k in BASE_ROLES]
    coloring = [{v} for v in base] + [set(range(S.n)) - set(base)]
    if not coloring[-1]:
        coloring.pop()
    g = pynauty.Graph(S.n, directed=True, adjacency_dict=adj, vertex_coloring=coloring)
    return S.n.to_bytes(2, "big") + pynauty.certificate(g)


def complementarity_violations(S: Lattice, r: dict[str, int], reading: str) -> list[tuple[str, str]]:
    """Incomparable pairs that are not complementary.

    ``strict`` checks every pair of S; ``base`` only pairs of base elements.
    """
    o, i = r["o"], r["i"]
    if reading == "strict":
        pool = range(S.n)
    elif reading == "base":
        pool = [r[k] for k in BASE_ROLES]
    else:
        raise ValueError(reading)
    pool = list(pool)
    bad = []
    for k, x in enumerate(pool):
        for y in pool[k + 1:]:
            if not S.comparable(x, y) and (S.meet[x][y] != o or S.join[x][y] != i):
                bad.append((S.elements[x], S.elements[y]))
    return bad


def _forcing_ok(S: Lattice, r: dict[str, int]) -> bool:
    o, ap, bp, aq, bq, i = (r[k] for k in BASE_ROLES)
    labq = closure_labels(S, [(aq, bq)])
    if labq[ap] != labq[bp]:
        return False
    labp = closure_labels(S, [(ap, bp)])
    return labp[aq] != labp[bq]


def template_violations(t: GadgetTemplate, reading: str = "base", extras: int | None = 5) -> list[str]:
    """Everything wrong with ``t`` under the gadget contract (empty if valid)."""
    S = t.lattice
    out = []
    try:
        r = t.role_index()
    except KeyError as exc:
        return [f"role names unknown element {exc}"]
    if len(set(r.values())) != 6:
        out.append("base roles are not six distinct elements")
        return out
    if extras is not None and len(t.extras) != extras:
        out.append(f"expected {extras} extra elements, found {len(t.extras)}")
    o, ap, bp, aq, bq, i = (r[k] for k in BASE_ROLES)
    if o != S.bottom or i != S.top:
        out.append("o and i must be the bounds")
    for lo, hi in ((ap, bp), (aq, bq)):
        if (lo, hi) not in S.covers:
            out.append(f"{S.elements[lo]} is not covered by {S.elements[hi]}")
    for x in (ap, bp):
        for y in (aq, bq):
            if S.meet[x][y] != o or S.join[x][y] != i:
                out.append(f"{S.elements[x]}, {S.elements[y]} not complementary")
    if not out:
        if not _forcing_ok(S, r):
            out.append("con(aq,bq) does not strictly dominate con(ap,bp)")
        bad = complementarity_violations(S, r, reading)
        if bad:
            out.append(f"non-complementary incomparable pairs ({reading}): {bad[:3]}")
    if not out:
        for P in _CONTRACT_POSETS:
            try:
                built = build_principal_lattice(P, t, verify=False)
            except GadgetContractViolated as exc:
                out.append(f"{P.name}: {exc}")
                continue
            rep = verify_theorem_new2(built)
            if not rep.ok:
                out.append(f"{P.name}: failed {rep.failed}")
                break
    return out


def _contract_posets() -> list[Poset]:
    def bounded(name, inner, covers):
        covers = list(covers)
        lows = {b for _, b in covers}
        highs = {a for a, _ in covers}
        covers += [("0", x) for x in inner if x not in lows]
        covers += [(x, "1") for x in inner if x not in highs]
        return Poset(["0", *inner, "1"], covers, name=name)

    # one copy, then every way two copies can share a frame pair
    return [
        bounded("C4", ["p", "q"], [("p", "q")]),
        bounded("C5", ["p", "q", "r"], [("p", "q"), ("q", "r")]),
        bounded("V", ["p", "q", "r"], [("p", "q"), ("p", "r")]),
        bounded("Lambda", ["p", "q", "r"], [("p", "r"), ("q", "r")]),
    ]


_CONTRACT_POSETS = _contract_posets()


def synthesize_gadget(extras: int = 5, reading: str = "base") -> list[GadgetTemplate]:
    """All gadget templates with ``extras`` added elements, up to role-preserving isomorphism.

    Scans every lattice with 6 + extras elements for role placements meeting
    the contract; the result is sorted by role-coloured canonical form.
    """
    from .enumerate import enumerate_lattices

    found: dict[bytes, GadgetTemplate] = {}
    for S in enumerate_lattices(6 + extras):
        o, i = S.bottom, S.top
        J, M = S.join, S.meet
        inner = [(a, b) for a, b in sorted(S.covers) if a != o and b != i]
        for ap, bp in inner:
            labp = None
            for aq, bq in inner:
                if len({ap, bp, aq, bq}) < 4:
                    continue
                if any(J[x][y] != i or M[x][y] != o for x in (ap, bp) for y in (aq, bq)):
                    continue
                labq = closure_labels(S, [(aq, bq)])
                if labq[ap] != labq[bp] or labq[o] == labq[i]:
                    continue
                if labp is None:
                    labp = closure_labels(S, [(ap, bp)])
                if labp[aq] == labp[bq]:
                    continue
                r = dict(zip(BASE_ROLES, (o, ap, bp, aq, bq, i)))
                cert = _role_certificate(S, r)
                if cert in found:
                    continue
                t = GadgetTemplate(S, {k: S.elements[v] for k, v in r.items()})
                if not template_violations(t, reading, extras):
                    found[cert] = t
    if not found:
        raise NoGadgetFound(f"no gadget with {extras} extra elements under the {reading!r} reading")
    return [found[c] for c in sorted(found)]


def default_gadget() -> GadgetTemplate:
    text = resources.files("princlab").joinpath("data/gadget.json").read_text(encoding="utf-8")
    return GadgetTemplate.from_dict(json.loads(text))


# assembly


def build_principal_lattice(P: Poset, gadget: GadgetTemplate | None = None, verify: bool = True) -> Construction:
    """Frame of P with a gadget copy for every comparable pair p < q of P⁻."""
    if gadget is None:
        gadget = default_gadget()
    names, rel, roles = _frame_relations(P)
    z, u = _bounds(P)
    inner = [k for k in range(P.n) if k not in (z, u)]
    if not inner:
        # the bare 4-element frame is C2 x C2; a third atom makes it simple
        names.insert(-1, "m")
        rel.update({("o", "m"), ("m", "i")})
    S = gadget.lattice
    rev = {x: k for k, x in gadget.roles.items()}
    extras = gadget.extras
    strict = [(S.elements[x], S.elements[y]) for y in range(S.n) for x in bits(S.down[y]) if x != y]
    for p in inner:
        for q in inner:
            if p == q or not P.le(p, q):
                continue
            pn, qn = P.elements[p], P.elements[q]
            fresh = {x: f"s({pn},{qn}):{k + 1}" for k, x in enumerate(extras)}
            place = {"o": "o", "i": "i", "ap": roles.a[pn], "bp": roles.b[pn],
                     "aq": roles.a[qn], "bq": roles.b[qn]}

            def image(x):
                return place[rev[x]] if x in rev else fresh[x]

            names[-1:-1] = list(fresh.values())
            rel.update((image(x), image(y)) for x, y in strict)
            roles.copies[(pn, qn)] = list(fresh.values())
    try:
        L = _lattice_from_relations(names, rel, name=f"L({P.name or ''})")
    except Exception as exc:
        raise GadgetContractViolated(f"assembly is not a lattice: {exc}") from exc
    built = Construction(L, P, roles)
    if verify:
        rep = verify_theorem_new2(built)
        if not rep.ok:
            raise GadgetContractViolated(f"failed clauses {rep.failed}")
    return built


def verify_crucial_observations(L: Lattice, roles: FrameSpec) -> bool:
    """(i) {o, i, a0, a1, x} is a diamond for every other x; (ii) complementarity.

    (ii) covers incomparable pairs of frame elements, and pairs of a frame
    element with a gadget element whose copy does not contain it.
    """
    try:
        o, i, a0, a1 = (L.index[x] for x in (roles.o, roles.i, roles.a0, roles.a1))
        frame_els = {L.index[x] for x in list(roles.a.values()) + list(roles.b.values())}
    except KeyError as exc:
        raise RoleMismatch(f"role element {exc} missing") from None
    if len({o, i, a0, a1}) < 4 or o != L.bottom or i != L.top:
        return False
    J, M = L.join, L.meet
    if J[a0][a1] != i or M[a0][a1] != o:
        return False
    for x in range(L.n):
        if x in (o, i, a0, a1):
            continue
        for a in (a0, a1):
            if J[x][a] != i or M[x][a] != o:
                return False
    own: dict[int, set[int]] = {}
    for (p, q), extra in roles.copies.items():
        base = {L.index[roles.a[p]], L.index[roles.b[p]], L.index[roles.a[q]], L.index[roles.b[q]]}
        for x in extra:
            own.setdefault(L.index[x], set()).update(base)
    for f in frame_els:
        for y in range(L.n):
            if y in (o, i) or y == f or L.comparable(f, y):
                continue
            if y not in frame_els and f in own.get(y, ()):
                continue
            if J[f][y] != i or M[f][y] != o:
                return False
    return True


@dataclass
class TheoremReport:
    clauses: dict[str, bool]
    princ_size: int
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v]

    def to_dict(self):
        return {"clauses": self.clauses, "ok": self.ok, "princ_size": self.princ_size, **self.detail}


def verify_theorem_new2(built: Construction) -> TheoremReport:
    """Check that 1 and all nonzero principal congruences are join-irreducible,
    that p -> con(a_p, b_p) is an isomorphism P ≅ Princ L, and a_p ≺ b_p.

    Works on the join-irreducible profile of Con L, so a failing assembly
    with a huge congruence lattice is rejected cheaply.
    """
    L, P, roles = built.lattice, built.poset, built.roles
    pr = profile(L)
    m = len(pr.ji_down)
    full = (1 << m) - 1
    ji_masks = set(pr.ji_down)
    clause_a = full in ji_masks
    clause_b = all(x in ji_masks for x in pr.principal if x)

    def mask_of(a, b):
        lab = closure_labels(L, [(a, b)])
        return sum(1 << t for t, (x, y) in enumerate(pr.ji_pairs) if lab[x] == lab[y])

    image = {}
    for k, p in enumerate(P.elements):
        if p == roles.bottom:
            image[k] = 0
        elif p == roles.top:
            image[k] = full
        else:
            image[k] = mask_of(L.index[roles.a[p]], L.index[roles.b[p]])
    clause_c = (
        len(set(image.values())) == P.n
        and set(image.values()) == set(pr.principal)
        and all(P.le(x, y) == (image[x] & ~image[y] == 0) for x in range(P.n) for y in range(P.n))
    )
    clause_d = all(
        (L.index[a], L.index[b]) in L.covers for _, a, b in roles.middle_pairs()
    )
    clauses = {"unit_join_irreducible": clause_a, "principal_join_irreducible": clause_b,
               "map_is_isomorphism": clause_c, "pairs_are_covers": clause_d}
    detail = {"lattice_size": L.n, "con_join_irreducibles": m}
    if all(clauses.values()):
        detail["con_size"] = len(congruence_lattice(L))
    return TheoremReport(clauses, len(pr.principal), detail)


# related constructions


def _prefixed(K: Lattice, prefix: str):
    ren = {x: f"{prefix}{x}" for x in K.elements}
    return ren, [(ren[a], ren[b]) for a, b in K.cover_names()]


def m3_atom_replace(K: Lattice, name=None) -> Lattice:
    """The diamond with K in place of one atom (fresh bounds o, i and atoms u, v)."""
    ren, cov = _prefixed(K, "k:")
    bot, top = ren[K.elements[K.bottom]], ren[K.elements[K.top]]
    els = ["o", *ren.values(), "u", "v", "i"]
    cov += [("o", bot), (top, "i"), ("o", "u"), ("u", "i"), ("o", "v"), ("v", "i")]
    return validate_lattice(Poset(els, cov, name=name or f"M3[{K.name or 'K'}]"))


def glue_top_square(K: Lattice, name=None) -> Lattice:
    """C2² with K in place of one atom (fresh bounds o, i and the other atom c)."""
    ren, cov = _prefixed(K, "k:")
    bot, top = ren[K.elements[K.bottom]], ren[K.elements[K.top]]
    els = ["o", *ren.values(), "c", "i"]
    cov += [("o", bot), (top, "i"), ("o", "c"), ("c", "i")]
    return validate_lattice(Poset(els, cov, name=name or f"Sq[{K.name or 'K'}]"))


def restrict_to_k(result: Lattice, K: Lattice, theta: Congruence) -> Congruence:
    """Restriction of a congruence of a combinator result to the embedded copy of K."""
    lab = theta.labels
    first: dict[int, int] = {}
    labels = [first.setdefault(lab[result.index[f"k:{x}"]], k) for k, x in enumerate(K.elements)]
    return Congruence.from_labels(K, labels)


def extend_from_k(result: Lattice, K: Lattice, theta: Congruence) -> Congruence:
    """K's congruence extended block-wise (all new elements singletons)."""
    labels = list(range(result.n))
    for b in theta.blocks:
        idx = [result.index[f"k:{K.elements[i]}"] for i in bits(b)]
        for t in idx:
            labels[t] = min(idx)
    return Congruence.from_labels(result, labels)


def is_bounded(P: Poset) -> bool:
    try:
        _bounds(P)
    except NotBounded:
        return False
    return True

