"""Small named lattices and posets used throughout the tests and CLI."""

from __future__ import annotations

from itertools import product as _product

from .order import Lattice, Poset, validate_lattice


def chain_poset(n: int, prefix="x", name=None) -> Poset:
    els = [f"{prefix}{k}" for k in range(n)]
    return Poset(els, list(zip(els, els[1:])), name=name or f"C{n}")


def chain(n: int, name=None) -> Lattice:
    """C_n with elements 0, x1, ..., x_{n-2}, 1."""
    if n == 1:
        return validate_lattice(Poset(["0"], [], name=name or "C1"))
    els = ["0"] + [f"x{k}" for k in range(1, n - 1)] + ["1"]
    return validate_lattice(Poset(els, list(zip(els, els[1:])), name=name or f"C{n}"))


def antichain_poset(k: int, prefix="p", name=None) -> Poset:
    return Poset([f"{prefix}{i}" for i in range(1, k + 1)], [], name=name)


def bounded(p: Poset, name=None) -> Poset:
    """``p`` with a new zero "0" and unit "1" adjoined."""
    covers = [list(c) for c in p.cover_names()]
    covers += [("0", p.elements[i]) for i in p.minimal()]
    covers += [(p.elements[i], "1") for i in p.maximal()]
    if p.n == 0:
        covers = [("0", "1")]
    return Poset(["0", *p.elements, "1"], covers, name=name or p.name)


def boolean(k: int, name=None) -> Lattice:
    """B_k as subsets of {1..k}; element names like "0", "a1", "a12", "1"."""
    full = tuple(range(1, k + 1))

    def label(s):
        if not s:
            return "0"
        if s == full:
            return "1"
        return "a" + "".join(map(str, s))

    subsets = [tuple(i for i in full if m >> (i - 1) & 1) for m in range(1 << k)]
    subsets.sort(key=lambda s: (len(s), s))
    covers = [
        (label(s), label(t))
        for s in subsets for t in subsets
        if len(t) == len(s) + 1 and set(s) <= set(t)
    ]
    return validate_lattice(Poset([label(s) for s in subsets], covers, name=name or f"B{k}"))


def m3() -> Lattice:
    return validate_lattice(Poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        name="M3",
    ))


def n5() -> Lattice:
    return validate_lattice(Poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        name="N5",
    ))


def product(A: Poset, B: Poset, name=None):
    """Direct product; elements named "(x,y)"."""
    els = [f"({x},{y})" for x, y in _product(A.elements, B.elements)]
    covers = []
    for x, y in _product(A.elements, B.elements):
        for lo, hi in A.cover_names():
            if lo == x:
                covers.append((f"({x},{y})", f"({hi},{y})"))
        for lo, hi in B.cover_names():
            if lo == y:
                covers.append((f"({x},{y})", f"({x},{hi})"))
    p = Poset(els, covers, name=name)
    if isinstance(A, Lattice) and isinstance(B, Lattice):
        return validate_lattice(p)
    return p


def grid(m: int, k: int, name=None) -> Lattice:
    """C_m × C_k with elements "(i,j)", 0 <= i < m, 0 <= j < k."""
    A = Poset([str(i) for i in range(m)], [(str(i), str(i + 1)) for i in range(m - 1)])
    B = Poset([str(j) for j in range(k)], [(str(j), str(j + 1)) for j in range(k - 1)])
    return validate_lattice(product(A, B, name=name or f"C{m}xC{k}"))
