import itertools

import pytest

from oracles import lattice_classes
from princlab import enumerate as enum
from princlab.birkhoff import is_distributive
from princlab.errors import BoundTooLarge
from princlab.order import is_isomorphic

@pytest.mark.parametrize("n", range(1, 8))
def test_counts_match_labelled_oracle(n):
    assert len(lattice_classes(n)) == enum.count_lattices(n)
    assert len(lattice_classes(n, distributive_only=True)) == sum(1 for _ in enum.enumerate_distributive(n))


def test_no_duplicate_forms():
    for n in range(1, 10):
        forms = [enum.canonical_form(L) for L in enum.enumerate_lattices(n)]
        assert len(forms) == len(set(forms))
    for n in range(1, 12):
        forms = [enum.canonical_form(D) for D in enum.enumerate_distributive(n)]
        assert len(forms) == len(set(forms))


def test_pairwise_non_isomorphic_small():
    for n in range(1, 7):
        ls = list(enum.enumerate_lattices(n))
        for a, b in itertools.combinations(ls, 2):
            assert not is_isomorphic(a, b)


def test_distributive_stream_is_distributive():
    for n in range(1, 10):
        for D in enum.enumerate_distributive(n):
            assert is_distributive(D) and D.n == n


def test_deterministic_order():
    first = [L.cover_names() for L in enum.enumerate_lattices(7)]
    again = [L.cover_names() for L in enum.enumerate_lattices(7)]
    assert first == again
    assert [L.name for L in enum.enumerate_lattices(5)] == [f"L5_{k}" for k in range(5)]


def test_cap(monkeypatch):
    monkeypatch.setenv("PRINCLAB_MAX_SIZE", "6")
    with pytest.raises(BoundTooLarge):
        next(enum.enumerate_lattices(7))
    with pytest.raises(BoundTooLarge):
        enum.count_lattices(0)


def test_canonical_form_is_invariant():
    for L in enum.lattices_upto(6):
        ren = {x: f"r{k}" for k, x in enumerate(reversed(L.elements))}
        assert enum.canonical_form(L.relabel(ren)) == enum.canonical_form(L)


def test_poset_streams():
    assert [sum(1 for _ in enum.enumerate_posets(k)) for k in range(0, 6)] == [1, 1, 2, 5, 16, 63]
    assert all(p.n == 5 for p in enum.bounded_posets(5))


def test_duality_closure():
    for n in range(1, 9):
        forms = {enum.canonical_form(L) for L in enum.enumerate_lattices(n)}
        assert all(enum.canonical_form(L.dual()) in forms for L in enum.enumerate_lattices(n))


def test_distributive_subset_of_lattices():
    for n in range(1, 9):
        forms = {enum.canonical_form(L) for L in enum.enumerate_lattices(n)}
        dist = [enum.canonical_form(D) for D in enum.enumerate_distributive(n)]
        assert set(dist) <= forms
        assert len(dist) == sum(1 for L in enum.enumerate_lattices(n) if is_distributive(L))


def test_named_members():
    from princlab.library import boolean, grid

    assert [D.n for D in enum.enumerate_distributive(3)] == [3]
    assert any(is_isomorphic(D, boolean(3)) for D in enum.enumerate_distributive(8))
    assert any(is_isomorphic(D, grid(3, 3)) for D in enum.enumerate_distributive(9))
