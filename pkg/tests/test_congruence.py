import pytest
from hypothesis import given, settings, strategies as st

from oracles import compatible_partitions, principal_by_definition
from princlab.congruence import (
    Congruence, check_sandwich, congruence_lattice, folklore_generator, one, principal_congruence,
    principal_set, profile, zero,
)
from princlab.enumerate import enumerate_lattices, lattices_upto
from princlab.errors import NotSectionallyComplemented
from princlab.library import boolean, chain, m3, n5
from princlab.order import is_isomorphic, is_sectionally_complemented


def as_names(C):
    return {frozenset(frozenset(b) for b in c.name_blocks()) for c in C.congruences}


def test_known_congruence_lattices(small):
    sizes = {k: (len(congruence_lattice(L)), len(congruence_lattice(L).principal)) for k, L in small.items()}
    assert sizes == {"C4": (8, 7), "B3": (8, 8), "M3": (2, 2), "N5": (5, 5), "C3xC3": (16, 16)}
    assert is_isomorphic(congruence_lattice(chain(4)).lattice, boolean(3))


def test_principal_congruence_n5():
    N = n5()
    theta = principal_congruence(N, "a", "b")
    assert theta.collapses(N.index["a"], N.index["b"])
    assert theta.collapses(N.index["0"], N.index["c"]) is False
    assert str(theta) == "{0|a,b|c|1}"
    assert str(principal_congruence(N, "0", "c")) == "{0,c|a,b,1}"
    assert str(principal_congruence(N, "0", "a")) == "{0,a,b|c,1}"
    assert principal_congruence(N, "0", "1") == one(N)


@pytest.mark.parametrize("n", range(1, 7))
def test_matches_brute_force_oracle(n):
    for L in enumerate_lattices(n):
        C = congruence_lattice(L)
        assert as_names(C) == compatible_partitions(L), L.name
        princ = {frozenset(frozenset(b) for b in C.congruences[k].name_blocks()) for k in C.principal}
        assert princ == principal_by_definition(L), L.name


def test_profile_agrees_with_con():
    for L in lattices_upto(8):
        C = congruence_lattice(L)
        pr = profile(L)
        assert len(pr.principal) == len(C.principal)
        assert len(pr.ji_down) == len(C.join_irreducible_indices())


def test_congruence_operations():
    B = boolean(3)
    C = congruence_lattice(B)
    for x in C.congruences:
        assert x.is_compatible()
        assert zero(B) <= x <= one(B)
        for y in C.congruences:
            assert x.join(y) in C.congruences and x.meet(y) in C.congruences
            assert x.meet(y) <= x <= x.join(y)


def test_from_names_roundtrip():
    N = n5()
    theta = Congruence.from_names(N, [["a", "b"]])
    assert theta.name_blocks() == [["0"], ["a", "b"], ["c"], ["1"]]


def test_folklore_generator():
    B = boolean(3)
    C = congruence_lattice(B)
    for theta in C.congruences:
        a = folklore_generator(B, theta)
        assert principal_congruence(B, "0", a) == theta
    with pytest.raises(NotSectionallyComplemented):
        folklore_generator(n5(), zero(n5()))


def test_sandwich_small():
    assert all(check_sandwich(L) for L in lattices_upto(7))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.integers(0, 10 ** 6))
def test_sandwich_and_principal_set_property(n, seed):
    from princlab.enumerate import count_lattices

    k = seed % count_lattices(n)
    L = next(x for i, x in enumerate(enumerate_lattices(n)) if i == k)
    C = congruence_lattice(L)
    assert {C.congruences[i] for i in C.principal} == principal_set(L)
    assert check_sandwich(L)
    if is_sectionally_complemented(L):
        assert len(C.principal) == len(C)


def test_simple_lattices():
    assert len(congruence_lattice(m3())) == 2
    assert len(congruence_lattice(chain(1))) == 1
