import pytest

from princlab.birkhoff import Candidate, candidates, full_candidate, ji_unit, jplus_candidate
from princlab.congruence import congruence_lattice
from princlab.enumerate import enumerate_distributive, lattices_upto
from princlab.errors import InvalidCandidate, NotDistributive
from princlab.library import boolean, chain, grid, m3
from princlab.order import is_isomorphic, jplus
from princlab.represent import (
    c3sq_candidate, check_lemma_two, constructive_witness, d75_family, representable_candidates_desk,
    search_witness, verify_c3sq_nonrepresentable, verify_downset_corollary, verify_planarity_necessity,
    verify_witness, witness_from_lattice,
)


def b3_candidate(omit):
    B = boolean(3)
    return B, Candidate(B, frozenset(B.elements) - set(omit))


def test_b3_full_candidate():
    B, Q = b3_candidate([])
    rep = search_witness(B, Q, 8)
    assert rep.found and rep.witness.n == 5  # B2 with a new unit comes first
    own = witness_from_lattice(B, B, Q, "given")
    assert own is not None and own.found


def test_b3_missing_coatom_is_c4():
    B, Q = b3_candidate(["a23"])
    rep = search_witness(B, Q, 8)
    assert rep.found and is_isomorphic(rep.witness, chain(4))


def test_b3_jplus_none():
    B = boolean(3)
    rep = search_witness(B, jplus_candidate(B), 10)
    assert not rep.found and rep.outcome == "NoneUpTo(10)"


def test_b3_desk_split():
    out = representable_candidates_desk(boolean(3), 10)
    assert len(out) == 8
    for Q, rep in out.items():
        assert rep.found == (len(Q.omitted) <= 1)


def test_witnesses_reverify():
    for D in enumerate_distributive(6):
        for Q, rep in representable_candidates_desk(D, 10).items():
            if rep.found:
                verify_witness(rep.witness, rep.iso, Q)


def test_witness_report_rejects_bad_iso():
    B, Q = b3_candidate(["a23"])
    rep = search_witness(B, Q, 8)
    wrong = Candidate(B, frozenset(B.elements))
    with pytest.raises(AssertionError):
        verify_witness(rep.witness, rep.iso, wrong)


@pytest.mark.parametrize("omit", [[], ["a23"], ["a12"]])
def test_monotone_in_bound(omit):
    B, Q = b3_candidate(omit)
    first = search_witness(B, Q, 10)
    assert first.found
    for b in range(first.witness.n, 11):
        again = search_witness(B, Q, b)
        assert again.found and again.witness.name == first.witness.name
    assert not search_witness(B, Q, first.witness.n - 1).found


def test_errors():
    with pytest.raises(NotDistributive):
        search_witness(m3(), None, 5)
    B = boolean(3)
    other = boolean(3, name="other")
    q = Candidate(other, frozenset(other.elements))
    rep = search_witness(B, q, 5)  # same structure and names is accepted
    assert rep.found
    with pytest.raises(InvalidCandidate):
        search_witness(B, Candidate(chain(3), frozenset(chain(3).elements)), 5)


def test_chains_single_candidate():
    for n in range(2, 7):
        out = representable_candidates_desk(chain(n), 10)
        assert len(out) == 1 and all(r.found for r in out.values())


def test_all_join_irreducible_means_single_candidate():
    for n in range(2, 8):
        for D in enumerate_distributive(n):
            if jplus(D) == set(D.elements):
                out = representable_candidates_desk(D, 10)
                assert len(out) == 1 and next(iter(out.values())).found


def test_unique_join_reducible_lemma():
    seen = 0
    for n in range(3, 8):
        for D in enumerate_distributive(n):
            red = [x for x in range(D.n) if len(D.lower_covers[x]) > 1]
            if ji_unit(D) and len(red) == 1:
                seen += 1
                proper = [Q for Q in candidates(D) if Q.proper]
                assert len(proper) == 1
                rep = constructive_witness(D, proper[0], 6)
                assert rep is not None and rep.method == "construction:jplus"
    assert seen > 0


def test_d75_worked_example():
    fam = d75_family()
    assert fam
    for D in fam:
        proper = [Q for Q in candidates(D) if Q.proper]
        assert len(proper) == 3
        out = representable_candidates_desk(D, 11)
        assert all(out[Q].found for Q in proper)


def test_lemma_two_examples_and_sweep():
    assert check_lemma_two(chain(4)) and check_lemma_two(boolean(3)) and check_lemma_two(m3())
    assert all(check_lemma_two(L) for L in lattices_upto(8))


def test_c3sq():
    rep = verify_c3sq_nonrepresentable(9)
    assert not rep.found and rep.search_bound == 9
    D, Q = c3sq_candidate()
    assert Q.omitted == ["(1,2)", "(2,1)"]
    assert not search_witness(D, jplus_candidate(D), 9).found


def test_planarity_necessity():
    rep = verify_planarity_necessity(8, 10)
    assert rep["ok"]
    b3 = [r for r in rep["rows"] if not r["planar"]]
    assert len(b3) == 1 and b3[0]["probe_outcome"] == "NoneUpTo(10)"


def test_downset_corollary():
    rep = verify_downset_corollary()
    assert rep["C4"]["q_minus_is_downset"] and rep["C4"]["princ_size"] == 7
    assert not rep["M3[C4]"]["q_minus_is_downset"]
    assert rep["holds"]


def test_c3sq_full_via_product():
    D, _ = c3sq_candidate()
    rep = search_witness(D, full_candidate(D), 10, constructive=True)
    assert rep.found and rep.method.startswith("construction:product")
    assert rep.witness.n == 36


def test_constructions_cover_unit_cases():
    # J+(D) with join-irreducible unit: built lattice represents it
    D = [x for x in enumerate_distributive(7) if ji_unit(x)][0]
    rep = constructive_witness(D, jplus_candidate(D), 6)
    assert rep.found
    C = congruence_lattice(rep.witness)
    assert is_isomorphic(C.lattice, D)
