import pytest

from princlab.congruence import congruence_lattice
from princlab.construct import (
    GadgetTemplate, build_principal_lattice, complementarity_violations, default_gadget, frame,
    glue_top_square, m3_atom_replace, template_violations, verify_crucial_observations, verify_theorem_new2,
)
from princlab.enumerate import bounded_posets
from princlab.errors import NotBounded, RoleMismatch
from princlab.library import antichain_poset, bounded, boolean, chain, chain_poset, m3, n5
from princlab.order import Poset, find_isomorphism, is_isomorphic


def test_frame_sizes():
    assert frame(chain_poset(3)).n == 6
    assert frame(bounded(antichain_poset(2))).n == 8


def test_construct_c3():
    built = build_principal_lattice(chain_poset(3))
    assert built.lattice.n == 6
    assert verify_theorem_new2(built).ok
    assert verify_crucial_observations(built.lattice, built.roles)


def test_two_element_poset_gives_simple_lattice():
    built = build_principal_lattice(chain_poset(2))
    assert is_isomorphic(built.lattice, m3())
    assert len(congruence_lattice(built.lattice)) == 2


@pytest.mark.parametrize("n", range(2, 7))
def test_theorem_on_all_bounded_posets(n):
    for P in bounded_posets(n):
        built = build_principal_lattice(P)
        rep = verify_theorem_new2(built)
        assert rep.ok, (P.name, rep.failed)
        assert rep.princ_size == P.n
        assert verify_crucial_observations(built.lattice, built.roles)
        C = congruence_lattice(built.lattice)
        princ = C.lattice.subposet(C.principal)
        assert find_isomorphism(P, princ) is not None


def test_reject_unbounded():
    with pytest.raises(NotBounded):
        build_principal_lattice(antichain_poset(2))
    with pytest.raises(NotBounded):
        build_principal_lattice(Poset(["x"], []))


def test_default_gadget_contract():
    g = default_gadget()
    assert len(g.extras) == 5 and g.lattice.n == 11
    assert template_violations(g) == []
    assert complementarity_violations(g.lattice, g.role_index(), "base") == []
    # the strict reading cannot hold for a working gadget
    assert complementarity_violations(g.lattice, g.role_index(), "strict")


def test_gadget_roundtrip_and_role_check():
    g = default_gadget()
    again = GadgetTemplate.from_dict(g.to_dict())
    assert again.certificate() == g.certificate()
    bad = g.to_dict()
    bad["roles"]["ap"] = "nowhere"
    with pytest.raises(RoleMismatch):
        GadgetTemplate.from_dict(bad)


def test_related_constructions():
    for K in (chain(2), chain(3), n5(), boolean(2), chain(4)):
        CK = congruence_lattice(K)
        L = m3_atom_replace(K)
        assert L.n == K.n + 4
        C = congruence_lattice(L)
        assert len(C) == len(CK) + 1 and len(C.principal) == len(CK.principal) + 1
        G = glue_top_square(K)
        CG = congruence_lattice(G)
        assert len(CG) == len(CK) + 3 and len(CG.principal) == len(CK.principal) + 3


def test_theorem_report_detects_failure():
    g = default_gadget()
    built = build_principal_lattice(bounded(Poset(["p", "q"], [("p", "q")])), g)
    built.roles.a["p"], built.roles.b["p"] = built.roles.b["p"], built.roles.a["p"]
    rep = verify_theorem_new2(built)
    assert not rep.ok


def test_synthesis_finds_default_gadget():
    from princlab.construct import synthesize_gadget

    found = synthesize_gadget(5, "base")
    assert len(found) == 4
    assert found[0].certificate() == default_gadget().certificate()
    assert all(template_violations(t) == [] for t in found)


@pytest.mark.parametrize("extras,reading", [(5, "strict"), (4, "base"), (0, "base")])
def test_no_gadget_under_other_readings(extras, reading):
    from princlab.construct import synthesize_gadget
    from princlab.errors import NoGadgetFound

    with pytest.raises(NoGadgetFound):
        synthesize_gadget(extras, reading)


def test_frame_observations():
    from princlab.construct import frame_construction

    f = frame_construction(chain_poset(3))
    assert verify_crucial_observations(f.lattice, f.roles)
    C = congruence_lattice(f.lattice)
    ap, bp = f.roles.a["x1"], f.roles.b["x1"]
    theta = next(t for t in C.congruences if t.collapses(f.lattice.index[ap], f.lattice.index[bp])
                 and len(t.blocks) == f.lattice.n - 1)
    assert [b for b in theta.name_blocks() if len(b) > 1] == [[ap, bp]]
    # a distributive lattice carries no M3, whatever the labels
    B = boolean(3)
    fake = type(f.roles)(o="0", i="1", a={"0": "a1", "1": "a2"}, b={"0": "a1", "1": "a2"}, bottom="0", top="1")
    assert not verify_crucial_observations(B, fake)
    with pytest.raises(RoleMismatch):
        verify_crucial_observations(B, type(f.roles)(o="zz", i="1", a={"0": "a1", "1": "a2"},
                                                     b={"0": "a1", "1": "a2"}, bottom="0", top="1"))


def test_theorem_report_examples():
    from princlab.construct import Construction

    built = build_principal_lattice(bounded(antichain_poset(2)))
    rep = verify_theorem_new2(built)
    assert rep.ok and rep.princ_size == 4
    # C4 does not carry a B2-shaped Princ
    P = bounded(antichain_poset(2))
    b2 = frame_roles_for(P)
    rep = verify_theorem_new2(Construction(chain(4), P, b2))
    assert not rep.clauses["map_is_isomorphism"]


def frame_roles_for(P):
    from princlab.construct import FrameSpec

    return FrameSpec(o="0", i="1", a={"0": "0", "p1": "x1", "p2": "x1", "1": "1"},
                     b={"0": "0", "p1": "x2", "p2": "x2", "1": "1"}, bottom="0", top="1")


def test_built_lattice_invariants():
    from princlab.order import jplus

    for n in range(3, 7):
        for P in bounded_posets(n):
            built = build_principal_lattice(P)
            L, roles = built.lattice, built.roles
            C = congruence_lattice(L)
            CL = C.lattice
            # Princ L = J+(Con L): the J+ construction realised
            assert set(C.principal_names) == set(jplus(CL))
            idx = {c: k for k, c in enumerate(C.congruences)}
            from princlab.congruence import principal_congruence
            for (p, q) in roles.copies:
                cp = principal_congruence(L, roles.a[p], roles.b[p])
                cq = principal_congruence(L, roles.a[q], roles.b[q])
                assert cp < cq and idx[cp] != idx[cq]


def test_m3_extension_and_shapes():
    from princlab.construct import extend_from_k, restrict_to_k

    for K in (chain(2), chain(3), boolean(2)):
        L = m3_atom_replace(K)
        assert L.n == K.n + 4
        assert len(congruence_lattice(L)) == len(congruence_lattice(K)) + 1
    for K in (chain(3), n5(), boolean(2)):
        L = m3_atom_replace(K)
        for theta in congruence_lattice(K).congruences:
            ext = extend_from_k(L, K, theta)
            assert ext.is_compatible()
            assert restrict_to_k(L, K, ext) == theta
        G = glue_top_square(K)
        CG = congruence_lattice(G)
        CK = congruence_lattice(K)
        restricted = {restrict_to_k(G, K, t) for t in CG.congruences}
        assert restricted == set(CK.congruences)
    G = glue_top_square(chain(3))
    assert len(congruence_lattice(G)) == len(congruence_lattice(chain(3))) + 3
