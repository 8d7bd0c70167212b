"""Isotropy rings, induced modules, annihilators, disintegration."""

import pytest

from gsheaf import exactalg
from gsheaf.convalg import build_conv_algebra
from gsheaf.errors import InputError
from gsheaf.fields import GF
from gsheaf.fixtures import (cyclic_mul, galois_sheaf, group_groupoid,
                             pair_groupoid, scalar_algebra, t1_groupoid,
                             z2_bundle_over_p2)
from gsheaf.induction import (SectionBimodule, Transversal,
                              annihilator_induced, check_disintegration,
                              freeness_isomorphisms, induce, isotropy_ring,
                              module_stalks, verify_effros_hahn)
from gsheaf.sheaf import constant_sheaf


def conv_of(G, p=2):
    return build_conv_algebra(G, constant_sheaf(G, scalar_algebra(GF(p))))


def galois_conv():
    G, O = galois_sheaf()
    return build_conv_algebra(G, O)


def z2_conv():
    G = group_groupoid("e", ["e", "g"], cyclic_mul(["e", "g"]))
    return conv_of(G)


def test_isotropy_ring_galois_is_matrix_ring():
    conv = galois_conv()
    B = isotropy_ring(conv, "x")
    assert B.dim == 4
    assert exactalg.validate_algebra(B) == []
    assert not B.is_commutative()
    assert exactalg.is_simple(B)
    # skew group ring of Gal(GF(4)/GF(2)) over GF(4): 2x2 matrices over GF(2)


def test_isotropy_ring_trivial_action_is_group_algebra():
    conv = z2_conv()
    B = isotropy_ring(conv, "e")
    assert B.dim == 2
    assert B.is_commutative()
    assert exactalg.jacobson_radical(B).dim == 1


def test_isotropy_ring_principal_is_stalk():
    conv = conv_of(pair_groupoid(2), 3)
    B = isotropy_ring(conv, "u1")
    assert B.dim == 1
    assert exactalg.is_simple(B)


def test_transversal_validation():
    conv = conv_of(z2_bundle_over_p2())
    T = Transversal.canonical(conv, "u1")
    assert T.eta == {"u1": "u1", "u2": "a21"}   # least arrow u1 -> u2
    other = Transversal(conv, "u1", {"u1": "u1", "u2": "b21"})
    assert other.eta["u2"] == "b21"

    with pytest.raises(InputError):
        Transversal(conv, "u1", {"u1": "u1"})               # misses u2
    with pytest.raises(InputError):
        Transversal(conv, "u1", {"u1": "g1", "u2": "a21"})  # base not identity
    with pytest.raises(InputError):
        Transversal(conv, "u1", {"u1": "u1", "u2": "a12"})  # wrong direction


def test_section_bimodule_axioms():
    for conv, x in ((galois_conv(), "x"),
                    (conv_of(z2_bundle_over_p2()), "u1"),
                    (conv_of(pair_groupoid(2), 3), "u1")):
        B = isotropy_ring(conv, x)
        L = SectionBimodule(conv, x, B)
        assert L.validate() == []
        # dimension: sections supported on arrows out of x
        G, O = conv.groupoid, conv.sheaf
        assert L.dim == sum(O.stalk[G.dst[g]].dim for g in G.arrows_from(x))


def test_freeness_for_every_transversal():
    conv = conv_of(z2_bundle_over_p2())
    B = isotropy_ring(conv, "u1")
    L = SectionBimodule(conv, "u1", B)
    for eta2 in ("a21", "b21"):
        T = Transversal(conv, "u1", {"u1": "u1", "u2": eta2})
        Phi, Psi = freeness_isomorphisms(L, T)
        assert len(Phi) == L.dim and len(Psi) == L.dim
    # free rank = number of orbit units: dim L = |orbit| * dim B
    assert L.dim == 2 * B.dim


def test_induce_galois_regular():
    conv = galois_conv()
    B = isotropy_ring(conv, "x")
    simples = exactalg.meataxe_simple_quotients(exactalg.regular_module(B))
    assert len(simples) == 1 and simples[0].dim == 2
    ind = induce(conv, "x", simples[0])
    assert ind.dim == 2
    assert exactalg.is_simple_module(ind)
    assert annihilator_induced(conv, "x", simples[0], ind=ind).is_zero()


def test_induce_zero_module_annihilates_everything():
    conv = z2_conv()
    B = isotropy_ring(conv, "e")
    M = exactalg.AlgebraModule(B, 0, [[] for _ in range(B.dim)])
    ind = induce(conv, "e", M)
    assert ind.dim == 0
    assert annihilator_induced(conv, "e", M, ind=ind).is_full()


def test_induced_module_dim_counts_orbit():
    conv = conv_of(pair_groupoid(2), 3)
    B = isotropy_ring(conv, "u1")
    reg = exactalg.regular_module(B)     # dim 1
    ind = induce(conv, "u1", reg)
    assert ind.dim == 2                  # one copy per orbit unit
    assert exactalg.is_simple_module(ind)


def test_transversal_independence_of_induction():
    # two genuinely different transversals u1 -> u2
    conv = conv_of(z2_bundle_over_p2())
    B = isotropy_ring(conv, "u1")
    simples = exactalg.meataxe_simple_quotients(exactalg.regular_module(B))
    assert simples
    for S in simples:
        T1 = Transversal(conv, "u1", {"u1": "u1", "u2": "a21"})
        T2 = Transversal(conv, "u1", {"u1": "u1", "u2": "b21"})
        ind1 = induce(conv, "u1", S, T1)
        ind2 = induce(conv, "u1", S, T2)
        assert exactalg.simple_modules_isomorphic(ind1, ind2)
        assert annihilator_induced(conv, "u1", S, T1, ind1) == \
            annihilator_induced(conv, "u1", S, T2, ind2)


def test_effros_hahn_small_instances():
    for conv in (galois_conv(),
                 z2_conv(),
                 conv_of(pair_groupoid(2)),
                 conv_of(pair_groupoid(2), 3),
                 conv_of(t1_groupoid(2)),
                 conv_of(z2_bundle_over_p2())):
        rep = verify_effros_hahn(conv)
        assert rep.passed is True, rep.to_json()


def test_effros_hahn_caps_on_large_algebras():
    conv = conv_of(pair_groupoid(3), 3)
    rep = verify_effros_hahn(conv, ideal_cap=8)
    assert rep.passed is None
    assert rep.caps_hit


def test_module_stalks_of_regular_module():
    conv = conv_of(pair_groupoid(2))
    st = module_stalks(conv, exactalg.regular_module(conv.algebra))
    # sections with target u: two arrows into each unit, scalar stalks
    assert st.stalk_space["u1"].dim == 2
    assert st.stalk_space["u2"].dim == 2
    assert st.validate() == []
    assert st.reconstruction_check()


def test_stalk_as_isotropy_module():
    conv = conv_of(z2_bundle_over_p2())
    B = isotropy_ring(conv, "u1")
    st = module_stalks(conv, exactalg.regular_module(conv.algebra))
    Mx = st.b_x_module("u1", B)
    assert Mx.dim == 4                   # four arrows land at u1
    assert Mx.validate() == []


def test_disintegration_report():
    conv = conv_of(pair_groupoid(2), 3)
    rep = check_disintegration(conv, exactalg.regular_module(conv.algebra))
    assert rep.passed is True
    assert rep.rhs == {"stalk dims": {"u1": 2, "u2": 2}}

    conv = z2_conv()
    for S in exactalg.meataxe_simple_quotients(
            exactalg.regular_module(conv.algebra)):
        rep = check_disintegration(conv, S)
        assert rep.passed is True


def test_disintegration_rejects_non_module():
    conv = conv_of(t1_groupoid(2))
    # both unit sections acting as 1 on a line: not a module, since the
    # product of the two orthogonal idempotents is zero
    bad = exactalg.AlgebraModule(conv.algebra, 1, [[[1]] for _ in range(conv.dim)])
    rep = check_disintegration(conv, bad)
    assert rep.passed is False
