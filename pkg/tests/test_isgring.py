"""Inverse semigroups, spectral ring actions, skew rings, germ groupoids,
the bisection realization, the Pierce realization, partial crossed products."""

import pytest

from gsheaf import exactalg, linalg
from gsheaf.convalg import build_conv_algebra
from gsheaf.errors import CheckFailure, InputError
from gsheaf.exactalg import Subspace
from gsheaf.fields import GF, QQ
from gsheaf.fixtures import (cyclic_mul, frobenius_matrix, galois_ring_action,
                             galois_sheaf, global_swap_action,
                             identity_only_action, natural_i2_action,
                             pair_groupoid, partial_swap_action,
                             scalar_algebra, swap_action, swap_ring_action,
                             t1_groupoid, trivial_partial_action,
                             trivial_ring_action, trivial_z2_action, z2_isg,
                             _diag_f2_squared)
from gsheaf.groupoid import is_effective, orbits, validate_groupoid
from gsheaf.isgring import (FiniteInverseSemigroup, PartialGroupAction,
                            SpaceAction, SpectralRingAction, action_orbits,
                            bisection_ring_action, check_cinza,
                            check_orbit_correspondence, check_simpleaction,
                            dual_ring_action, germ_groupoid,
                            group_as_inverse_semigroup, is_minimal_action,
                            is_topologically_free, natural_order_violations,
                            pierce_atoms, pierce_data, pierce_verification,
                            siri_data, skew_isg_ring,
                            symmetric_inverse_monoid, transformation_groupoid,
                            validate_inverse_semigroup, validate_ring_action,
                            validate_space_action, verify_partial_crossed,
                            verify_siri)
from gsheaf.sheaf import constant_sheaf


# ---------------------------------------------------------------------------
# inverse semigroups


def test_symmetric_inverse_monoid_on_two_symbols():
    S, graphs = symmetric_inverse_monoid(["1", "2"])
    assert len(S.elements) == 7
    assert validate_inverse_semigroup(S) == []
    idem = S.idempotents()
    assert len(idem) == 4                # restrictions of the identity
    assert "[]" in S.elements
    swap = "[1>2,2>1]"
    assert S.mul[swap, swap] == "[1>1,2>2]"
    assert S.star[swap] == swap
    assert S.star["[1>2]"] == "[2>1]"


def test_symmetric_inverse_monoid_sizes():
    # sum over k of C(n,k)^2 k!
    S1, _ = symmetric_inverse_monoid(["x"])
    S3, _ = symmetric_inverse_monoid(["x", "y", "z"])
    assert len(S1.elements) == 2
    assert len(S3.elements) == 34


def test_natural_order_laws():
    S, _ = symmetric_inverse_monoid(["1", "2"])
    assert natural_order_violations(S) == []
    assert natural_order_violations(z2_isg()) == []
    assert S.natural_leq("[1>1]", "[1>1,2>2]")
    assert not S.natural_leq("[1>1,2>2]", "[1>1]")
    assert S.natural_leq("[1>2]", "[1>2,2>1]")


def test_group_detection():
    assert z2_isg().is_group()
    assert z2_isg().group_unit() == "1"
    S, _ = symmetric_inverse_monoid(["1", "2"])
    assert not S.is_group()


def test_invalid_semigroup_rejected():
    # constant product: f f* f = e != f
    with pytest.raises(InputError):
        FiniteInverseSemigroup(
            ["e", "f"],
            {(a, b): "e" for a in "ef" for b in "ef"},
            {"e": "e", "f": "f"})
    bad = FiniteInverseSemigroup(["e"], {("e", "e"): "e"}, {"e": "e"},
                                 validate=False)
    bad.star = {"e": "x"}
    assert validate_inverse_semigroup(bad) != []


# ---------------------------------------------------------------------------
# space actions and germ groupoids


def test_space_action_validation():
    act = swap_action()
    assert validate_space_action(act) == []
    S = z2_isg()
    with pytest.raises(InputError):
        # theta_g collapses two points: not a bijection onto X_g
        SpaceAction(S, ["a", "b"],
                    {"1": frozenset(["a", "b"]), "g": frozenset(["a"])},
                    {"1": {"a": "a", "b": "b"}, "g": {"a": "a", "b": "a"}})


def test_action_orbits():
    assert action_orbits(swap_action()) == [["a", "b"]]
    assert action_orbits(identity_only_action()) == [["a"], ["b"]]
    assert is_minimal_action(swap_action())
    assert not is_minimal_action(identity_only_action())


def test_germ_groupoid_of_swap():
    germ = germ_groupoid(swap_action())
    G = germ.groupoid
    assert validate_groupoid(G) == []
    assert len(G.units) == 2
    assert len(G.arrows) == 4            # two identities, two swap germs
    assert is_effective(G)
    assert len(orbits(G)) == 1
    # the two germs of g at different points are different arrows
    assert germ.pair_label["g", "a"] != germ.pair_label["g", "b"]


def test_germ_groupoid_of_trivial_isotropy():
    germ = germ_groupoid(trivial_z2_action())
    G = germ.groupoid
    assert len(G.units) == 1
    assert len(G.arrows) == 2            # identity and the germ of g
    assert not is_effective(G)


def test_germ_groupoid_collapses_restrictions():
    # I(2) acting naturally: [1>1] and [1>1,2>2] have the same germ at 1
    act = natural_i2_action()
    germ = germ_groupoid(act)
    assert germ.pair_label["[1>1]", "1"] == germ.pair_label["[1>1,2>2]", "1"]
    G = germ.groupoid
    assert len(G.arrows) == 4            # pair groupoid on two points
    assert is_effective(G)
    assert len(orbits(G)) == 1
    total_pairs = sum(len(cls) for cls in germ.class_members.values())
    assert total_pairs == 8


def test_slice_labels_cover_domain():
    act = natural_i2_action()
    germ = germ_groupoid(act)
    for s in act.semigroup.elements:
        labs = germ.slice_labels(s)
        assert len(labs) == len(act.source_set(s))


def test_topological_freeness():
    assert is_topologically_free(swap_action())
    assert is_topologically_free(identity_only_action())
    assert is_topologically_free(natural_i2_action())
    assert not is_topologically_free(trivial_z2_action())


def test_cinza_dictionary():
    for act in (swap_action(), trivial_z2_action(), identity_only_action(),
                natural_i2_action()):
        rep = check_cinza(act)
        assert rep.passed is True
    rep = check_cinza(trivial_z2_action())
    assert rep.lhs == {"topologically free": False}
    assert rep.rhs == {"germ groupoid effective": False}


def test_orbit_correspondence():
    for act in (swap_action(), trivial_z2_action(), identity_only_action(),
                natural_i2_action()):
        rep = check_orbit_correspondence(act)
        assert rep.passed is True


def test_simpleaction_dictionary():
    rep = check_simpleaction(swap_action())
    assert rep.passed is True
    assert rep.lhs == {"action minimal": True}

    rep = check_simpleaction(identity_only_action())
    assert rep.passed is True
    assert rep.lhs == {"action minimal": False}

    rep = check_simpleaction(trivial_z2_action())
    assert rep.passed is None            # not topologically free: skip
    assert rep.hypotheses["action topologically free"] is False


# ---------------------------------------------------------------------------
# spectral ring actions and skew rings


def test_ring_action_validation():
    for act in (swap_ring_action(), trivial_ring_action(),
                galois_ring_action()):
        assert validate_ring_action(act) == []


def test_ring_action_rejects_non_ideal_domain():
    A = _diag_f2_squared()
    S = z2_isg()
    diag = Subspace.from_vectors(A.field, 2, [[1, 1]])
    full = Subspace.full(A.field, 2)
    with pytest.raises(InputError):
        SpectralRingAction(S, A, {"1": full, "g": diag},
                           {"1": linalg.identity_matrix(A.field, 2),
                            "g": linalg.identity_matrix(A.field, 2)})


def test_ring_action_rejects_non_multiplicative_alpha():
    A = exactalg.matrix_algebra(GF(2), 2)
    S = z2_isg()
    full = Subspace.full(A.field, 4)
    transpose = linalg.zero_matrix(GF(2), 4, 4)
    for i in (1, 2):
        for j in (1, 2):
            transpose[A.label_index[f"e{j}{i}"]][A.label_index[f"e{i}{j}"]] = 1
    # transposition is an anti-automorphism, not an automorphism
    act = SpectralRingAction(S, A, {"1": full, "g": full},
                             {"1": linalg.identity_matrix(GF(2), 4),
                              "g": transpose}, validate=False)
    assert any("multiplicative" in m for m in validate_ring_action(act))


def test_domain_units_are_central_idempotents():
    act = swap_ring_action()
    assert validate_ring_action(act) == []
    assert act.units["1"] == [1, 1]
    assert act.units["g"] == [1, 1]


def test_skew_ring_of_group_action_has_zero_relation_ideal():
    for act in (swap_ring_action(), trivial_ring_action(),
                galois_ring_action()):
        skew = skew_isg_ring(act)
        assert skew.N.is_zero()
        assert skew.quotient.dim == skew.L.dim
        assert exactalg.validate_algebra(skew.quotient) == []


def test_skew_ring_of_galois_action_is_simple():
    skew = skew_isg_ring(galois_ring_action())
    assert skew.L.dim == 4
    assert exactalg.is_simple(skew.quotient)
    assert not skew.quotient.is_commutative()


def test_skew_ring_embed_requires_domain_membership():
    skew = skew_isg_ring(swap_ring_action())
    v = skew.embed("g", [1, 0])
    assert not linalg.vec_is_zero(v)
    # bisection action has proper domains: embedding outside one fails
    G = t1_groupoid(2)
    conv = build_conv_algebra(G, constant_sheaf(G, scalar_algebra(GF(2))))
    act, member, _ = bisection_ring_action(conv)
    skew = skew_isg_ring(act)
    lab_u1 = next(lab for lab, B in member.items() if B == frozenset({"u1"}))
    outside = list(act.domain[lab_u1].basis[0])
    outside = [conv.field.sub(conv.field.one, c) for c in outside]
    with pytest.raises(Exception):
        skew.embed(lab_u1, outside)


def test_bisection_action_relation_ideal_nonzero():
    # honest inverse-semigroup action: comparable distinct bisections
    G = t1_groupoid(2)
    conv = build_conv_algebra(G, constant_sheaf(G, scalar_algebra(GF(2))))
    act, member, embed = bisection_ring_action(conv)
    skew = skew_isg_ring(act)
    assert skew.L.dim == 4
    assert skew.N.dim == 2
    assert skew.quotient.dim == 2


def test_siri_dims():
    cases = [
        (t1_groupoid(2), 2, (4, 2, 2)),
        (pair_groupoid(2), 2, (8, 4, 4)),
    ]
    for G, p, dims in cases:
        O = constant_sheaf(G, scalar_algebra(GF(p)))
        data = siri_data(G, O)
        assert (data.skew.L.dim, data.skew.N.dim,
                data.skew.quotient.dim) == dims


def test_siri_verification():
    for G, p in ((t1_groupoid(2), 2), (pair_groupoid(2), 2),
                 (pair_groupoid(2), 3)):
        O = constant_sheaf(G, scalar_algebra(GF(p)))
        rep = verify_siri(G, O)
        assert rep.passed is True, rep.to_json()
    G, O = galois_sheaf()
    rep = verify_siri(G, O)
    assert rep.passed is True


def test_siri_respects_supports():
    # the realization sends a block a delta_U into sections supported on U
    G = pair_groupoid(2)
    O = constant_sheaf(G, scalar_algebra(GF(2)))
    data = siri_data(G, O)
    f = data.conv.field
    for (lab, k) in data.skew.labels:
        vec = [f.zero] * len(data.skew.labels)
        vec[data.skew.index[lab, k]] = f.one
        col = linalg.mat_vec(f, data.map_L, vec)
        assert set(data.conv.support(col)) <= set(data.member[lab])


def test_siri_caps_on_large_groupoids():
    G = pair_groupoid(3)
    O = constant_sheaf(G, scalar_algebra(GF(2)))
    rep = verify_siri(G, O)
    assert rep.passed is None
    assert rep.caps_hit


# ---------------------------------------------------------------------------
# Pierce realization


def test_pierce_atoms_of_split_ring():
    atoms = pierce_atoms(_diag_f2_squared())
    assert sorted(atoms) == [[0, 1], [1, 0]]
    # a connected ring has a single atom, the identity
    from gsheaf.fixtures import f4_algebra
    assert pierce_atoms(f4_algebra()) == [[1, 0]]


def test_pierce_swap():
    data = pierce_data(swap_ring_action())
    assert len(data.atoms) == 2
    assert len(data.germ.groupoid.arrows) == 4
    assert data.conv.dim == 4
    rep = pierce_verification(swap_ring_action())
    assert rep.passed is True
    # the germ action is transitive, every stalk one-dimensional: M_2
    assert exactalg.is_simple(data.conv.algebra)


def test_pierce_trivial():
    data = pierce_data(trivial_ring_action())
    assert len(data.atoms) == 2
    assert len(data.germ.groupoid.arrows) == 2
    assert data.conv.dim == 2
    assert pierce_verification(trivial_ring_action()).passed is True


def test_pierce_galois_recovers_sheaf():
    act = galois_ring_action()
    data = pierce_data(act)
    assert len(data.atoms) == 1          # GF(4) is connected
    G = data.germ.groupoid
    assert len(G.arrows) == 2
    assert not is_effective(G)
    # stalk is the full field, the nonidentity germ acts by squaring
    iso_arrow = [a for a in G.arrows if a not in G.units][0]
    assert data.sheaf.stalk[G.units[0]].dim == 2
    assert data.sheaf.alpha[iso_arrow] == frobenius_matrix()
    assert pierce_verification(act).passed is True
    assert data.conv.dim == 4
    assert exactalg.is_simple(data.conv.algebra)


def test_pierce_composes_with_bisection_realization():
    data = pierce_data(swap_ring_action())
    rep = verify_siri(data.germ.groupoid, data.sheaf)
    assert rep.passed is True


# ---------------------------------------------------------------------------
# partial group actions


def test_partial_action_validation():
    for act in (partial_swap_action(), global_swap_action(),
                trivial_partial_action()):
        assert act.inv is not None
    with pytest.raises(InputError):
        PartialGroupAction(
            ["1", "g"], cyclic_mul(["1", "g"]), "1", ["a"],
            {"1": frozenset(), "g": frozenset()},   # X_1 must be everything
            {"1": {}, "g": {}})
    with pytest.raises(InputError):
        PartialGroupAction(
            ["1", "g"], cyclic_mul(["1", "g"]), "1", ["a", "b"],
            {"1": frozenset(["a", "b"]), "g": frozenset(["a"])},
            {"1": {"a": "a", "b": "b"}, "g": {"b": "a", "a": "a"}})


def test_transformation_groupoid_of_partial_swap():
    G = transformation_groupoid(partial_swap_action())
    assert validate_groupoid(G) == []
    assert len(G.units) == 3
    assert len(G.arrows) == 5            # three identities, g@a, g@b
    assert sorted(len(o) for o in orbits(G)) == [1, 2]


def test_transformation_groupoid_of_global_swap():
    G = transformation_groupoid(global_swap_action())
    assert len(G.arrows) == 4
    assert len(orbits(G)) == 1
    assert is_effective(G)


def test_group_as_inverse_semigroup():
    S = group_as_inverse_semigroup(partial_swap_action())
    assert S.is_group()
    assert validate_inverse_semigroup(S) == []


def test_dial_ring_action_domains():
    act = partial_swap_action()
    ring_act = dual_ring_action(act, QQ)
    assert validate_ring_action(ring_act) == []
    assert ring_act.domain["1"].dim == 3
    assert ring_act.domain["g"].dim == 2


def test_partial_crossed_product_dims():
    rep = verify_partial_crossed(partial_swap_action(), QQ)
    assert rep.passed is True, rep.to_json()
    assert rep.lhs == {"dim skew ring": 5}
    assert rep.rhs["dim conv"] == 5

    rep = verify_partial_crossed(trivial_partial_action(), QQ)
    assert rep.passed is True
    assert rep.lhs == {"dim skew ring": 2}


def test_global_crossed_product_is_matrix_ring():
    act = global_swap_action()
    rep = verify_partial_crossed(act, QQ)
    assert rep.passed is True
    # the transformation groupoid is the two-point pair groupoid, so the
    # crossed product carries the four matrix units
    G = transformation_groupoid(act)
    conv = build_conv_algebra(
        G, constant_sheaf(G, scalar_algebra(QQ)))
    M = exactalg.matrix_algebra(QQ, 2)
    arrow = {(G.dst[a], G.src[a]): a for a in G.arrows}
    cols = [conv.chi([arrow[f"{'ab'[i - 1]}", f"{'ab'[j - 1]}"]])
            for i in (1, 2) for j in (1, 2)]
    phi = linalg.transpose(cols)
    assert exactalg.check_ring_iso(M, conv.algebra, phi)
    skew = skew_isg_ring(dual_ring_action(act, QQ))
    assert skew.quotient.dim == 4
    assert not skew.quotient.is_commutative()


def test_partial_crossed_over_prime_fields():
    rep = verify_partial_crossed(partial_swap_action(), GF(3))
    assert rep.passed is True
