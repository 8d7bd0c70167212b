"""Structure-constant algebras: ideals, radicals, meataxe, regularity.

The exhaustive oracles here (subspace scans, quasi-inverse scans) pin
down the clever routines on every algebra small enough to enumerate.
"""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsheaf import exactalg, linalg
from gsheaf.errors import AlgebraError, CapExceeded
from gsheaf.exactalg import (FDAlgebra, Subspace, annihilator, centralizer,
                             check_ring_iso, enumerate_subspaces,
                             enumerate_two_sided_ideals, find_unit,
                             group_algebra, hom_space, ideal_generated,
                             is_ideal, is_simple, is_von_neumann_regular,
                             jacobson_radical, matrix_algebra,
                             meataxe_simple_quotients, quotient_algebra,
                             quotient_coords, radical_bruteforce,
                             regular_module, restrict_module,
                             simple_modules_isomorphic, subalgebra_on,
                             validate_algebra)
from gsheaf.fields import GF, QQ
from gsheaf.fixtures import cyclic_mul, dual_numbers, f4_algebra, s3_group


def table_algebra(p, elements):
    mul = cyclic_mul(elements)
    return group_algebra(GF(p), elements, lambda g, h: mul[g, h])


def z2_algebra(p):
    return table_algebra(p, ["1", "g"])


def z3_algebra(p):
    return table_algebra(p, ["1", "g", "gg"])


def s3_algebra(p):
    unit, elements, mul = s3_group()
    return group_algebra(GF(p), elements, lambda g, h: mul[g, h])


SMALL_ALGEBRAS = [
    matrix_algebra(GF(2), 2),
    matrix_algebra(GF(3), 2),
    z2_algebra(2),
    z3_algebra(3),
    s3_algebra(2),
    f4_algebra(),
    dual_numbers(),
]


@pytest.mark.parametrize("A", SMALL_ALGEBRAS, ids=lambda a: repr(a))
def test_small_algebras_validate(A):
    assert validate_algebra(A) == []
    assert A.unit is not None
    one = list(A.unit)
    for i in range(A.dim):
        b = A.basis_vector(i)
        assert A.mul(one, b) == b
        assert A.mul(b, one) == b


def test_matrix_algebra_relations():
    A = matrix_algebra(GF(3), 3)
    assert A.dim == 9
    idx = {lab: i for i, lab in enumerate(A.labels)}
    for (i, j) in itertools.product(range(3), repeat=2):
        for (k, l) in itertools.product(range(3), repeat=2):
            prod = A.mul(A.basis_vector(idx[f"e{i+1}{j+1}"]),
                         A.basis_vector(idx[f"e{k+1}{l+1}"]))
            if j == k:
                assert prod == A.basis_vector(idx[f"e{i+1}{l+1}"])
            else:
                assert linalg.vec_is_zero(prod)


def test_subspace_counts_match_gaussian_binomials():
    #   [n choose k]_q counts k-dim subspaces of F_q^n
    assert sum(1 for _ in enumerate_subspaces(GF(2), 3)) == 1 + 7 + 7 + 1
    assert sum(1 for _ in enumerate_subspaces(GF(3), 2)) == 1 + 4 + 1
    seen = set()
    for S in enumerate_subspaces(GF(2), 3):
        seen.add(S.basis)
    assert len(seen) == 16  # each subspace exactly once


@pytest.mark.parametrize("A", SMALL_ALGEBRAS, ids=lambda a: repr(a))
def test_ideal_enumeration_against_subspace_scan(A):
    if A.field.order ** A.dim > 2**12:
        pytest.skip("scan too large")
    clever = {I.basis for I in enumerate_two_sided_ideals(A)}
    brute = {S.basis for S in enumerate_subspaces(A.field, A.dim)
             if is_ideal(A, S, "two")}
    assert clever == brute


def test_ideal_counts():
    assert len(enumerate_two_sided_ideals(matrix_algebra(GF(2), 2))) == 2
    assert len(enumerate_two_sided_ideals(z2_algebra(2))) == 3
    assert len(enumerate_two_sided_ideals(z3_algebra(3))) == 4
    assert len(enumerate_two_sided_ideals(s3_algebra(2))) == 6
    assert len(enumerate_two_sided_ideals(dual_numbers())) == 3


def test_ideal_generated_is_smallest():
    A = s3_algebra(2)
    rng = random.Random(0)
    for _ in range(10):
        g = [rng.randrange(2) for _ in range(6)]
        I = ideal_generated(A, [g], "two")
        assert I.contains(g)
        assert is_ideal(A, I, "two")
        # no smaller ideal contains g
        for J in enumerate_two_sided_ideals(A):
            if J.contains(g):
                assert all(J.contains(list(b)) for b in I.basis)


def test_one_sided_ideals_differ_in_matrix_algebra():
    A = matrix_algebra(GF(2), 2)
    e01 = A.basis_vector(A.label_index["e12"])
    left = ideal_generated(A, [e01], "left")
    right = ideal_generated(A, [e01], "right")
    two = ideal_generated(A, [e01], "two")
    assert left.dim == 2 and right.dim == 2 and two.dim == 4
    assert is_ideal(A, left, "left") and not is_ideal(A, left, "two")


def test_simplicity():
    assert is_simple(matrix_algebra(GF(2), 2))
    assert is_simple(matrix_algebra(GF(3), 3))
    assert is_simple(f4_algebra())
    assert not is_simple(z2_algebra(2))
    assert not is_simple(dual_numbers())
    with pytest.raises(CapExceeded):
        is_simple(matrix_algebra(QQ, 2))


@pytest.mark.parametrize("A,expect", [
    (z2_algebra(2), 1),
    (z3_algebra(3), 2),
    (s3_algebra(2), 1),
    (z2_algebra(3), 0),  # order coprime to characteristic: semisimple
    (matrix_algebra(GF(2), 2), 0),
    (dual_numbers(), 1),
    (f4_algebra(), 0),
], ids=["z2p2", "z3p3", "s3p2", "z2p3", "m2", "dual", "f4"])
def test_radical_matches_bruteforce(A, expect):
    J = jacobson_radical(A)
    assert J.dim == expect
    assert J.basis == radical_bruteforce(A).basis


def test_radical_of_quotient_is_zero():
    A = s3_algebra(2)
    J = jacobson_radical(A)
    Q, _ = quotient_algebra(A, J)
    assert jacobson_radical(Q).is_zero()


def test_meataxe_simple_factors():
    # M_2(F_2): one simple class, dimension 2
    simples = meataxe_simple_quotients(regular_module(matrix_algebra(GF(2), 2)))
    assert sorted(S.dim for S in simples) == [2]
    # F_2[S_3]: trivial and the 2-dimensional factor
    simples = meataxe_simple_quotients(regular_module(s3_algebra(2)))
    assert sorted(S.dim for S in simples) == [1, 2]
    for S in simples:
        assert exactalg.is_simple_module(S)
    assert not simple_modules_isomorphic(simples[0], simples[1])


def test_meataxe_deduplicates_isomorphic_factors():
    A = z2_algebra(3)  # semisimple, two 1-dim characters
    simples = meataxe_simple_quotients(regular_module(A))
    assert sorted(S.dim for S in simples) == [1, 1]
    assert not simple_modules_isomorphic(simples[0], simples[1])


def test_vnr_witnesses():
    ok, wit = is_von_neumann_regular(matrix_algebra(GF(2), 2))
    assert ok and wit is None
    ok, wit = is_von_neumann_regular(dual_numbers())
    assert not ok
    assert list(wit) == [0, 1]  # u itself: u x u = 0 for every x
    ok, _ = is_von_neumann_regular(z2_algebra(2))
    assert not ok
    with pytest.raises(CapExceeded):
        is_von_neumann_regular(matrix_algebra(QQ, 2))


def test_annihilator_of_regular_module_is_zero():
    for A in SMALL_ALGEBRAS:
        assert annihilator(regular_module(A)).is_zero()


def test_centralizer_of_matrix_algebra_is_scalars():
    A = matrix_algebra(GF(2), 2)
    Z = centralizer(A, Subspace.full(GF(2), 4))
    assert Z.dim == 1
    assert Z.contains(list(A.unit))


def test_quotient_algebra_and_coords():
    A = z2_algebra(2)
    J = jacobson_radical(A)
    Q, proj = quotient_algebra(A, J)
    assert Q.dim == 1 and Q.unit is not None
    proj_mat, lift = quotient_coords(GF(2), J)
    for v in A.elements():
        v = list(v)
        down = linalg.mat_vec(GF(2), proj_mat, v)
        back = linalg.mat_vec(GF(2), lift, down)
        assert J.contains(linalg.vec_sub(GF(2), v, back))
    with pytest.raises(AlgebraError):
        quotient_algebra(A, Subspace.from_vectors(GF(2), 2, [[0, 1]]))


def test_check_ring_iso_z2_vs_dual_numbers():
    # 1 -> 1, g -> 1 + u is an isomorphism in characteristic 2
    A = z2_algebra(2)
    B = dual_numbers()
    good = [[1, 1], [0, 1]]  # columns are the images of 1 and g
    assert check_ring_iso(A, B, good)
    bad = [[1, 0], [0, 1]]  # g -> u is not multiplicative
    assert not check_ring_iso(A, B, bad)
    assert not check_ring_iso(A, matrix_algebra(GF(2), 2), [[1, 0], [0, 1]])


def test_check_ring_iso_exhausts_m2():
    # every invertible map fixing the relations is accepted; the rest refused
    A = matrix_algebra(GF(2), 2)
    hits = 0
    for flat in itertools.product(range(2), repeat=16):
        M = [list(flat[4 * i:4 * i + 4]) for i in range(4)]
        if check_ring_iso(A, A, M):
            hits += 1
    # ring automorphisms of M_2(F_2) are the inner ones: PGL_2(F_2) has 6
    assert hits == 6


def test_subalgebra_on_corner():
    A = matrix_algebra(GF(2), 2)
    e00 = A.basis_vector(A.label_index["e11"])
    corner = Subspace.from_vectors(GF(2), 4, [e00])
    B = subalgebra_on(A, corner)
    assert B.dim == 1 and B.unit is not None


def test_find_unit():
    A = matrix_algebra(GF(2), 2)
    stripped = FDAlgebra(A.field, A.labels, A.table, None)
    assert list(find_unit(stripped)) == list(A.unit)
    f = GF(2)
    no_unit = FDAlgebra(f, ["x"], [[[0]]], None)  # x^2 = 0, x != 0
    assert find_unit(no_unit) is None


def test_hom_space_dimensions():
    A = matrix_algebra(GF(2), 2)
    M = regular_module(A)
    simples = meataxe_simple_quotients(M)
    S = simples[0]
    assert len(hom_space(S, S)) == 1  # Schur: End of a simple is a field here
    assert len(hom_space(M, S)) == 2  # two copies in the regular module


def test_restrict_module_to_submodule():
    A = z2_algebra(2)
    M = regular_module(A)
    J = jacobson_radical(A)
    sub = restrict_module(M, J)
    assert sub.dim == 1
    assert sub.validate() == []


subspace_vec = st.lists(st.integers(0, 1), min_size=4, max_size=4)


@settings(max_examples=60)
@given(st.lists(subspace_vec, max_size=4), st.lists(subspace_vec, max_size=4))
def test_subspace_lattice_laws(us, vs):
    f = GF(2)
    U = Subspace.from_vectors(f, 4, us)
    V = Subspace.from_vectors(f, 4, vs)
    J = U.join(V)
    I = U.intersect(V)
    assert I.dim + J.dim == U.dim + V.dim  # modular law for dimensions
    for b in U.basis:
        assert J.contains(list(b))
        assert U.contains(list(b))
    for b in I.basis:
        assert U.contains(list(b)) and V.contains(list(b))
    # canonical form: equal spans give equal tuples
    again = Subspace.from_vectors(f, 4, [list(b) for b in U.basis])
    assert again.basis == U.basis and again.pivots == U.pivots
