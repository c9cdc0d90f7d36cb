import itertools
from fractions import Fraction

import pytest

from mhopf.algebras import (
    Corner,
    Multiplier,
    check_associative,
    check_nondegenerate,
    check_s_unital_left,
    convolution_algebra,
    group_algebra_plain,
    is_central_multiplier,
    is_idempotent_multiplier,
    local_unit,
    multiplier_check,
    multiplier_product,
    pointwise_algebra,
    struct_const_algebra,
    subgroup_average_idempotent,
    tensor_square_algebra,
)
from mhopf.errors import NoLocalUnitError, StructuralError
from mhopf.groups import alternating_elements, cyclic_group
from mhopf.vectors import FinVec

F = Fraction


def test_pointwise_product_is_diagonal(S3):
    A = pointwise_algebra(S3)
    a, b = S3.elements[1], S3.elements[2]
    assert A.mul(FinVec.basis(a), FinVec.basis(a)) == FinVec.basis(a)
    assert A.mul(FinVec.basis(a), FinVec.basis(b)) == FinVec()
    assert A.pointwise
    assert A.one == FinVec((g, F(1)) for g in S3.elements)


def test_group_algebra_multiplies_by_convolution(S3):
    A = group_algebra_plain(S3)
    for p, q in itertools.product(S3.elements, repeat=2):
        assert A.mul(FinVec.basis(p), FinVec.basis(q)) == FinVec.basis(S3.mul(p, q))
    assert A.one == FinVec.basis(S3.identity)


def test_struct_const_algebra_and_associativity_checker():
    # k[x]/(x^3) on tokens 0,1,2
    table = {
        (i, j): (FinVec.basis(i + j) if i + j < 3 else FinVec())
        for i in range(3)
        for j in range(3)
    }
    A = struct_const_algebra("truncated-poly", (0, 1, 2), table, one=FinVec.basis(0))
    assert check_associative(A).ok()
    bad = struct_const_algebra(
        "broken", (0, 1), {(0, 0): FinVec.basis(1), (1, 0): FinVec.basis(0)}
    )
    assert not check_associative(bad).ok()


def test_tensor_square_products_are_componentwise(C4):
    A = group_algebra_plain(C4)
    T = tensor_square_algebra(A, A)
    got = T.mul(FinVec.basis((1, 2)), FinVec.basis((3, 3)))
    assert got == FinVec.basis((0, 1))


def test_convolution_algebra_of_functions(C4):
    A = convolution_algebra(C4, group_algebra_plain(cyclic_group(2)))
    got = A.mul(FinVec.basis((1, 0)), FinVec.basis((2, 1)))
    assert got == FinVec.basis((3, 1))
    assert check_associative(A).ok()


def test_local_units(S3):
    A = pointwise_algebra(S3)
    x = FinVec.basis(S3.elements[0]) + FinVec.basis(S3.elements[3], F(2))
    u = local_unit(A, [x])
    assert A.mul(u, x) == x and A.mul(x, u) == x
    zero_prod = struct_const_algebra("zp", ("z",), {})
    with pytest.raises(NoLocalUnitError):
        local_unit(zero_prod, [FinVec.basis("z")])


def test_nondegenerate_and_s_unital(S3):
    assert check_nondegenerate(pointwise_algebra(S3)).ok()
    assert check_s_unital_left(group_algebra_plain(S3)).ok()
    zero_prod = struct_const_algebra("zp", ("z",), {})
    assert not check_nondegenerate(zero_prod).ok()
    assert not check_s_unital_left(zero_prod).ok()


def test_multiplier_from_element_satisfies_compat_laws(S3):
    A = group_algebra_plain(S3)
    z = FinVec.basis((1, 0, 2)) + FinVec.basis((1, 2, 0), F(3))
    m = Multiplier.from_element(A, z)
    assert multiplier_check(m).ok()
    assert m.apply_left(FinVec.basis(S3.identity)) == z


def test_noncentral_element_is_still_a_multiplier(S3):
    # regression: the first compatibility law is (a.m)b == a(m.b); the
    # one-sided reading (m.a)b == a(b.m) wrongly rejects this element
    A = group_algebra_plain(S3)
    p = (FinVec.basis(S3.identity) + FinVec.basis((1, 0, 2))).scale(F(1, 2))
    m = Multiplier.from_element(A, p)
    assert A.mul(p, p) == p
    assert multiplier_check(m).ok()
    assert is_idempotent_multiplier(m)
    assert not is_central_multiplier(m)


def test_multiplier_product_composes_actions(S3):
    A = group_algebra_plain(S3)
    m1 = Multiplier.from_element(A, FinVec.basis((1, 0, 2)))
    m2 = Multiplier.from_element(A, FinVec.basis((1, 2, 0)))
    prod = multiplier_product(m1, m2)
    v = FinVec.basis(S3.identity)
    assert prod.apply_left(v) == A.mul(FinVec.basis(S3.mul((1, 0, 2), (1, 2, 0))), v)
    assert multiplier_check(prod).ok()


def test_identity_and_scalar_multipliers(C4):
    A = group_algebra_plain(C4)
    ident = Multiplier.identity(A)
    assert is_central_multiplier(ident) and is_idempotent_multiplier(ident)
    half = Multiplier.scalar(A, F(1, 2))
    assert half.apply_left(FinVec.basis(2)) == FinVec.basis(2, F(1, 2))
    assert not is_idempotent_multiplier(half)


def test_corner_embeds_and_projects_exactly(S3, corner_A3):
    kS3 = group_algebra_plain(S3)
    L = corner_A3.algebra
    assert len(L.basis) == 2
    assert check_associative(L).ok()
    # embed/project round trip on every corner basis vector
    for tok in L.basis:
        vec = corner_A3.embed(FinVec.basis(tok))
        assert kS3.mul(corner_A3.idem, vec) == vec
        assert corner_A3.project(vec) == FinVec.basis(tok)
    # the corner is unital with unit = projected idempotent
    for tok in L.basis:
        assert L.mul(L.one, FinVec.basis(tok)) == FinVec.basis(tok)


def test_corner_rejects_noncentral_or_nonidempotent(S3):
    kS3 = group_algebra_plain(S3)
    noncentral = (FinVec.basis(S3.identity) + FinVec.basis((1, 0, 2))).scale(F(1, 2))
    with pytest.raises(StructuralError):
        Corner(kS3, noncentral)
    with pytest.raises(StructuralError):
        Corner(kS3, FinVec.basis((1, 0, 2)))


def test_subgroup_average_is_idempotent(S3):
    kS3 = group_algebra_plain(S3)
    fN = subgroup_average_idempotent(kS3, alternating_elements(3))
    assert kS3.mul(fN, fN) == fN
    assert sum(fN[h] for h in alternating_elements(3)) == 1
