import itertools

import pytest

from mhopf.errors import StructuralError
from mhopf.groups import (
    alternating_elements,
    closure,
    cyclic_group,
    default_window,
    group_check,
    integers_group,
    is_normal,
    parse_group,
    perm_parity,
    subgroup_elements,
    symmetric_group,
)


def compose(p, q):
    # independent oracle: apply q first, then p, as functions on points
    return tuple(p[q[i]] for i in range(len(p)))


def test_symmetric_group_matches_function_composition(S3):
    for p, q in itertools.product(S3.elements, repeat=2):
        assert S3.mul(p, q) == compose(p, q)
    for p in S3.elements:
        assert S3.mul(p, S3.inv(p)) == S3.identity


def test_cyclic_group_is_addition_mod_n(C4):
    assert sorted(C4.elements) == [0, 1, 2, 3]
    for a, b in itertools.product(C4.elements, repeat=2):
        assert C4.mul(a, b) == (a + b) % 4
        assert C4.inv(a) == (-a) % 4


def test_integers_group_has_no_enumeration():
    Z = integers_group()
    assert not Z.is_finite()
    assert Z.mul(3, -5) == -2
    assert list(default_window(Z, 7)) == sorted(default_window(Z, 7))


def test_perm_parity_counts_inversions():
    assert perm_parity((0, 1, 2)) == 0
    assert perm_parity((1, 0, 2)) == 1
    assert perm_parity((1, 2, 0)) == 0
    assert perm_parity((2, 1, 0)) == 1


def test_alternating_elements_are_the_even_ones(S3):
    a3 = alternating_elements(3)
    assert set(a3) == {p for p in S3.elements if perm_parity(p) == 0}
    assert len(a3) == 3


def test_subgroup_helpers(S3):
    assert subgroup_elements(S3, "trivial") == (S3.identity,)
    assert set(subgroup_elements(S3, "full")) == set(S3.elements)
    assert set(subgroup_elements(S3, "alternating")) == set(alternating_elements(3))
    gen = closure(S3, [(1, 0, 2)])
    assert set(gen) == {S3.identity, (1, 0, 2)}
    assert is_normal(S3, alternating_elements(3))
    assert not is_normal(S3, gen)


def test_parse_group_specs():
    assert parse_group("cyclic:6").order() == 6
    assert parse_group("symmetric:3").order() == 6
    assert parse_group("integers").name == "integers"
    with pytest.raises(StructuralError):
        parse_group("dihedral:4")


def test_group_check_passes_and_catches_broken_mul(S3, C4):
    for g in (S3, C4):
        assert all(r.ok() for r in group_check(g, g.elements))
    import dataclasses

    broken = dataclasses.replace(S3, mul=lambda p, q: p)
    outcomes = {r.name: r for r in group_check(broken, broken.elements)}
    assert any(not r.ok() for r in outcomes.values())
