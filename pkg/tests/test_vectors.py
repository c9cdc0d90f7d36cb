from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhopf.errors import WindowError
from mhopf.vectors import FinVec, LinearMapTable, tensor, tensor_pairs, token_key, vec_sum

coeffs = st.fractions(min_value=-30, max_value=30, max_denominator=7)
tokens = st.sampled_from(["a", "b", "c", (0, 1), (1, 0), 2])
vectors = st.dictionaries(tokens, coeffs, max_size=5).map(FinVec)


def test_zero_coefficients_are_dropped():
    v = FinVec({"a": Fraction(1)}) + FinVec({"a": Fraction(-1)})
    assert v.is_zero()
    assert len(v) == 0
    assert not v


def test_basis_and_getitem():
    v = FinVec.basis("x", Fraction(2, 3))
    assert v["x"] == Fraction(2, 3)
    assert v["y"] == 0
    assert "x" in v and "y" not in v


@settings(deadline=None, derandomize=True)
@given(vectors, vectors, vectors)
def test_addition_laws(u, v, w):
    assert u + v == v + u
    assert (u + v) + w == u + (v + w)
    assert u + FinVec() == u
    assert u - u == FinVec()


@settings(deadline=None, derandomize=True)
@given(vectors, coeffs, coeffs)
def test_scaling_is_linear(v, a, b):
    assert v.scale(a).scale(b) == v.scale(a * b)
    assert v.scale(a) + v.scale(b) == v.scale(a + b)
    assert v.scale(0) == FinVec()


def test_token_key_orders_mixed_tokens():
    toks = [(1, 0), "b", 2, "a", (0, 1)]
    ordered = sorted(toks, key=token_key)
    assert ordered == sorted(ordered, key=token_key)
    assert ordered.index("a") < ordered.index("b")
    assert ordered.index((0, 1)) < ordered.index((1, 0))


def test_tensor_matches_pairwise_products():
    u = FinVec({"a": Fraction(2), "b": Fraction(3)})
    v = FinVec({0: Fraction(1, 2)})
    t = tensor(u, v)
    assert t[("a", 0)] == Fraction(1)
    assert t[("b", 0)] == Fraction(3, 2)
    assert tensor_pairs(u, v, combine=lambda i, j: (j, i))[(0, "b")] == Fraction(3, 2)


def test_vec_sum():
    vs = [FinVec.basis("a"), FinVec.basis("a"), FinVec.basis("b", Fraction(-1))]
    assert vec_sum(vs) == FinVec({"a": Fraction(2), "b": Fraction(-1)})


def test_map_tokens_and_values():
    v = FinVec({1: Fraction(2), 2: Fraction(-4)})
    assert v.map_tokens(lambda t: t + 10) == FinVec({11: Fraction(2), 12: Fraction(-4)})
    assert v.map_values(lambda c: c / 2) == FinVec({1: Fraction(1), 2: Fraction(-2)})


def test_linear_map_table_applies_and_guards_window():
    table = LinearMapTable({"a": FinVec.basis("b"), "b": FinVec.basis("a", Fraction(2))})
    assert table(FinVec({"a": Fraction(1), "b": Fraction(1)})) == FinVec(
        {"a": Fraction(2), "b": Fraction(1)}
    )
    with pytest.raises(WindowError):
        table(FinVec.basis("missing"))
