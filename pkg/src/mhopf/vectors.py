"""Finitely supported vectors over exact rationals.

A vector is a map from basis tokens to nonzero Fractions.  Tokens are
hashable values (ints, strings, nested tuples); `token_key` gives a total
order across mixed token kinds so every iteration, rendering and matrix
layout in the package is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .errors import WindowError

Token = object
Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce ints, strings like '2/3' and Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def token_key(tok):
    """Total order key over mixed token kinds, recursing through tuples."""
    if isinstance(tok, bool):
        return (0, int(tok))
    if isinstance(tok, int):
        return (0, tok)
    if isinstance(tok, str):
        return (1, tok)
    if isinstance(tok, Fraction):
        return (2, tok)
    if isinstance(tok, tuple):
        return (3, len(tok), tuple(token_key(t) for t in tok))
    return (4, repr(tok))


def format_token(tok) -> str:
    if isinstance(tok, tuple):
        return "(" + ",".join(format_token(t) for t in tok) + ")"
    return str(tok)


class FinVec:
    """Immutable finitely supported vector with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, items: Mapping | Iterable = ()):
        coeffs = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for tok, val in pairs:
            val = as_scalar(val)
            if val:
                acc = coeffs.get(tok)
                if acc is None:
                    coeffs[tok] = val
                else:
                    acc = acc + val
                    if acc:
                        coeffs[tok] = acc
                    else:
                        del coeffs[tok]
        self._c = coeffs

    @staticmethod
    def basis(tok, coeff=1) -> "FinVec":
        return FinVec([(tok, coeff)])

    @staticmethod
    def zero() -> "FinVec":
        return FinVec()

    def items(self):
        """Support/coefficient pairs in canonical token order."""
        return sorted(self._c.items(), key=lambda kv: token_key(kv[0]))

    def support(self):
        return tuple(tok for tok, _ in self.items())

    def __getitem__(self, tok) -> Fraction:
        return self._c.get(tok, Fraction(0))

    def __contains__(self, tok) -> bool:
        return tok in self._c

    def __iter__(self) -> Iterator:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __add__(self, other: "FinVec") -> "FinVec":
        out = dict(self._c)
        for tok, val in other._c.items():
            acc = out.get(tok, Fraction(0)) + val
            if acc:
                out[tok] = acc
            else:
                out.pop(tok, None)
        res = FinVec.__new__(FinVec)
        res._c = out
        return res

    def __neg__(self) -> "FinVec":
        res = FinVec.__new__(FinVec)
        res._c = {tok: -val for tok, val in self._c.items()}
        return res

    def __sub__(self, other: "FinVec") -> "FinVec":
        return self + (-other)

    def scale(self, coeff) -> "FinVec":
        coeff = as_scalar(coeff)
        if not coeff:
            return FinVec()
        res = FinVec.__new__(FinVec)
        res._c = {tok: coeff * val for tok, val in self._c.items()}
        return res

    def __rmul__(self, coeff) -> "FinVec":
        return self.scale(coeff)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinVec) and self._c == other._c

    __hash__ = None

    def map_tokens(self, fn: Callable) -> "FinVec":
        return FinVec((fn(tok), val) for tok, val in self._c.items())

    def map_values(self, fn: Callable) -> "FinVec":
        return FinVec((tok, fn(val)) for tok, val in self._c.items())

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"{val}*{format_token(tok)}" for tok, val in self.items())


def vec_sum(vecs: Iterable[FinVec]) -> FinVec:
    total = FinVec()
    for v in vecs:
        total = total + v
    return total


def tensor(x: FinVec, y: FinVec) -> FinVec:
    """Tensor product of two vectors, indexed by token pairs."""
    return FinVec(
        ((i, j), ci * cj) for i, ci in x.items() for j, cj in y.items()
    )


def tensor_pairs(x: FinVec, y: FinVec, combine=lambda i, j: (i, j)) -> FinVec:
    return FinVec(
        (combine(i, j), ci * cj) for i, ci in x.items() for j, cj in y.items()
    )


class LinearMapTable:
    """Linear map given by images of basis tokens, valid only on its window.

    Applying the map to a vector supported outside the window raises
    WindowError; there is no silent extension by zero.
    """

    __slots__ = ("table", "window")

    def __init__(self, table: Mapping, window: Iterable | None = None):
        self.table = dict(table)
        self.window = frozenset(self.table if window is None else window)
        missing = [tok for tok in self.window if tok not in self.table]
        for tok in missing:
            self.table[tok] = FinVec()

    def apply(self, vec: FinVec) -> FinVec:
        out = FinVec()
        for tok, coeff in vec.items():
            if tok not in self.window:
                raise WindowError(f"token {format_token(tok)} outside window")
            out = out + self.table[tok].scale(coeff)
        return out

    def __call__(self, vec: FinVec) -> FinVec:
        return self.apply(vec)

    def equal_on_window(self, other: "LinearMapTable") -> bool:
        if self.window != other.window:
            return False
        return all(self.table[tok] == other.table[tok] for tok in self.window)
