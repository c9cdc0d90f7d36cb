"""Exact rational linear algebra on small dense matrices.

The row-reduction kernel has two interchangeable backends: a compiled
Cython module and a pure-Python twin with the identical algorithm.  The
compiled one is used when importable; set MHOPF_PURE=1 to force the
fallback (the benchmark and the test suite exercise both).
"""

from __future__ import annotations

import os
from fractions import Fraction

if os.environ.get("MHOPF_PURE"):
    from ._rref_py import rref_pairs as _rref_pairs

    BACKEND = "python"
else:
    try:
        from ._rref_cy import rref_pairs as _rref_pairs

        BACKEND = "cython"
    except ImportError:
        from ._rref_py import rref_pairs as _rref_pairs

        BACKEND = "python"

Matrix = "list[list[Fraction]]"


def _to_pairs(rows):
    num = [[f.numerator for f in row] for row in rows]
    den = [[f.denominator for f in row] for row in rows]
    return num, den

def _from_pairs(num, den):
    return [
        [Fraction(n, d) for n, d in zip(nrow, drow)]
        for nrow, drow in zip(num, den)
    ]


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    if not rows:
        return [], []
    num, den = _to_pairs(rows)
    num, den, pivots = _rref_pairs(num, den)
    return _from_pairs(num, den), pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : A x = 0} for A given as a list of rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        return []
    if not rows:
        rows = [[Fraction(0)] * ncols]
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """One exact solution of A x = rhs, or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    if not rows:
        return None if any(rhs) else []
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x
