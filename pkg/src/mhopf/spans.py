"""Span and kernel computations on finitely supported vectors."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg
from .vectors import FinVec, token_key


def collect_tokens(vecs: Iterable[FinVec]):
    toks = set()
    for v in vecs:
        toks.update(v.support())
    return sorted(toks, key=token_key)


def to_rows(vecs: Sequence[FinVec], tokens=None):
    if tokens is None:
        tokens = collect_tokens(vecs)
    return [[v[t] for t in tokens] for v in vecs], tokens


def span_basis(vecs: Sequence[FinVec]):
    """Canonical basis (reduced echelon rows) of the span."""
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    rows, tokens = to_rows(vecs)
    red, pivots = linalg.rref(rows)
    return [
        FinVec(zip(tokens, red[i])) for i in range(len(pivots))
    ]


def span_dim(vecs: Sequence[FinVec]) -> int:
    return len(span_basis(vecs))


def in_span(target: FinVec, vecs: Sequence[FinVec]):
    """Coefficients c with sum(c_i * vecs_i) == target, or None."""
    vecs = list(vecs)
    tokens = collect_tokens(list(vecs) + [target])
    if not tokens:
        return [Fraction(0)] * len(vecs)
    rows = [[v[t] for v in vecs] for t in tokens]
    rhs = [target[t] for t in tokens]
    return linalg.solve(rows, rhs)


def subspace_le(sub: Sequence[FinVec], sup: Sequence[FinVec]):
    """None when span(sub) <= span(sup); otherwise a witness vector outside."""
    sup = list(sup)
    for v in sub:
        if v and in_span(v, sup) is None:
            return v
    return None


def subspace_equal(a: Sequence[FinVec], b: Sequence[FinVec]) -> bool:
    return span_basis(list(a)) == span_basis(list(b))


def kernel_of_map(domain_tokens, image: Callable[[object], FinVec]):
    """Basis of the kernel of the linear map token -> image(token)."""
    domain_tokens = sorted(domain_tokens, key=token_key)
    images = [image(t) for t in domain_tokens]
    out_tokens = collect_tokens(images)
    rows = [[img[t] for img in images] for t in out_tokens]
    coeff_vecs = linalg.nullspace(rows, ncols=len(domain_tokens))
    return [FinVec(zip(domain_tokens, c)) for c in coeff_vecs]


def independent_subset(items):
    """Greedy maximal independent sublist of (key, vector) pairs."""
    kept = []
    basis = []
    for key, vec in items:
        if vec and in_span(vec, basis) is None:
            kept.append((key, vec))
            basis.append(vec)
    return kept
