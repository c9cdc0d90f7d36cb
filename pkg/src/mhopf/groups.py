"""Computable groups: multiplication tables never materialized, elements are
plain hashable tokens (ints for cyclic groups and the integers, image tuples
for permutations)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import StructuralError
from .reports import CheckResult, ResultSink
from .vectors import token_key


@dataclass(frozen=True)
class GroupSpec:
    name: str
    identity: object
    mul: Callable[[object, object], object]
    inv: Callable[[object], object]
    elements: Optional[tuple] = None
    encode: Callable[[object], object] = field(default=lambda t: t)

    def is_finite(self) -> bool:
        return self.elements is not None

    def order(self) -> int:
        if self.elements is None:
            raise StructuralError(f"group {self.name} is not enumerated")
        return len(self.elements)


def cyclic_group(n: int) -> GroupSpec:
    if n < 1:
        raise StructuralError("cyclic group order must be positive")
    return GroupSpec(
        name=f"cyclic:{n}",
        identity=0,
        mul=lambda a, b: (a + b) % n,
        inv=lambda a: (-a) % n,
        elements=tuple(range(n)),
    )


def _perm_mul(p, q):
    # apply q first, then p
    return tuple(p[q[i]] for i in range(len(p)))


def _perm_inv(p):
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[pi] = i
    return tuple(out)


def symmetric_group(n: int) -> GroupSpec:
    if n < 1:
        raise StructuralError("symmetric group degree must be positive")
    return GroupSpec(
        name=f"symmetric:{n}",
        identity=tuple(range(n)),
        mul=_perm_mul,
        inv=_perm_inv,
        elements=tuple(itertools.permutations(range(n))),
    )


def integers_group() -> GroupSpec:
    return GroupSpec(
        name="integers",
        identity=0,
        mul=lambda a, b: a + b,
        inv=lambda a: -a,
        elements=None,
    )


def parse_group(spec: str) -> GroupSpec:
    """Parse 'cyclic:n', 'symmetric:n' or 'integers'."""
    parts = spec.split(":")
    if parts[0] == "cyclic" and len(parts) == 2:
        return cyclic_group(int(parts[1]))
    if parts[0] == "symmetric" and len(parts) == 2:
        return symmetric_group(int(parts[1]))
    if parts[0] == "integers" and len(parts) == 1:
        return integers_group()
    raise StructuralError(f"unknown group spec: {spec!r}")


def perm_parity(p) -> int:
    """0 for even permutations, 1 for odd."""
    inversions = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return inversions % 2


def alternating_elements(n: int) -> tuple:
    return tuple(
        p for p in itertools.permutations(range(n)) if perm_parity(p) == 0
    )


def subgroup_elements(group: GroupSpec, name: str) -> tuple:
    """Named subgroups usable in scenario files."""
    if name == "trivial":
        return (group.identity,)
    if name == "full":
        return tuple(group.elements)
    if name == "alternating" and group.name.startswith("symmetric:"):
        return alternating_elements(len(group.identity))
    if name.startswith("generated:"):
        gens = eval_tokens(group, name.split(":", 1)[1])
        return closure(group, gens)
    raise StructuralError(f"unknown subgroup {name!r} of {group.name}")


def eval_tokens(group: GroupSpec, text: str) -> tuple:
    import ast

    value = ast.literal_eval(text)
    if not isinstance(value, (list, tuple)):
        value = [value]
    return tuple(tuple(v) if isinstance(v, list) else v for v in value)


def closure(group: GroupSpec, gens) -> tuple:
    seen = {group.identity}
    frontier = list(gens)
    while frontier:
        g = frontier.pop()
        if g in seen:
            continue
        seen.add(g)
        for h in list(seen):
            for prod in (group.mul(g, h), group.mul(h, g)):
                if prod not in seen:
                    frontier.append(prod)
        frontier.append(group.inv(g))
    return tuple(sorted(seen, key=token_key))


def is_normal(group: GroupSpec, sub) -> bool:
    subset = set(sub)
    return all(
        group.mul(group.mul(g, h), group.inv(g)) in subset
        for g in group.elements
        for h in sub
    )


def default_window(group: GroupSpec, size: int) -> tuple:
    """Deterministic finite window: the whole group, or a ball in Z."""
    if group.elements is not None:
        return tuple(sorted(group.elements, key=token_key))
    if group.name == "integers":
        return tuple(range(-size, size + 1))
    raise StructuralError(f"no default window for group {group.name}")


def group_check(group: GroupSpec, window) -> list[CheckResult]:
    """Exhaustive group laws on a finite window.

    The window must contain the identity and be closed under inversion;
    associativity is checked on every triple.  Token encoding must be
    injective on the window.
    """
    window = tuple(window)
    sink = ResultSink()

    codes = {}
    collisions = []
    for g in window:
        code = group.encode(g)
        if code in codes and codes[code] != g:
            collisions.append({"token": g, "clashes_with": codes[code]})
        codes[code] = g
    if collisions:
        raise StructuralError(f"encoding collision: {collisions[0]}")

    e = group.identity
    id_witnesses = [
        {"element": g, "left": group.mul(e, g), "right": group.mul(g, e)}
        for g in window
        if group.mul(e, g) != g or group.mul(g, e) != g
    ]
    sink.law("identity_law", id_witnesses, window=len(window))

    inv_witnesses = []
    for g in window:
        gi = group.inv(g)
        if group.mul(g, gi) != e or group.mul(gi, g) != e:
            inv_witnesses.append({"element": g, "inverse": gi})
    sink.law("inverse_law", inv_witnesses)

    assoc_witnesses = []
    for a in window:
        for b in window:
            ab = group.mul(a, b)
            for c in window:
                if group.mul(ab, c) != group.mul(a, group.mul(b, c)):
                    assoc_witnesses.append({"triple": (a, b, c)})
                    if len(assoc_witnesses) >= 3:
                        break
            if len(assoc_witnesses) >= 3:
                break
        if len(assoc_witnesses) >= 3:
            break
    sink.law("associativity", assoc_witnesses, triples=len(window) ** 3)

    if group.elements is not None and set(window) == set(group.elements):
        closed = [
            {"pair": (a, b), "product": group.mul(a, b)}
            for a in window
            for b in window
            if group.mul(a, b) not in codes
        ]
        sink.law("closure", closed)
    return sink.results
