"""Multiplier Hopf algebra instances with covered comultiplication.

The comultiplication never appears bare: every rule produces honest tensors
after covering by an element, following the two bijective coverage maps

    T1: a (x) b  |->  Delta(a)(1 (x) b)        (rule delta_r)
    T2: a (x) b  |->  (a (x) 1) Delta(b)       (rule delta_l)

together with their closed-form inverses t1_inv/t2_inv, the counit, the
antipode, and (for regular instances) the flipped coverages and the inverse
antipode.  Two families ship in closed form: finitely supported functions
on a group under pointwise product, and the group algebra; a generic
windowed-inversion fallback builds instances from materialized structure
constants for finite unital algebras.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import spans
from .algebras import Algebra, group_algebra_plain, pointwise_algebra
from .errors import CapabilityError, StructuralError
from .groups import GroupSpec
from .reports import CheckResult
from .vectors import FinVec

PairRule = Callable[[object, object], FinVec]


@dataclass(frozen=True)
class MhaInstance:
    name: str
    algebra: Algebra
    delta_r: PairRule
    delta_l: PairRule
    t1_inv: PairRule
    t2_inv: PairRule
    counit: Callable[[object], Fraction]
    antipode: Callable[[object], FinVec]
    antipode_inv: Optional[Callable[[object], FinVec]] = None
    delta_r_flip: Optional[PairRule] = None
    delta_l_flip: Optional[PairRule] = None
    cov_iS: Optional[PairRule] = None
    cov_Sinv: Optional[PairRule] = None
    hom_right_finite: bool = False

    def is_regular(self) -> bool:
        return (
            self.antipode_inv is not None
            and self.delta_r_flip is not None
            and self.delta_l_flip is not None
        )

    def basis_window(self, window=None):
        return self.algebra.basis_window(window)

    def counit_vec(self, x: FinVec) -> Fraction:
        return sum((c * self.counit(t) for t, c in x.items()), Fraction(0))

    def antipode_vec(self, x: FinVec) -> FinVec:
        out = FinVec()
        for t, c in x.items():
            out = out + self.antipode(t).scale(c)
        return out

    def antipode_inv_vec(self, x: FinVec) -> FinVec:
        if self.antipode_inv is None:
            raise CapabilityError(f"{self.name} has no inverse antipode")
        out = FinVec()
        for t, c in x.items():
            out = out + self.antipode_inv(t).scale(c)
        return out


def rule_vec(rule: PairRule, x: FinVec, y: FinVec) -> FinVec:
    """Bilinear extension of a basis-pair rule."""
    out = FinVec()
    for i, ci in x.items():
        for j, cj in y.items():
            out = out + rule(i, j).scale(ci * cj)
    return out


SWEEDLER_PATTERNS = ("plain_r", "plain_l", "iS", "Sinv")


def sweedler_cov(instance: MhaInstance, pattern: str, a, b) -> FinVec:
    """Covered Sweedler expansions as finite tensors.

    plain_r: Delta(a)(1 (x) b)        plain_l: (a (x) 1) Delta(b)
    iS:  sum a_1 (x) S(a_2) b         Sinv: sum a_2 (x) S^{-1}(a_1) b
    """
    if pattern == "plain_r":
        rule = instance.delta_r
    elif pattern == "plain_l":
        rule = instance.delta_l
    elif pattern == "iS":
        rule = instance.cov_iS
        if rule is None:
            raise CapabilityError(f"{instance.name} lacks the iS covered expansion")
    elif pattern == "Sinv":
        rule = instance.cov_Sinv
        if rule is None or not instance.is_regular():
            raise CapabilityError(
                f"{instance.name} is not regular: no S^{{-1}} covered expansion"
            )
    else:
        raise StructuralError(f"unknown Sweedler pattern {pattern!r}")
    if not isinstance(a, FinVec):
        a = FinVec.basis(a)
    if not isinstance(b, FinVec):
        b = FinVec.basis(b)
    return rule_vec(rule, a, b)


def function_algebra(group: GroupSpec) -> MhaInstance:
    """Finitely supported functions on a group; Delta(f)(p,q) = f(pq)."""
    mul, inv, e = group.mul, group.inv, group.identity

    return MhaInstance(
        name=f"A_G:{group.name}",
        algebra=pointwise_algebra(group),
        delta_r=lambda r, q: FinVec.basis((mul(r, inv(q)), q)),
        delta_l=lambda p, r: FinVec.basis((p, mul(inv(p), r))),
        t1_inv=lambda s, q: FinVec.basis((mul(s, q), q)),
        t2_inv=lambda p, s: FinVec.basis((p, mul(p, s))),
        counit=lambda g: Fraction(1) if g == e else Fraction(0),
        antipode=lambda g: FinVec.basis(inv(g)),
        antipode_inv=lambda g: FinVec.basis(inv(g)),
        delta_r_flip=lambda r, b: FinVec.basis((b, mul(inv(b), r))),
        delta_l_flip=lambda a, r: FinVec.basis((mul(r, inv(a)), a)),
        cov_iS=lambda p, q: FinVec.basis((mul(p, q), q)),
        cov_Sinv=lambda p, q: FinVec.basis((mul(q, p), q)),
        hom_right_finite=True,
    )


def group_algebra(group: GroupSpec) -> MhaInstance:
    """Group algebra with group-like comultiplication Delta(g) = g (x) g."""
    mul, inv = group.mul, group.inv

    return MhaInstance(
        name=f"kG:{group.name}",
        algebra=group_algebra_plain(group),
        delta_r=lambda g, b: FinVec.basis((g, mul(g, b))),
        delta_l=lambda a, g: FinVec.basis((mul(a, g), g)),
        t1_inv=lambda g, h: FinVec.basis((g, mul(inv(g), h))),
        t2_inv=lambda h, g: FinVec.basis((mul(h, inv(g)), g)),
        counit=lambda g: Fraction(1),
        antipode=lambda g: FinVec.basis(inv(g)),
        antipode_inv=lambda g: FinVec.basis(inv(g)),
        delta_r_flip=lambda g, b: FinVec.basis((mul(g, b), g)),
        delta_l_flip=lambda a, g: FinVec.basis((g, mul(a, g))),
        cov_iS=lambda g, h: FinVec.basis((g, mul(inv(g), h))),
        cov_Sinv=lambda g, h: FinVec.basis((g, mul(inv(g), h))),
        hom_right_finite=False,
    )


def instance_for(kind: str, group: GroupSpec) -> MhaInstance:
    if kind == "A_G":
        return function_algebra(group)
    if kind == "kG":
        return group_algebra(group)
    raise StructuralError(f"unknown instance kind {kind!r}")


def mha_from_delta(
    algebra: Algebra,
    delta: Callable[[object], FinVec],
    counit: Callable[[object], Fraction],
    antipode: Callable[[object], FinVec],
    name: str = "structconsts",
) -> MhaInstance:
    """Generic instance from a materialized comultiplication.

    Only for finite-dimensional algebras: coverage inverses are computed by
    exact inversion of T1 and T2 on the full pair span; raises
    StructuralError when a coverage map is not bijective.
    """
    if algebra.basis is None:
        raise CapabilityError("materialized comultiplication needs a finite basis")
    basis = algebra.basis
    deltas = {a: delta(a) for a in basis}

    def pair_mul_second(pairs: FinVec, b) -> FinVec:
        out = FinVec()
        for (u, v), c in pairs.items():
            out = out + algebra.mul_basis(v, b).map_tokens(lambda t, u=u: (u, t)).scale(c)
        return out

    def pair_mul_first_left(a, pairs: FinVec) -> FinVec:
        out = FinVec()
        for (u, v), c in pairs.items():
            out = out + algebra.mul_basis(a, u).map_tokens(lambda t, v=v: (t, v)).scale(c)
        return out

    def pair_mul_first_right(pairs: FinVec, b) -> FinVec:
        out = FinVec()
        for (u, v), c in pairs.items():
            out = out + algebra.mul_basis(u, b).map_tokens(lambda t, v=v: (t, v)).scale(c)
        return out

    def pair_mul_second_left(a, pairs: FinVec) -> FinVec:
        out = FinVec()
        for (u, v), c in pairs.items():
            out = out + algebra.mul_basis(a, v).map_tokens(lambda t, u=u: (u, t)).scale(c)
        return out

    delta_r = lambda a, b: pair_mul_second(deltas[a], b)
    delta_l = lambda a, b: pair_mul_first_left(a, deltas[b])
    delta_r_flip = lambda a, b: pair_mul_first_right(deltas[a], b)
    delta_l_flip = lambda a, b: pair_mul_second_left(a, deltas[b])

    pair_tokens = [(a, b) for a in basis for b in basis]

    def invert_map(rule: PairRule, label: str) -> PairRule:
        images = {p: rule(*p) for p in pair_tokens}
        kernel = spans.kernel_of_map(pair_tokens, lambda p: images[p])
        if kernel:
            raise StructuralError(f"coverage map {label} is not injective")
        image_list = [images[p] for p in pair_tokens]
        table = {}
        for target in pair_tokens:
            coeffs = spans.in_span(FinVec.basis(target), image_list)
            if coeffs is None:
                raise StructuralError(f"coverage map {label} is not surjective")
            table[target] = FinVec(zip(pair_tokens, coeffs))
        return lambda a, b: table[(a, b)]

    t1_inv = invert_map(delta_r, "T1")
    t2_inv = invert_map(delta_l, "T2")

    def cov_iS(a, b):
        out = FinVec()
        for (u, v), c in deltas[a].items():
            sv = antipode(v)
            for w, cw in sv.items():
                out = out + algebra.mul_basis(w, b).map_tokens(
                    lambda t, u=u: (u, t)
                ).scale(c * cw)
        return out

    return MhaInstance(
        name=name,
        algebra=algebra,
        delta_r=delta_r,
        delta_l=delta_l,
        t1_inv=t1_inv,
        t2_inv=t2_inv,
        counit=counit,
        antipode=antipode,
        antipode_inv=None,
        delta_r_flip=delta_r_flip,
        delta_l_flip=delta_l_flip,
        cov_iS=cov_iS,
        cov_Sinv=None,
        hom_right_finite=False,
    )


def mutate_instance(instance: MhaInstance, kind: str) -> MhaInstance:
    """Deterministic corruptions used by fail fixtures and mutation tests."""
    if kind == "antipode":
        return dataclasses.replace(
            instance,
            name=instance.name + "~antipode",
            antipode=lambda g: FinVec.basis(g),
            antipode_inv=lambda g: FinVec.basis(g),
        )
    if kind == "counit":
        base = instance.counit
        return dataclasses.replace(
            instance,
            name=instance.name + "~counit",
            counit=lambda g: base(g) + 1,
        )
    if kind == "delta":
        base_rule = instance.delta_r
        return dataclasses.replace(
            instance,
            name=instance.name + "~delta",
            delta_r=lambda a, b: base_rule(a, b).map_tokens(lambda p: (p[1], p[0])),
        )
    raise StructuralError(f"unknown mutation {kind!r}")


def check_coassociativity(instance: MhaInstance, window=None) -> CheckResult:
    """(a (x) 1 (x) 1)(Delta (x) i)(Delta(b)(1 (x) c)) ==
    ((i (x) Delta)((a (x) 1)Delta(b)))(1 (x) 1 (x) c) on all window triples."""
    window = instance.basis_window(window)
    witnesses = []
    for a in window:
        for b in window:
            for c in window:
                lhs = FinVec()
                for (u, v), cuv in instance.delta_r(b, c).items():
                    for (s, t), cst in instance.delta_l(a, u).items():
                        lhs = lhs + FinVec.basis((s, t, v), cuv * cst)
                rhs = FinVec()
                for (s, t), cst in instance.delta_l(a, b).items():
                    for (u, w), cuw in instance.delta_r(t, c).items():
                        rhs = rhs + FinVec.basis((s, u, w), cst * cuw)
                if lhs != rhs:
                    witnesses.append({"triple": (a, b, c), "lhs": lhs, "rhs": rhs})
                    if len(witnesses) >= 3:
                        return CheckResult.failed("coassociativity", witnesses)
    if witnesses:
        return CheckResult.failed("coassociativity", witnesses)
    return CheckResult.passed("coassociativity", triples=len(window) ** 3)


def check_counit(instance: MhaInstance, window=None) -> CheckResult:
    """(eps (x) i)(Delta(a)(1 (x) b)) == ab == (i (x) eps)((a (x) 1)Delta(b))."""
    window = instance.basis_window(window)
    witnesses = []
    for a in window:
        for b in window:
            prod = instance.algebra.mul_basis(a, b)
            left = FinVec()
            for (u, v), c in instance.delta_r(a, b).items():
                left = left + FinVec.basis(v, c * instance.counit(u))
            right = FinVec()
            for (u, v), c in instance.delta_l(a, b).items():
                right = right + FinVec.basis(u, c * instance.counit(v))
            if left != prod or right != prod:
                witnesses.append(
                    {"pair": (a, b), "left": left, "right": right, "product": prod}
                )
                if len(witnesses) >= 3:
                    return CheckResult.failed("counit", witnesses)
    if witnesses:
        return CheckResult.failed("counit", witnesses)
    return CheckResult.passed("counit", pairs=len(window) ** 2)


def check_counit_homomorphism(instance: MhaInstance, window=None) -> CheckResult:
    window = instance.basis_window(window)
    witnesses = []
    for a in window:
        for b in window:
            lhs = instance.counit_vec(instance.algebra.mul_basis(a, b))
            rhs = instance.counit(a) * instance.counit(b)
            if lhs != rhs:
                witnesses.append({"pair": (a, b), "eps(ab)": lhs, "eps(a)eps(b)": rhs})
    if witnesses:
        return CheckResult.failed("counit_homomorphism", witnesses[:3])
    return CheckResult.passed("counit_homomorphism", pairs=len(window) ** 2)


def check_antipode(instance: MhaInstance, window=None) -> CheckResult:
    """m(S (x) i)(Delta(a)(1 (x) b)) == eps(a) b and the mirrored law."""
    window = instance.basis_window(window)
    witnesses = []
    for a in window:
        for b in window:
            lhs = FinVec()
            for (u, v), c in instance.delta_r(a, b).items():
                lhs = lhs + instance.algebra.mul(
                    instance.antipode(u), FinVec.basis(v)
                ).scale(c)
            expected = FinVec.basis(b, instance.counit(a))
            rhs = FinVec()
            for (u, v), c in instance.delta_l(a, b).items():
                rhs = rhs + instance.algebra.mul(
                    FinVec.basis(u), instance.antipode(v)
                ).scale(c)
            expected_r = FinVec.basis(a, instance.counit(b))
            if lhs != expected or rhs != expected_r:
                witnesses.append(
                    {"pair": (a, b), "left": lhs, "left_expected": expected,
                     "right": rhs, "right_expected": expected_r}
                )
                if len(witnesses) >= 3:
                    return CheckResult.failed("antipode", witnesses)
    if witnesses:
        return CheckResult.failed("antipode", witnesses)
    return CheckResult.passed("antipode", pairs=len(window) ** 2)


def check_antipode_antihomomorphism(instance: MhaInstance, window=None) -> CheckResult:
    window = instance.basis_window(window)
    witnesses = []
    for a in window:
        for b in window:
            lhs = instance.antipode_vec(instance.algebra.mul_basis(a, b))
            rhs = instance.algebra.mul(instance.antipode(b), instance.antipode(a))
            if lhs != rhs:
                witnesses.append({"pair": (a, b), "S(ab)": lhs, "S(b)S(a)": rhs})
    if witnesses:
        return CheckResult.failed("antipode_antihomomorphism", witnesses[:3])
    return CheckResult.passed("antipode_antihomomorphism", pairs=len(window) ** 2)


def check_coverage_bijections(instance: MhaInstance, window=None) -> CheckResult:
    """T1 o t1_inv = id = t1_inv o T1 and the T2 versions, on window pairs."""
    window = instance.basis_window(window)
    witnesses = []
    for a in window:
        for b in window:
            unit = FinVec.basis((a, b))
            t1 = _compose(instance.t1_inv, instance.delta_r(a, b))
            if t1 != unit:
                witnesses.append({"map": "t1_inv o T1", "pair": (a, b), "value": t1})
            t1b = _compose(instance.delta_r, instance.t1_inv(a, b))
            if t1b != unit:
                witnesses.append({"map": "T1 o t1_inv", "pair": (a, b), "value": t1b})
            t2 = _compose(instance.t2_inv, instance.delta_l(a, b))
            if t2 != unit:
                witnesses.append({"map": "t2_inv o T2", "pair": (a, b), "value": t2})
            t2b = _compose(instance.delta_l, instance.t2_inv(a, b))
            if t2b != unit:
                witnesses.append({"map": "T2 o t2_inv", "pair": (a, b), "value": t2b})
            if len(witnesses) >= 4:
                return CheckResult.failed("coverage_bijections", witnesses)
    if witnesses:
        return CheckResult.failed("coverage_bijections", witnesses)
    return CheckResult.passed("coverage_bijections", pairs=len(window) ** 2)


def _compose(rule: PairRule, pairs: FinVec) -> FinVec:
    out = FinVec()
    for (u, v), c in pairs.items():
        out = out + rule(u, v).scale(c)
    return out


def check_regular(instance: MhaInstance, window=None) -> CheckResult:
    """Bijectivity of the flipped coverage maps on the window span plus
    S o S^{-1} = id = S^{-1} o S on the window.

    Injectivity is exact on the window span.  Surjectivity searches for
    preimages over a product-enlarged window; an unhit target is a genuine
    failure only when the window exhausts a finite basis, otherwise the
    verdict is inconclusive (the preimage may live outside any finite
    window).
    """
    if not instance.is_regular():
        return CheckResult.failed(
            "regular",
            [{"missing": "flipped coverages or inverse antipode"}],
        )
    window = instance.basis_window(window)
    exhaustive = instance.algebra.is_finite() and set(window) == set(
        instance.algebra.basis
    )
    sources = list(window)
    if not exhaustive:
        seen = set(sources)
        group = instance.algebra.group
        if group is not None:
            for a in window:
                for b in window:
                    p = group.mul(a, b)
                    if p not in seen:
                        seen.add(p)
                        sources.append(p)
    pair_tokens = [(a, b) for a in window for b in window]
    source_pairs = [(a, b) for a in sources for b in sources]
    witnesses = []
    unresolved = []
    for label, rule in (("flip_r", instance.delta_r_flip), ("flip_l", instance.delta_l_flip)):
        kernel = spans.kernel_of_map(pair_tokens, lambda p: rule(*p))
        for v in kernel[:2]:
            witnesses.append({"map": label, "kernel": v})
        images = [rule(*p) for p in source_pairs]
        for target in pair_tokens:
            if spans.in_span(FinVec.basis(target), images) is None:
                if exhaustive:
                    witnesses.append({"map": label, "not_hit": target})
                else:
                    unresolved.append({"map": label, "not_hit": target})
                break
    for g in window:
        gv = FinVec.basis(g)
        if instance.antipode_inv_vec(instance.antipode(g)) != gv:
            witnesses.append({"law": "Sinv o S", "element": g})
        if instance.antipode_vec(instance.antipode_inv(g)) != gv:
            witnesses.append({"law": "S o Sinv", "element": g})
    if witnesses:
        return CheckResult.failed("regular", witnesses[:5])
    if unresolved:
        return CheckResult.inconclusive("regular", unresolved[:5])
    return CheckResult.passed("regular", window=len(window))


def check_mha_axioms(instance: MhaInstance, window=None) -> list[CheckResult]:
    """The full axiom battery on one window."""
    results = [
        check_coassociativity(instance, window),
        check_counit(instance, window),
        check_counit_homomorphism(instance, window),
        check_antipode(instance, window),
        check_antipode_antihomomorphism(instance, window),
        check_coverage_bijections(instance, window),
    ]
    if instance.is_regular():
        results.append(check_regular(instance, window))
    return results
