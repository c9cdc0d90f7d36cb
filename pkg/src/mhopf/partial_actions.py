"""Partial module algebras, projections, and globalization.

A partial action of a multiplier Hopf algebra on a nonunital algebra is a
bilinear rule a, x |-> a.x together with a multiplier map e: A -> M(L)
correcting the failure of the global module-algebra laws.  Everything that
normally needs a bare comultiplication is phrased through the covered
expansions, so all checks are finite exact computations:

    (i)    a.(x (b.y))   = sum (a_1 . x)(a_2 b . y)
    (ii)   e(a)(b.x)     = sum a_1 . (S(a_2) b . x),   e(A) L within A.L
    (iii)  local units:  a_i b = a_i = b a_i  and  a_i.x_j = a_i.(b.x_j)
    (iv)   A.x = 0  only for x = 0
    (v)    a.((b.x) y)   = sum (a_1 b . x)(a_2 . y)
    (vi)   (b.x) e(a)    = sum a_2 . (S^{-1}(a_1) b . x)
    (vii)  L e(A) within A.L

The globalization machinery realizes the target inside a module algebra of
finitely supported functions: theta(x) has table g |-> delta_g . x, the
envelope is spanned by translates a |> theta(x), and the projection
collapses a table back into the target.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional

from . import spans
from .algebras import (
    Algebra,
    Corner,
    Multiplier,
    convolution_algebra,
    group_algebra_plain,
    multiplier_check,
    subgroup_average_idempotent,
)
from .errors import CapabilityError, StructuralError
from .groups import GroupSpec, closure, is_normal
from .homr import HomRElem
from .mha import MhaInstance, function_algebra, rule_vec
from .reports import CheckResult
from .vectors import FinVec, token_key, vec_sum

ActRule = Callable[[object, object], FinVec]


@dataclass(frozen=True)
class PartialActionData:
    name: str
    instance: MhaInstance
    algebra: Algebra
    act: ActRule
    e_map: Callable[[object], Multiplier]
    a_window: Optional[tuple] = None
    aux: dict = field(default_factory=dict, compare=False, repr=False)

    def act_vec(self, a: FinVec, x: FinVec) -> FinVec:
        if not isinstance(a, FinVec):
            a = FinVec.basis(a)
        if not isinstance(x, FinVec):
            x = FinVec.basis(x)
        out = FinVec()
        for g, cg in a.items():
            for t, ct in x.items():
                out = out + self.act(g, t).scale(cg * ct)
        return out

    def acting_window(self, window=None) -> tuple:
        if isinstance(window, int):
            return self.acting_window(None)[:window]
        if window is not None:
            return tuple(window)
        if self.a_window is not None:
            return self.a_window
        return self.instance.basis_window(None)


@dataclass(frozen=True)
class GlobalAction:
    name: str
    instance: MhaInstance
    algebra: Algebra
    act: ActRule

    def act_vec(self, a: FinVec, x: FinVec) -> FinVec:
        if not isinstance(a, FinVec):
            a = FinVec.basis(a)
        if not isinstance(x, FinVec):
            x = FinVec.basis(x)
        out = FinVec()
        for g, cg in a.items():
            for t, ct in x.items():
                out = out + self.act(g, t).scale(cg * ct)
        return out


@dataclass(frozen=True)
class AProjection:
    context: GlobalAction
    rule: Callable[[FinVec], FinVec]
    image: tuple


@dataclass(frozen=True)
class Globalization:
    name: str
    action: PartialActionData
    algebra: Algebra
    act: ActRule
    theta_map: dict
    pi_rule: Callable[[FinVec], FinVec]
    generators: tuple
    gen_labels: tuple
    a_window: tuple

    def theta(self, x: FinVec) -> FinVec:
        if not isinstance(x, FinVec):
            x = FinVec.basis(x)
        out = FinVec()
        for t, c in x.items():
            out = out + self.theta_map[t].scale(c)
        return out

    def act_vec(self, a: FinVec, v: FinVec) -> FinVec:
        if not isinstance(a, FinVec):
            a = FinVec.basis(a)
        out = FinVec()
        for g, cg in a.items():
            for t, ct in v.items():
                out = out + self.act(g, t).scale(cg * ct)
        return out

    def pi_L(self, v: FinVec) -> FinVec:
        return self.pi_rule(v)

    def pi(self, v: FinVec) -> FinVec:
        return self.theta(self.pi_rule(v))


def search_indicator_witness(ground, predicate, max_candidates=2048):
    """Smallest-support-first search for an indicator element.

    Candidates are sums of basis tokens over subsets of the ground window,
    ordered by (size, lexicographic token order).  Returns (witness, True)
    on success, (None, True) when the full subset lattice was exhausted,
    (None, False) when the candidate cap stopped the search early.
    """
    ground = sorted(set(ground), key=token_key)
    tried = 0
    for size in range(1, len(ground) + 1):
        for combo in itertools.combinations(ground, size):
            if tried >= max_candidates:
                return None, False
            tried += 1
            b = vec_sum(FinVec.basis(g) for g in combo)
            if predicate(b):
                return b, True
    return None, True


def check_partial_action(
    P: PartialActionData,
    a_window=None,
    l_window=None,
    max_candidates=2048,
) -> list[CheckResult]:
    """The four defining laws, the multiplier axioms for e, and the
    globality characterization (e = counit exactly when the module laws
    hold globally)."""
    M = P.instance
    aw = P.acting_window(a_window)
    lw = P.algebra.basis_window(l_window)
    results = []

    witnesses = []
    for a in aw:
        for b in aw:
            for x in lw:
                for y in lw:
                    inner = P.algebra.mul(FinVec.basis(x), P.act(b, y))
                    lhs = P.act_vec(FinVec.basis(a), inner)
                    rhs = FinVec()
                    for (u, w), c in M.delta_r(a, b).items():
                        rhs = rhs + P.algebra.mul(P.act(u, x), P.act_vec(FinVec.basis(w), FinVec.basis(y))).scale(c)
                    if lhs != rhs:
                        witnesses.append({"a": a, "b": b, "x": x, "y": y,
                                          "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("action_product_law", witnesses[:3]) if witnesses
        else CheckResult.passed("action_product_law",
                                a_window=len(aw), l_window=len(lw))
    )

    action_span = [P.act(a, x) for a in aw for x in lw]
    action_span = [v for v in action_span if not v.is_zero()]

    witnesses = []
    if M.cov_iS is None:
        results.append(CheckResult.failed(
            "e_left_compatibility", [{"missing": "iS covered expansion"}]))
    else:
        for a in aw:
            for b in aw:
                for x in lw:
                    lhs = P.e_map(a).apply_left(P.act(b, x))
                    rhs = FinVec()
                    for (u, w), c in M.cov_iS(a, b).items():
                        rhs = rhs + P.act_vec(FinVec.basis(u), P.act_vec(FinVec.basis(w), FinVec.basis(x))).scale(c)
                    if lhs != rhs:
                        witnesses.append({"a": a, "b": b, "x": x,
                                          "lhs": lhs, "rhs": rhs})
            for x in lw:
                img = P.e_map(a).apply_left(FinVec.basis(x))
                if not img.is_zero() and spans.in_span(img, action_span) is None:
                    witnesses.append({"a": a, "x": x, "outside_span": img})
        results.append(
            CheckResult.failed("e_left_compatibility", witnesses[:3]) if witnesses
            else CheckResult.passed("e_left_compatibility",
                                    a_window=len(aw), l_window=len(lw))
        )

    def unit_pred(b):
        for a in aw:
            av = FinVec.basis(a)
            if P.instance.algebra.mul(av, b) != av:
                return False
            if P.instance.algebra.mul(b, av) != av:
                return False
        for a in aw:
            for x in lw:
                if P.act_vec(FinVec.basis(a), P.act_vec(b, FinVec.basis(x))) != P.act(a, x):
                    return False
        return True

    witness, exhausted = search_indicator_witness(aw, unit_pred, max_candidates)
    full_ground = P.instance.algebra.is_finite() and set(aw) == set(
        P.instance.algebra.basis)
    if witness is not None:
        results.append(CheckResult.passed("local_units", witness=witness))
    elif exhausted and full_ground:
        results.append(CheckResult.failed(
            "local_units",
            [{"note": "no indicator over the full basis satisfies both clauses",
              "ground": list(aw)}],
        ))
    else:
        results.append(CheckResult.inconclusive(
            "local_units",
            [{"note": "search exhausted a partial window" if exhausted
              else "candidate cap reached", "cap": max_candidates}],
        ))

    def stacked(x_tok):
        out = FinVec()
        for a in aw:
            out = out + P.act(a, x_tok).map_tokens(lambda t, a=a: (a, t))
        return out

    kernel = spans.kernel_of_map(lw, stacked)
    results.append(
        CheckResult.failed("nondegenerate", [{"kernel": v} for v in kernel[:3]])
        if kernel else CheckResult.passed("nondegenerate", l_window=len(lw))
    )

    witnesses = []
    for a in aw:
        res = multiplier_check(P.e_map(a), window=lw)
        if not res.ok():
            witnesses.append({"a": a, "violations": res.witnesses})
    results.append(
        CheckResult.failed("e_multiplier", witnesses[:3]) if witnesses
        else CheckResult.passed("e_multiplier", a_window=len(aw))
    )

    def is_counit_multiplier(a):
        m = P.e_map(a)
        c = M.counit(a)
        for t in lw:
            v = FinVec.basis(t)
            if m.apply_left(v) != v.scale(c) or m.apply_right(v) != v.scale(c):
                return False
        return True

    e_is_counit = all(is_counit_multiplier(a) for a in aw)
    module_law = True
    law_witness = None
    for a in aw:
        for b in aw:
            ab = M.algebra.mul_basis(a, b)
            for x in lw:
                lhs = P.act_vec(FinVec.basis(a), P.act(b, x))
                rhs = P.act_vec(ab, FinVec.basis(x))
                if lhs != rhs:
                    module_law = False
                    law_witness = {"a": a, "b": b, "x": x, "lhs": lhs, "rhs": rhs}
                    break
            if not module_law:
                break
        if not module_law:
            break
    if e_is_counit == module_law:
        results.append(CheckResult.passed(
            "global_characterization", global_action=e_is_counit))
    else:
        results.append(CheckResult.failed(
            "global_characterization",
            [{"e_is_counit": e_is_counit, "module_law": module_law,
              "law_witness": law_witness}],
        ))
    return results


def check_symmetric(
    P: PartialActionData,
    a_window=None,
    l_window=None,
) -> list[CheckResult]:
    """The three symmetric laws; needs a regular acting instance."""
    M = P.instance
    if not M.is_regular():
        raise CapabilityError(f"{M.name} is not regular")
    aw = P.acting_window(a_window)
    lw = P.algebra.basis_window(l_window)
    results = []

    witnesses = []
    for a in aw:
        for b in aw:
            for x in lw:
                for y in lw:
                    inner = P.algebra.mul(P.act(b, x), FinVec.basis(y))
                    lhs = P.act_vec(FinVec.basis(a), inner)
                    rhs = FinVec()
                    for (u, w), c in M.delta_r_flip(a, b).items():
                        rhs = rhs + P.algebra.mul(P.act(u, x), P.act(w, y)).scale(c)
                    if lhs != rhs:
                        witnesses.append({"a": a, "b": b, "x": x, "y": y,
                                          "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("symmetric_product_law", witnesses[:3]) if witnesses
        else CheckResult.passed("symmetric_product_law",
                                a_window=len(aw), l_window=len(lw))
    )

    witnesses = []
    for a in aw:
        for b in aw:
            for x in lw:
                lhs = P.e_map(a).apply_right(P.act(b, x))
                rhs = FinVec()
                for (u, w), c in M.cov_Sinv(a, b).items():
                    rhs = rhs + P.act_vec(FinVec.basis(u), P.act_vec(FinVec.basis(w), FinVec.basis(x))).scale(c)
                if lhs != rhs:
                    witnesses.append({"a": a, "b": b, "x": x,
                                      "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("e_right_compatibility", witnesses[:3]) if witnesses
        else CheckResult.passed("e_right_compatibility",
                                a_window=len(aw), l_window=len(lw))
    )

    action_span = [P.act(a, x) for a in aw for x in lw]
    action_span = [v for v in action_span if not v.is_zero()]
    witnesses = []
    for a in aw:
        for x in lw:
            img = P.e_map(a).apply_right(FinVec.basis(x))
            if not img.is_zero() and spans.in_span(img, action_span) is None:
                witnesses.append({"a": a, "x": x, "outside_span": img})
    results.append(
        CheckResult.failed("right_span", witnesses[:3]) if witnesses
        else CheckResult.passed("right_span", a_window=len(aw), l_window=len(lw))
    )
    return results


def example_fN(group: GroupSpec, subgroup) -> PartialActionData:
    """The corner action on f_N kG: delta_p . (f_N h) = (1/|N|) f_N p when
    p h^{-1} lands in N, zero otherwise."""
    N = tuple(subgroup)
    if set(closure(group, N)) != set(N):
        raise StructuralError("subgroup elements are not closed")
    if not is_normal(group, N):
        raise StructuralError("subgroup is not normal")
    kG = group_algebra_plain(group)
    f = subgroup_average_idempotent(kG, N)
    corner = Corner(kG, f, name=f"corner:{group.name}", require_central=True)
    n = Fraction(1, len(N))
    nset = set(N)
    rep = {}
    for p in group.elements:
        proj = corner.project(kG.mul(f, FinVec.basis(p)))
        toks = proj.support()
        if len(toks) != 1 or proj[toks[0]] != 1:
            raise StructuralError("coset projection is not a single basis token")
        rep[p] = toks[0]

    def act(p, h):
        if group.mul(p, group.inv(h)) in nset:
            return FinVec.basis(rep[p], n)
        return FinVec()

    instance = function_algebra(group)

    def e_map(p):
        coeff = n if p in nset else Fraction(0)
        return Multiplier.scalar(corner.algebra, coeff)

    return PartialActionData(
        name=f"corner-action:{group.name}",
        instance=instance,
        algebra=corner.algebra,
        act=act,
        e_map=e_map,
        a_window=tuple(group.elements),
        aux={"corner": corner, "subgroup": N, "idempotent": f, "rep": rep},
    )


def lambda_action(group: GroupSpec, subgroup, target: Algebra) -> PartialActionData:
    """Scalar partial action through the averaged subgroup character
    lambda(delta_g) = (1/|N|)[g in N]; every x is fixed by the indicator
    of N, which is the minimal quasi-unit witness."""
    N = tuple(subgroup)
    if set(closure(group, N)) != set(N):
        raise StructuralError("subgroup elements are not closed")
    if target.basis is None:
        raise CapabilityError("target needs a finite basis")
    n = Fraction(1, len(N))
    nset = set(N)

    def lam(g):
        return n if g in nset else Fraction(0)

    def act(g, x):
        return FinVec.basis(x, lam(g))

    def e_map(g):
        return Multiplier.scalar(target, lam(g))

    return PartialActionData(
        name=f"lambda-action:{group.name}",
        instance=function_algebra(group),
        algebra=target,
        act=act,
        e_map=e_map,
        a_window=tuple(group.elements),
        aux={"subgroup": N},
    )


def global_AG_on_kG(group: GroupSpec) -> GlobalAction:
    """delta_p |> h = delta_p(h) h, the evaluation action on the group
    algebra."""
    kG = group_algebra_plain(group)

    def act(p, h):
        return FinVec.basis(h) if p == h else FinVec()

    return GlobalAction(
        name=f"evaluation:{group.name}",
        instance=function_algebra(group),
        algebra=kG,
        act=act,
    )


def as_partial(ctx: GlobalAction, a_window=None) -> PartialActionData:
    """View a global module algebra as a partial one with e = counit."""
    aw = tuple(ctx.instance.basis_window(a_window))
    lw = ctx.algebra.basis_window(None) if ctx.algebra.is_finite() else None

    def e_map(a):
        return Multiplier.scalar(ctx.algebra, ctx.instance.counit(a), window=lw)

    return PartialActionData(
        name=f"global:{ctx.name}",
        instance=ctx.instance,
        algebra=ctx.algebra,
        act=ctx.act,
        e_map=e_map,
        a_window=aw,
        aux={"context": ctx},
    )


def check_global_action(ctx: GlobalAction, a_window=None, r_window=None) -> list[CheckResult]:
    """Module law and the covered product law for a claimed global action."""
    M = ctx.instance
    aw = M.basis_window(a_window)
    rw = ctx.algebra.basis_window(r_window)
    results = []

    witnesses = []
    for a in aw:
        for b in aw:
            ab = M.algebra.mul_basis(a, b)
            for x in rw:
                lhs = ctx.act_vec(FinVec.basis(a), ctx.act(b, x))
                rhs = ctx.act_vec(ab, FinVec.basis(x))
                if lhs != rhs:
                    witnesses.append({"a": a, "b": b, "x": x, "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("module_law", witnesses[:3]) if witnesses
        else CheckResult.passed("module_law", a_window=len(aw), r_window=len(rw))
    )

    witnesses = []
    for a in aw:
        for x in rw:
            for y in rw:
                ycover, exhausted = search_indicator_witness(
                    aw, lambda b: ctx.act_vec(b, FinVec.basis(y)) == FinVec.basis(y))
                if ycover is None:
                    witnesses.append({"y": y, "note": "no acting local unit found",
                                      "exhausted": exhausted})
                    continue
                lhs = ctx.act_vec(FinVec.basis(a), ctx.algebra.mul_basis(x, y))
                rhs = FinVec()
                for (u, w), c in rule_vec(M.delta_r, FinVec.basis(a), ycover).items():
                    rhs = rhs + ctx.algebra.mul(ctx.act(u, x), ctx.act(w, y)).scale(c)
                if lhs != rhs:
                    witnesses.append({"a": a, "x": x, "y": y, "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("covered_product_law", witnesses[:3]) if witnesses
        else CheckResult.passed("covered_product_law",
                                a_window=len(aw), r_window=len(rw))
    )
    return results


def check_a_projection(
    proj: AProjection,
    a_window=None,
    r_window=None,
    symmetric=False,
) -> list[CheckResult]:
    """Idempotence, multiplicativity, image span, and the defining
    commutation of projection with nested actions."""
    ctx = proj.context
    aw = ctx.instance.basis_window(a_window)
    rw = ctx.algebra.basis_window(r_window)
    results = []

    witnesses = []
    for t in rw:
        v = FinVec.basis(t)
        pv = proj.rule(v)
        if proj.rule(pv) != pv:
            witnesses.append({"x": t, "pi(x)": pv, "pi(pi(x))": proj.rule(pv)})
    results.append(
        CheckResult.failed("pi_idempotent", witnesses[:3]) if witnesses
        else CheckResult.passed("pi_idempotent", r_window=len(rw))
    )

    witnesses = []
    image_vecs = [v for v in proj.image if not v.is_zero()]
    projected = [proj.rule(FinVec.basis(t)) for t in rw]
    projected = [v for v in projected if not v.is_zero()]
    eq = spans.subspace_equal(projected, image_vecs)
    if not eq:
        witnesses.append({"note": "projected window span differs from declared image"})
    for v in image_vecs:
        if proj.rule(v) != v:
            witnesses.append({"image_vec": v, "pi": proj.rule(v)})
    results.append(
        CheckResult.failed("pi_image", witnesses[:3]) if witnesses
        else CheckResult.passed("pi_image", image_dim=spans.span_dim(image_vecs))
    )

    witnesses = []
    for s in rw:
        for t in rw:
            lhs = proj.rule(ctx.algebra.mul_basis(s, t))
            rhs = ctx.algebra.mul(proj.rule(FinVec.basis(s)), proj.rule(FinVec.basis(t)))
            if lhs != rhs:
                witnesses.append({"pair": (s, t), "pi(xy)": lhs, "pi(x)pi(y)": rhs})
    results.append(
        CheckResult.failed("pi_multiplicative", witnesses[:3]) if witnesses
        else CheckResult.passed("pi_multiplicative", r_window=len(rw))
    )

    sub = [v for v in proj.image if not v.is_zero()]
    witnesses = []
    for a in aw:
        for b in aw:
            for x in sub:
                for y in sub:
                    by = ctx.act_vec(FinVec.basis(b), y)
                    lhs = proj.rule(ctx.act_vec(
                        FinVec.basis(a), ctx.algebra.mul(x, by)))
                    rhs = proj.rule(ctx.act_vec(
                        FinVec.basis(a), ctx.algebra.mul(x, proj.rule(by))))
                    if lhs != rhs:
                        witnesses.append({"a": a, "b": b, "x": x, "y": y,
                                          "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("a_projection_identity", witnesses[:3]) if witnesses
        else CheckResult.passed("a_projection_identity",
                                a_window=len(aw), sub_dim=len(sub))
    )

    if symmetric:
        witnesses = []
        for a in aw:
            for b in aw:
                for x in sub:
                    for y in sub:
                        bx = ctx.act_vec(FinVec.basis(b), x)
                        lhs = proj.rule(ctx.act_vec(
                            FinVec.basis(a), ctx.algebra.mul(bx, y)))
                        rhs = proj.rule(ctx.act_vec(
                            FinVec.basis(a), ctx.algebra.mul(proj.rule(bx), y)))
                        if lhs != rhs:
                            witnesses.append({"a": a, "b": b, "x": x, "y": y,
                                              "lhs": lhs, "rhs": rhs})
        results.append(
            CheckResult.failed("symmetric_projection_identity", witnesses[:3])
            if witnesses else
            CheckResult.passed("symmetric_projection_identity",
                               a_window=len(aw), sub_dim=len(sub))
        )
    return results


def central_idempotent_projection(ctx: GlobalAction, idem: FinVec) -> AProjection:
    alg = ctx.algebra
    if alg.mul(idem, idem) != idem:
        raise StructuralError("not idempotent")
    rw = alg.basis_window(None)
    image = spans.span_basis([alg.mul(idem, FinVec.basis(t)) for t in rw])
    return AProjection(
        context=ctx,
        rule=lambda v: alg.mul(idem, v),
        image=tuple(image),
    )


def identity_projection(ctx: GlobalAction) -> AProjection:
    rw = ctx.algebra.basis_window(None)
    return AProjection(
        context=ctx,
        rule=lambda v: v,
        image=tuple(FinVec.basis(t) for t in rw),
    )


def subalgebra_from_vectors(ambient: Algebra, vecs, prefix="s"):
    """Coordinates on the span of the given vectors, closed under products.

    Returns (algebra, embed, project); project raises on vectors outside
    the span."""
    basis_vecs = spans.span_basis(vecs)
    tokens = tuple((prefix, i) for i in range(len(basis_vecs)))
    by_token = dict(zip(tokens, basis_vecs))

    def project(v: FinVec) -> FinVec:
        coeffs = spans.in_span(v, basis_vecs)
        if coeffs is None:
            raise StructuralError("vector escapes the declared subalgebra")
        return FinVec(zip(tokens, coeffs))

    def embed(v: FinVec) -> FinVec:
        out = FinVec()
        for t, c in v.items():
            out = out + by_token[t].scale(c)
        return out

    def mul_basis(i, j):
        return project(ambient.mul(by_token[i], by_token[j]))

    one = None
    if ambient.one is not None and spans.in_span(ambient.one, basis_vecs) is not None:
        one = project(ambient.one)

    alg = Algebra(
        name=f"{ambient.name}|{prefix}",
        mul_basis=mul_basis,
        basis=tokens,
        one=one,
        pointwise=False,
        group=None,
    )
    return alg, embed, project


def induce_from_projection(
    proj: AProjection,
    a_window=None,
    coords=None,
    max_candidates=2048,
) -> PartialActionData:
    """a . x := pi(a |> x) on the image of an A-projection, with the
    multiplier e(a) assembled from the covered one-sided formulas."""
    ctx = proj.context
    M = ctx.instance
    pre = check_a_projection(proj, a_window=a_window, symmetric=True)
    bad = [r for r in pre if not r.ok()]
    if bad:
        raise StructuralError(
            "projection rejected: " + ", ".join(r.name for r in bad))
    if coords is None:
        L_alg, embed, project = subalgebra_from_vectors(
            ctx.algebra, list(proj.image))
    else:
        L_alg, embed, project = coords
    aw = tuple(M.basis_window(a_window))

    def act(a, ltok):
        return project(proj.rule(ctx.act_vec(FinVec.basis(a), embed(FinVec.basis(ltok)))))

    def act_vec(a, x):
        out = FinVec()
        for g, cg in a.items():
            for t, ct in x.items():
                out = out + act(g, t).scale(cg * ct)
        return out

    unit_cache = {}

    def acting_unit(ltok):
        if ltok not in unit_cache:
            target = FinVec.basis(ltok)
            witness, exhausted = search_indicator_witness(
                aw, lambda b: act_vec(b, target) == target, max_candidates)
            if witness is None:
                raise CapabilityError(
                    f"no acting unit for {ltok!r} (exhausted={exhausted})")
            unit_cache[ltok] = witness
        return unit_cache[ltok]

    def e_map(a):
        def left_rule(ltok):
            b = acting_unit(ltok)
            out = FinVec()
            for (u, w), c in rule_vec(M.cov_iS, FinVec.basis(a), b).items():
                out = out + act_vec(FinVec.basis(u), act(w, ltok)).scale(c)
            return out

        def right_rule(ltok):
            b = acting_unit(ltok)
            out = FinVec()
            for (u, w), c in rule_vec(M.cov_Sinv, FinVec.basis(a), b).items():
                out = out + act_vec(FinVec.basis(u), act(w, ltok)).scale(c)
            return out

        return Multiplier.from_rules(L_alg, left_rule, right_rule, window=L_alg.basis)

    return PartialActionData(
        name=f"induced:{ctx.name}",
        instance=M,
        algebra=L_alg,
        act=act,
        e_map=e_map,
        a_window=aw,
        aux={"context": ctx, "projection": proj, "embed": embed, "project": project},
    )


def quasi_unitary_witness(P: PartialActionData, elems, a_window=None,
                          ground=None, max_candidates=2048):
    """Search b with b.x = x and (ab).x = a.x for all listed x and windowed
    a.  Returns (witness or None, exhausted flag)."""
    aw = P.acting_window(a_window)
    ground = tuple(ground) if ground is not None else aw
    elems = [e if isinstance(e, FinVec) else FinVec.basis(e) for e in elems]

    def pred(b):
        for x in elems:
            if P.act_vec(b, x) != x:
                return False
            for a in aw:
                ab = P.instance.algebra.mul(FinVec.basis(a), b)
                if P.act_vec(ab, x) != P.act_vec(FinVec.basis(a), x):
                    return False
        return True

    return search_indicator_witness(ground, pred, max_candidates)


def check_quasi_unitary(P: PartialActionData, elems, a_window=None,
                        ground=None, max_candidates=2048) -> CheckResult:
    witness, exhausted = quasi_unitary_witness(
        P, elems, a_window=a_window, ground=ground, max_candidates=max_candidates)
    gtoks = tuple(ground) if ground is not None else P.acting_window(a_window)
    if witness is not None:
        return CheckResult.passed("quasi_unitary", witness=witness)
    full_ground = P.instance.algebra.is_finite() and set(gtoks) == set(
        P.instance.algebra.basis)
    if exhausted and full_ground:
        return CheckResult.failed(
            "quasi_unitary",
            [{"note": "subset lattice of the full basis exhausted without witness",
              "ground": list(gtoks)}],
        )
    return CheckResult.inconclusive(
        "quasi_unitary",
        [{"note": "search exhausted a partial window" if exhausted
          else "candidate cap reached", "cap": max_candidates}])


def phi_embed(P: PartialActionData, x, witness=None, a_window=None,
              max_candidates=2048) -> HomRElem:
    """theta(x): the finitely supported table g |-> delta_g . x, supported
    inside any quasi-unit witness for x."""
    if not isinstance(x, FinVec):
        x = FinVec.basis(x)
    if witness is None:
        witness, exhausted = quasi_unitary_witness(
            P, [x], a_window=a_window, max_candidates=max_candidates)
        if witness is None:
            raise CapabilityError(
                "quasi-unit witness search "
                + ("exhausted" if exhausted else "capped")
                + "; embedding is inconclusive")
    table = {}
    for g in witness.support():
        table[g] = P.act_vec(FinVec.basis(g), x)
    return HomRElem(P.instance, P.algebra, table)


def globalize(P: PartialActionData, a_window=None, skip_checks=False) -> Globalization:
    """Standard envelope: translates of the table embedding inside the
    convolution algebra of target-valued functions."""
    M = P.instance
    if not skip_checks:
        pre = check_partial_action(P, a_window=a_window)
        pre += check_symmetric(P, a_window=a_window)
        bad = [r.name for r in pre if not r.ok()]
        if bad:
            raise StructuralError("not a symmetric partial action: " + ", ".join(bad))
    group = M.algebra.group
    if group is None or not group.is_finite():
        raise CapabilityError("standard envelope needs a finite acting group")
    if P.algebra.basis is None:
        raise CapabilityError("standard envelope needs a finite target basis")
    aw = tuple(P.acting_window(a_window))
    env = convolution_algebra(group, P.algebra)

    theta_map = {}
    for x in P.algebra.basis:
        F = phi_embed(P, x, a_window=aw)
        vec = FinVec()
        for g, val in F.items():
            for t, c in val.items():
                vec = vec + FinVec.basis((g, t), c)
        theta_map[x] = vec

    def act(a, tok):
        g, t = tok
        return FinVec.basis(tok) if a == g else FinVec()

    def pi_rule(v: FinVec) -> FinVec:
        out = FinVec()
        for (g, t), c in v.items():
            out = out + FinVec.basis(t, c)
        return out

    gens = []
    labels = []
    for a in aw:
        for x in P.algebra.basis:
            labels.append((a, x))
            translated = FinVec(
                (tok, c) for tok, c in theta_map[x].items() if tok[0] == a)
            gens.append(translated)

    return Globalization(
        name=f"envelope:{P.name}",
        action=P,
        algebra=env,
        act=act,
        theta_map=theta_map,
        pi_rule=pi_rule,
        generators=tuple(gens),
        gen_labels=tuple(labels),
        a_window=aw,
    )


JUNK = "junk"


def junk_globalization(P: PartialActionData, a_window=None) -> Globalization:
    """Standard envelope padded with a zero-product summand that the
    projection kills: every minimality battery finds it."""
    std = globalize(P, a_window=a_window, skip_checks=True)
    group = P.instance.algebra.group
    lbasis = P.algebra.basis
    tokens = tuple(std.algebra.basis) + tuple((JUNK, t) for t in lbasis)

    def mul_basis(p, q):
        if p[0] == JUNK or q[0] == JUNK:
            return FinVec()
        return std.algebra.mul_basis(p, q)

    env = Algebra(
        name=std.algebra.name + "+junk",
        mul_basis=mul_basis,
        basis=tokens,
        one=None,
        pointwise=False,
        group=None,
    )

    eps = P.instance.counit

    def act(a, tok):
        if tok[0] == JUNK:
            return FinVec.basis(tok, eps(a))
        return std.act(a, tok)

    theta_map = {
        x: std.theta_map[x] + FinVec.basis((JUNK, x)) for x in lbasis
    }

    def pi_rule(v: FinVec) -> FinVec:
        out = FinVec()
        for tok, c in v.items():
            if tok[0] != JUNK:
                out = out + FinVec.basis(tok[1], c)
        return out

    gens = []
    for (a, x), base in zip(std.gen_labels, std.generators):
        gens.append(base + FinVec.basis((JUNK, x), eps(a)))

    return Globalization(
        name=f"junk-envelope:{P.name}",
        action=P,
        algebra=env,
        act=act,
        theta_map=theta_map,
        pi_rule=pi_rule,
        generators=tuple(gens),
        gen_labels=std.gen_labels,
        a_window=std.a_window,
    )


def relabel_globalization(G: Globalization, token_fn, name=None) -> Globalization:
    """Isomorphic copy along a bijective relabeling of envelope tokens."""
    fwd = {t: token_fn(t) for t in G.algebra.basis}
    if len(set(fwd.values())) != len(fwd):
        raise StructuralError("relabeling is not injective")
    back = {v: k for k, v in fwd.items()}

    def remap(v: FinVec) -> FinVec:
        return v.map_tokens(lambda t: fwd[t])

    env = Algebra(
        name=(name or G.algebra.name + "~relabel"),
        mul_basis=lambda i, j: remap(G.algebra.mul_basis(back[i], back[j])),
        basis=tuple(fwd[t] for t in G.algebra.basis),
        one=remap(G.algebra.one) if G.algebra.one is not None else None,
        pointwise=False,
        group=None,
    )
    return Globalization(
        name=(name or G.name + "~relabel"),
        action=G.action,
        algebra=env,
        act=lambda a, t: remap(G.act(a, back[t])),
        theta_map={x: remap(v) for x, v in G.theta_map.items()},
        pi_rule=lambda v: G.pi_rule(v.map_tokens(lambda t: back[t])),
        generators=tuple(remap(v) for v in G.generators),
        gen_labels=G.gen_labels,
        a_window=G.a_window,
    )


def with_zero_pi(G: Globalization) -> Globalization:
    return replace(G, name=G.name + "~zero-pi", pi_rule=lambda v: FinVec())


def check_enveloping(G: Globalization, a_window=None, symmetric=True,
                     max_candidates=2048) -> list[CheckResult]:
    """Envelope laws: module algebra structure, embedding is a
    monomorphism onto an ideal, projection compatibility, generation."""
    P = G.action
    M = P.instance
    aw = tuple(a_window) if a_window is not None else G.a_window
    lbasis = P.algebra.basis
    results = []

    gens = [v for v in G.generators]
    nonzero_gens = [v for v in gens if not v.is_zero()]

    witnesses = []
    for a in aw:
        for b in aw:
            ab = M.algebra.mul_basis(a, b)
            for v in nonzero_gens:
                lhs = G.act_vec(FinVec.basis(a), G.act_vec(FinVec.basis(b), v))
                rhs = G.act_vec(ab, v)
                if lhs != rhs:
                    witnesses.append({"a": a, "b": b, "v": v, "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("env_module_law", witnesses[:3]) if witnesses
        else CheckResult.passed("env_module_law", a_window=len(aw),
                                generators=len(nonzero_gens))
    )

    witnesses = []
    unresolved = []
    covers = []
    for w in nonzero_gens:
        cover, exhausted = search_indicator_witness(
            aw, lambda b: G.act_vec(b, w) == w, max_candidates)
        if cover is None:
            unresolved.append({"w": w, "exhausted": exhausted})
        covers.append(cover)
    for a in aw:
        for v in nonzero_gens:
            for w, cover in zip(nonzero_gens, covers):
                if cover is None:
                    continue
                lhs = G.act_vec(FinVec.basis(a), G.algebra.mul(v, w))
                rhs = FinVec()
                for (u, t), c in rule_vec(M.delta_r, FinVec.basis(a), cover).items():
                    rhs = rhs + G.algebra.mul(
                        G.act_vec(FinVec.basis(u), v),
                        G.act_vec(FinVec.basis(t), w)).scale(c)
                if lhs != rhs:
                    witnesses.append({"a": a, "v": v, "w": w, "lhs": lhs, "rhs": rhs})
    if witnesses:
        results.append(CheckResult.failed("env_product_law", witnesses[:3]))
    elif unresolved:
        results.append(CheckResult.inconclusive("env_product_law", unresolved[:3]))
    else:
        results.append(CheckResult.passed("env_product_law", a_window=len(aw)))

    witnesses = []
    for x in lbasis:
        for y in lbasis:
            lhs = G.theta(P.algebra.mul_basis(x, y))
            rhs = G.algebra.mul(G.theta_map[x], G.theta_map[y])
            if lhs != rhs:
                witnesses.append({"pair": (x, y), "theta(xy)": lhs,
                                  "theta(x)theta(y)": rhs})
    kernel = spans.kernel_of_map(lbasis, lambda t: G.theta_map[t])
    for v in kernel[:2]:
        witnesses.append({"kernel": v})
    results.append(
        CheckResult.failed("theta_monomorphism", witnesses[:3]) if witnesses
        else CheckResult.passed("theta_monomorphism", dim=len(lbasis))
    )

    theta_span = [G.theta_map[x] for x in lbasis]
    witnesses = []
    for x in lbasis:
        for v in nonzero_gens:
            prod = G.algebra.mul(G.theta_map[x], v)
            if not prod.is_zero() and spans.in_span(prod, theta_span) is None:
                witnesses.append({"x": x, "v": v, "product": prod})
    results.append(
        CheckResult.failed("theta_right_ideal", witnesses[:3]) if witnesses
        else CheckResult.passed("theta_right_ideal", generators=len(nonzero_gens))
    )

    if symmetric:
        witnesses = []
        for x in lbasis:
            for v in nonzero_gens:
                prod = G.algebra.mul(v, G.theta_map[x])
                if not prod.is_zero() and spans.in_span(prod, theta_span) is None:
                    witnesses.append({"x": x, "v": v, "product": prod})
        results.append(
            CheckResult.failed("theta_two_sided_ideal", witnesses[:3]) if witnesses
            else CheckResult.passed("theta_two_sided_ideal",
                                    generators=len(nonzero_gens))
        )

    witnesses = []
    for a in aw:
        for x in lbasis:
            lhs = G.theta(P.act(a, x))
            rhs = G.pi(G.act_vec(FinVec.basis(a), G.theta_map[x]))
            if lhs != rhs:
                witnesses.append({"a": a, "x": x, "theta(a.x)": lhs,
                                  "pi(a|>theta(x))": rhs})
    results.append(
        CheckResult.failed("theta_pi_equivalence", witnesses[:3]) if witnesses
        else CheckResult.passed("theta_pi_equivalence",
                                a_window=len(aw), basis=len(lbasis))
    )

    witnesses = []
    for x in lbasis:
        if spans.in_span(G.theta_map[x], nonzero_gens) is None:
            witnesses.append({"theta_outside": x})
    for v in nonzero_gens:
        for w in nonzero_gens:
            prod = G.algebra.mul(v, w)
            if not prod.is_zero() and spans.in_span(prod, nonzero_gens) is None:
                witnesses.append({"product_outside": (v, w)})
    results.append(
        CheckResult.failed("generation", witnesses[:3]) if witnesses
        else CheckResult.passed("generation", generators=len(nonzero_gens))
    )

    witnesses = []
    for v in nonzero_gens:
        pv = G.pi(v)
        if G.pi(pv) != pv:
            witnesses.append({"v": v, "pi": pv, "pipi": G.pi(pv)})
        if not pv.is_zero() and spans.in_span(pv, theta_span) is None:
            witnesses.append({"v": v, "pi_outside_theta": pv})
    for x in lbasis:
        if G.pi(G.theta_map[x]) != G.theta_map[x]:
            witnesses.append({"x": x, "pi_theta": G.pi(G.theta_map[x])})
    nonzero_theta = [v for v in theta_span if not v.is_zero()]
    for a in aw:
        for b in aw:
            for v in nonzero_theta:
                for w in nonzero_theta:
                    bw = G.act_vec(FinVec.basis(b), w)
                    lhs = G.pi(G.act_vec(FinVec.basis(a), G.algebra.mul(v, bw)))
                    rhs = G.pi(G.act_vec(FinVec.basis(a), G.algebra.mul(v, G.pi(bw))))
                    if lhs != rhs:
                        witnesses.append({"law": "right", "a": a, "b": b,
                                          "lhs": lhs, "rhs": rhs})
                    bv = G.act_vec(FinVec.basis(b), v)
                    lhs = G.pi(G.act_vec(FinVec.basis(a), G.algebra.mul(bv, w)))
                    rhs = G.pi(G.act_vec(FinVec.basis(a), G.algebra.mul(G.pi(bv), w)))
                    if lhs != rhs:
                        witnesses.append({"law": "left", "a": a, "b": b,
                                          "lhs": lhs, "rhs": rhs})
    results.append(
        CheckResult.failed("pi_a_projection", witnesses[:3]) if witnesses
        else CheckResult.passed("pi_a_projection", a_window=len(aw))
    )
    return results


def check_minimal(G: Globalization, battery=None, a_window=None) -> CheckResult:
    """pi must detect every nonzero element of each cyclic submodule: if
    pi kills all translates of v, then v = 0."""
    aw = tuple(a_window) if a_window is not None else G.a_window
    if battery is None:
        battery = list(G.generators) + [G.theta_map[x] for x in G.action.algebra.basis]
    witnesses = []
    for v in battery:
        if v.is_zero():
            continue
        if not G.pi(v).is_zero():
            continue
        if all(G.pi(G.act_vec(FinVec.basis(a), v)).is_zero() for a in aw):
            witnesses.append({"v": v})
    if witnesses:
        return CheckResult.failed("minimal", witnesses[:3])
    return CheckResult.passed("minimal", battery=len(battery))


def compare_envelopes(G1: Globalization, G2: Globalization) -> list[CheckResult]:
    """The canonical generator-to-generator comparison morphism: send
    sum a_i |> theta_1(x_i) to sum a_i |> theta_2(x_i) and certify
    well-definedness, the morphism laws, and injectivity."""
    if G1.action is not G2.action:
        raise StructuralError("envelopes globalize different actions")
    if G1.gen_labels != G2.gen_labels:
        raise StructuralError("generator labels disagree")
    n = len(G1.generators)
    idx = tuple(range(n))
    results = []

    def combine(gens, coeffs: FinVec) -> FinVec:
        out = FinVec()
        for i, c in coeffs.items():
            out = out + gens[i].scale(c)
        return out

    kernel1 = spans.kernel_of_map(idx, lambda i: G1.generators[i])
    witnesses = []
    for k in kernel1:
        image = combine(G2.generators, k)
        if not image.is_zero():
            witnesses.append({"coeffs": k, "image": image})
    results.append(
        CheckResult.failed("well_defined", witnesses[:3]) if witnesses
        else CheckResult.passed("well_defined", relations=len(kernel1))
    )

    def phi(v: FinVec):
        coeffs = spans.in_span(v, list(G1.generators))
        if coeffs is None:
            return None
        return combine(G2.generators, FinVec(zip(idx, coeffs)))

    witnesses = []
    for i in idx:
        for j in idx:
            prod1 = G1.algebra.mul(G1.generators[i], G1.generators[j])
            mapped = phi(prod1)
            if mapped is None:
                witnesses.append({"pair": (i, j), "note": "product escapes generators"})
                continue
            prod2 = G2.algebra.mul(G2.generators[i], G2.generators[j])
            if mapped != prod2:
                witnesses.append({"pair": (i, j), "mapped": mapped, "direct": prod2})
    results.append(
        CheckResult.failed("homomorphism", witnesses[:3]) if witnesses
        else CheckResult.passed("homomorphism", pairs=n * n)
    )

    witnesses = []
    for a in G1.a_window:
        for i in idx:
            moved = G1.act_vec(FinVec.basis(a), G1.generators[i])
            mapped = phi(moved)
            if mapped is None:
                witnesses.append({"a": a, "i": i, "note": "translate escapes generators"})
                continue
            if mapped != G2.act_vec(FinVec.basis(a), G2.generators[i]):
                witnesses.append({"a": a, "i": i, "mapped": mapped})
    results.append(
        CheckResult.failed("module_map", witnesses[:3]) if witnesses
        else CheckResult.passed("module_map", a_window=len(G1.a_window))
    )

    results.append(CheckResult.passed(
        "surjective_onto_generators", note="generator-to-generator by construction"))

    kernel2 = spans.kernel_of_map(idx, lambda i: G2.generators[i])
    witnesses = []
    for k in kernel2:
        pre = combine(G1.generators, k)
        if not pre.is_zero():
            witnesses.append({"kernel_element": pre, "coeffs": k})
    results.append(
        CheckResult.failed("injective", witnesses[:3]) if witnesses
        else CheckResult.passed("injective", relations=len(kernel2))
    )
    return results
