"""Right-multiplier homomorphism algebras.

An element f(_a) acts on the source by b |-> f(ba).  When right
multiplication by any fixed element has finite-dimensional image (the
function-algebra family; flagged hom_right_finite on the instance), every
such element collapses to a finitely supported table F(g) = f(delta_g a),
and that table is the whole extensional content of the map.  Convolution,
the module action a |> f(_b) = f(_ab), and the convolutive-inverse laws for
the antipode are all computed on collapsed tables through covered
comultiplication only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .algebras import Algebra, local_unit
from .errors import CapabilityError, NoLocalUnitError, StructuralError
from .mha import MhaInstance, rule_vec
from .reports import CheckResult
from .vectors import FinVec, token_key, vec_sum

Rule = Callable[[object], FinVec]


class HomRElem:
    """Collapsed table of one right-multiplier homomorphism element."""

    __slots__ = ("source", "target", "_table")

    def __init__(self, source: MhaInstance, target: Algebra, table=()):
        if not source.hom_right_finite:
            raise CapabilityError(
                f"{source.name} does not collapse right multiplications to "
                "finite tables"
            )
        self.source = source
        self.target = target
        clean = {}
        items = table.items() if isinstance(table, dict) else table
        for g, val in items:
            if not isinstance(val, FinVec):
                raise StructuralError("table values must be target vectors")
            if val.is_zero():
                continue
            clean[g] = clean[g] + val if g in clean else val
        self._table = {g: v for g, v in clean.items() if not v.is_zero()}

    @staticmethod
    def zero(source: MhaInstance, target: Algebra) -> "HomRElem":
        return HomRElem(source, target)

    @staticmethod
    def from_rule(source: MhaInstance, target: Algebra, rule: Rule, a: FinVec) -> "HomRElem":
        """Collapse f(_a): table g -> f(delta_g a)."""
        table = {}
        for g in _right_support(source, a):
            prod = source.algebra.mul(FinVec.basis(g), a)
            val = FinVec()
            for t, c in prod.items():
                val = val + rule(t).scale(c)
            table[g] = val
        return HomRElem(source, target, table)

    def support(self):
        return sorted(self._table, key=token_key)

    def value(self, g) -> FinVec:
        return self._table.get(g, FinVec())

    def items(self):
        return [(g, self._table[g]) for g in self.support()]

    def is_zero(self) -> bool:
        return not self._table

    def evaluate(self, b: FinVec) -> FinVec:
        """The element as a map: b |-> sum_g b(g) F(g)."""
        out = FinVec()
        for g, c in b.items():
            out = out + self.value(g).scale(c)
        return out

    def __add__(self, other: "HomRElem") -> "HomRElem":
        _same_spaces(self, other)
        table = dict(self._table)
        for g, v in other._table.items():
            table[g] = table.get(g, FinVec()) + v
        return HomRElem(self.source, self.target, table)

    def scale(self, c) -> "HomRElem":
        return HomRElem(
            self.source, self.target,
            {g: v.scale(c) for g, v in self._table.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomRElem):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self._table == other._table
        )

    __hash__ = None

    def __repr__(self) -> str:
        parts = [f"{g!r}: {v!r}" for g, v in self.items()]
        return "HomRElem{" + ", ".join(parts) + "}"


def _same_spaces(F: HomRElem, G: HomRElem) -> None:
    if F.source is not G.source or F.target is not G.target:
        raise StructuralError("operands live over different source or target")


def _right_support(source: MhaInstance, a: FinVec):
    """Tokens g with delta_g a possibly nonzero.

    Pointwise products vanish off supp(a); general products do not thin, so
    only the pointwise family admits a finite answer, which is what the
    capability flag guarantees.
    """
    if source.algebra.pointwise:
        return a.support()
    raise CapabilityError(f"{source.name} has no finite right-support rule")


def support_indicator(F: HomRElem) -> FinVec:
    """The canonical covering element: f(_a) with a the support indicator
    reproduces the table exactly."""
    return vec_sum(FinVec.basis(g) for g in F.support())


def conv_mul(F: HomRElem, G: HomRElem) -> HomRElem:
    """Convolution product, closed group form (F*G)(c) = sum_{pq=c} F(p)G(q)."""
    _same_spaces(F, G)
    group = F.source.algebra.group
    if group is None:
        return conv_mul_generic(F, G)
    table = {}
    for p, fp in F.items():
        for q, gq in G.items():
            c = group.mul(p, q)
            val = F.target.mul(fp, gq)
            table[c] = table.get(c, FinVec()) + val
    return HomRElem(F.source, F.target, table)


def conv_mul_generic(F: HomRElem, G: HomRElem) -> HomRElem:
    """Convolution through coverage only: write a (x) b = sum_i c_i
    T1(p_i (x) q_i) for the support indicators a, b, then collapse each
    piece h_i(_p_i) with h_i = mu (f (x) g) (Delta(.)(1 (x) q_i))."""
    _same_spaces(F, G)
    M = F.source
    a_ind = support_indicator(F)
    b_ind = support_indicator(G)
    pairs = rule_vec(M.t1_inv, a_ind, b_ind)
    table = {}
    for (p, q), coeff in pairs.items():
        inner = FinVec()
        for (u, w), c2 in M.delta_r(p, q).items():
            val = F.target.mul(F.value(u), G.value(w))
            inner = inner + val.scale(c2)
        if not inner.is_zero():
            table[p] = table.get(p, FinVec()) + inner.scale(coeff)
    return HomRElem(F.source, F.target, table)


def module_act(a, F: HomRElem) -> HomRElem:
    """a |> f(_b) = f(_ab); on tables (a |> F)(g) = a(g) F(g)."""
    if not isinstance(a, FinVec):
        a = FinVec.basis(a)
    return HomRElem(
        F.source, F.target,
        {g: F.value(g).scale(a[g]) for g in F.support() if a[g] != 0},
    )


def zero_act(a, F: HomRElem) -> HomRElem:
    """Degenerate action used by fail fixtures."""
    return HomRElem.zero(F.source, F.target)


def default_samples(M: MhaInstance, R: Algebra, window) -> list[HomRElem]:
    """Deterministic sample tables from the first window and basis tokens."""
    if R.basis is None:
        raise CapabilityError("sample construction needs a finite target basis")
    toks = list(window)[:2]
    rtoks = [t for t in R.basis[:2]]
    if not toks or not rtoks:
        raise StructuralError("empty window or target basis")
    r0 = FinVec.basis(rtoks[0])
    r1 = FinVec.basis(rtoks[-1])
    samples = [
        HomRElem(M, R, {toks[0]: r0}),
        HomRElem(M, R, {toks[-1]: r1}),
        HomRElem(M, R, {toks[0]: r0 + r1.scale(Fraction(2)), toks[-1]: r0}),
    ]
    return samples


def check_conv_associative(samples: list[HomRElem]) -> CheckResult:
    witnesses = []
    for F in samples:
        for G in samples:
            for H in samples:
                left = conv_mul(conv_mul(F, G), H)
                right = conv_mul(F, conv_mul(G, H))
                if left != right:
                    witnesses.append({"triple": (F, G, H), "left": left, "right": right})
                    if len(witnesses) >= 2:
                        return CheckResult.failed("conv_associative", witnesses)
    if witnesses:
        return CheckResult.failed("conv_associative", witnesses)
    return CheckResult.passed("conv_associative", triples=len(samples) ** 3)


def check_conv_paths_agree(samples: list[HomRElem]) -> CheckResult:
    witnesses = []
    for F in samples:
        for G in samples:
            closed = conv_mul(F, G)
            covered = conv_mul_generic(F, G)
            if closed != covered:
                witnesses.append({"pair": (F, G), "closed": closed, "covered": covered})
    if witnesses:
        return CheckResult.failed("conv_paths_agree", witnesses[:3])
    return CheckResult.passed("conv_paths_agree", pairs=len(samples) ** 2)


def check_module_algebra(
    M: MhaInstance,
    R: Algebra,
    window=None,
    samples: Optional[list[HomRElem]] = None,
    act=module_act,
) -> list[CheckResult]:
    """Module law, support local units acting as units, and the covered
    product law a |> (F*G) = sum (a_1 |> F) * (a_2 e |> G)."""
    window = M.basis_window(window)
    if samples is None:
        samples = default_samples(M, R, window)

    results = []

    witnesses = []
    for g in window:
        for h in window:
            gh = M.algebra.mul_basis(g, h)
            for F in samples:
                left = act(g, act(h, F))
                right = _act_vec(act, gh, F)
                if left != right:
                    witnesses.append({"pair": (g, h), "F": F, "left": left, "right": right})
    results.append(
        CheckResult.failed("module_law", witnesses[:3]) if witnesses
        else CheckResult.passed("module_law", pairs=len(window) ** 2, samples=len(samples))
    )

    witnesses = []
    for F in samples:
        if F.is_zero():
            continue
        try:
            e = local_unit(M.algebra, [support_indicator(F)])
        except NoLocalUnitError as exc:
            raise CapabilityError(f"no covering local unit: {exc}") from exc
        if _act_vec(act, e, F) != F:
            witnesses.append({"F": F, "unit": e, "acted": _act_vec(act, e, F)})
    results.append(
        CheckResult.failed("local_units_act_as_units", witnesses[:3]) if witnesses
        else CheckResult.passed("local_units_act_as_units", samples=len(samples))
    )

    witnesses = []
    for F in samples:
        for G in samples:
            if G.is_zero():
                continue
            e = local_unit(M.algebra, [support_indicator(G)])
            for a in window:
                left = _act_vec(act, FinVec.basis(a), conv_mul(F, G))
                pairs = rule_vec(M.delta_r, FinVec.basis(a), e)
                right = HomRElem.zero(M, R)
                for (u, v), c in pairs.items():
                    right = right + conv_mul(_act_vec(act, FinVec.basis(u), F),
                                             _act_vec(act, FinVec.basis(v), G)).scale(c)
                if left != right:
                    witnesses.append({"a": a, "F": F, "G": G, "left": left, "right": right})
    results.append(
        CheckResult.failed("covered_product_law", witnesses[:3]) if witnesses
        else CheckResult.passed(
            "covered_product_law", window=len(window), samples=len(samples)
        )
    )
    return results


def _act_vec(act, a: FinVec, F: HomRElem) -> HomRElem:
    if not isinstance(a, FinVec):
        a = FinVec.basis(a)
    out = HomRElem.zero(F.source, F.target)
    for g, c in a.items():
        out = out + act(g, F).scale(c)
    return out


def check_convolutive_inverse(
    M: MhaInstance,
    f_rule: Rule,
    g_rule: Rule,
    test_elems,
    window=None,
) -> CheckResult:
    """Both defining identities of a convolutive inverse, evaluated at every
    window point d against eps(d) a.

    (i)  sum f(d_1 b) g(d_2 a) = eps(d) a   covered by Delta(d)(1 (x) a)
    (ii) sum g(a d_1) f(b d_2) = eps(d) a   covered by (a (x) 1) Delta(d)

    with b solved from a covering local unit u through b = S^{-1}(u), so
    that S(b) a = a = a S(b).
    """
    if not M.is_regular():
        raise CapabilityError(f"{M.name} is not regular: cannot solve for b")
    window = M.basis_window(window)
    witnesses = []
    checked = 0
    for a in test_elems:
        if not isinstance(a, FinVec):
            a = FinVec.basis(a)
        try:
            u = local_unit(M.algebra, [a])
        except NoLocalUnitError as exc:
            raise CapabilityError(
                f"no local unit covering {a!r}: {exc}"
            ) from exc
        b = M.antipode_inv_vec(u)
        for d in window:
            expected = a.scale(M.counit(d))
            lhs = FinVec()
            for (p, w), c in rule_vec(M.delta_r, FinVec.basis(d), a).items():
                fval = _apply_rule(f_rule, M.algebra.mul(FinVec.basis(p), b))
                lhs = lhs + M.algebra.mul(fval, g_rule(w)).scale(c)
            if lhs != expected:
                witnesses.append(
                    {"item": "i", "a": a, "d": d, "value": lhs, "expected": expected}
                )
            rhs = FinVec()
            for (s, t), c in rule_vec(M.delta_l, a, FinVec.basis(d)).items():
                fval = _apply_rule(f_rule, M.algebra.mul(b, FinVec.basis(t)))
                rhs = rhs + M.algebra.mul(g_rule(s), fval).scale(c)
            if rhs != expected:
                witnesses.append(
                    {"item": "ii", "a": a, "d": d, "value": rhs, "expected": expected}
                )
            checked += 1
            if len(witnesses) >= 6:
                return CheckResult.failed("convolutive_inverse", witnesses)
    if witnesses:
        return CheckResult.failed("convolutive_inverse", witnesses)
    return CheckResult.passed("convolutive_inverse", evaluations=checked)


def _apply_rule(rule: Rule, x: FinVec) -> FinVec:
    out = FinVec()
    for t, c in x.items():
        out = out + rule(t).scale(c)
    return out


def check_antipode_from_inverse(M: MhaInstance, candidate: Rule, window=None) -> list[CheckResult]:
    """A central convolutive inverse of the identity is the antipode: the
    candidate must be an anti-homomorphism and satisfy both antipode
    identities on the window."""
    window = M.basis_window(window)
    results = []

    witnesses = []
    for a in window:
        for b in window:
            lhs = _apply_rule(candidate, M.algebra.mul_basis(a, b))
            rhs = M.algebra.mul(candidate(b), candidate(a))
            if lhs != rhs:
                witnesses.append({"pair": (a, b), "S'(ab)": lhs, "S'(b)S'(a)": rhs})
    results.append(
        CheckResult.failed("candidate_antihomomorphism", witnesses[:3]) if witnesses
        else CheckResult.passed("candidate_antihomomorphism", pairs=len(window) ** 2)
    )

    witnesses = []
    for c in window:
        for a in window:
            left = FinVec()
            for (u, v), k in M.delta_r(c, a).items():
                left = left + M.algebra.mul(candidate(u), FinVec.basis(v)).scale(k)
            if left != FinVec.basis(a, M.counit(c)):
                witnesses.append({"law": "m(S' x i)", "pair": (c, a), "value": left})
            right = FinVec()
            for (u, v), k in M.delta_l(a, c).items():
                right = right + M.algebra.mul(FinVec.basis(u), candidate(v)).scale(k)
            if right != FinVec.basis(a, M.counit(c)):
                witnesses.append({"law": "m(i x S')", "pair": (c, a), "value": right})
    results.append(
        CheckResult.failed("antipode_identities", witnesses[:3]) if witnesses
        else CheckResult.passed("antipode_identities", pairs=len(window) ** 2)
    )
    return results
