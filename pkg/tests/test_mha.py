"""Closed-form comultiplication rules against brute-force oracles.

The function-algebra rules are checked by materializing both sides as
function tables on G x G; the group-algebra rules by multiplying out in
the tensor square algebra.  Neither oracle touches the closed forms.
"""

from fractions import Fraction

import pytest

from mhopf.algebras import group_algebra_plain, pointwise_algebra, tensor_square_algebra
from mhopf.errors import StructuralError
from mhopf.groups import parse_group
from mhopf.mha import (
    check_mha_axioms,
    instance_for,
    mha_from_delta,
    mutate_instance,
    sweedler_cov,
)
from mhopf.vectors import FinVec, tensor

F = Fraction


def pair_table(group, pairs: FinVec) -> dict:
    """Expand sum c * (delta_s (x) delta_t) into a function table on G^2."""
    table = {}
    for (s, t), c in pairs.items():
        table[(s, t)] = table.get((s, t), F(0)) + c
    return {k: v for k, v in table.items() if v}


class TestFunctionAlgebraRules:
    def test_delta_r_is_multiplication_pullback(self, S3, AG_S3):
        # Delta(f)(p1,p2) = f(p1 p2), then cut down by (1 (x) delta_q).
        for r in S3.elements:
            for q in S3.elements:
                got = pair_table(S3, AG_S3.delta_r(r, q))
                want = {}
                for p1 in S3.elements:
                    for p2 in S3.elements:
                        val = F(int(S3.mul(p1, p2) == r)) * F(int(p2 == q))
                        if val:
                            want[(p1, p2)] = val
                assert got == want

    def test_delta_l_is_multiplication_pullback(self, S3, AG_S3):
        for p in S3.elements:
            for r in S3.elements:
                got = pair_table(S3, AG_S3.delta_l(p, r))
                want = {}
                for p1 in S3.elements:
                    for p2 in S3.elements:
                        val = F(int(p1 == p)) * F(int(S3.mul(p1, p2) == r))
                        if val:
                            want[(p1, p2)] = val
                assert got == want

    def test_t1_inverse_really_inverts(self, S3, AG_S3):
        # T1(a (x) b) = Delta(a)(1 (x) b); applying it to t1_inv(s, q)
        # must return delta_s (x) delta_q on every pair.
        for s in S3.elements:
            for q in S3.elements:
                back = FinVec()
                for (a, b), c in AG_S3.t1_inv(s, q).items():
                    back = back + AG_S3.delta_r(a, b).scale(c)
                assert back == tensor(FinVec.basis(s), FinVec.basis(q))

    def test_t2_inverse_really_inverts(self, S3, AG_S3):
        for p in S3.elements:
            for s in S3.elements:
                back = FinVec()
                for (a, b), c in AG_S3.t2_inv(p, s).items():
                    back = back + AG_S3.delta_l(a, b).scale(c)
                assert back == tensor(FinVec.basis(p), FinVec.basis(s))

    def test_counit_is_evaluation_at_identity(self, S3, AG_S3):
        for g in S3.elements:
            assert AG_S3.counit(g) == F(int(g == S3.identity))

    def test_antipode_is_inversion_pullback(self, S3, AG_S3):
        # (S f)(p) = f(p^{-1}); on basis vectors that sends
        # delta_g to delta_{g^{-1}}.
        for g in S3.elements:
            assert AG_S3.antipode(g) == FinVec.basis(S3.inv(g))

    def test_flip_rules_on_the_regular_instance(self, S3, AG_S3):
        assert AG_S3.is_regular()
        for r in S3.elements:
            for b in S3.elements:
                got = pair_table(S3, AG_S3.delta_r_flip(r, b))
                want = {}
                for p1 in S3.elements:
                    for p2 in S3.elements:
                        val = F(int(S3.mul(p1, p2) == r)) * F(int(p1 == b))
                        if val:
                            want[(p1, p2)] = val
                assert got == want


class TestGroupAlgebraRules:
    def test_delta_r_by_tensor_square_product(self, S3, kG_S3):
        # Delta(g) = g (x) g, so Delta(g)(1 (x) b) is a product in
        # kG (x) kG computed with the generic tensor square algebra.
        A = group_algebra_plain(S3)
        T = tensor_square_algebra(A, A)
        for g in S3.elements:
            for b in S3.elements:
                want = T.mul(FinVec.basis((g, g)), FinVec.basis((S3.identity, b)))
                assert kG_S3.delta_r(g, b) == want

    def test_delta_l_by_tensor_square_product(self, S3, kG_S3):
        A = group_algebra_plain(S3)
        T = tensor_square_algebra(A, A)
        for a in S3.elements:
            for h in S3.elements:
                want = T.mul(FinVec.basis((a, S3.identity)), FinVec.basis((h, h)))
                assert kG_S3.delta_l(a, h) == want

    def test_coverage_inverses_invert(self, S3, kG_S3):
        for s in S3.elements:
            for q in S3.elements:
                back = FinVec()
                for (a, b), c in kG_S3.t1_inv(s, q).items():
                    back = back + kG_S3.delta_r(a, b).scale(c)
                assert back == tensor(FinVec.basis(s), FinVec.basis(q))
                back = FinVec()
                for (a, b), c in kG_S3.t2_inv(s, q).items():
                    back = back + kG_S3.delta_l(a, b).scale(c)
                assert back == tensor(FinVec.basis(s), FinVec.basis(q))

    def test_counit_and_antipode(self, S3, kG_S3):
        for g in S3.elements:
            assert kG_S3.counit(g) == F(1)
            assert kG_S3.antipode(g) == FinVec.basis(S3.inv(g))


class TestSweedlerPatterns:
    def test_iS_pattern_by_brute_force(self, S3, AG_S3):
        # sum a_1 (x) S(a_2) b with Delta(delta_p) = sum_{uv=p} d_u (x) d_v:
        # keep the terms where v^{-1} = q.
        for p in S3.elements:
            for q in S3.elements:
                want = FinVec()
                for u in S3.elements:
                    for v in S3.elements:
                        if S3.mul(u, v) == p and S3.inv(v) == q:
                            want = want + FinVec.basis((u, q))
                assert sweedler_cov(AG_S3, "iS", p, q) == want

    def test_Sinv_pattern_by_brute_force(self, S3, AG_S3):
        # sum a_2 (x) S^{-1}(a_1) b: keep terms where u^{-1} = q.
        for p in S3.elements:
            for q in S3.elements:
                want = FinVec()
                for u in S3.elements:
                    for v in S3.elements:
                        if S3.mul(u, v) == p and S3.inv(u) == q:
                            want = want + FinVec.basis((v, q))
                assert sweedler_cov(AG_S3, "Sinv", p, q) == want

    def test_closed_forms_on_a_sample(self, S3, AG_S3):
        p = (1, 2, 0)
        q = (1, 0, 2)
        assert sweedler_cov(AG_S3, "iS", p, q) == FinVec.basis((S3.mul(p, q), q))
        assert sweedler_cov(AG_S3, "Sinv", p, q) == FinVec.basis((S3.mul(q, p), q))


class TestAxiomBattery:
    @pytest.mark.parametrize(
        "kind,spec",
        [
            ("A_G", "cyclic:2"),
            ("A_G", "cyclic:4"),
            ("A_G", "symmetric:3"),
            ("kG", "cyclic:2"),
            ("kG", "symmetric:3"),
        ],
    )
    def test_battery_passes(self, kind, spec):
        inst = instance_for(kind, parse_group(spec))
        for res in check_mha_axioms(inst):
            assert res.outcome == "pass", (res.name, res.witnesses)

    @pytest.mark.parametrize("kind", ["antipode", "counit", "delta"])
    def test_each_mutation_fails_some_check(self, kind, AG_S3):
        bad = mutate_instance(AG_S3, kind)
        results = check_mha_axioms(bad)
        failed = [r.name for r in results if r.outcome == "fail"]
        assert failed, f"mutation {kind} slipped through the battery"

    def test_mutations_fail_on_group_algebra_too(self, kG_S3):
        for kind in ("antipode", "counit", "delta"):
            bad = mutate_instance(kG_S3, kind)
            assert any(r.outcome == "fail" for r in check_mha_axioms(bad))

    def test_unknown_mutation_rejected(self, AG_S3):
        with pytest.raises(StructuralError):
            mutate_instance(AG_S3, "verse")


class TestGenericFallback:
    def test_materialized_instance_matches_closed_forms(self, C2):
        closed = instance_for("A_G", C2)
        A = pointwise_algebra(C2)

        def delta(g):
            out = FinVec()
            for u in C2.elements:
                for v in C2.elements:
                    if C2.mul(u, v) == g:
                        out = out + FinVec.basis((u, v))
            return out

        generic = mha_from_delta(
            A,
            delta,
            lambda g: F(int(g == C2.identity)),
            lambda g: FinVec.basis(C2.inv(g)),
            name="materialized_A_C2",
        )
        for a in C2.elements:
            for b in C2.elements:
                assert generic.delta_r(a, b) == closed.delta_r(a, b)
                assert generic.delta_l(a, b) == closed.delta_l(a, b)
                assert generic.t1_inv(a, b) == closed.t1_inv(a, b)
                assert generic.t2_inv(a, b) == closed.t2_inv(a, b)
        for res in check_mha_axioms(generic):
            assert res.outcome == "pass", res.name

    def test_non_bijective_coverage_is_rejected(self, C2):
        A = pointwise_algebra(C2)
        with pytest.raises(StructuralError):
            mha_from_delta(
                A,
                lambda g: FinVec.basis((g, g)),
                lambda g: F(1),
                lambda g: FinVec.basis(g),
            )
