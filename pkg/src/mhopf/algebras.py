"""Associative algebras with nondegenerate product, possibly without unit.

An algebra is given by structure constants on basis tokens.  The basis may
be infinite (indexed by a group); checks then run on explicit windows.
Local units replace the missing unit: for pointwise function algebras they
are support-union indicators in closed form, for finite structure-constant
algebras they are found by exact linear solving.

Multipliers are pairs (U, V) of linear operators with U(a)b = aV(b),
U(ab) = U(a)b, V(ab) = aV(b); they represent elements of the multiplier
algebra M(A) on a declared validity window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import spans
from .errors import CapabilityError, NoLocalUnitError, StructuralError, WindowError
from .groups import GroupSpec
from .reports import CheckResult, ResultSink
from .vectors import FinVec, LinearMapTable, token_key


@dataclass(frozen=True)
class Algebra:
    name: str
    mul_basis: Callable[[object, object], FinVec]
    basis: Optional[tuple] = None
    one: Optional[FinVec] = None
    pointwise: bool = False
    group: Optional[GroupSpec] = None

    def mul(self, x: FinVec, y: FinVec) -> FinVec:
        out = FinVec()
        for i, ci in x.items():
            for j, cj in y.items():
                out = out + self.mul_basis(i, j).scale(ci * cj)
        return out

    def is_finite(self) -> bool:
        return self.basis is not None

    def basis_window(self, window=None) -> tuple:
        # an integer n means: the first n basis tokens
        if isinstance(window, int):
            if self.basis is None:
                raise WindowError(f"algebra {self.name} needs an explicit window")
            return self.basis[:window]
        if window is not None:
            return tuple(window)
        if self.basis is None:
            raise WindowError(f"algebra {self.name} needs an explicit window")
        return self.basis

    def element(self, items) -> FinVec:
        return FinVec(items)


def multiply(algebra: Algebra, x: FinVec, y: FinVec) -> FinVec:
    return algebra.mul(x, y)


def pointwise_algebra(group: GroupSpec) -> Algebra:
    """Finitely supported functions on a group under pointwise product."""

    def mul_basis(i, j):
        return FinVec.basis(i) if i == j else FinVec()

    one = None
    if group.elements is not None:
        one = FinVec((g, 1) for g in group.elements)
    return Algebra(
        name=f"functions:{group.name}",
        mul_basis=mul_basis,
        basis=group.elements,
        one=one,
        pointwise=True,
        group=group,
    )


def group_algebra_plain(group: GroupSpec) -> Algebra:
    """Group algebra: basis tokens multiply by the group law."""

    def mul_basis(i, j):
        return FinVec.basis(group.mul(i, j))

    return Algebra(
        name=f"groupalg:{group.name}",
        mul_basis=mul_basis,
        basis=group.elements,
        one=FinVec.basis(group.identity),
        group=group,
    )


def struct_const_algebra(name, basis, table, one=None) -> Algebra:
    """Finite algebra from an explicit structure-constant table.

    table maps (i, j) to a FinVec (missing pairs multiply to zero).
    """
    basis = tuple(basis)
    table = dict(table)

    def mul_basis(i, j):
        return table.get((i, j), FinVec())

    return Algebra(name=name, mul_basis=mul_basis, basis=basis, one=one)


def tensor_square_algebra(left: Algebra, right: Algebra, right_window=None) -> Algebra:
    """Tensor product algebra on pair tokens (componentwise product)."""
    basis = None
    if left.basis is not None:
        try:
            rbasis = right.basis_window(right_window)
        except WindowError:
            rbasis = None
        if rbasis is not None:
            basis = tuple(
                (i, j)
                for i in sorted(left.basis, key=token_key)
                for j in sorted(rbasis, key=token_key)
            )

    def mul_basis(p, q):
        (i, j), (k, l) = p, q
        out = FinVec()
        for a, ca in left.mul_basis(i, k).items():
            for b, cb in right.mul_basis(j, l).items():
                out = out + FinVec.basis((a, b), ca * cb)
        return out

    one = None
    if left.one is not None and right.one is not None:
        one = FinVec(
            ((i, j), ci * cj)
            for i, ci in left.one.items()
            for j, cj in right.one.items()
        )
    return Algebra(
        name=f"tensor({left.name},{right.name})",
        mul_basis=mul_basis,
        basis=basis,
        one=one,
    )


def convolution_algebra(group: GroupSpec, target: Algebra, window=None) -> Algebra:
    """Finitely supported maps group -> target under group convolution.

    Basis token (g, l): the map sending g to basis element l.  Product
    (g, l) * (h, m) = (g h, l m expanded in the target).
    """
    basis = None
    if group.elements is not None and target.basis is not None:
        basis = tuple(
            (g, l)
            for g in sorted(group.elements, key=token_key)
            for l in target.basis
        )

    def mul_basis(p, q):
        (g, l), (h, m) = p, q
        gh = group.mul(g, h)
        return target.mul_basis(l, m).map_tokens(lambda t: (gh, t))

    return Algebra(
        name=f"conv({group.name},{target.name})",
        mul_basis=mul_basis,
        basis=basis,
        group=group,
    )


def check_associative(algebra: Algebra, window=None) -> CheckResult:
    window = algebra.basis_window(window)
    witnesses = []
    for a in window:
        for b in window:
            ab = algebra.mul_basis(a, b)
            for c in window:
                lhs = algebra.mul(ab, FinVec.basis(c))
                rhs = algebra.mul(FinVec.basis(a), algebra.mul_basis(b, c))
                if lhs != rhs:
                    witnesses.append({"triple": (a, b, c), "lhs": lhs, "rhs": rhs})
                    if len(witnesses) >= 3:
                        return CheckResult.failed("associativity", witnesses)
    if witnesses:
        return CheckResult.failed("associativity", witnesses)
    return CheckResult.passed("associativity", triples=len(window) ** 3)


def local_unit(algebra: Algebra, elems, window=None) -> FinVec:
    """Element e with e*x == x == x*e for every x in elems.

    Pointwise algebras: the indicator of the union of supports (closed
    form, works on infinite bases).  Unital algebras: the unit.  Otherwise
    the linear system is solved over the span of a finite window; raises
    NoLocalUnitError when inconsistent.
    """
    elems = [e for e in elems if e]
    if not elems:
        return FinVec()
    if algebra.pointwise:
        toks = set()
        for x in elems:
            toks.update(x.support())
        return FinVec((t, 1) for t in toks)
    if algebra.one is not None:
        return algebra.one
    window = algebra.basis_window(window)
    # unknowns: coefficients of e over the window
    eq_rows = []
    rhs = []
    out_tokens = set()
    for x in elems:
        out_tokens.update(x.support())
        for b in window:
            out_tokens.update(algebra.mul(FinVec.basis(b), x).support())
            out_tokens.update(algebra.mul(x, FinVec.basis(b)).support())
    out_tokens = sorted(out_tokens, key=token_key)
    for x in elems:
        left_imgs = [algebra.mul(FinVec.basis(b), x) for b in window]
        right_imgs = [algebra.mul(x, FinVec.basis(b)) for b in window]
        for t in out_tokens:
            eq_rows.append([img[t] for img in left_imgs])
            rhs.append(x[t])
            eq_rows.append([img[t] for img in right_imgs])
            rhs.append(x[t])
    from . import linalg

    sol = linalg.solve(eq_rows, rhs)
    if sol is None:
        raise NoLocalUnitError(
            f"no local unit in span of window for {len(elems)} elements"
        )
    return FinVec(zip(window, sol))


def check_nondegenerate(algebra: Algebra, window=None) -> CheckResult:
    """Windowed two-sided nondegeneracy of the product.

    Fails with a witness x in span(window) with x*b == 0 for every window b
    (or the right-sided mirror).
    """
    window = algebra.basis_window(window)

    def right_images(tok):
        x = FinVec.basis(tok)
        out = FinVec()
        for b in window:
            prod = algebra.mul(x, FinVec.basis(b))
            out = out + prod.map_tokens(lambda t, b=b: (b, t))
        return out

    def left_images(tok):
        x = FinVec.basis(tok)
        out = FinVec()
        for b in window:
            prod = algebra.mul(FinVec.basis(b), x)
            out = out + prod.map_tokens(lambda t, b=b: (b, t))
        return out

    left_kernel = spans.kernel_of_map(window, right_images)
    right_kernel = spans.kernel_of_map(window, left_images)
    witnesses = [{"side": "left", "annihilator": v} for v in left_kernel]
    witnesses += [{"side": "right", "annihilator": v} for v in right_kernel]
    if witnesses:
        return CheckResult.failed("nondegenerate", witnesses, window=len(window))
    return CheckResult.passed("nondegenerate", window=len(window))


def check_s_unital_left(algebra: Algebra, window=None, elems=None) -> CheckResult:
    """For each x: is x in span(window)*x?  Exact solvability check."""
    window = algebra.basis_window(window)
    if elems is None:
        elems = [FinVec.basis(t) for t in window]
    witnesses = []
    for x in elems:
        if not x:
            continue
        products = [algebra.mul(FinVec.basis(b), x) for b in window]
        if spans.in_span(x, products) is None:
            witnesses.append({"element": x})
    if witnesses:
        return CheckResult.failed("s_unital_left", witnesses, window=len(window))
    return CheckResult.passed("s_unital_left", window=len(window), elems=len(elems))


class Multiplier:
    """Pair (U, V) of operator tables on a validity window: U is 'multiply
    from the left', V 'from the right'."""

    __slots__ = ("algebra", "left", "right", "window")

    def __init__(self, algebra: Algebra, left: LinearMapTable, right: LinearMapTable):
        if left.window != right.window:
            raise StructuralError("multiplier operator windows differ")
        self.algebra = algebra
        self.left = left
        self.right = right
        self.window = left.window

    @staticmethod
    def from_element(algebra: Algebra, z: FinVec, window=None) -> "Multiplier":
        window = algebra.basis_window(window)
        left = LinearMapTable(
            {b: algebra.mul(z, FinVec.basis(b)) for b in window}, window
        )
        right = LinearMapTable(
            {b: algebra.mul(FinVec.basis(b), z) for b in window}, window
        )
        return Multiplier(algebra, left, right)

    @staticmethod
    def from_rules(algebra: Algebra, left_rule, right_rule, window) -> "Multiplier":
        window = tuple(window)
        left = LinearMapTable({b: left_rule(b) for b in window}, window)
        right = LinearMapTable({b: right_rule(b) for b in window}, window)
        return Multiplier(algebra, left, right)

    @staticmethod
    def identity(algebra: Algebra, window=None) -> "Multiplier":
        window = algebra.basis_window(window)
        table = LinearMapTable({b: FinVec.basis(b) for b in window}, window)
        return Multiplier(algebra, table, table)

    @staticmethod
    def scalar(algebra: Algebra, coeff, window=None) -> "Multiplier":
        window = algebra.basis_window(window)
        table = LinearMapTable(
            {b: FinVec.basis(b, coeff) for b in window}, window
        )
        return Multiplier(algebra, table, table)

    def apply_left(self, vec: FinVec) -> FinVec:
        return self.left.apply(vec)

    def apply_right(self, vec: FinVec) -> FinVec:
        return self.right.apply(vec)

    def equal_on_window(self, other: "Multiplier") -> bool:
        return self.left.equal_on_window(other.left) and self.right.equal_on_window(
            other.right
        )

    def __eq__(self, other):
        return isinstance(other, Multiplier) and self.equal_on_window(other)

    __hash__ = None


def multiplier_check(m: Multiplier, window=None) -> CheckResult:
    """Compatibility laws V(a)b = aU(b), U(ab) = U(a)b, V(ab) = aV(b) on
    basis pairs of the window."""
    algebra = m.algebra
    window = tuple(window) if window is not None else tuple(
        sorted(m.window, key=token_key)
    )
    outside = [t for t in window if t not in m.window]
    if outside:
        raise WindowError(f"tokens outside multiplier window: {outside[:3]}")
    witnesses = []
    for a in window:
        av = FinVec.basis(a)
        ua = m.apply_left(av)
        va = m.apply_right(av)
        for b in window:
            bv = FinVec.basis(b)
            if algebra.mul(va, bv) != algebra.mul(av, m.apply_left(bv)):
                witnesses.append({"law": "V(a)b = aU(b)", "pair": (a, b)})
            ab = algebra.mul(av, bv)
            try:
                uab = m.apply_left(ab)
                vab = m.apply_right(ab)
            except WindowError:
                continue
            if uab != algebra.mul(ua, bv):
                witnesses.append({"law": "U(ab)=U(a)b", "pair": (a, b)})
            if vab != algebra.mul(av, m.apply_right(bv)):
                witnesses.append({"law": "V(ab)=aV(b)", "pair": (a, b)})
            if len(witnesses) >= 5:
                return CheckResult.failed("multiplier_compat", witnesses)
    if witnesses:
        return CheckResult.failed("multiplier_compat", witnesses)
    return CheckResult.passed("multiplier_compat", window=len(window))


def multiplier_product(m1: Multiplier, m2: Multiplier) -> Multiplier:
    """(U1 o U2, V2 o V1) on the intersection window."""
    if m1.algebra is not m2.algebra and m1.algebra.name != m2.algebra.name:
        raise StructuralError("multipliers over different algebras")
    window = m1.window & m2.window
    if not window:
        raise WindowError("empty intersection window for multiplier product")
    left = LinearMapTable(
        {b: m1.apply_left(m2.apply_left(FinVec.basis(b))) for b in window}, window
    )
    right = LinearMapTable(
        {b: m2.apply_right(m1.apply_right(FinVec.basis(b))) for b in window}, window
    )
    return Multiplier(m1.algebra, left, right)


def is_central_multiplier(m: Multiplier, window=None) -> bool:
    """Central in M(A): left and right actions agree (given compat laws)."""
    window = tuple(window) if window is not None else tuple(m.window)
    return all(
        m.apply_left(FinVec.basis(b)) == m.apply_right(FinVec.basis(b))
        for b in window
    )


def is_idempotent_multiplier(m: Multiplier) -> bool:
    return multiplier_product(m, m).equal_on_window(m)


class Corner:
    """Corner algebra f*A*f (= f*A for central idempotent f) of a finite
    ambient algebra, with exact embed/project between coordinates.

    Corner basis tokens are the ambient basis tokens whose f-image was kept
    by the deterministic greedy independence scan.
    """

    def __init__(self, ambient: Algebra, idem: FinVec, name=None, require_central=True):
        if ambient.basis is None:
            raise CapabilityError("corner construction needs a finite ambient")
        if ambient.mul(idem, idem) != idem:
            raise StructuralError("corner projector is not idempotent")
        if require_central:
            for b in ambient.basis:
                bv = FinVec.basis(b)
                if ambient.mul(idem, bv) != ambient.mul(bv, idem):
                    raise StructuralError("corner projector is not central")
        self.ambient = ambient
        self.idem = idem
        images = [
            (tok, ambient.mul(idem, FinVec.basis(tok))) for tok in ambient.basis
        ]
        kept = spans.independent_subset(images)
        self.reps = tuple(tok for tok, _ in kept)
        self._embed = {tok: vec for tok, vec in kept}
        basis_vecs = [self._embed[t] for t in self.reps]
        self._basis_vecs = basis_vecs

        corner = self

        def mul_basis(i, j):
            prod = ambient.mul(corner._embed[i], corner._embed[j])
            return corner.project(prod)

        self.algebra = Algebra(
            name=name or f"corner({ambient.name})",
            mul_basis=mul_basis,
            basis=self.reps,
            one=self.project(idem),
        )

    def embed(self, vec: FinVec) -> FinVec:
        """Corner coordinates -> ambient element."""
        out = FinVec()
        for tok, coeff in vec.items():
            out = out + self._embed[tok].scale(coeff)
        return out

    def project(self, vec: FinVec) -> FinVec:
        """Ambient element -> corner coordinates of f*vec."""
        target = self.ambient.mul(self.idem, vec)
        coeffs = spans.in_span(target, self._basis_vecs)
        if coeffs is None:
            raise StructuralError("projected element escaped the corner span")
        return FinVec(zip(self.reps, coeffs))


def subgroup_average_idempotent(group_alg: Algebra, subgroup) -> FinVec:
    """(1/|N|) * sum of subgroup elements in the group algebra."""
    n = len(subgroup)
    return FinVec((h, Fraction(1, n)) for h in subgroup)
