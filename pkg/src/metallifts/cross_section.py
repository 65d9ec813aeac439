"""The cross-section of TM determined by a vector field V: x -> (x, V(x)).

"Along the section" means substituting every fiber coordinate by the
matching component of V, which turns TM-chart expressions back into
base-chart expressions.  BX is the push-forward of X tangent to the
section, CX the fiber-tangent assignment (componentwise the vertical
lift).
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import (Tensor11Field, VectorField, apply_t11, lie_bracket,
                       lie_derivative_t11, lie_derivative_t12)
from .integrability import nijenhuis_apply, nijenhuis_t11
from .lifts import TangentBundleChart, complete_lift_t11, tangent_bundle
from .metallic import MetallicStructure, StructureError
from .symexpr import RatFunc


@dataclass(frozen=True)
class CrossSection:
    V: VectorField

    @property
    def chart(self):
        return self.V.chart

    def bundle(self) -> TangentBundleChart:
        return tangent_bundle(self.chart)

    def bindings(self) -> dict[str, RatFunc]:
        tb = self.bundle()
        return dict(zip(tb.fiber_variables, self.V.components))


def b_lift(X: VectorField, cs: CrossSection) -> VectorField:
    """BX = (X^h, X^i d_i V^h); tangent to the section, x-only components."""
    if X.chart != cs.chart:
        raise ValueError("field and section must share the base chart")
    tb = cs.bundle()
    n = tb.n
    names = cs.chart.variables
    upper = [c.on_chart(tb.chart) for c in X.components]
    lower = []
    for h in range(n):
        acc = RatFunc.constant(cs.chart, 0)
        for i in range(n):
            acc = acc + X.components[i] * cs.V.components[h].diff(names[i])
        lower.append(acc.on_chart(tb.chart))
    return VectorField(tb.chart, tuple(upper + lower))


def c_lift(X: VectorField, tb: TangentBundleChart | None = None) -> VectorField:
    """CX = (0, X^h); componentwise the vertical lift."""
    tb = tb or tangent_bundle(X.chart)
    zero = RatFunc.constant(tb.chart, 0)
    return VectorField(tb.chart, tuple([zero] * tb.n
                                       + [c.on_chart(tb.chart) for c in X.components]))


def restrict_to_section(obj, cs: CrossSection):
    """Substitute y^h := V^h(x).  RatFuncs map to base-chart RatFuncs;
    vector fields and (1,1)-tensors on TM map to tuples of base-chart
    components of the same shape."""
    binds = cs.bindings()

    def sub(f: RatFunc) -> RatFunc:
        return f.substitute(binds, cs.chart)

    if isinstance(obj, RatFunc):
        return sub(obj)
    if isinstance(obj, VectorField):
        return tuple(sub(c) for c in obj.components)
    if isinstance(obj, Tensor11Field):
        return tuple(tuple(sub(c) for c in row) for row in obj.components)
    raise TypeError(f"cannot restrict {type(obj).__name__}")


@dataclass(frozen=True)
class LiftDecompositionReport:
    """The bracket and lift identities along the section:

    [BX, BY] = B[X, Y],   [CX, CY] = 0,
    X^C = BX + C(L_V X)   (restricted to the section),   X^V = CX.
    """

    b_bracket_ok: bool
    c_bracket_ok: bool
    complete_ok: bool
    vertical_ok: bool

    def __bool__(self):
        return (self.b_bracket_ok and self.c_bracket_ok
                and self.complete_ok and self.vertical_ok)


def lift_decomposition_check(X: VectorField, Y: VectorField,
                             cs: CrossSection) -> LiftDecompositionReport:
    from .lifts import complete_lift_vf, vertical_lift_vf

    tb = cs.bundle()
    b_ok = (lie_bracket(b_lift(X, cs), b_lift(Y, cs))
            - b_lift(lie_bracket(X, Y), cs)).is_zero
    c_ok = lie_bracket(c_lift(X, tb), c_lift(Y, tb)).is_zero

    lhs = restrict_to_section(complete_lift_vf(X, tb), cs)
    rhs = restrict_to_section(
        b_lift(X, cs) + c_lift(lie_bracket(cs.V, X), tb), cs)
    comp_ok = all((a - b).is_zero for a, b in zip(lhs, rhs))

    vert_ok = (vertical_lift_vf(X, tb) - c_lift(X, tb)).is_zero
    return LiftDecompositionReport(b_ok, c_ok, comp_ok, vert_ok)


@dataclass(frozen=True)
class InvarianceReport:
    invariant: bool
    lie_derivative: Tensor11Field
    decomposition_ok: bool  # Eq. relating Psi^C(BX) to B(Psi X) + C((L_V Psi)X)

    def __bool__(self):
        return self.invariant


def invariance_check(M: MetallicStructure, cs: CrossSection) -> InvarianceReport:
    if M.chart != cs.chart:
        raise ValueError("structure and section must share the base chart")
    chart = cs.chart
    n = chart.dimension
    lie = lie_derivative_t11(cs.V, M.tensor)
    psi_c = complete_lift_t11(M.tensor, cs.bundle())

    ok = True
    for i in range(n):
        e = VectorField.basis(chart, i)
        lhs = restrict_to_section(apply_t11(psi_c, b_lift(e, cs)), cs)
        rhs_vf = b_lift(apply_t11(M.tensor, e), cs) + c_lift(apply_t11(lie, e), cs.bundle())
        rhs = restrict_to_section(rhs_vf, cs)
        if any(not (a - b).is_zero for a, b in zip(lhs, rhs)):
            ok = False
            break
    return InvarianceReport(lie.is_zero, lie, ok)


def induced_structure(M: MetallicStructure, cs: CrossSection) -> MetallicStructure:
    """The tensor on the section sending BX to Psi^C(BX), in the section's
    intrinsic (base-chart) coordinates; requires invariance."""
    report = invariance_check(M, cs)
    if not report.invariant:
        bad = next((h, i) for h, row in enumerate(report.lie_derivative.components)
                   for i, c in enumerate(row) if not c.is_zero)
        raise StructureError(
            f"section is not invariant: (L_V Psi)[{bad[0] + 1}][{bad[1] + 1}] != 0")

    chart = cs.chart
    n = chart.dimension
    names = chart.variables
    psi_c = complete_lift_t11(M.tensor, cs.bundle())
    columns = []
    for i in range(n):
        image = restrict_to_section(apply_t11(psi_c, b_lift(VectorField.basis(chart, i), cs)), cs)
        col = image[:n]
        # Tangency: the fiber part must be the push-forward of the base part.
        for h in range(n):
            expect = RatFunc.constant(chart, 0)
            for a in range(n):
                expect = expect + cs.V.components[h].diff(names[a]) * col[a]
            if not (image[n + h] - expect).is_zero:
                raise StructureError("image of BX is not tangent to the section")
        columns.append(col)
    rows = tuple(tuple(columns[i][h] for i in range(n)) for h in range(n))
    return MetallicStructure(M.params, Tensor11Field(chart, rows))


@dataclass(frozen=True)
class SectionNijenhuisReport:
    decomposition_ok: bool   # N_{Psi^C}(BX,BY) = B(N_Psi(X,Y)) + C((L_V N_Psi)(X,Y))
    tangent: bool            # L_V N_Psi == 0
    invariant: bool          # L_V Psi == 0
    base_nijenhuis_zero: bool
    section_nijenhuis_zero: bool

    @property
    def equivalence_ok(self) -> bool:
        """On invariant sections the section Nijenhuis vanishes iff the
        base one does."""
        if not self.invariant:
            return True
        return self.section_nijenhuis_zero == self.base_nijenhuis_zero


def section_nijenhuis_check(M: MetallicStructure, cs: CrossSection) -> SectionNijenhuisReport:
    if M.chart != cs.chart:
        raise ValueError("structure and section must share the base chart")
    chart = cs.chart
    n = chart.dimension
    tb = cs.bundle()
    psi_c = complete_lift_t11(M.tensor, tb)
    n_base = nijenhuis_t11(M.tensor)
    lie_n = lie_derivative_t12(cs.V, n_base)

    decomposition_ok = True
    section_zero = True
    for i in range(n):
        bi = b_lift(VectorField.basis(chart, i), cs)
        for j in range(i + 1, n):
            bj = b_lift(VectorField.basis(chart, j), cs)
            lhs_vf = nijenhuis_apply(psi_c, bi, bj)
            lhs = restrict_to_section(lhs_vf, cs)
            if any(not c.is_zero for c in lhs):
                section_zero = False
            base_val = n_base.evaluate(VectorField.basis(chart, i), VectorField.basis(chart, j))
            lie_val = lie_n.evaluate(VectorField.basis(chart, i), VectorField.basis(chart, j))
            rhs = restrict_to_section(b_lift(base_val, cs) + c_lift(lie_val, tb), cs)
            if any(not (a - b).is_zero for a, b in zip(lhs, rhs)):
                decomposition_ok = False

    return SectionNijenhuisReport(
        decomposition_ok=decomposition_ok,
        tangent=lie_n.is_zero,
        invariant=lie_derivative_t11(cs.V, M.tensor).is_zero,
        base_nijenhuis_zero=n_base.is_zero,
        section_nijenhuis_zero=section_zero,
    )
