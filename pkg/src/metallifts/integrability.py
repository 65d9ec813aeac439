"""Nijenhuis tensors, distribution integrability, and the worked
position-dependent example on the plane.

The Nijenhuis tensor of a (1,1)-field T is

    N_T(X, Y) = [TX, TY] - T[TX, Y] - T[X, TY] + T^2 [X, Y]

with the standard last term T^2[X, Y]; its vanishing is the
integrability criterion for the structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import (Tensor11Field, Tensor12Field, VectorField, apply_t11,
                       compose_t11, invert_t11, lie_bracket)
from .lifts import complete_lift_t11, tangent_bundle
from .metallic import (MetallicStructure, StructureError, check_square_is,
                       metallic_from_product, projectors_from_metallic)
from .numfield import MetallicParams
from .symexpr import Chart, RatFunc, parse_expr


def nijenhuis_apply(T: Tensor11Field, X: VectorField, Y: VectorField,
                    t2: Tensor11Field | None = None) -> VectorField:
    tx, ty = apply_t11(T, X), apply_t11(T, Y)
    if t2 is None:
        t2 = compose_t11(T, T)
    out = lie_bracket(tx, ty)
    out = out - apply_t11(T, lie_bracket(tx, Y))
    out = out - apply_t11(T, lie_bracket(X, ty))
    out = out + apply_t11(t2, lie_bracket(X, Y))
    return out


def nijenhuis_t11(T: Tensor11Field) -> Tensor12Field:
    """Assemble N_T componentwise from coordinate basis pairs."""
    chart = T.chart
    n = chart.dimension
    zero = RatFunc.constant(chart, 0)
    t2 = compose_t11(T, T)
    cube = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = nijenhuis_apply(T, VectorField.basis(chart, i),
                                    VectorField.basis(chart, j), t2)
            for h in range(n):
                cube[h][i][j] = value.components[h]
                cube[h][j][i] = -value.components[h]
    return Tensor12Field(chart, tuple(tuple(tuple(row) for row in plane)
                                      for plane in cube))


def np_relation_check(P: Tensor11Field, params: MetallicParams) -> bool:
    """N_P == (4/D) N_Psi for Psi induced by P, on the base chart and for
    the complete lifts on TM."""
    check_square_is(P, 1, "not an almost product structure")
    psi = metallic_from_product(P, params).tensor
    factor = params.discriminant

    def holds(prod, met):
        chart = prod.chart
        n = chart.dimension
        p2, m2 = compose_t11(prod, prod), compose_t11(met, met)
        for i in range(n):
            ei = VectorField.basis(chart, i)
            for j in range(i + 1, n):
                ej = VectorField.basis(chart, j)
                vp = nijenhuis_apply(prod, ei, ej, p2)
                vm = nijenhuis_apply(met, ei, ej, m2)
                if not (vp.scale(factor) - vm.scale(4)).is_zero:
                    return False
        return True

    if not holds(P, psi):
        return False
    tb = tangent_bundle(P.chart)
    return holds(complete_lift_t11(P, tb), complete_lift_t11(psi, tb))


@dataclass(frozen=True)
class Distribution:
    chart: Chart
    generators: tuple[VectorField, ...]
    projector: Tensor11Field

    def __post_init__(self):
        if not (compose_t11(self.projector, self.projector) - self.projector).is_zero:
            raise StructureError("distribution projector is not idempotent")
        for k, g in enumerate(self.generators):
            if not (apply_t11(self.projector, g) - g).is_zero:
                raise StructureError(f"generator {k} is not fixed by the projector")


def distribution_integrable(D: Distribution, complement_projector: Tensor11Field) -> bool:
    """Frobenius criterion: the complement projector kills brackets of
    projected coordinate basis fields."""
    chart = D.chart
    total = D.projector + complement_projector
    if not (total - Tensor11Field.identity(chart)).is_zero:
        raise StructureError("projectors are not complementary")
    n = chart.dimension
    for i in range(n):
        pi = apply_t11(D.projector, VectorField.basis(chart, i))
        for j in range(i + 1, n):
            pj = apply_t11(D.projector, VectorField.basis(chart, j))
            if not apply_t11(complement_projector, lie_bracket(pi, pj)).is_zero:
                return False
    return True


@dataclass(frozen=True)
class ProjectorCriterionReport:
    which: str
    base: bool
    lifted: bool

    def __bool__(self):
        return self.base and self.lifted


def projector_nijenhuis_criterion(M: MetallicStructure, which: str) -> ProjectorCriterionReport:
    """Evaluate r N_Psi(sX, sY) (or s N_Psi(rX, rY)) on basis pairs, on the
    base chart and for the lifted structure on TM."""
    if which not in ("r_on_s", "s_on_r"):
        raise ValueError("which must be 'r_on_s' or 's_on_r'")

    def verdict(psi, pair):
        outer, inner = (pair.r, pair.s) if which == "r_on_s" else (pair.s, pair.r)
        chart = psi.chart
        n = chart.dimension
        psi2 = compose_t11(psi, psi)
        for i in range(n):
            xi = apply_t11(inner, VectorField.basis(chart, i))
            for j in range(i + 1, n):
                yj = apply_t11(inner, VectorField.basis(chart, j))
                if not apply_t11(outer, nijenhuis_apply(psi, xi, yj, psi2)).is_zero:
                    return False
        return True

    pair = projectors_from_metallic(M)
    base_ok = verdict(M.tensor, pair)

    tb = tangent_bundle(M.chart)
    lifted = MetallicStructure(M.params, complete_lift_t11(M.tensor, tb))
    lifted_ok = verdict(lifted.tensor, projectors_from_metallic(lifted))
    return ProjectorCriterionReport(which, base_ok, lifted_ok)


def example_41_chart() -> Chart:
    return Chart(("x", "y"))


def example_41_distribution_generators(chart: Chart) -> tuple[VectorField, VectorField]:
    """R = span{d/dx - (x+y) d/dy}, S = span{(x+y) d/dx + d/dy}."""
    w = parse_expr("x + y", chart)
    one = RatFunc.constant(chart, 1)
    gen_r = VectorField(chart, (one, -w))
    gen_s = VectorField(chart, (w, one))
    return gen_r, gen_s


def example_41_structure(params: MetallicParams) -> MetallicStructure:
    """The metallic structure whose +/- eigendistributions are the two
    spans above, built by exact change of basis."""
    chart = example_41_chart()
    gen_r, gen_s = example_41_distribution_generators(chart)
    basis = Tensor11Field(chart, (
        (gen_r.components[0], gen_s.components[0]),
        (gen_r.components[1], gen_s.components[1])))
    signs = Tensor11Field.diagonal(chart, [1, -1])
    P = compose_t11(compose_t11(basis, signs), invert_t11(basis))
    return metallic_from_product(P, params)


def example_41_distributions(params: MetallicParams) -> tuple[Distribution, Distribution]:
    M = example_41_structure(params)
    pair = projectors_from_metallic(M)
    gen_r, gen_s = example_41_distribution_generators(M.chart)
    return (Distribution(M.chart, (gen_r,), pair.r),
            Distribution(M.chart, (gen_s,), pair.s))
