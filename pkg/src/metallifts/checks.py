"""The check catalog executed by scenario runs.

Every check resolves its arguments against the scenario's declarations,
performs exact symbolic work, and returns a :class:`CheckOutcome` whose
``residuals`` carry the exact expressions that decide the verdict:
an ``expect="zero"`` residual must be identically zero, an
``expect="nonzero"`` residual must not be.  The runner later corroborates
each residual numerically at seeded random points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cross_section import (CrossSection, b_lift, c_lift, induced_structure,
                            invariance_check, lift_decomposition_check,
                            restrict_to_section, section_nijenhuis_check)
from .geometry import (Connection, Tensor11Field, VectorField, apply_t11,
                       compose_t11, lie_bracket, lie_derivative_t11,
                       lie_derivative_t12)
from .integrability import (Distribution, distribution_integrable,
                            nijenhuis_apply, nijenhuis_t11)
from .lifts import (complete_lift_t11, frame_matrix, horizontal_lift_t11,
                    invert_t11, jtilde_structure, tangent_bundle)
from .metallic import (MetallicStructure, StructureError, metallic_from_product,
                       metallic_residual, minimal_polynomial_check,
                       product_from_metallic, projectors_from_metallic)
from .numfield import QuadScalar
from .scenario import Scenario
from .symexpr import Chart, ExprError, RatFunc, parse_expr


class CheckError(ValueError):
    """A check could not run against the declared objects."""


@dataclass(frozen=True)
class Residual:
    label: str
    expr: RatFunc
    expect: str  # "zero" | "nonzero"


@dataclass
class CheckOutcome:
    name: str
    claim: str
    verdict: str = "pass"  # pass | fail | error
    residuals: list[Residual] = field(default_factory=list)
    facts: list[tuple[str, bool]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    error: str | None = None

    def settle(self):
        if self.error is not None:
            self.verdict = "error"
            return self
        ok = all(f for _, f in self.facts)
        for r in self.residuals:
            if r.expect == "zero":
                ok = ok and r.expr.is_zero
            else:
                ok = ok and not r.expr.is_zero
        self.verdict = "pass" if ok else "fail"
        return self


class Context:
    """Resolution of scenario names plus small caches."""

    def __init__(self, scenario: Scenario):
        self.s = scenario
        self.params = scenario.params
        self.chart = scenario.chart
        self._metallic: dict[str, MetallicStructure] = {}

    def structure(self, name: str) -> tuple[str, Tensor11Field]:
        try:
            return self.s.structures[name]
        except KeyError:
            raise CheckError(f"unknown structure {name!r}") from None

    def metallic(self, name: str) -> MetallicStructure:
        """The named structure as a metallic structure (products are
        converted through the half-trace recipe first)."""
        if name not in self._metallic:
            kind, T = self.structure(name)
            if kind == "metallic":
                self._metallic[name] = MetallicStructure(self.params, T)
            elif kind == "product":
                self._metallic[name] = metallic_from_product(T, self.params)
            else:
                raise CheckError(f"structure {name!r} has kind {kind!r}; "
                                 "a product or metallic structure is required")
        return self._metallic[name]

    def product(self, name: str) -> Tensor11Field:
        kind, T = self.structure(name)
        if kind == "product":
            return T
        return product_from_metallic(self.metallic(name))

    def vector(self, name: str) -> VectorField:
        try:
            return self.s.fields[name]
        except KeyError:
            raise CheckError(f"unknown field {name!r}") from None

    def connection(self, name: str) -> Connection:
        try:
            return self.s.connections[name]
        except KeyError:
            raise CheckError(f"unknown connection {name!r}") from None

    def distribution(self, name: str) -> tuple[VectorField, ...]:
        try:
            return self.s.distributions[name]
        except KeyError:
            raise CheckError(f"unknown distribution {name!r}") from None

    def expr(self, tokens: tuple[str, ...]) -> RatFunc:
        text = " ".join(tokens)
        if not text:
            raise CheckError("missing expression argument")
        try:
            return parse_expr(text, self.chart, self.params)
        except ExprError as exc:
            raise CheckError(f"in expression {text!r}: {exc}") from exc


def _tensor_residuals(out: CheckOutcome, label: str, T: Tensor11Field,
                      expect: str = "zero"):
    for h, row in enumerate(T.components):
        for i, c in enumerate(row):
            out.residuals.append(Residual(f"{label}[{h + 1}][{i + 1}]", c, expect))


def _nonzero_witness(out: CheckOutcome, label: str, T: Tensor11Field):
    """Record that a tensor is not identically zero via its first nonzero
    component; verdicts on 'nonzero' expectations are existential."""
    for h, row in enumerate(T.components):
        for i, c in enumerate(row):
            if not c.is_zero:
                out.residuals.append(
                    Residual(f"{label}[{h + 1}][{i + 1}]", c, "nonzero"))
                return
    out.facts.append((f"{label} has a nonzero component", False))


def _vector_residuals(out: CheckOutcome, label: str, comps, expect: str = "zero"):
    for h, c in enumerate(comps):
        out.residuals.append(Residual(f"{label}[{h + 1}]", c, expect))


def _scalar_residual(out: CheckOutcome, label: str, chart: Chart,
                     value: QuadScalar, expect: str = "zero"):
    out.residuals.append(Residual(label, RatFunc.constant(chart, value), expect))


def _arity(args, *counts):
    if len(args) not in counts:
        want = " or ".join(str(c) for c in counts)
        raise CheckError(f"expected {want} argument(s), got {len(args)}")


# ---------------------------------------------------------------------------
# The catalog
# ---------------------------------------------------------------------------

def check_mean_defining(ctx: Context, args) -> CheckOutcome:
    _arity(args, 0)
    p = ctx.params
    out = CheckOutcome("mean_defining",
                       "sigma solves x^2 - alpha*x - beta = 0 and is the positive root")
    res = p.sigma * p.sigma - QuadScalar.rational(p.alpha) * p.sigma - QuadScalar.rational(p.beta)
    _scalar_residual(out, "sigma^2 - alpha*sigma - beta", ctx.chart, res)
    out.facts.append(("sigma > 0 numerically", p.sigma.to_float() > 0))
    out.notes.append(f"sigma = {p.sigma}")
    return out


def check_mean_value(ctx: Context, args) -> CheckOutcome:
    expr = ctx.expr(args)
    out = CheckOutcome("mean_value", f"sigma equals {' '.join(args)} exactly")
    out.residuals.append(Residual("sigma - claimed", expr - RatFunc.constant(
        ctx.chart, ctx.params.sigma), "zero"))
    return out


def check_almost_product(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    _, T = ctx.structure(args[0])
    out = CheckOutcome("almost_product", f"{args[0]}^2 = I")
    _tensor_residuals(out, "P^2 - I",
                      compose_t11(T, T) - Tensor11Field.identity(T.chart))
    return out


def check_metallic(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    M = ctx.metallic(args[0])
    out = CheckOutcome("metallic", f"{args[0]} satisfies Psi^2 = alpha*Psi + beta*I")
    _tensor_residuals(out, "Psi^2 - alpha*Psi - beta*I",
                      metallic_residual(M.tensor, ctx.params))
    return out


def check_metallic_from_product(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    out = CheckOutcome("metallic_from_product",
                       f"(alpha*I + sqrtD*{args[0]})/2 is metallic")
    M = metallic_from_product(ctx.structure(args[0])[1], ctx.params)
    _tensor_residuals(out, "Psi^2 - alpha*Psi - beta*I",
                      metallic_residual(M.tensor, ctx.params))
    return out


def check_roundtrip(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    _, P = ctx.structure(args[0])
    out = CheckOutcome("roundtrip",
                       f"product -> metallic -> product returns {args[0]} exactly")
    M = metallic_from_product(P, ctx.params)
    _tensor_residuals(out, "P' - P", product_from_metallic(M) - P)
    return out


def check_projector_algebra(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    M = ctx.metallic(args[0])
    p = ctx.params
    pair = projectors_from_metallic(M)
    I = Tensor11Field.identity(M.chart)
    psi = M.tensor
    out = CheckOutcome("projector_algebra",
                       "r + s = I, rs = sr = 0, r^2 = r, s^2 = s, "
                       "Psi r = sigma r, Psi s = (alpha - sigma) s")
    _tensor_residuals(out, "r + s - I", pair.r + pair.s - I)
    _tensor_residuals(out, "r s", compose_t11(pair.r, pair.s))
    _tensor_residuals(out, "s r", compose_t11(pair.s, pair.r))
    _tensor_residuals(out, "r^2 - r", compose_t11(pair.r, pair.r) - pair.r)
    _tensor_residuals(out, "s^2 - s", compose_t11(pair.s, pair.s) - pair.s)
    _tensor_residuals(out, "Psi r - sigma r",
                      compose_t11(psi, pair.r) - pair.r.scale(p.sigma))
    _tensor_residuals(out, "r Psi - sigma r",
                      compose_t11(pair.r, psi) - pair.r.scale(p.sigma))
    _tensor_residuals(out, "Psi s - (alpha-sigma) s",
                      compose_t11(psi, pair.s) - pair.s.scale(p.conjugate_root()))
    _tensor_residuals(out, "s Psi - (alpha-sigma) s",
                      compose_t11(pair.s, psi) - pair.s.scale(p.conjugate_root()))
    return out


def check_projector_expansions(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    M = ctx.metallic(args[0])
    p = ctx.params
    pair = projectors_from_metallic(M)
    I = Tensor11Field.identity(M.chart)
    psi = M.tensor
    inv = p.sqrtD.inverse()
    beta_over = QuadScalar.rational(p.beta) * inv
    out = CheckOutcome(
        "projector_expansions",
        "sign-corrected expansions: sigma*r = (sigma/sqrtD)*Psi + (beta/sqrtD)*I "
        "and (alpha-sigma)*s = ((sigma-alpha)/sqrtD)*Psi - (beta/sqrtD)*I")
    derived_r = psi.scale(p.sigma * inv) + I.scale(beta_over)
    _tensor_residuals(out, "sigma*r - derived", pair.r.scale(p.sigma) - derived_r)
    derived_s = psi.scale((p.sigma - QuadScalar.rational(p.alpha)) * inv) - I.scale(beta_over)
    _tensor_residuals(out, "(alpha-sigma)*s - derived",
                      pair.s.scale(p.conjugate_root()) - derived_s)
    printed_r = psi.scale(p.sigma * inv) - I.scale(beta_over)
    _nonzero_witness(out, "sigma*r - printed", pair.r.scale(p.sigma) - printed_r)
    out.notes.append("printed identity-term coefficient -beta/sqrtD; derived +beta/sqrtD")
    out.notes.append("printed Psi-term coefficient (sigma+alpha)/sqrtD; "
                     "derived (sigma-alpha)/sqrtD")
    return out


def check_complete_lift_metallic(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    M = ctx.metallic(args[0])
    tb = tangent_bundle(M.chart)
    out = CheckOutcome("complete_lift_metallic",
                       f"the complete lift of {args[0]} is metallic on TM")
    _tensor_residuals(out, "(Psi^C)^2 - alpha*Psi^C - beta*I",
                      metallic_residual(complete_lift_t11(M.tensor, tb), ctx.params))
    return out


def check_composition_lift(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    _, S = ctx.structure(args[0])
    _, T = ctx.structure(args[1])
    tb = tangent_bundle(S.chart)
    out = CheckOutcome("composition_lift", f"({args[0]} {args[1]})^C = "
                       f"{args[0]}^C {args[1]}^C")
    lhs = complete_lift_t11(compose_t11(S, T), tb)
    rhs = compose_t11(complete_lift_t11(S, tb), complete_lift_t11(T, tb))
    _tensor_residuals(out, "(S T)^C - S^C T^C", lhs - rhs)
    return out


def _polynomial_outcome(ctx, name, kind, claim, expect_agreement: bool) -> CheckOutcome:
    _, T = ctx.structure(name)
    out = CheckOutcome(f"{kind}_polynomial", claim)
    rep = minimal_polynomial_check(T, kind, ctx.params)
    out.notes.append(f"computed annihilator: X^{rep.degree} "
                     f"{'+ (' + str(rep.computed_c1) + ')*X ' if rep.degree == 2 else ''}"
                     f"+ ({rep.computed_c0})")
    _scalar_residual(out, "computed c1 - claimed c1", ctx.chart,
                     rep.computed_c1 - rep.claimed_c1)
    if expect_agreement:
        _scalar_residual(out, "computed c0 - claimed c0", ctx.chart,
                         rep.computed_c0 - rep.claimed_c0)
    else:
        _scalar_residual(out, "computed c0 - printed c0", ctx.chart,
                         rep.computed_c0 - rep.claimed_c0, expect="nonzero")
        out.notes.append(f"printed constant term {rep.claimed_c0}; "
                         f"computed {rep.computed_c0}")
    out.facts.append(("degree == 2", rep.degree == 2))
    return out


def check_tangent_polynomial(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    return _polynomial_outcome(
        ctx, args[0], "tangent",
        "the tangent-derived structure satisfies X^2 - alpha*X + alpha^2/4",
        expect_agreement=True)


def check_complex_polynomial(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    return _polynomial_outcome(
        ctx, args[0], "complex",
        "the complex-derived structure's exact constant term differs from the "
        "printed alpha^2/4 + beta",
        expect_agreement=False)


def check_composite_relation(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    _, P = ctx.structure(args[0])
    _, F = ctx.structure(args[1])
    p = ctx.params
    I = Tensor11Field.identity(P.chart)
    half = QuadScalar.rational(Fraction(1, 2))

    def recipe(T):
        return I.scale(half * p.alpha) + T.scale(half * p.sqrtD)

    psi_p, psi_f = recipe(P), recipe(F)
    psi_j = recipe(compose_t11(P, F))
    lhs = psi_j.scale(p.sqrtD)
    rhs = (compose_t11(psi_p, psi_f).scale(2) - psi_p.scale(p.alpha)
           - psi_f.scale(p.alpha) + I.scale(QuadScalar.rational(p.alpha) * p.sigma))
    out = CheckOutcome("composite_relation",
                       "sqrtD*Psi_J = 2 Psi_P Psi_F - alpha*Psi_P - alpha*Psi_F "
                       "+ alpha*sigma*I for J = P F")
    _tensor_residuals(out, "lhs - rhs", lhs - rhs)
    return out


def check_nijenhuis_zero(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    M = ctx.metallic(args[0])
    out = CheckOutcome("nijenhuis_zero", f"N_Psi of {args[0]} vanishes identically")
    N = nijenhuis_t11(M.tensor)
    n = M.chart.dimension
    for i in range(n):
        for j in range(i + 1, n):
            _vector_residuals(out, f"N(e{i + 1},e{j + 1})",
                              [N.components[h][i][j] for h in range(n)])
    return out


def check_nijenhuis_zero_lifted(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    M = ctx.metallic(args[0])
    tb = tangent_bundle(M.chart)
    psi_c = complete_lift_t11(M.tensor, tb)
    out = CheckOutcome("nijenhuis_zero_lifted",
                       f"N of the complete lift of {args[0]} vanishes identically")
    N = nijenhuis_t11(psi_c)
    n = tb.chart.dimension
    for i in range(n):
        for j in range(i + 1, n):
            _vector_residuals(out, f"N(e{i + 1},e{j + 1})",
                              [N.components[h][i][j] for h in range(n)])
    return out


def check_np_relation(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    P = ctx.product(args[0])
    psi = ctx.metallic(args[0]).tensor
    D = ctx.params.discriminant
    out = CheckOutcome("np_relation",
                       "D*N_P = 4*N_Psi on the base chart and for the complete lifts")

    def residuals(prod, met, tag):
        chart = prod.chart
        n = chart.dimension
        p2, m2 = compose_t11(prod, prod), compose_t11(met, met)
        for i in range(n):
            ei = VectorField.basis(chart, i)
            for j in range(i + 1, n):
                ej = VectorField.basis(chart, j)
                diff = (nijenhuis_apply(prod, ei, ej, p2).scale(D)
                        - nijenhuis_apply(met, ei, ej, m2).scale(4))
                _vector_residuals(out, f"{tag}(e{i + 1},e{j + 1})", diff.components)

    residuals(P, psi, "base")
    tb = tangent_bundle(P.chart)
    residuals(complete_lift_t11(P, tb), complete_lift_t11(psi, tb), "lifted")
    return out


def check_affine_invariance(ctx: Context, args) -> CheckOutcome:
    _arity(args, 3)
    _, T = ctx.structure(args[0])
    try:
        a, b = int(args[1]), int(args[2])
    except ValueError:
        raise CheckError("affine_invariance needs integer coefficients a b") from None
    out = CheckOutcome("affine_invariance",
                       f"N of {a}*I + {b}*{args[0]} equals {b}^2 * N of {args[0]}")
    shifted = Tensor11Field.identity(T.chart).scale(a) + T.scale(b)
    diff = nijenhuis_t11(shifted) - nijenhuis_t11(T).scale(b * b)
    n = T.chart.dimension
    for i in range(n):
        for j in range(i + 1, n):
            _vector_residuals(out, f"diff(e{i + 1},e{j + 1})",
                              [diff.components[h][i][j] for h in range(n)])
    return out


def check_projector_criterion(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    which = args[1]
    if which not in ("r_on_s", "s_on_r"):
        raise CheckError("second argument must be r_on_s or s_on_r")
    M = ctx.metallic(args[0])
    out = CheckOutcome("projector_criterion",
                       f"{'r N(sX,sY)' if which == 'r_on_s' else 's N(rX,rY)'} = 0 "
                       "on the base chart and for the lifted structure")

    def residuals(struct: MetallicStructure, tag: str):
        pair = projectors_from_metallic(struct)
        outer, inner = (pair.r, pair.s) if which == "r_on_s" else (pair.s, pair.r)
        psi = struct.tensor
        chart = psi.chart
        n = chart.dimension
        psi2 = compose_t11(psi, psi)
        for i in range(n):
            xi = apply_t11(inner, VectorField.basis(chart, i))
            for j in range(i + 1, n):
                yj = apply_t11(inner, VectorField.basis(chart, j))
                val = apply_t11(outer, nijenhuis_apply(psi, xi, yj, psi2))
                _vector_residuals(out, f"{tag}(e{i + 1},e{j + 1})", val.components)

    residuals(M, "base")
    tb = tangent_bundle(M.chart)
    residuals(MetallicStructure(ctx.params, complete_lift_t11(M.tensor, tb)), "lifted")
    return out


def check_distributions_integrable(ctx: Context, args) -> CheckOutcome:
    _arity(args, 3)
    M = ctx.metallic(args[0])
    gens_r = ctx.distribution(args[1])
    gens_s = ctx.distribution(args[2])
    pair = projectors_from_metallic(M)
    out = CheckOutcome("distributions_integrable",
                       "both eigendistributions are integrable and contain "
                       "their declared generators")
    dist_r = Distribution(M.chart, gens_r, pair.r)
    dist_s = Distribution(M.chart, gens_s, pair.s)
    out.facts.append((f"{args[1]} integrable",
                      distribution_integrable(dist_r, pair.s)))
    out.facts.append((f"{args[2]} integrable",
                      distribution_integrable(dist_s, pair.r)))
    for name, dist, proj in ((args[1], dist_r, pair.r), (args[2], dist_s, pair.s)):
        for k, g in enumerate(dist.generators):
            _vector_residuals(out, f"{name} generator {k + 1} fixed",
                              (apply_t11(proj, g) - g).components)
    return out


def check_horizontal_metallic(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    M = ctx.metallic(args[0])
    conn = ctx.connection(args[1])
    tb = tangent_bundle(M.chart)
    out = CheckOutcome("horizontal_metallic",
                       f"the horizontal lift of {args[0]} along {args[1]} is metallic")
    _tensor_residuals(out, "(Psi^H)^2 - alpha*Psi^H - beta*I",
                      metallic_residual(horizontal_lift_t11(M.tensor, conn, tb),
                                        ctx.params))
    return out


def check_horizontal_square(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    M = ctx.metallic(args[0])
    conn = ctx.connection(args[1])
    tb = tangent_bundle(M.chart)
    out = CheckOutcome("horizontal_square", "(Psi^2)^H = (Psi^H)^2")
    th = horizontal_lift_t11(M.tensor, conn, tb)
    lhs = horizontal_lift_t11(compose_t11(M.tensor, M.tensor), conn, tb)
    _tensor_residuals(out, "(Psi^2)^H - (Psi^H)^2", lhs - compose_t11(th, th))
    return out


def check_jtilde(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    conn = ctx.connection(args[0])
    tb = tangent_bundle(ctx.chart)
    out = CheckOutcome("jtilde",
                       "the frame-swap structure (alpha*I + sqrtD*Ptilde)/2 is metallic")
    J = jtilde_structure(conn, ctx.params, tb)
    _tensor_residuals(out, "Jtilde^2 - alpha*Jtilde - beta*I",
                      metallic_residual(J, ctx.params))
    return out


def check_jtilde_printed(ctx: Context, args) -> CheckOutcome:
    _arity(args, 1)
    conn = ctx.connection(args[0])
    p = ctx.params
    tb = tangent_bundle(ctx.chart)
    n = tb.n
    F = frame_matrix(conn, tb)
    swap = Tensor11Field.make(tb.chart, [
        [1 if (i == h + n or i == h - n) else 0 for i in range(2 * n)]
        for h in range(2 * n)])
    half = QuadScalar.rational(Fraction(1, 2))
    printed = compose_t11(compose_t11(
        F, Tensor11Field.identity(tb.chart).scale(half)
        + swap.scale(half * p.sqrtD)), invert_t11(F))
    derived = jtilde_structure(conn, p, tb)
    coincide = p.alpha == 1
    out = CheckOutcome(
        "jtilde_printed",
        "the printed coefficients (X^H + sqrtD*X^V)/2 coincide with the derived "
        "(alpha*X^H + sqrtD*X^V)/2 exactly when alpha = 1")
    if coincide:
        _tensor_residuals(out, "printed - derived", printed - derived)
        _tensor_residuals(out, "printed metallic residual",
                          metallic_residual(printed, p))
    else:
        _nonzero_witness(out, "printed - derived", printed - derived)
        _nonzero_witness(out, "printed metallic residual",
                         metallic_residual(printed, p))
    out.notes.append(f"alpha = {p.alpha}: printed and derived forms "
                     f"{'coincide' if coincide else 'differ'}")
    return out


def check_section_lifts(ctx: Context, args) -> CheckOutcome:
    _arity(args, 3)
    cs = CrossSection(ctx.vector(args[0]))
    X, Y = ctx.vector(args[1]), ctx.vector(args[2])
    rep = lift_decomposition_check(X, Y, cs)
    out = CheckOutcome("section_lifts",
                       "[BX,BY] = B[X,Y], [CX,CY] = 0, X^C|section = BX + C(L_V X), "
                       "X^V = CX")
    out.facts.append(("[BX,BY] = B[X,Y]", rep.b_bracket_ok))
    out.facts.append(("[CX,CY] = 0", rep.c_bracket_ok))
    out.facts.append(("X^C = BX + C(L_V X) along the section", rep.complete_ok))
    out.facts.append(("X^V = CX", rep.vertical_ok))
    tb = cs.bundle()
    diff = (lie_bracket(b_lift(X, cs), b_lift(Y, cs))
            - b_lift(lie_bracket(X, Y), cs))
    _vector_residuals(out, "[BX,BY] - B[X,Y]", diff.components)
    _vector_residuals(out, "[CX,CY]",
                      lie_bracket(c_lift(X, tb), c_lift(Y, tb)).components)
    return out


def _section_decomposition_residuals(out, M, cs):
    chart = cs.chart
    n = chart.dimension
    psi_c = complete_lift_t11(M.tensor, cs.bundle())
    lie = lie_derivative_t11(cs.V, M.tensor)
    for i in range(n):
        e = VectorField.basis(chart, i)
        lhs = restrict_to_section(apply_t11(psi_c, b_lift(e, cs)), cs)
        rhs = restrict_to_section(
            b_lift(apply_t11(M.tensor, e), cs)
            + c_lift(apply_t11(lie, e), cs.bundle()), cs)
        _vector_residuals(out, f"decomposition(e{i + 1})",
                          [a - b for a, b in zip(lhs, rhs)])
    return lie


def check_section_invariant(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    M = ctx.metallic(args[0])
    cs = CrossSection(ctx.vector(args[1]))
    out = CheckOutcome("section_invariant",
                       "Psi^C(BX) = B(Psi X) + C((L_V Psi) X) and L_V Psi = 0")
    lie = _section_decomposition_residuals(out, M, cs)
    _tensor_residuals(out, "L_V Psi", lie)
    return out


def check_section_not_invariant(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    M = ctx.metallic(args[0])
    cs = CrossSection(ctx.vector(args[1]))
    out = CheckOutcome("section_not_invariant",
                       "the decomposition holds but L_V Psi != 0, so the section "
                       "is not invariant")
    lie = _section_decomposition_residuals(out, M, cs)
    flat = [c for row in lie.components for c in row]
    acc = None
    for k, c in enumerate(flat):
        if not c.is_zero:
            acc = c
            out.residuals.append(Residual("L_V Psi (first nonzero component)",
                                          c, "nonzero"))
            break
    if acc is None:
        out.facts.append(("L_V Psi has a nonzero component", False))
    return out


def check_induced_metallic(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    M = ctx.metallic(args[0])
    cs = CrossSection(ctx.vector(args[1]))
    out = CheckOutcome("induced_metallic",
                       "the tensor induced on the invariant section is metallic")
    induced = induced_structure(M, cs)
    _tensor_residuals(out, "induced residual",
                      metallic_residual(induced.tensor, ctx.params))
    return out


def check_section_nijenhuis(ctx: Context, args) -> CheckOutcome:
    _arity(args, 2)
    M = ctx.metallic(args[0])
    cs = CrossSection(ctx.vector(args[1]))
    rep = section_nijenhuis_check(M, cs)
    out = CheckOutcome(
        "section_nijenhuis",
        "N_{Psi^C}(BX,BY) = B(N_Psi(X,Y)) + C((L_V N_Psi)(X,Y)); on invariant "
        "sections the section Nijenhuis vanishes iff the base one does")
    out.facts.append(("decomposition holds on basis pairs", rep.decomposition_ok))
    out.facts.append(("equivalence on invariant sections", rep.equivalence_ok))
    out.notes.append(f"L_V Psi = 0: {rep.invariant}; base N = 0: "
                     f"{rep.base_nijenhuis_zero}; section N = 0: "
                     f"{rep.section_nijenhuis_zero}")
    chart = cs.chart
    n = chart.dimension
    tb = cs.bundle()
    psi_c = complete_lift_t11(M.tensor, tb)
    n_base = nijenhuis_t11(M.tensor)
    lie_n = lie_derivative_t12(cs.V, n_base)
    for i in range(n):
        bi = b_lift(VectorField.basis(chart, i), cs)
        for j in range(i + 1, n):
            bj = b_lift(VectorField.basis(chart, j), cs)
            lhs = restrict_to_section(nijenhuis_apply(psi_c, bi, bj), cs)
            ei, ej = VectorField.basis(chart, i), VectorField.basis(chart, j)
            rhs = restrict_to_section(
                b_lift(n_base.evaluate(ei, ej), cs)
                + c_lift(lie_n.evaluate(ei, ej), tb), cs)
            _vector_residuals(out, f"decomposition(e{i + 1},e{j + 1})",
                              [a - b for a, b in zip(lhs, rhs)])
    return out


def check_component(ctx: Context, args) -> CheckOutcome:
    if len(args) < 4:
        raise CheckError("component needs NAME ROW COL EXPR")
    _, T = ctx.structure(args[0])
    try:
        h, i = int(args[1]), int(args[2])
    except ValueError:
        raise CheckError("component indices must be integers") from None
    n = T.chart.dimension
    if not (1 <= h <= n and 1 <= i <= n):
        raise CheckError(f"component indices must lie in 1..{n}")
    expr = ctx.expr(args[3:])
    out = CheckOutcome("component",
                       f"{args[0]}[{h}][{i}] equals the given expression exactly")
    out.residuals.append(Residual(f"{args[0]}[{h}][{i}] - claimed",
                                  T.components[h - 1][i - 1] - expr, "zero"))
    return out


def check_errata_projector_signs(ctx: Context, args) -> CheckOutcome:
    out = check_projector_expansions(ctx, args)
    out.name = "errata_projector_signs"
    out.claim = ("erratum: the printed projector expansions carry a sign error; "
                 "the derived forms hold exactly")
    return out


def check_errata_complex_constant(ctx: Context, args) -> CheckOutcome:
    out = check_complex_polynomial(ctx, args)
    out.name = "errata_complex_constant"
    out.claim = ("erratum: the complex-derived structure's constant term is "
                 "alpha^2/2 + beta, not the printed alpha^2/4 + beta")
    return out


def check_errata_frame_swap_lift(ctx: Context, args) -> CheckOutcome:
    out = check_jtilde_printed(ctx, args)
    out.name = "errata_frame_swap_lift"
    out.claim = ("erratum: the printed lift coefficients (X^H + sqrtD*X^V)/2 miss "
                 "a factor alpha on the first term; the derived "
                 "(alpha*X^H + sqrtD*X^V)/2 is metallic for every alpha, beta")
    return out


CHECKS = {
    "mean_defining": check_mean_defining,
    "mean_value": check_mean_value,
    "almost_product": check_almost_product,
    "metallic": check_metallic,
    "metallic_from_product": check_metallic_from_product,
    "roundtrip": check_roundtrip,
    "projector_algebra": check_projector_algebra,
    "projector_expansions": check_projector_expansions,
    "complete_lift_metallic": check_complete_lift_metallic,
    "composition_lift": check_composition_lift,
    "tangent_polynomial": check_tangent_polynomial,
    "complex_polynomial": check_complex_polynomial,
    "composite_relation": check_composite_relation,
    "nijenhuis_zero": check_nijenhuis_zero,
    "nijenhuis_zero_lifted": check_nijenhuis_zero_lifted,
    "np_relation": check_np_relation,
    "affine_invariance": check_affine_invariance,
    "projector_criterion": check_projector_criterion,
    "distributions_integrable": check_distributions_integrable,
    "horizontal_metallic": check_horizontal_metallic,
    "horizontal_square": check_horizontal_square,
    "jtilde": check_jtilde,
    "jtilde_printed": check_jtilde_printed,
    "section_lifts": check_section_lifts,
    "section_invariant": check_section_invariant,
    "section_not_invariant": check_section_not_invariant,
    "induced_metallic": check_induced_metallic,
    "section_nijenhuis": check_section_nijenhuis,
    "component": check_component,
    "errata_projector_signs": check_errata_projector_signs,
    "errata_complex_constant": check_errata_complex_constant,
    "errata_frame_swap_lift": check_errata_frame_swap_lift,
}


def run_check(ctx: Context, kind: str, args: tuple[str, ...],
              raw: str) -> CheckOutcome:
    if kind not in CHECKS:
        out = CheckOutcome(kind, raw)
        out.error = f"unknown check type {kind!r}"
        return out.settle()
    try:
        out = CHECKS[kind](ctx, args)
    except (CheckError, StructureError, ValueError) as exc:
        out = CheckOutcome(kind, raw)
        out.error = str(exc)
    return out.settle()
