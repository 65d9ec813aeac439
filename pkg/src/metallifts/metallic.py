"""Metallic structures on the base manifold and their projector calculus.

A metallic structure is a (1,1)-tensor field with Psi^2 = alpha*Psi + beta*I.
It corresponds to an almost product structure P via
Psi = (alpha*I + sqrtD*P)/2 and back via P = (2*Psi - alpha*I)/sqrtD.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Tensor11Field, compose_t11
from .numfield import MetallicParams, QuadScalar
from .symexpr import RatFunc


class StructureError(ValueError):
    pass


def _first_nonzero(T: Tensor11Field):
    for h, row in enumerate(T.components):
        for i, c in enumerate(row):
            if not c.is_zero:
                return h, i, c
    return None


def check_square_is(T: Tensor11Field, scalar, what: str) -> None:
    """Require T o T == scalar * I; raise naming the violating component."""
    chart = T.chart
    residual = compose_t11(T, T) - Tensor11Field.identity(chart).scale(scalar)
    bad = _first_nonzero(residual)
    if bad is not None:
        h, i, c = bad
        raise StructureError(
            f"{what}: component [{h + 1}][{i + 1}] of the defining relation "
            f"is nonzero: {c!r}")


@dataclass(frozen=True)
class MetallicStructure:
    params: MetallicParams
    tensor: Tensor11Field

    def __post_init__(self):
        res = metallic_residual(self.tensor, self.params)
        bad = _first_nonzero(res)
        if bad is not None:
            h, i, c = bad
            raise StructureError(
                f"Psi^2 - alpha*Psi - beta*I has nonzero component "
                f"[{h + 1}][{i + 1}]: {c!r}")

    @property
    def chart(self):
        return self.tensor.chart


def metallic_residual(T: Tensor11Field, params: MetallicParams) -> Tensor11Field:
    identity = Tensor11Field.identity(T.chart)
    return (compose_t11(T, T) - T.scale(params.alpha)
            - identity.scale(params.beta))


@dataclass(frozen=True)
class ProjectorPair:
    r: Tensor11Field
    s: Tensor11Field


def metallic_from_product(P: Tensor11Field, params: MetallicParams) -> MetallicStructure:
    check_square_is(P, 1, "not an almost product structure")
    identity = Tensor11Field.identity(P.chart)
    half = Fraction(1, 2)
    psi = identity.scale(half * params.alpha) + P.scale(params.sqrtD * QuadScalar.rational(half))
    return MetallicStructure(params, psi)


def product_from_metallic(M: MetallicStructure) -> Tensor11Field:
    identity = Tensor11Field.identity(M.chart)
    P = (M.tensor.scale(2) - identity.scale(M.params.alpha)).scale(M.params.sqrtD.inverse())
    check_square_is(P, 1, "recovered tensor is not almost product")
    return P


def projectors_from_metallic(M: MetallicStructure) -> ProjectorPair:
    params = M.params
    identity = Tensor11Field.identity(M.chart)
    inv = params.sqrtD.inverse()
    r = M.tensor.scale(inv) - identity.scale(params.conjugate_root() * inv)
    s = M.tensor.scale(-inv) + identity.scale(params.sigma * inv)
    return ProjectorPair(r, s)


@dataclass(frozen=True)
class PolynomialReport:
    """The monic quadratic (or linear) annihilator of a derived structure.

    ``computed`` holds the coefficients of p(X) = X^2 + c1*X + c0 (or
    (c1, c0) of X + c0 for the degenerate scalar case, flagged by
    ``degree``); ``claimed`` is the kind's published polynomial, and
    ``agrees`` whether the two coincide.
    """

    kind: str
    degree: int
    computed_c1: QuadScalar
    computed_c0: QuadScalar
    claimed_c1: QuadScalar
    claimed_c0: QuadScalar

    @property
    def agrees(self) -> bool:
        return (self.degree == 2 and self.computed_c1 == self.claimed_c1
                and self.computed_c0 == self.claimed_c0)


_KIND_SQUARE = {"product": 1, "tangent": 0, "complex": -1}


def _claimed_polynomial(kind: str, params: MetallicParams) -> tuple[QuadScalar, QuadScalar]:
    alpha, beta = params.alpha, params.beta
    minus_alpha = QuadScalar.rational(-alpha)
    if kind == "product":
        return minus_alpha, QuadScalar.rational(-beta)
    if kind == "tangent":
        return minus_alpha, QuadScalar.rational(Fraction(alpha * alpha, 4))
    if kind == "complex":
        return minus_alpha, QuadScalar.rational(Fraction(alpha * alpha, 4) + beta)
    raise ValueError(f"unknown kind {kind!r}")


def minimal_polynomial_check(T: Tensor11Field, kind: str,
                             params: MetallicParams) -> PolynomialReport:
    """Build Psi_k = (alpha*I + sqrtD*T)/2 and compute its exact monic
    annihilator, comparing with the published polynomial for the kind."""
    if kind not in _KIND_SQUARE:
        raise ValueError(f"unknown kind {kind!r}")
    check_square_is(T, _KIND_SQUARE[kind], f"tensor is not almost {kind}")

    chart = T.chart
    identity = Tensor11Field.identity(chart)
    half = QuadScalar.rational(Fraction(1, 2))
    psi = identity.scale(half * params.alpha) + T.scale(half * params.sqrtD)
    psi2 = compose_t11(psi, psi)
    claimed_c1, claimed_c0 = _claimed_polynomial(kind, params)

    # Solve psi2 + c1*psi + c0*I = 0 for constants c1, c0: pick two
    # independent entry equations, then verify the whole matrix.
    n = chart.dimension
    rows = []
    for h in range(n):
        for i in range(n):
            delta = RatFunc.constant(chart, 1 if h == i else 0)
            rows.append((psi.components[h][i], delta, -psi2.components[h][i]))
    solution = _solve_two_unknowns(rows, chart)
    if solution is None:
        # No two independent equations: psi must be a constant scalar
        # multiple of the identity, with linear minimal polynomial X - lambda.
        scalar = psi.components[0][0]
        if not scalar.is_constant() or not (psi - identity.scale(scalar)).is_zero:
            raise StructureError("derived structure has no quadratic annihilator "
                                 "with constant coefficients")
        lam = scalar.constant_value()
        return PolynomialReport(kind, 1, QuadScalar.rational(0), -lam,
                                claimed_c1, claimed_c0)
    c1, c0 = solution
    residual = psi2 + psi.scale(c1) + identity.scale(c0)
    if not residual.is_zero:
        raise StructureError("derived structure has no quadratic annihilator "
                             "with constant coefficients")
    return PolynomialReport(kind, 2, c1.constant_value(), c0.constant_value(),
                            claimed_c1, claimed_c0)


def _solve_two_unknowns(rows, chart):
    """Solve rows of a*c1 + b*c0 = rhs over the rational-function field;
    returns (c1, c0) as constant RatFuncs, or None if rank < 2."""
    for ia in range(len(rows)):
        a1, b1, r1 = rows[ia]
        for ib in range(ia + 1, len(rows)):
            a2, b2, r2 = rows[ib]
            det = a1 * b2 - a2 * b1
            if not det.is_zero:
                c1 = (r1 * b2 - r2 * b1) / det
                c0 = (a1 * r2 - a2 * r1) / det
                if c1.is_constant() and c0.is_constant():
                    return c1, c0
    return None


def composite_relation_check(P: Tensor11Field, F: Tensor11Field,
                             params: MetallicParams) -> bool:
    """sqrtD*Psi_J == 2*Psi_P*Psi_F - alpha*Psi_P - alpha*Psi_F + alpha*sigma*I
    with J = P o F; purely algebraic, no involutivity needed."""
    if P.chart != F.chart:
        raise ValueError("P and F must live on the same chart")
    chart = P.chart
    identity = Tensor11Field.identity(chart)
    half = QuadScalar.rational(Fraction(1, 2))

    def recipe(T):
        return identity.scale(half * params.alpha) + T.scale(half * params.sqrtD)

    psi_p, psi_f, psi_j = recipe(P), recipe(F), recipe(compose_t11(P, F))
    lhs = psi_j.scale(params.sqrtD)
    rhs = (compose_t11(psi_p, psi_f).scale(2) - psi_p.scale(params.alpha)
           - psi_f.scale(params.alpha)
           + identity.scale(QuadScalar.rational(params.alpha) * params.sigma))
    return (lhs - rhs).is_zero
