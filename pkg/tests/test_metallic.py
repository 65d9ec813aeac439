import random
from fractions import Fraction

import pytest

from metallifts.geometry import Tensor11Field, apply_t11, compose_t11
from metallifts.metallic import (MetallicStructure, StructureError,
                                 composite_relation_check, metallic_from_product,
                                 metallic_residual, minimal_polynomial_check,
                                 product_from_metallic, projectors_from_metallic)
from metallifts.numfield import QuadScalar, make_params
from metallifts.symexpr import Chart, RatFunc

from conftest import all_params, involutive_product, rand_t11

CH = Chart(("x", "y"))
PARAMS = all_params()


def test_structure_validation_rejects_non_metallic():
    params = make_params(1, 1)
    with pytest.raises(StructureError):
        MetallicStructure(params, Tensor11Field.identity(CH))


def test_metallic_from_product_rejects_non_involutive(rng):
    T = rand_t11(rng, CH)  # generically T^2 != I
    with pytest.raises(StructureError):
        metallic_from_product(T, make_params(1, 1))


@pytest.mark.parametrize("params", PARAMS, ids=lambda p: f"a{p.alpha}b{p.beta}")
def test_product_metallic_correspondence(params, rng):
    for _ in range(4):
        P = involutive_product(rng, CH)
        M = metallic_from_product(P, params)
        # Defining relation holds exactly.
        assert metallic_residual(M.tensor, params).is_zero
        # The correspondence is a bijection: recover P exactly.
        assert (product_from_metallic(M) - P).is_zero
        # And Psi = sigma*r + (alpha-sigma)*s with the projectors.
        pair = projectors_from_metallic(M)
        recon = pair.r.scale(params.sigma) + pair.s.scale(params.conjugate_root())
        assert (M.tensor - recon).is_zero


@pytest.mark.parametrize("params", PARAMS, ids=lambda p: f"a{p.alpha}b{p.beta}")
def test_projector_algebra(params, rng):
    I = Tensor11Field.identity(CH)
    for _ in range(3):
        M = metallic_from_product(involutive_product(rng, CH), params)
        pair = projectors_from_metallic(M)
        r, s = pair.r, pair.s
        assert (r + s - I).is_zero
        assert (compose_t11(r, r) - r).is_zero
        assert (compose_t11(s, s) - s).is_zero
        assert compose_t11(r, s).is_zero
        assert compose_t11(s, r).is_zero
        # Eigen-relations: Psi r = sigma r, Psi s = (alpha - sigma) s.
        assert (compose_t11(M.tensor, r) - r.scale(params.sigma)).is_zero
        assert (compose_t11(M.tensor, s) - s.scale(params.conjugate_root())).is_zero


@pytest.mark.parametrize("params", PARAMS, ids=lambda p: f"a{p.alpha}b{p.beta}")
def test_projector_expansions(params, rng):
    """sigma*r and (alpha-sigma)*s expand in Psi and I with the derived
    coefficients; the identity-term sign differs from a widely printed
    variant, which the errata scenario documents."""
    I = Tensor11Field.identity(CH)
    inv = params.sqrtD.inverse()
    for _ in range(3):
        M = metallic_from_product(involutive_product(rng, CH), params)
        pair = projectors_from_metallic(M)
        lhs_r = pair.r.scale(params.sigma)
        rhs_r = (M.tensor.scale(params.sigma * inv)
                 + I.scale(QuadScalar.rational(params.beta) * inv))
        assert (lhs_r - rhs_r).is_zero
        lhs_s = pair.s.scale(params.conjugate_root())
        rhs_s = (M.tensor.scale((params.sigma - params.alpha) * inv)
                 - I.scale(QuadScalar.rational(params.beta) * inv))
        assert (lhs_s - rhs_s).is_zero
        # The variant with a flipped identity-term sign fails unless beta = 0,
        # which the parameter range excludes.
        wrong_r = (M.tensor.scale(params.sigma * inv)
                   - I.scale(QuadScalar.rational(params.beta) * inv))
        assert not (lhs_r - wrong_r).is_zero


# -- minimal polynomials of derived structures ------------------------------

def _swap_product():
    return Tensor11Field.make(CH, [[0, 1], [1, 0]])


def _nilpotent_tangent():
    return Tensor11Field.make(CH, [[0, 1], [0, 0]])


def _complex_structure():
    return Tensor11Field.make(CH, [[0, -1], [1, 0]])


@pytest.mark.parametrize("params", PARAMS, ids=lambda p: f"a{p.alpha}b{p.beta}")
def test_product_polynomial(params):
    rep = minimal_polynomial_check(_swap_product(), "product", params)
    assert rep.agrees
    assert rep.computed_c1 == QuadScalar.rational(-params.alpha)
    assert rep.computed_c0 == QuadScalar.rational(-params.beta)


@pytest.mark.parametrize("params", PARAMS, ids=lambda p: f"a{p.alpha}b{p.beta}")
def test_tangent_polynomial(params):
    rep = minimal_polynomial_check(_nilpotent_tangent(), "tangent", params)
    assert rep.agrees
    assert rep.computed_c0 == QuadScalar.rational(Fraction(params.alpha ** 2, 4))


@pytest.mark.parametrize("params", PARAMS, ids=lambda p: f"a{p.alpha}b{p.beta}")
def test_complex_polynomial_disagrees_with_printed_constant(params):
    """For T^2 = eps*I the derived structure satisfies
    X^2 - alpha*X + (alpha^2 - eps*D)/4; with eps = -1 the constant term is
    alpha^2/2 + beta, not the printed alpha^2/4 + beta."""
    rep = minimal_polynomial_check(_complex_structure(), "complex", params)
    assert not rep.agrees
    expected = QuadScalar.rational(Fraction(params.alpha ** 2 + params.discriminant, 4))
    assert rep.computed_c0 == expected
    assert expected == QuadScalar.rational(
        Fraction(params.alpha ** 2, 2) + params.beta)
    assert rep.claimed_c0 == QuadScalar.rational(
        Fraction(params.alpha ** 2, 4) + params.beta)
    assert rep.computed_c1 == rep.claimed_c1


def test_degenerate_scalar_structure_reported_linear():
    params = make_params(2, 1)
    rep = minimal_polynomial_check(Tensor11Field.zero(CH), "tangent", params)
    assert rep.degree == 1
    assert not rep.agrees
    # Psi collapses to (alpha/2) I, annihilated by X - alpha/2.
    assert rep.computed_c0 == QuadScalar.rational(-Fraction(params.alpha, 2))


def test_minimal_polynomial_rejects_wrong_kind():
    params = make_params(1, 1)
    with pytest.raises(ValueError):
        minimal_polynomial_check(_swap_product(), "mystery", params)
    with pytest.raises(StructureError):
        minimal_polynomial_check(_swap_product(), "complex", params)


# -- composite structures ---------------------------------------------------

@pytest.mark.parametrize("params", PARAMS[:3], ids=lambda p: f"a{p.alpha}b{p.beta}")
def test_composite_relation_random_pairs(params, rng):
    """The bridge between Psi_{P o F} and Psi_P, Psi_F is a polynomial
    identity in the entries; it needs no involutivity at all."""
    for _ in range(10):
        P, F = rand_t11(rng, CH), rand_t11(rng, CH)
        assert composite_relation_check(P, F, params)


def test_composite_relation_chart_mismatch(rng):
    other = Chart(("u", "v"))
    with pytest.raises(ValueError):
        composite_relation_check(rand_t11(rng, CH), rand_t11(rng, other),
                                 make_params(1, 1))
