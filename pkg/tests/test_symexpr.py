import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from metallifts.numfield import IncompatibleRadicands, QuadScalar, make_params
from metallifts.symexpr import (Chart, DivisionByZeroExpr, ExprError,
                                ParseError, RatFunc, ResampleNeeded,
                                parse_expr)

CH = Chart(("x", "y"))
X = RatFunc.variable(CH, "x")
Y = RatFunc.variable(CH, "y")


def polys(chart=CH, span=4):
    """Random small polynomials, built from variables and int constants."""
    coeffs = st.integers(min_value=-span, max_value=span)

    def build(c0, c1, c2, c3):
        x = RatFunc.variable(chart, chart.variables[0])
        y = RatFunc.variable(chart, chart.variables[1])
        return (RatFunc.constant(chart, c0) + x * c1 + y * c2 + x * y * c3)

    return st.builds(build, coeffs, coeffs, coeffs, coeffs)


def ratfuncs():
    def build(p, q):
        if q.is_zero:
            q = q + 1
        return p / q
    return st.builds(build, polys(), polys())


# -- chart ------------------------------------------------------------------

def test_chart_basics():
    assert CH.dimension == 2
    assert CH.index("y") == 1
    with pytest.raises(ExprError):
        CH.index("z")
    with pytest.raises(ValueError):
        Chart(("x", "x"))
    with pytest.raises(ValueError):
        Chart(())
    with pytest.raises(AttributeError):
        CH.variables = ("a",)


# -- field axioms -----------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ring_axioms(a, b, c):
    assert ((a + b) + c - (a + (b + c))).is_zero
    assert ((a * b) * c - (a * (b * c))).is_zero
    assert (a * (b + c) - (a * b + a * c)).is_zero
    assert (a - a).is_zero
    assert (a * b - b * a).is_zero


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_division_inverts_multiplication(a, b):
    if b.is_zero:
        with pytest.raises(DivisionByZeroExpr):
            a / b
    else:
        assert ((a / b) * b - a).is_zero
        assert a / b == a * b.reciprocal()


@settings(max_examples=30, deadline=None)
@given(ratfuncs())
def test_equality_and_reduction(a):
    r = a.reduced()
    assert r == a
    assert r.reduced() == r
    # Scaling numerator and denominator by the same polynomial must not
    # change the value.
    m = X * Y + 1
    assert (a * m) / m == a


@settings(max_examples=30, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_diff_product_rule(a, b):
    for v in CH.variables:
        lhs = (a * b).diff(v)
        rhs = a.diff(v) * b + a * b.diff(v)
        assert (lhs - rhs).is_zero


@settings(max_examples=30, deadline=None)
@given(ratfuncs())
def test_diff_quotient_rule(a):
    den = X * X + Y * Y + 1
    f = a / den
    for v in CH.variables:
        assert (f.diff(v) - (a.diff(v) * den - a * den.diff(v)) / den ** 2).is_zero


def test_diff_basics():
    assert X.diff("x") == RatFunc.constant(CH, 1)
    assert X.diff("y").is_zero
    assert (X ** 3).diff("x") == 3 * X ** 2
    with pytest.raises(ExprError):
        X.diff("z")


# -- substitution -----------------------------------------------------------

def test_substitute_simultaneous():
    f = X * X - Y
    swapped = f.substitute({"x": Y, "y": X})
    assert swapped == Y * Y - X


def test_substitute_chain_rule():
    f = (X + 1) / (Y * Y + 1)
    g = X * Y
    h = f.substitute({"x": g})
    manual = (g + 1) / (Y * Y + 1)
    assert h == manual


def test_substitute_onto_new_chart():
    big = Chart(("x", "y", "z"))
    f = X + Y
    g = f.on_chart(big)
    assert g.chart == big
    assert g == parse_expr("x + y", big)
    with pytest.raises(ExprError):
        (X + Y).on_chart(Chart(("x", "w")))


def test_substitute_vanishing_denominator():
    f = 1 / X
    with pytest.raises(DivisionByZeroExpr):
        f.substitute({"x": RatFunc.constant(CH, 0)})


# -- constants --------------------------------------------------------------

def test_constant_recognition():
    c = (X + 1) - X
    assert c.is_constant()
    assert c.constant_value() == QuadScalar.rational(1)
    assert not X.is_constant()
    with pytest.raises(ExprError):
        X.constant_value()


def test_quadratic_coefficients():
    params = make_params(1, 1)
    f = parse_expr("sigma", CH, params)
    assert f.constant_value() == params.sigma
    # sigma^2 - sigma - 1 == 0 in the golden field.
    assert (f * f - f - 1).is_zero


# -- parsing and printing ---------------------------------------------------

@pytest.mark.parametrize("text", [
    "x + y", "x*y - 3", "(x + 1)^2 / (y^2 + 1)", "-x^3 + 2*x*y",
    "1/2 * x" .replace("1/2", "(1/2)"),  # fractions spelled as quotients
])
def test_parse_print_roundtrip(text):
    f = parse_expr(text, CH)
    assert parse_expr(f.to_text(), CH) == f


@settings(max_examples=30, deadline=None)
@given(ratfuncs())
def test_print_roundtrip_random(f):
    assert parse_expr(f.to_text(), CH) == f


def test_parse_with_params():
    params = make_params(2, 1)
    f = parse_expr("alpha*x + beta*y + sqrtD", CH, params)
    assert f == 2 * X + Y + RatFunc.constant(CH, params.sqrtD)
    g = parse_expr(f.to_text(params), CH, params)
    assert g == f


@pytest.mark.parametrize("text,pos", [
    ("x +", 3),
    ("x ^ y", 4),
    ("(x + y", 6),
    ("x ? y", 2),
    ("x ^ -2", 5),
    ("w + 1", 0),
])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_expr(text, CH)
    assert err.value.position == pos


def test_parse_unknown_param_without_params():
    with pytest.raises(ParseError):
        parse_expr("alpha", CH)


# -- numerics ---------------------------------------------------------------

def test_eval_numeric():
    f = (X * X + Y) / (X + 1)
    val = f.eval_numeric({"x": 2.0, "y": 3.0})
    assert abs(val - (4 + 3) / 3) < 1e-12


def test_eval_numeric_resample():
    f = 1 / X
    with pytest.raises(ResampleNeeded):
        f.eval_numeric({"x": 1e-12, "y": 0.0})


def test_eval_numeric_radical():
    params = make_params(1, 1)
    f = parse_expr("sigma", CH, params)
    val = f.eval_numeric({"x": 0.0, "y": 0.0})
    assert abs(val - (1 + 5 ** 0.5) / 2) < 1e-12


@settings(max_examples=25, deadline=None)
@given(ratfuncs(), st.integers(0, 6))
def test_numeric_matches_symbolic(f, seed):
    rng = random.Random(seed)
    g = f * f - f
    for _ in range(3):
        point = {n: rng.uniform(-2, 2) for n in CH.variables}
        try:
            lhs = g.eval_numeric(point)
            rhs = f.eval_numeric(point) ** 2 - f.eval_numeric(point)
        except ResampleNeeded:
            continue
        assert abs(lhs - rhs) < 1e-6 * max(1.0, abs(lhs), abs(rhs))


# -- mixed radicands --------------------------------------------------------

def test_incompatible_radicands_rejected():
    f = RatFunc.constant(CH, QuadScalar.root(2))
    g = RatFunc.constant(CH, QuadScalar.root(3))
    with pytest.raises(IncompatibleRadicands):
        f + g


def test_chart_mismatch_rejected():
    other = Chart(("u", "v"))
    with pytest.raises(ExprError):
        X + RatFunc.variable(other, "u")
