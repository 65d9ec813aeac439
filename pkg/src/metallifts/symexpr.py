"""Multivariate rational functions over Q(sqrt(d)) in named chart coordinates.

A ``RatFunc`` is a numerator polynomial (a sparse ring element over the
exact domain ``QQ<sqrt(d)>``, plain ``QQ`` when d == 0) together with a
factored denominator: a tuple of monic base polynomials with positive
integer exponents.  Every operation cancels numerator against
denominator bases by exact division, so the reduced pair is restored
without expensive polynomial gcds; the zero function is represented
uniquely by a zero numerator, which makes ``is_zero`` the decidable
verdict primitive behind every identity check.  Equality is decided by
exact cross-multiplication, independent of how the denominators happen
to be factored.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import QQ
from sympy.polys.rings import ring as _sparse_ring

from .numfield import IncompatibleRadicands, MetallicParams, QuadScalar


class ExprError(ValueError):
    pass


class DivisionByZeroExpr(ExprError):
    pass


class ResampleNeeded(RuntimeError):
    """Numeric evaluation hit a near-zero denominator; pick another point."""


@lru_cache(maxsize=None)
def coeff_field(d: int) -> "CoeffField":
    return CoeffField(d)


class CoeffField:
    """The sympy coefficient domain for a fixed squarefree radicand."""

    def __init__(self, d: int):
        self.d = d
        if d in (0, 1):
            self.d = 0
            self.dom = QQ
            self.radical = None
        else:
            self.radical = sympy.sqrt(d)
            self.dom = QQ.algebraic_field(self.radical)

    def from_quad(self, q: QuadScalar):
        if q.d not in (0, self.d):
            raise IncompatibleRadicands(f"sqrt({q.d}) in field sqrt({self.d})")
        expr = sympy.Rational(q.a)
        if q.b:
            expr += sympy.Rational(q.b) * self.radical
        return self.dom.from_sympy(expr)

    def to_quad(self, c) -> QuadScalar:
        if self.d == 0:
            return QuadScalar(Fraction(int(c.numerator), int(c.denominator)))
        lst = c.to_list()  # descending powers of sqrt(d): [b, a] (or [a])
        lst = [Fraction(int(v.numerator), int(v.denominator)) for v in lst]
        while len(lst) < 2:
            lst.insert(0, Fraction(0))
        b, a = lst
        return QuadScalar(a, b, self.d)

    def __repr__(self):
        return f"CoeffField(sqrt({self.d}))" if self.d else "CoeffField(QQ)"


class Chart:
    """An ordered tuple of coordinate names; the only atlas we support."""

    __slots__ = ("variables",)

    def __init__(self, variables):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("chart variable names must be distinct")
        if not variables:
            raise ValueError("chart needs at least one variable")
        object.__setattr__(self, "variables", variables)

    def __setattr__(self, *args):
        raise AttributeError("Chart is immutable")

    def __eq__(self, other):
        return isinstance(other, Chart) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"Chart{self.variables}"

    @property
    def dimension(self) -> int:
        return len(self.variables)

    @property
    def symbols(self):
        return _chart_symbols(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ExprError(f"unknown chart variable {name!r}") from None


@lru_cache(maxsize=None)
def _chart_symbols(names: tuple[str, ...]):
    return tuple(sympy.Symbol(n) for n in names)


@lru_cache(maxsize=None)
def _poly_ring(names: tuple[str, ...], d: int):
    field = coeff_field(d)
    R = _sparse_ring(",".join(names), field.dom)[0]
    return R


def _divide_out(num, base, max_exp: int):
    """Divide num by base as often as it divides exactly, at most max_exp
    times."""
    k = 0
    base_lm = base.LM
    while k < max_exp:
        # Necessary condition, checked cheaply before the full division:
        # the leading monomial of a factor divides the leading monomial.
        lm = num.LM
        if any(e > f for e, f in zip(base_lm, lm)):
            break
        q, r = num.div(base)
        if r:
            break
        num, k = q, k + 1
    return num, k


def _fkey(base):
    return sum(base.degrees()), str(base)


class RatFunc:
    """Multivariate rational function on a chart, denominator kept factored."""

    __slots__ = ("chart", "field", "num", "factors", "_den", "_diffs")

    def __init__(self, chart: Chart, field: CoeffField, num, den):
        self.chart = chart
        self.field = field
        if not den:
            raise DivisionByZeroExpr("zero denominator")
        if not num:
            self.num, self.factors = num, ()
        elif den.is_ground:
            lc = den.LC
            self.num = num if lc == den.ring.domain.one else num.quo_ground(lc)
            self.factors = ()
        else:
            g = num.gcd(den)
            if not g.is_ground:
                num, den = num.quo(g), den.quo(g)
            lc = den.LC
            if lc != den.ring.domain.one:
                num, den = num.quo_ground(lc), den.monic()
            self.num = num
            self.factors = () if den == den.ring.one else ((den, 1),)
        self._den = None
        self._diffs = None

    @classmethod
    def _trusted(cls, chart, field, num, factors) -> RatFunc:
        obj = object.__new__(cls)
        obj.chart, obj.field, obj.num = chart, field, num
        obj.factors = factors if num else ()
        obj._den = None
        obj._diffs = None
        return obj

    # -- denominator handling -----------------------------------------

    @property
    def den(self):
        """The expanded denominator polynomial (always monic)."""
        if self._den is None:
            den = self.num.ring.one
            for base, e in self.factors:
                den = den * base ** e
            self._den = den
        return self._den

    @staticmethod
    def _reduce(num, factors: dict):
        if not num:
            return num, ()
        for base in list(factors):
            e = factors[base]
            if e <= 0:
                del factors[base]
                continue
            if not num.is_ground:
                num, k = _divide_out(num, base, e)
                if k == e:
                    del factors[base]
                elif k:
                    factors[base] = e - k
        return num, tuple(sorted(factors.items(), key=lambda kv: _fkey(kv[0])))

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, chart: Chart, value, field: CoeffField | None = None) -> RatFunc:
        if isinstance(value, (int, Fraction)):
            value = QuadScalar(Fraction(value))
        if field is None:
            field = coeff_field(value.d)
        return _cached_constant(chart, field.d, value)

    @classmethod
    def variable(cls, chart: Chart, name: str, field: CoeffField | None = None) -> RatFunc:
        chart.index(name)
        field = field or coeff_field(0)
        return _cached_variable(chart, field.d, name)

    def zero(self) -> RatFunc:
        return RatFunc.constant(self.chart, 0, self.field)

    def one(self) -> RatFunc:
        return RatFunc.constant(self.chart, 1, self.field)

    # -- compatibility ------------------------------------------------

    def _align(self, other: "RatFunc") -> tuple["RatFunc", "RatFunc"]:
        if self.chart != other.chart:
            raise ExprError(f"chart mismatch: {self.chart} vs {other.chart}")
        if self.field is other.field:
            return self, other
        if self.field.d == 0:
            return self._promote(other.field), other
        if other.field.d == 0:
            return self, other._promote(self.field)
        raise IncompatibleRadicands(f"sqrt({self.field.d}) vs sqrt({other.field.d})")

    def _promote(self, field: CoeffField) -> RatFunc:
        R = _poly_ring(self.chart.variables, field.d)

        def conv(p):
            return R.from_dict({m: field.dom.convert(c, QQ) for m, c in p.terms()})

        factors = tuple((conv(b), e) for b, e in self.factors)
        return RatFunc._trusted(self.chart, field, conv(self.num), factors)

    @staticmethod
    def _coerce(chart, field, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, QuadScalar)):
            return RatFunc.constant(chart, x)
        return None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(self.chart, self.field, other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        if not a.num:
            return b
        if not b.num:
            return a
        if a.factors == b.factors:
            num = a.num + b.num
            if not num:
                return a.zero()
            num, factors = self._reduce(num, dict(a.factors))
            return RatFunc._trusted(a.chart, a.field, num, factors)
        fa, fb = dict(a.factors), dict(b.factors)
        merged = dict(fa)
        for base, e in fb.items():
            merged[base] = max(merged.get(base, 0), e)
        cof_a = a.num.ring.one
        cof_b = cof_a
        for base, e in merged.items():
            da = e - fa.get(base, 0)
            db = e - fb.get(base, 0)
            if da:
                cof_a = cof_a * base ** da
            if db:
                cof_b = cof_b * base ** db
        num = a.num * cof_a + b.num * cof_b
        if not num:
            return a.zero()
        num, factors = self._reduce(num, merged)
        return RatFunc._trusted(a.chart, a.field, num, factors)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._trusted(self.chart, self.field, -self.num, self.factors)

    def __sub__(self, other):
        other = self._coerce(self.chart, self.field, other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(self.chart, self.field, other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        if not a.num or not b.num:
            return a.zero()
        merged = dict(a.factors)
        for base, e in b.factors:
            merged[base] = merged.get(base, 0) + e
        num, factors = self._reduce(a.num * b.num, merged)
        return RatFunc._trusted(a.chart, a.field, num, factors)

    __rmul__ = __mul__

    def reciprocal(self) -> RatFunc:
        if not self.num:
            raise DivisionByZeroExpr("division by the zero expression")
        num = self.den
        if self.num.is_ground:
            return RatFunc._trusted(self.chart, self.field,
                                    num.quo_ground(self.num.LC), ())
        lc = self.num.LC
        if lc == self.num.ring.domain.one:
            base = self.num
        else:
            base = self.num.monic()
            num = num.quo_ground(lc)
        return RatFunc._trusted(self.chart, self.field, num, ((base, 1),))

    def __truediv__(self, other):
        other = self._coerce(self.chart, self.field, other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        return a * b.reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(self.chart, self.field, other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        if n == 0:
            return self.one()
        factors = tuple((b, e * n) for b, e in self.factors)
        return RatFunc._trusted(self.chart, self.field, self.num ** n, factors)

    # -- predicates & equality ----------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.is_ground and not self.factors

    def constant_value(self) -> QuadScalar:
        if not self.is_constant():
            raise ExprError("not a constant expression")
        if not self.num:
            return QuadScalar(Fraction(0))
        return self.field.to_quad(self.num.LC)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = self._coerce(self.chart, self.field, other)
            if other is None:
                return NotImplemented
        a, b = self._align(other)
        if a.factors == b.factors:
            return a.num == b.num
        return a.num * b.den == b.num * a.den

    __hash__ = None  # equal values may carry different factorizations

    def reduced(self) -> RatFunc:
        """Fully gcd-reduced canonical form (numerator and denominator
        coprime, denominator monic, expanded)."""
        return RatFunc(self.chart, self.field, self.num, self.den)

    # -- calculus -----------------------------------------------------

    def diff(self, var: str) -> RatFunc:
        if self._diffs is None:
            self._diffs = {}
        cached = self._diffs.get(var)
        if cached is not None:
            return cached
        gen = self.num.ring.gens[self.chart.index(var)]
        if not self.factors:
            out = RatFunc._trusted(self.chart, self.field, self.num.diff(gen), ())
        else:
            den = self.den
            t = self.num.diff(gen) * den - self.num * den.diff(gen)
            if not t:
                out = self.zero()
            else:
                merged = {base: 2 * e for base, e in self.factors}
                num, factors = self._reduce(t, merged)
                out = RatFunc._trusted(self.chart, self.field, num, factors)
        self._diffs[var] = out
        return out

    def substitute(self, bindings: dict[str, "RatFunc"], target: Chart | None = None) -> RatFunc:
        """Simultaneous substitution; unbound variables pass through to the
        target chart."""
        if not bindings:
            return self if target in (None, self.chart) else self.on_chart(target)
        charts = {b.chart for b in bindings.values()}
        if len(charts) != 1:
            raise ExprError("all bindings must live on one chart")
        target = target or charts.pop()
        for name in bindings:
            self.chart.index(name)

        def image(name: str) -> RatFunc:
            if name in bindings:
                return bindings[name]
            return RatFunc.variable(target, name)

        imgs = [image(n) for n in self.chart.variables]
        num = _poly_at(self.num, imgs, target, self.field)
        den = _poly_at(self.den, imgs, target, self.field)
        if den.is_zero:
            raise DivisionByZeroExpr("denominator vanishes identically after substitution")
        return num / den

    def on_chart(self, target: Chart) -> RatFunc:
        """Reinterpret on a chart containing all of this chart's variables."""
        for name in self.chart.variables:
            target.index(name)
        v0 = self.chart.variables[0]
        return self.substitute({v0: RatFunc.variable(target, v0)}, target)

    # -- numeric ------------------------------------------------------

    def eval_numeric(self, point: dict[str, float], radical_value: float | None = None,
                     den_threshold: float = 1e-8) -> float:
        vals = [point[name] for name in self.chart.variables]
        nv = _poly_float(self.num, vals, self.field, radical_value)
        dv = 1.0
        for base, e in self.factors:
            dv *= _poly_float(base, vals, self.field, radical_value) ** e
        if abs(dv) < den_threshold:
            raise ResampleNeeded(f"denominator ~ {dv}")
        return nv / dv

    # -- rendering ----------------------------------------------------

    def to_text(self, params: MetallicParams | None = None) -> str:
        num = _poly_text(self.num, self.field, params)
        if not self.factors:
            return num
        den = _poly_text(self.den, self.field, params)
        return f"({num})/({den})"

    def __repr__(self):
        try:
            return f"RatFunc({self.to_text()})"
        except ExprError:
            return f"RatFunc({self.num}/{self.den})"


@lru_cache(maxsize=None)
def _cached_constant(chart: Chart, d: int, value: QuadScalar) -> RatFunc:
    field = coeff_field(d)
    R = _poly_ring(chart.variables, d)
    num = R.from_dict({(0,) * chart.dimension: field.from_quad(value)})
    return RatFunc._trusted(chart, field, num, ())


@lru_cache(maxsize=None)
def _cached_variable(chart: Chart, d: int, name: str) -> RatFunc:
    field = coeff_field(d)
    R = _poly_ring(chart.variables, d)
    return RatFunc._trusted(chart, field, R.gens[chart.index(name)], ())


def _poly_terms(p, field: CoeffField):
    for mono, c in p.terms():
        yield mono, field.to_quad(c)


def _poly_at(p, images: list[RatFunc], target: Chart, field: CoeffField) -> RatFunc:
    out = RatFunc.constant(target, 0, field)
    for mono, coeff in _poly_terms(p, field):
        term = RatFunc.constant(target, coeff, field)
        for img, e in zip(images, mono):
            if e:
                term = term * img ** e
        out = out + term
    return out


def _poly_float(p, vals: list[float], field: CoeffField,
                radical_value: float | None) -> float:
    total = 0.0
    for mono, coeff in _poly_terms(p, field):
        t = coeff.to_float(radical_value)
        for v, e in zip(vals, mono):
            if e:
                t *= v ** e
        total += t
    return total


def _quad_text(c: QuadScalar, params: MetallicParams | None) -> str:
    """Render a coefficient inside the expression grammar."""
    if c.is_rational:
        return str(c.a)
    if params is None or params.radicand != c.d:
        raise ExprError(f"cannot render sqrt({c.d}) without matching params")
    scale = c.b / params.sqrtD.b  # b*sqrt(d) == scale * sqrtD
    rad = "sqrtD" if scale == 1 else ("-sqrtD" if scale == -1 else f"{scale}*sqrtD")
    if c.a == 0:
        return rad
    sign = "-" if rad.startswith("-") else "+"
    return f"({c.a} {sign} {rad.lstrip('-')})"


def _poly_text(p, field: CoeffField, params: MetallicParams | None) -> str:
    terms = sorted(((mono, c) for mono, c in _poly_terms(p, field)),
                   key=lambda mc: mc[0], reverse=True)
    if not terms:
        return "0"
    names = [s.name for s in p.ring.symbols]
    parts = []
    for mono, coeff in terms:
        factors = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, mono) if e]
        neg = coeff.is_rational and coeff.a < 0
        c = -coeff if neg else coeff
        if not factors or c != QuadScalar.rational(1):
            factors.insert(0, _quad_text(c, params))
        text = "*".join(factors)
        if text.startswith("-"):
            neg, text = not neg, text[1:]
        if not parts:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Parser for the expression grammar:
#
#   expr    = term (("+" | "-") term)*
#   term    = unary (("*" | "/") unary)*
#   unary   = ("+" | "-") unary | power
#   power   = atom ("^" INTEGER)?
#   atom    = INTEGER | IDENT | "(" expr ")"
#
# IDENT is a chart variable or one of: alpha, beta, sigma, sqrtD.
# ---------------------------------------------------------------------------

class ParseError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text: str):
    tokens, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart, params: MetallicParams | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.chart = chart
        self.params = params
        self.field = coeff_field(params.radicand) if params else coeff_field(0)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> RatFunc:
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return out

    def expr(self) -> RatFunc:
        out = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> RatFunc:
        out = self.unary()
        while self.peek()[0] in "*/":
            op, _, at = self.take()
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if rhs.is_zero:
                    raise ParseError("division by the zero expression", at)
                out = out / rhs
        return out

    def unary(self) -> RatFunc:
        if self.peek()[0] in "+-":
            op = self.take()[0]
            val = self.unary()
            return val if op == "+" else -val
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            tok = self.take("int")
            if neg:
                raise ParseError("exponent must be a nonnegative integer", tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self) -> RatFunc:
        kind, text, at = self.peek()
        if kind == "int":
            self.take()
            return RatFunc.constant(self.chart, int(text), self.field)
        if kind == "ident":
            self.take()
            return self.resolve(text, at)
        if kind == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        raise ParseError(f"expected a value, found {text or 'end of input'!r}", at)

    def resolve(self, name: str, at: int) -> RatFunc:
        if name in self.chart.variables:
            return RatFunc.variable(self.chart, name, self.field)
        if self.params is not None:
            if name == "alpha":
                return RatFunc.constant(self.chart, self.params.alpha, self.field)
            if name == "beta":
                return RatFunc.constant(self.chart, self.params.beta, self.field)
            if name == "sigma":
                return RatFunc.constant(self.chart, self.params.sigma, self.field)
            if name == "sqrtD":
                return RatFunc.constant(self.chart, self.params.sqrtD, self.field)
        raise ParseError(f"unknown identifier {name!r}", at)


def parse_expr(text: str, chart: Chart, params: MetallicParams | None = None) -> RatFunc:
    return _Parser(text, chart, params).parse()
