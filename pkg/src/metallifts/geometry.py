"""Vector fields, (1,1)- and (1,2)-tensor fields, connections, Lie calculus.

Index convention, used everywhere: a (1,1)-tensor is stored as the matrix
T[h][i] with h the output (row) index, so (T X)^h = sum_i T[h][i] X^i.
A (1,2)-tensor is N[h][i][j] with N(X, Y)^h = N[h][i][j] X^i Y^j.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symexpr import Chart, RatFunc


class ChartMismatch(ValueError):
    pass


def _same_chart(*objs):
    charts = {o.chart for o in objs}
    if len(charts) != 1:
        raise ChartMismatch(f"fields live on different charts: {charts}")
    return charts.pop()


def _as_ratfunc(chart: Chart, value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc.constant(chart, value)


@dataclass(frozen=True)
class VectorField:
    chart: Chart
    components: tuple[RatFunc, ...]

    def __post_init__(self):
        if len(self.components) != self.chart.dimension:
            raise ValueError("component count must equal chart dimension")

    @classmethod
    def make(cls, chart: Chart, comps) -> VectorField:
        return cls(chart, tuple(_as_ratfunc(chart, c) for c in comps))

    @classmethod
    def zero(cls, chart: Chart) -> VectorField:
        return cls.make(chart, [0] * chart.dimension)

    @classmethod
    def basis(cls, chart: Chart, i: int) -> VectorField:
        return cls.make(chart, [1 if j == i else 0 for j in range(chart.dimension)])

    def __add__(self, other: VectorField) -> VectorField:
        _same_chart(self, other)
        return VectorField(self.chart, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: VectorField) -> VectorField:
        _same_chart(self, other)
        return VectorField(self.chart, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> VectorField:
        return VectorField(self.chart, tuple(-a for a in self.components))

    def scale(self, c) -> VectorField:
        c = _as_ratfunc(self.chart, c)
        return VectorField(self.chart, tuple(c * a for a in self.components))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)


@dataclass(frozen=True)
class Tensor11Field:
    chart: Chart
    components: tuple[tuple[RatFunc, ...], ...]  # [h][i]

    def __post_init__(self):
        n = self.chart.dimension
        if len(self.components) != n or any(len(row) != n for row in self.components):
            raise ValueError("(1,1)-tensor must be a square matrix of chart dimension")

    @classmethod
    def make(cls, chart: Chart, rows) -> Tensor11Field:
        return cls(chart, tuple(tuple(_as_ratfunc(chart, c) for c in row) for row in rows))

    @classmethod
    def identity(cls, chart: Chart) -> Tensor11Field:
        n = chart.dimension
        return cls.make(chart, [[1 if h == i else 0 for i in range(n)] for h in range(n)])

    @classmethod
    def zero(cls, chart: Chart) -> Tensor11Field:
        n = chart.dimension
        return cls.make(chart, [[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, chart: Chart, entries) -> Tensor11Field:
        n = chart.dimension
        return cls.make(chart, [[entries[h] if h == i else 0 for i in range(n)] for h in range(n)])

    def __add__(self, other: Tensor11Field) -> Tensor11Field:
        _same_chart(self, other)
        return Tensor11Field(self.chart, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.components, other.components)))

    def __sub__(self, other: Tensor11Field) -> Tensor11Field:
        _same_chart(self, other)
        return Tensor11Field(self.chart, tuple(
            tuple(a - b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.components, other.components)))

    def __neg__(self) -> Tensor11Field:
        return Tensor11Field(self.chart, tuple(tuple(-a for a in row) for row in self.components))

    def scale(self, c) -> Tensor11Field:
        c = _as_ratfunc(self.chart, c)
        return Tensor11Field(self.chart, tuple(tuple(c * a for a in row) for row in self.components))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for row in self.components for c in row)


@dataclass(frozen=True)
class Tensor12Field:
    chart: Chart
    components: tuple[tuple[tuple[RatFunc, ...], ...], ...]  # [h][i][j]

    def __post_init__(self):
        n = self.chart.dimension
        ok = len(self.components) == n and all(
            len(pl) == n and all(len(row) == n for row in pl) for pl in self.components)
        if not ok:
            raise ValueError("(1,2)-tensor must be cubical of chart dimension")

    @classmethod
    def make(cls, chart: Chart, cube) -> Tensor12Field:
        return cls(chart, tuple(tuple(tuple(_as_ratfunc(chart, c) for c in row)
                                      for row in plane) for plane in cube))

    @classmethod
    def zero(cls, chart: Chart) -> Tensor12Field:
        n = chart.dimension
        return cls.make(chart, [[[0] * n for _ in range(n)] for _ in range(n)])

    def __sub__(self, other: Tensor12Field) -> Tensor12Field:
        _same_chart(self, other)
        return Tensor12Field(self.chart, tuple(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(p1, p2))
            for p1, p2 in zip(self.components, other.components)))

    def scale(self, c) -> Tensor12Field:
        c = _as_ratfunc(self.chart, c)
        return Tensor12Field(self.chart, tuple(
            tuple(tuple(c * a for a in row) for row in plane) for plane in self.components))

    def evaluate(self, X: VectorField, Y: VectorField) -> VectorField:
        _same_chart(self, X, Y)
        n = self.chart.dimension
        comps = []
        for h in range(n):
            acc = X.components[0].zero()
            for i in range(n):
                for j in range(n):
                    entry = self.components[h][i][j]
                    if not entry.is_zero:
                        acc = acc + entry * X.components[i] * Y.components[j]
            comps.append(acc)
        return VectorField(self.chart, tuple(comps))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for plane in self.components for row in plane for c in row)


@dataclass(frozen=True)
class Connection:
    """Affine connection coefficients Gamma[h][l][i]; no symmetry assumed."""

    chart: Chart
    coefficients: tuple[tuple[tuple[RatFunc, ...], ...], ...]  # [h][l][i]

    def __post_init__(self):
        n = self.chart.dimension
        ok = len(self.coefficients) == n and all(
            len(pl) == n and all(len(row) == n for row in pl)
            for pl in self.coefficients)
        if not ok:
            raise ValueError("connection coefficients must be cubical of chart dimension")

    @classmethod
    def make(cls, chart: Chart, cube) -> Connection:
        return cls(chart, tuple(tuple(tuple(_as_ratfunc(chart, c) for c in row)
                                      for row in plane) for plane in cube))

    @classmethod
    def flat(cls, chart: Chart) -> Connection:
        n = chart.dimension
        return cls.make(chart, [[[0] * n for _ in range(n)] for _ in range(n)])


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def apply_t11(T: Tensor11Field, X: VectorField) -> VectorField:
    chart = _same_chart(T, X)
    n = chart.dimension
    comps = []
    for h in range(n):
        acc = X.components[0].zero()
        for i in range(n):
            if not T.components[h][i].is_zero:
                acc = acc + T.components[h][i] * X.components[i]
        comps.append(acc)
    return VectorField(chart, tuple(comps))


def compose_t11(S: Tensor11Field, T: Tensor11Field) -> Tensor11Field:
    chart = _same_chart(S, T)
    n = chart.dimension
    rows = []
    for h in range(n):
        row = []
        for i in range(n):
            acc = S.components[0][0].zero()
            for a in range(n):
                if not (S.components[h][a].is_zero or T.components[a][i].is_zero):
                    acc = acc + S.components[h][a] * T.components[a][i]
            row.append(acc)
        rows.append(tuple(row))
    return Tensor11Field(chart, tuple(rows))


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    chart = _same_chart(X, Y)
    n = chart.dimension
    names = chart.variables
    comps = []
    for h in range(n):
        acc = X.components[0].zero()
        for a in range(n):
            acc = acc + X.components[a] * Y.components[h].diff(names[a])
            acc = acc - Y.components[a] * X.components[h].diff(names[a])
        comps.append(acc)
    return VectorField(chart, tuple(comps))


def lie_derivative_vf(V: VectorField, X: VectorField) -> VectorField:
    return lie_bracket(V, X)


def lie_derivative_t11(V: VectorField, T: Tensor11Field) -> Tensor11Field:
    chart = _same_chart(V, T)
    n = chart.dimension
    names = chart.variables
    rows = []
    for h in range(n):
        row = []
        for i in range(n):
            acc = V.components[0].zero()
            for a in range(n):
                acc = acc + V.components[a] * T.components[h][i].diff(names[a])
                acc = acc - T.components[a][i] * V.components[h].diff(names[a])
                acc = acc + T.components[h][a] * V.components[a].diff(names[i])
            row.append(acc)
        rows.append(tuple(row))
    return Tensor11Field(chart, tuple(rows))


def lie_derivative_t12(V: VectorField, N: Tensor12Field) -> Tensor12Field:
    chart = _same_chart(V, N)
    n = chart.dimension
    names = chart.variables
    cube = []
    for h in range(n):
        plane = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = V.components[0].zero()
                for a in range(n):
                    acc = acc + V.components[a] * N.components[h][i][j].diff(names[a])
                    acc = acc - N.components[a][i][j] * V.components[h].diff(names[a])
                    acc = acc + N.components[h][a][j] * V.components[a].diff(names[i])
                    acc = acc + N.components[h][i][a] * V.components[a].diff(names[j])
                row.append(acc)
            plane.append(tuple(row))
        cube.append(tuple(plane))
    return Tensor12Field(chart, tuple(cube))


# ---------------------------------------------------------------------------
# Exact linear algebra over the rational-function field
# ---------------------------------------------------------------------------

def invert_t11(T: Tensor11Field) -> Tensor11Field:
    """Exact inverse via Gauss-Jordan elimination; raises if singular."""
    chart = T.chart
    n = chart.dimension
    aug = [[T.components[h][i] for i in range(n)]
           + [RatFunc.constant(chart, 1 if h == i else 0) for i in range(n)]
           for h in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not aug[r][col].is_zero), None)
        if pivot is None:
            raise ValueError("tensor is singular, cannot invert")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [e / inv for e in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero:
                factor = aug[r][col]
                aug[r] = [e - factor * p for e, p in zip(aug[r], aug[col])]
    return Tensor11Field(chart, tuple(tuple(row[n:]) for row in aug))
