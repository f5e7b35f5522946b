"""Contracting square-hexagon lattices.

Rows are numbered from the bottom starting at 1. Odd rows hold white
vertices, even rows hold black ones. A vertex is the pair ``(row, col)``
with integer column; its drawing position is ``(col - 1/2, row / 2)``.

Level m (m = 1..N) consists of two steps read upward:

* rows 2m -> 2m+1, the hexagon step: black ``c`` meets white ``c`` with
  weight 1 and white ``c+1`` with weight ``x_m``;
* rows 2m+1 -> 2m+2 (only for m < N), the square-row step: white ``c``
  meets black ``c`` with weight 1, and when ``a_m = 0`` also black ``c+1``
  with weight ``y_m``.

Row 1 is the boundary row (columns Omega) and row 2 spans ``[1, Omega_N]``,
joined to row 1 by vertical edges. Rows that would be empty are dropped,
so the graph has 2N or 2N+1 rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .partitions import Partition, format_rational, parse_rational

Vertex = tuple[int, int]


def _num(v):
    if isinstance(v, float):
        return v
    return parse_rational(v)


@dataclass(frozen=True)
class LatticeSpec:
    """Period data and boundary of a contracting lattice.

    ``a``, ``x`` and ``y`` describe one period; level m uses index
    ``(m - 1) % n``. ``y`` entries at positions with ``a = 1`` are ignored.
    """

    n: int
    a: tuple[int, ...]
    x: tuple
    y: tuple
    N: int
    omega: tuple[int, ...]

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("period n must be positive")
        if not (len(self.a) == len(self.x) == len(self.y) == self.n):
            raise ValueError("a, x, y must all have length n")
        if any(v not in (0, 1) for v in self.a):
            raise ValueError("a entries must be 0 or 1")
        if any(v < 0 for v in self.x):
            raise ValueError("x entries must be nonnegative")
        if any(self.y[j] < 0 for j in range(self.n)):
            raise ValueError("y entries must be nonnegative")
        if any(self.a[j] == 0 and self.y[j] <= 0 for j in range(self.n)):
            raise ValueError("y must be positive where a = 0")
        if len(self.omega) != self.N or self.N < 1:
            raise ValueError("omega must have N >= 1 entries")
        validate_omega(self.omega)

    @classmethod
    def make(cls, a, x, y, omega, n=None, N=None) -> "LatticeSpec":
        a = tuple(int(v) for v in a)
        n = len(a) if n is None else n
        omega = tuple(int(v) for v in omega)
        N = len(omega) if N is None else N
        return cls(n, a, tuple(_num(v) for v in x), tuple(_num(v) for v in y), N, omega)

    def a_at(self, m: int) -> int:
        return self.a[(m - 1) % self.n]

    def x_at(self, m: int):
        return self.x[(m - 1) % self.n]

    def y_at(self, m: int):
        return self.y[(m - 1) % self.n] if self.a_at(m) == 0 else 0

    def xs(self) -> list:
        return [self.x_at(m) for m in range(1, self.N + 1)]

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.x + self.y)

    @property
    def J(self) -> tuple[int, ...]:
        return tuple(j + 1 for j in range(self.n) if self.x[j] == 0)

    @property
    def gamma(self) -> Fraction:
        return Fraction(len(self.J), self.n)

    @property
    def regime(self) -> str:
        """'bipartite' when nonzero x's share one value, 'distinct' when all
        x's are positive and pairwise distinct, else 'general'."""
        nz = {v for v in self.x if v != 0}
        if len(nz) == 1 and len(self.J) < self.n:
            return "bipartite"
        if not self.J and len(set(self.x)) == self.n:
            return "distinct"
        return "general"

    def describe(self) -> str:
        fmt = lambda vs: ",".join(format_rational(v) if not isinstance(v, float) else repr(v) for v in vs)
        return (
            f"n={self.n} a={','.join(map(str, self.a))} x={fmt(self.x)} y={fmt(self.y)} "
            f"N={self.N} omega={','.join(map(str, self.omega))}"
        )


def validate_omega(omega: Sequence[int]) -> None:
    if not omega:
        raise ValueError("omega is empty")
    if omega[0] != 1:
        raise ValueError("omega must start at 1")
    if any(omega[i] >= omega[i + 1] for i in range(len(omega) - 1)):
        raise ValueError("omega must be strictly increasing")


def boundary_partition(omega: Sequence[int]) -> Partition:
    """omega_i = Omega_{N+1-i} - (N+1-i)."""
    validate_omega(omega)
    N = len(omega)
    return tuple(omega[N - 1 - i] - (N - i) for i in range(N))


def omega_from_partition(p: Sequence[int]) -> tuple[int, ...]:
    N = len(p)
    return tuple(p[N - 1 - k] + k + 1 for k in range(N))


def i1_i2(spec: LatticeSpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    i1 = tuple(k for k in range(1, spec.N + 1) if spec.a_at(k) == 1)
    i2 = tuple(k for k in range(1, spec.N + 1) if spec.a_at(k) == 0)
    return i1, i2


def gamma_factor(spec: LatticeSpec, i: int):
    """prod_{t=i+1}^{N} (1 + y_i x_t)."""
    if spec.a_at(i) != 0 or not 1 <= i <= spec.N:
        raise ValueError(f"{i} is not in I2")
    y = spec.y_at(i)
    val = Fraction(1) if spec.exact else 1.0
    for t in range(i + 1, spec.N + 1):
        val *= 1 + y * spec.x_at(t)
    return val


@dataclass(frozen=True)
class Edge:
    lower: Vertex
    upper: Vertex
    weight: object


@dataclass(frozen=True)
class ContractingLattice:
    spec: LatticeSpec
    rows: tuple[tuple[int, ...], ...]
    spans: tuple[tuple[int, int], ...]
    edges: tuple[Edge, ...]
    removed_edges: tuple[Edge, ...]
    _up: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def vertices(self) -> list[Vertex]:
        return [(r + 1, c) for r, row in enumerate(self.rows) for c in row]

    @staticmethod
    def color(v: Vertex) -> str:
        return "white" if v[0] % 2 == 1 else "black"

    @staticmethod
    def position(v: Vertex) -> tuple[Fraction, Fraction]:
        return Fraction(2 * v[1] - 1, 2), Fraction(v[0], 2)

    def up_edges(self, v: Vertex) -> list[Edge]:
        return self._up.get(v, [])

    def edge_list_text(self) -> str:
        lines = []
        for e in self.edges:
            (x1, y1), (x2, y2) = self.position(e.lower), self.position(e.upper)
            w = e.weight if isinstance(e.weight, float) else format_rational(e.weight)
            lines.append(f"({x1},{y1}) ({x2},{y2}) {w}")
        return "\n".join(lines) + "\n"


def _level_steps(spec: LatticeSpec):
    """Yield (kind, m) for each row transition above row 2."""
    for m in range(1, spec.N + 1):
        yield "x", m
        if m < spec.N:
            yield "y", m


def build_lattice(spec: LatticeSpec) -> ContractingLattice:
    omega = spec.omega
    rows: list[tuple[int, ...]] = [tuple(omega)]
    spans: list[tuple[int, int]] = [(1, omega[-1])]
    raw: list[Edge] = [Edge((1, c), (2, c), 1) for c in omega]
    rows.append(tuple(range(1, omega[-1] + 1)))
    spans.append((1, omega[-1]))
    for kind, m in _level_steps(spec):
        lo, hi = spans[-1]
        r = len(rows)
        if kind == "x":
            nlo, nhi = lo + 1, hi
            w = spec.x_at(m)
            for c in range(lo, hi + 1):
                if nlo <= c <= nhi:
                    raw.append(Edge((r, c), (r + 1, c), 1))
                if nlo <= c + 1 <= nhi:
                    raw.append(Edge((r, c), (r + 1, c + 1), w))
        else:
            sq = spec.a_at(m) == 1
            nlo, nhi = lo, hi if sq else hi + 1
            for c in range(lo, hi + 1):
                raw.append(Edge((r, c), (r + 1, c), 1))
                if not sq:
                    raw.append(Edge((r, c), (r + 1, c + 1), spec.y_at(m)))
        if nhi < nlo:
            break
        rows.append(tuple(range(nlo, nhi + 1)))
        spans.append((nlo, nhi))
    edges = tuple(e for e in raw if e.weight != 0)
    removed = tuple(e for e in raw if e.weight == 0)
    up: dict = {}
    for e in edges:
        up.setdefault(e.lower, []).append(e)
    return ContractingLattice(spec, tuple(rows), tuple(spans), edges, removed, up)
