"""Perfect matchings, their partition encoding and exact partition functions.

A matching is encoded by one partition per lattice row. On a white (odd)
row the particles are the vertices matched upward, on a black (even) row
the vertices matched downward. With particle columns ``p_1 > ... > p_L``
on a row whose leftmost column is ``l`` the partition is
``lambda_k = p_k - l - (L - k)``. Row 1 is read against the range
``[1, Omega_N]``, so its partition is the boundary partition omega.

``MatchingSequence.rows[r - 1]`` is the partition of lattice row ``r`` for
``r = 1..2N+1``; the last entry is always ``()``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import ContractingLattice, Edge, LatticeSpec, boundary_partition, build_lattice, gamma_factor, i1_i2
from .partitions import (
    CountingMeasure,
    EnumerationBoundError,
    Partition,
    co_interlaces,
    counting_measure,
    format_partition,
    interlaces,
    schur,
)

ENUM_VERTEX_GUARD = 60


@dataclass(frozen=True)
class PerfectMatching:
    edges: frozenset

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class MatchingSequence:
    rows: tuple[Partition, ...]

    @property
    def N(self) -> int:
        return len(self.rows[0])

    def level(self, k: int) -> Partition:
        """Partition on the (2N - k)-th row counted from the top, k = 0..2N-1."""
        if not 0 <= k <= 2 * self.N - 1:
            raise ValueError(f"level {k} outside 0..{2 * self.N - 1}")
        return self.rows[k + 1]

    def to_text(self) -> str:
        return "\n".join(format_partition(p) for p in self.rows) + "\n"


def matching_weight(m: PerfectMatching):
    w = 1
    for e in m.edges:
        w = w * e.weight
    return w


# ---------------------------------------------------------------------------
# bijection
# ---------------------------------------------------------------------------


def _row_left(lattice: ContractingLattice, r: int) -> int:
    return lattice.spans[r - 1][0] if r <= lattice.row_count else 0


def _columns_to_partition(cols: Iterable[int], left: int) -> Partition:
    p = sorted(cols, reverse=True)
    L = len(p)
    return tuple(p[k] - left - (L - 1 - k) for k in range(L))


def _partition_to_columns(lam: Sequence[int], left: int) -> list[int]:
    L = len(lam)
    return [lam[k] + left + (L - 1 - k) for k in range(L)]


def _all_edges(lattice: ContractingLattice) -> dict:
    return {(e.lower, e.upper): e for e in lattice.edges + lattice.removed_edges}


def matching_to_sequence(m: PerfectMatching, lattice: ContractingLattice) -> MatchingSequence:
    verts = lattice.vertices()
    cover = Counter()
    for e in m.edges:
        cover[e.lower] += 1
        cover[e.upper] += 1
    if any(cover[v] != 1 for v in verts) or len(cover) != len(verts):
        raise ValueError("not a perfect matching of this lattice")
    up = {e.lower for e in m.edges}
    down = {e.upper for e in m.edges}
    N = lattice.spec.N
    rows = []
    for r in range(1, 2 * N + 2):
        if r > lattice.row_count:
            rows.append(())
            continue
        marks = up if r % 2 == 1 else down
        cols = [c for c in lattice.rows[r - 1] if (r, c) in marks]
        rows.append(_columns_to_partition(cols, _row_left(lattice, r)))
    return MatchingSequence(tuple(rows))


def validate_sequence(seq: MatchingSequence, spec: LatticeSpec) -> None:
    """Check lengths, interlacing and the a_m = 1 equality constraints."""
    N = spec.N
    rows = seq.rows
    if len(rows) != 2 * N + 1:
        raise ValueError(f"expected {2 * N + 1} partitions, got {len(rows)}")
    if rows[0] != boundary_partition(spec.omega) or rows[1] != rows[0]:
        raise ValueError("the two bottom rows must both equal omega")
    for m in range(1, N + 1):
        lam, kap = rows[2 * m - 1], rows[2 * m]
        if len(kap) != N - m or not interlaces(kap, lam):
            raise ValueError(f"row {2 * m + 1} does not interlace with row {2 * m}")
        if m < N:
            nu = rows[2 * m + 1]
            if len(nu) != N - m or not co_interlaces(kap, nu):
                raise ValueError(f"row {2 * m + 2} is not a vertical strip over row {2 * m + 1}")
            if spec.a_at(m) == 1 and nu != kap:
                raise ValueError(f"a_{m} = 1 forces rows {2 * m + 1} and {2 * m + 2} to agree")


def sequence_to_matching(seq: MatchingSequence, lattice: ContractingLattice) -> PerfectMatching:
    spec = lattice.spec
    validate_sequence(seq, spec)
    table = _all_edges(lattice)
    out = []

    def add(lo, hi):
        e = table.get((lo, hi))
        if e is None:
            raise ValueError(f"no lattice edge between {lo} and {hi}")
        out.append(e)

    for c in spec.omega:
        add((1, c), (2, c))
    for r in range(2, lattice.row_count):
        lo_cols = _partition_to_columns(seq.rows[r - 1], _row_left(lattice, r))
        hi_cols = _partition_to_columns(seq.rows[r], _row_left(lattice, r + 1))
        if r % 2 == 0:
            # black holes pair with white holes
            lo_cols = [c for c in lattice.rows[r - 1] if c not in set(lo_cols)]
            hi_cols = [c for c in lattice.rows[r] if c not in set(hi_cols)]
        lo_cols, hi_cols = sorted(lo_cols), sorted(hi_cols)
        if len(lo_cols) != len(hi_cols):
            raise ValueError(f"rows {r} and {r + 1} cannot be matched")
        for a, b in zip(lo_cols, hi_cols):
            add((r, a), (r + 1, b))
    return PerfectMatching(frozenset(out))


# ---------------------------------------------------------------------------
# enumeration and partition functions
# ---------------------------------------------------------------------------


def enumerate_matchings(lattice: ContractingLattice, guard: int = ENUM_VERTEX_GUARD) -> list[PerfectMatching]:
    """All perfect matchings using positive-weight edges, by backtracking.

    Vertices are visited bottom row first; the first unmatched vertex has
    all its lower neighbours settled, so it must take an upward edge.
    """
    verts = lattice.vertices()
    if len(verts) > guard:
        raise EnumerationBoundError(f"{len(verts)} vertices exceed the enumeration guard {guard}")
    matched: set = set()
    chosen: list[Edge] = []
    found: list[PerfectMatching] = []

    def rec(start: int):
        i = start
        while i < len(verts) and verts[i] in matched:
            i += 1
        if i == len(verts):
            found.append(PerfectMatching(frozenset(chosen)))
            return
        v = verts[i]
        for e in lattice.up_edges(v):
            if e.upper in matched:
                continue
            matched.add(v)
            matched.add(e.upper)
            chosen.append(e)
            rec(i + 1)
            chosen.pop()
            matched.discard(v)
            matched.discard(e.upper)

    rec(0)
    return found


def partition_function_enum(lattice: ContractingLattice, guard: int = ENUM_VERTEX_GUARD):
    total = Fraction(0) if lattice.spec.exact else 0.0
    for m in enumerate_matchings(lattice, guard):
        total += matching_weight(m)
    return total


def partition_function_schur(spec: LatticeSpec):
    """prod_{i in I2} Gamma_i times s_omega(x_1, ..., x_N)."""
    _, i2 = i1_i2(spec)
    val = schur(boundary_partition(spec.omega), spec.xs())
    for i in i2:
        val *= gamma_factor(spec, i)
    return val


def sequence_weight(seq: MatchingSequence, spec: LatticeSpec):
    """Product of x_m^{|lambda| - |kappa|} and y_m^{|nu| - |kappa|} along the chain."""
    rows = seq.rows
    w = Fraction(1) if spec.exact else 1.0
    for m in range(1, spec.N + 1):
        d = sum(rows[2 * m - 1]) - sum(rows[2 * m])
        if d:
            w *= spec.x_at(m) ** d
        if m < spec.N:
            e = sum(rows[2 * m + 1]) - sum(rows[2 * m])
            if e:
                w *= spec.y_at(m) ** e
    return w


def empirical_counting_measure(sequences: Sequence[MatchingSequence], k: int) -> CountingMeasure:
    """Average of the counting measures of the level-k partitions."""
    if not sequences:
        raise ValueError("no samples")
    pooled: Counter = Counter()
    for s in sequences:
        lam = s.level(k)
        if not lam:
            raise ValueError(f"level {k} is the empty top row")
        for x, w in counting_measure(lam).atoms:
            pooled[x] += w
    total = len(sequences)
    return CountingMeasure(tuple(sorted(((x, w / total) for x, w in pooled.items()), reverse=True)))


def forced_zeros(spec: LatticeSpec, k: int) -> int:
    """Trailing zeros forced on level k by hexagon steps with x = 0."""
    done = (k + 1) // 2
    return sum(1 for m in range(1, done + 1) if spec.x_at(m) == 0)


def reduced_partition(seq: MatchingSequence, spec: LatticeSpec, k: int) -> Partition:
    """Level-k partition with its forced trailing zeros removed."""
    lam = seq.level(k)
    z = forced_zeros(spec, k)
    if z and any(lam[len(lam) - z :]):
        raise ValueError(f"level {k} does not end in {z} zeros")
    return lam[: len(lam) - z]


def lattice_for(spec: LatticeSpec) -> ContractingLattice:
    return build_lattice(spec)
