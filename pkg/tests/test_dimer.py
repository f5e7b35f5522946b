import random
from fractions import Fraction

import pytest

from dimershape.dimer import (
    MatchingSequence,
    empirical_counting_measure,
    enumerate_matchings,
    matching_to_sequence,
    matching_weight,
    partition_function_enum,
    partition_function_schur,
    sequence_to_matching,
    sequence_weight,
)
from dimershape.lattice import LatticeSpec, boundary_partition, build_lattice
from dimershape.partitions import EnumerationBoundError, counting_measure, schur_ssyt


def random_spec(rng):
    n = rng.randint(1, 3)
    N = rng.randint(1, 4)
    a = [rng.randint(0, 1) for _ in range(n)]
    x = [rng.choice([0, Fraction(rng.randint(1, 5), rng.randint(1, 4))]) for _ in range(n)]
    y = [Fraction(rng.randint(1, 5), rng.randint(1, 4)) for _ in range(n)]
    omega = [1] + sorted(rng.sample(range(2, 8), N - 1))
    return LatticeSpec.make(a, x, y, omega)


def test_example_partition_function_all_ones():
    spec = LatticeSpec.make([1, 0, 1], [1, 1, 1], [1, 1, 1], [1, 3, 6])
    lat = build_lattice(spec)
    assert len(enumerate_matchings(lat)) == 30
    assert partition_function_enum(lat) == 30
    assert partition_function_schur(spec) == 30


def test_example_partition_function_symbolic_points():
    rng = random.Random(3)
    for _ in range(5):
        x = [Fraction(rng.randint(1, 6), rng.randint(1, 5)) for _ in range(3)]
        y2 = Fraction(rng.randint(1, 6), rng.randint(1, 5))
        spec = LatticeSpec.make([1, 0, 1], x, [1, y2, 1], [1, 3, 6])
        expected = (1 + y2 * x[2]) * schur_ssyt((3, 1, 0), x)
        assert partition_function_enum(build_lattice(spec)) == expected
        assert partition_function_schur(spec) == expected


def test_zero_weight_cases():
    x, y2 = Fraction(5, 2), Fraction(3, 7)
    spec = LatticeSpec.make([1, 0, 1], [x, 0, x], [1, y2, 1], [1, 3, 6])
    assert partition_function_schur(spec) == 3 * (1 + y2 * x) * x**4
    assert partition_function_enum(build_lattice(spec)) == 3 * (1 + y2 * x) * x**4
    spec = LatticeSpec.make([1, 0, 1], [x, 0, 0], [1, y2, 1], [1, 3, 6])
    assert partition_function_schur(spec) == 0
    assert enumerate_matchings(build_lattice(spec)) == []


def test_oracle_equivalence_random_specs():
    rng = random.Random(11)
    checked = 0
    while checked < 50:
        spec = random_spec(rng)
        lat = build_lattice(spec)
        if len(lat.vertices()) > 60:
            continue
        assert partition_function_schur(spec) == partition_function_enum(lat), spec.describe()
        checked += 1


def test_too_many_zero_weights_give_no_matching():
    rng = random.Random(12)
    hits = 0
    for _ in range(200):
        spec = random_spec(rng)
        zeros_x = sum(1 for v in spec.xs() if v == 0)
        zeros_omega = sum(1 for v in boundary_partition(spec.omega) if v == 0)
        if zeros_x > zeros_omega:
            hits += 1
            assert partition_function_schur(spec) == 0
            assert enumerate_matchings(build_lattice(spec)) == []
    assert hits > 5


def test_bijection_round_trip():
    rng = random.Random(13)
    for _ in range(25):
        spec = random_spec(rng)
        lat = build_lattice(spec)
        if len(lat.vertices()) > 60:
            continue
        for m in enumerate_matchings(lat):
            seq = matching_to_sequence(m, lat)
            assert seq.rows[0] == boundary_partition(spec.omega)
            assert seq.rows[-1] == ()
            assert len(seq.rows) == 2 * spec.N + 1
            assert sequence_to_matching(seq, lat) == m
            assert sequence_weight(seq, spec) == matching_weight(m)


def test_minimal_lattice_sequence():
    spec = LatticeSpec.make([1], [1], [1], [1])
    lat = build_lattice(spec)
    (m,) = enumerate_matchings(lat)
    assert matching_to_sequence(m, lat).rows == ((0,), (0,), ())
    assert matching_weight(m) == 1


def test_sequence_validation():
    spec = LatticeSpec.make([1, 0, 1], [1, 1, 1], [1, 1, 1], [1, 3, 6])
    lat = build_lattice(spec)
    bad = MatchingSequence(((3, 1, 0), (3, 1, 0), (3, 2), (3, 2), (0,), (1,), ()))
    with pytest.raises(ValueError):
        sequence_to_matching(bad, lat)
    # a_1 = 1 forbids growing the row
    bad = MatchingSequence(((3, 1, 0), (3, 1, 0), (1, 0), (2, 0), (0,), (1,), ()))
    with pytest.raises(ValueError):
        sequence_to_matching(bad, lat)


def test_enumeration_guard():
    spec = LatticeSpec.make([0], [1], [1], list(range(1, 9)))
    with pytest.raises(EnumerationBoundError):
        enumerate_matchings(build_lattice(spec))


def test_empirical_counting_measure():
    seq = MatchingSequence(((3, 1, 0), (3, 1, 0), (1, 0), (1, 0), (0,), (1,), ()))
    assert empirical_counting_measure([seq], 0) == counting_measure((3, 1, 0))
    avg = empirical_counting_measure([seq, seq], 2)
    assert avg.total_mass == 1
    with pytest.raises(ValueError):
        empirical_counting_measure([seq], 6)
    with pytest.raises(ValueError):
        empirical_counting_measure([], 0)
