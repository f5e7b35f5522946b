import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dimershape.partitions import (
    EnumerationBoundError,
    co_interlaces,
    conjugate,
    counting_measure,
    format_partition,
    interlaces,
    log_schur_bialternant,
    parse_partition,
    schur,
    schur_bialternant,
    schur_jacobi_trudi,
    schur_ssyt,
    schur_weyl_ones,
    schur_with_zeros,
    sigma_zero,
    split_partition,
)


def partitions_upto(length, maxpart):
    out = []

    def rec(prefix, cap):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        for v in range(cap, -1, -1):
            rec(prefix + [v], v)

    rec([], maxpart)
    return out


def test_parse_and_format_round_trip():
    assert parse_partition("3,1,0") == (3, 1, 0)
    assert format_partition((3, 1, 0)) == "3,1,0"
    with pytest.raises(ValueError):
        parse_partition("1,3")
    with pytest.raises(ValueError):
        parse_partition("2,-1")


def test_interlacing_examples():
    assert interlaces((2, 1), (3, 1, 0))
    assert not interlaces((3, 2), (3, 1, 0))
    assert co_interlaces((2, 1), (3, 2))
    assert not co_interlaces((1, 1), (3, 1))


def test_conjugate():
    assert conjugate((3, 1, 0)) == (2, 1, 1)
    assert conjugate(conjugate((4, 2, 2, 1))) == (4, 2, 2, 1)
    assert conjugate((0, 0)) == ()


def test_co_interlaces_matches_conjugate_interlacing():
    for lam in partitions_upto(3, 4):
        for mu in partitions_upto(3, 4):
            assert co_interlaces(lam, mu) == interlaces(conjugate(lam), conjugate(mu))


def test_counting_measure_atoms_and_mass():
    m = counting_measure((3, 1, 0))
    assert m.positions() == [Fraction(5, 3), Fraction(2, 3), Fraction(0)]
    assert m.total_mass == 1
    for lam in partitions_upto(4, 3):
        pos = counting_measure(lam).positions()
        assert all(pos[i] > pos[i + 1] for i in range(len(pos) - 1))
    with pytest.raises(ValueError):
        counting_measure(())


def test_schur_small_values():
    assert schur_ssyt((3, 1, 0), (1, 1, 1)) == 15
    assert schur_weyl_ones((3, 1, 0), 3) == 15
    assert schur_weyl_ones((4, 2), 2) == 3
    x = Fraction(3, 2)
    assert schur_with_zeros((3, 1, 0), (x, 0, 0), 2) == 0
    assert schur_with_zeros((3, 1, 0), (x, x, 0), 1) == 3 * x**4
    assert schur_with_zeros((0, 0), (x, 0), 1) == 1


def test_ssyt_guard():
    with pytest.raises(EnumerationBoundError):
        schur_ssyt((30, 20, 10, 0, 0, 0), (1,) * 6, bound=1000)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(0, 4), min_size=1, max_size=4),
    st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=4, max_size=4, unique=True),
)
def test_bialternant_equals_ssyt(parts, u):
    lam = tuple(sorted(parts, reverse=True))
    u = u[: len(lam)]
    assert schur_bialternant(lam, u) == schur_ssyt(lam, u)
    assert schur_jacobi_trudi(lam, u) == schur_ssyt(lam, u)


def test_ssyt_symmetric_under_permutation():
    rng = random.Random(1)
    for lam in partitions_upto(3, 3):
        u = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
        v = u[:]
        rng.shuffle(v)
        assert schur_ssyt(lam, u) == schur_ssyt(lam, v)


def test_weyl_matches_ssyt():
    for m in range(1, 5):
        for lam in partitions_upto(m, 3):
            assert schur_weyl_ones(lam, m) == schur_ssyt(lam, (1,) * m)


def test_zero_variable_reductions():
    rng = random.Random(2)
    for lam in partitions_upto(4, 3):
        a = sum(1 for v in lam if v == 0)
        for b in range(5):
            u = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(4 - b)] + [0] * b
            val = schur_ssyt(lam, u)
            if b > a:
                assert val == 0
            else:
                assert val == schur_ssyt(lam[: 4 - b], u[: 4 - b])
            assert schur(lam, u) == val


def test_dispatcher_with_repeats():
    u = [Fraction(2), Fraction(2), Fraction(1, 3), Fraction(1, 3)]
    for lam in partitions_upto(4, 2):
        assert schur(lam, u) == schur_ssyt(lam, u)


def test_log_bialternant_matches_exact():
    lam = (5, 3, 3, 0)
    u = [3.0, 1.5, 0.5, -0.25]
    exact = schur_ssyt(lam, [Fraction(v) for v in u])
    sign, lg = log_schur_bialternant(lam, u)
    assert sign == pytest.approx(1.0 if exact > 0 else -1.0)
    assert lg == pytest.approx(math.log(abs(float(exact))), rel=1e-12)


def test_log_bialternant_extreme_range():
    lam = (400, 300, 0)
    u = [1e6, 1.0, 1e-6]
    sign, lg = log_schur_bialternant(lam, u)
    assert sign == 1.0
    # the leading term u1^400 u2^300 dominates
    assert lg == pytest.approx(400 * math.log(1e6), rel=1e-6)


def test_split_partition_trivial():
    fam = split_partition((3, 1, 0), [1, 1, 1], (1, 2, 3))
    assert fam.components == {1: (3, 1, 0)}
    assert fam.eta == (0, 0, 0)


def test_split_partition_all_zeros():
    w = [2, 1, 2, 1]
    s0 = sigma_zero(w)
    assert s0 == (1, 3, 2, 4)
    fam = split_partition((0, 0, 0, 0), w, s0)
    assert fam.eta == (2, 2, 0, 0)
    assert fam.components == {1: (2, 2), 2: (0, 0)}


def test_split_partition_two_component_boundary():
    lam = (72,) * 3 + (60,) * 3 + (24,) * 2 + (12,) * 2 + (0,) * 2
    w = [5, 1] * 6
    fam = split_partition(lam, w, sigma_zero(w))
    assert fam.components[1] == (78, 78, 78, 66, 66, 66)
    assert fam.components[2] == (24, 24, 12, 12, 0, 0)


def test_split_partition_rejects_bad_sigma():
    with pytest.raises(ValueError):
        split_partition((1, 0), [1, 2], (1, 1))
