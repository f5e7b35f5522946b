from fractions import Fraction

import pytest

from dimershape.lattice import (
    LatticeSpec,
    boundary_partition,
    build_lattice,
    gamma_factor,
    i1_i2,
    omega_from_partition,
)


def example_spec(x=(1, 1, 1), y=(1, 1, 1)):
    return LatticeSpec.make([1, 0, 1], x, y, [1, 3, 6])


def test_example_lattice_rows():
    lat = build_lattice(example_spec())
    assert [len(r) for r in lat.rows] == [3, 6, 5, 5, 4, 5, 4]
    assert lat.row_count == 7
    assert lat.rows[0] == (1, 3, 6)
    assert not lat.removed_edges


def test_zero_weight_edges_are_removed_not_vertices():
    full = build_lattice(example_spec())
    cut = build_lattice(example_spec(x=(2, 0, 2)))
    assert full.vertices() == cut.vertices()
    assert cut.removed_edges
    assert all(e.lower[0] == 4 and e.upper[0] == 5 for e in cut.removed_edges)
    assert len(cut.edges) + len(cut.removed_edges) == len(full.edges)


def test_minimal_lattice():
    lat = build_lattice(LatticeSpec.make([1], [1], [1], [1]))
    assert lat.row_count == 2
    assert len(lat.edges) == 1


def test_vertex_colors_and_positions():
    lat = build_lattice(example_spec())
    for v in lat.vertices():
        x, y = lat.position(v)
        if lat.color(v) == "white":
            assert y.denominator == 2
        else:
            assert y.denominator == 1
        assert x.denominator == 2


def test_black_vertex_degrees():
    spec = example_spec()
    lat = build_lattice(spec)
    deg_up, deg_down = {}, {}
    for e in lat.edges:
        deg_up[e.lower] = deg_up.get(e.lower, 0) + 1
        deg_down[e.upper] = deg_down.get(e.upper, 0) + 1
    for r in range(4, lat.row_count + 1, 2):
        m = (r - 2) // 2
        inner = lat.rows[r - 1][1:-1]
        for c in inner:
            assert deg_down[(r, c)] == (1 if spec.a_at(m) == 1 else 2)
            if r < lat.row_count:
                assert deg_up[(r, c)] == 2


def test_boundary_partition():
    assert boundary_partition((1, 3, 6)) == (3, 1, 0)
    assert boundary_partition((1, 2, 3, 4)) == (0, 0, 0, 0)
    assert boundary_partition((1, 3)) == (1, 0)
    with pytest.raises(ValueError):
        boundary_partition((1, 3, 3))
    with pytest.raises(ValueError):
        boundary_partition((2, 3))


def test_boundary_round_trip():
    for om in [(1,), (1, 2), (1, 4, 5, 9), (1, 3, 6)]:
        assert omega_from_partition(boundary_partition(om)) == om


def test_i1_i2():
    assert i1_i2(example_spec()) == ((1, 3), (2,))
    spec = LatticeSpec.make([1, 0, 0], [1, 1, 0], [0, 1, 2], range(1, 7))
    assert i1_i2(spec)[1] == (2, 3, 5, 6)
    spec = LatticeSpec.make([1, 1], [1, 1], [1, 1], [1, 2])
    assert i1_i2(spec)[1] == ()


def test_gamma_factor():
    y = Fraction(2, 3)
    spec = example_spec(x=(5, 7, 11), y=(1, y, 1))
    assert gamma_factor(spec, 2) == 1 + y * 11
    spec = LatticeSpec.make([0], [2], [3], [1, 2])
    assert gamma_factor(spec, 2) == 1
    with pytest.raises(ValueError):
        gamma_factor(example_spec(), 1)


def test_invalid_specs():
    with pytest.raises(ValueError):
        LatticeSpec.make([], [], [], [1])
    with pytest.raises(ValueError):
        LatticeSpec.make([1, 0], [1], [1, 1], [1])
    with pytest.raises(ValueError):
        LatticeSpec.make([0], [1], [0], [1])


def test_gamma_and_regime():
    spec = LatticeSpec.make([1, 0, 0], [1, 1, 0], [0, 1, 2], range(1, 4))
    assert spec.gamma == Fraction(1, 3)
    assert spec.regime == "bipartite"
    assert LatticeSpec.make([1, 0], [3, 2], [1, 1], [1]).regime == "distinct"


def test_edge_list_export():
    text = build_lattice(LatticeSpec.make([1], [1], [1], [1])).edge_list_text()
    assert text == "(1/2,1/2) (1/2,1) 1\n"
