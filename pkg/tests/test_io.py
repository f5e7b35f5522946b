import numpy as np
import pytest

from dimershape.io import (
    DensityMap,
    curves_svg,
    density_svg,
    read_curve_csv,
    read_density_csv,
    read_samples,
    write_curve_csv,
    write_density_csv,
    write_samples,
)
from dimershape.lattice import LatticeSpec
from dimershape.limitshape.curves import frozen_boundary
from dimershape.limitshape.profiles import BoundaryProfile
from dimershape.sampling import sample_many


@pytest.fixture(scope="module")
def hexagon_curve():
    return frozen_boundary(BoundaryProfile.make([0, 1], ["1/2", "3/2"]), None)


def test_curve_csv_round_trip(tmp_path, hexagon_curve):
    path = tmp_path / "curve.csv"
    write_curve_csv(path, hexagon_curve)
    assert path.read_text().splitlines()[0] == "t,chi,kappa,residual"
    back = read_curve_csv(path)
    for name in ("t", "chi", "kappa", "residual"):
        assert np.array_equal(getattr(back, name), getattr(hexagon_curve, name))


def test_density_csv_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    dmap = DensityMap(rng.random(7), rng.random(7), rng.random(7))
    path = tmp_path / "density.csv"
    write_density_csv(path, dmap)
    back = read_density_csv(path)
    assert np.array_equal(back.chi, dmap.chi) and np.array_equal(back.density, dmap.density)
    (tmp_path / "bad.csv").write_text("x,y\n1,2\n")
    with pytest.raises(ValueError):
        read_density_csv(tmp_path / "bad.csv")


def test_samples_round_trip(tmp_path):
    spec = LatticeSpec.make([1, 0, 1], [1, 1, 1], [1, 1, 1], [1, 3, 6])
    samples = sample_many(spec, 5, seed=2)
    path = tmp_path / "samples.txt"
    write_samples(path, samples)
    assert [s.rows for s in read_samples(path)] == [s.sequence.rows for s in samples]


def test_svg_is_plain_markup(hexagon_curve):
    text = curves_svg([hexagon_curve], [(0, 0), (1.5, 0), (0.5, 1), (0, 1)])
    assert text.startswith("<svg") and "<path" in text and "<polygon" in text
    dmap = DensityMap(np.array([0.0, 1.0]), np.array([0.5, 0.5]), np.array([0.0, 1.0]))
    assert density_svg(dmap, 2, 1).count("<rect") == 3
