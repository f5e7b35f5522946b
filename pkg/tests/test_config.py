from fractions import Fraction as F
from importlib.resources import files

import pytest

from dimershape.config import ConfigError, config_from_text, load_config, parse_int_list, parse_number

CONFIGS = files("dimershape") / "configs"


def test_parse_helpers():
    assert parse_int_list("1-3, 7,9-10") == [1, 2, 3, 7, 9, 10]
    assert parse_number("2/3") == F(2, 3) and parse_number("4") == 4
    assert isinstance(parse_number("0.25"), float)


def test_period3_config():
    cfg = load_config(CONFIGS / "period3.ini")
    assert cfg.lattice.N == 60 and cfg.lattice.gamma == F(1, 3)
    assert cfg.profile.b == (F(2, 3), F(4, 3)) and cfg.weights.n == 3
    assert cfg.seed == 1 and cfg.samples == 2000 and cfg.level == 60


def test_profile_and_weights_derived_from_lattice():
    cfg = config_from_text("[lattice]\na = 1,0,0\nx = 1,1,0\ny = 0,1,2\nomega = 1-4,7-8\n")
    assert cfg.profile.b == (F(2, 3), F(4, 3)) and cfg.profile.gamma == F(1, 3)
    assert cfg.weights.l == 2
    assert cfg.seed == 0


def test_no_matching_has_no_derived_profile():
    cfg = load_config(CONFIGS / "no_matching.ini")
    assert cfg.lattice is not None and cfg.profile is None


def test_config_errors():
    with pytest.raises(ConfigError):
        config_from_text("[bogus]\nk = 1\n")
    with pytest.raises(ConfigError):
        config_from_text("[lattice]\na = 1\n")
    with pytest.raises(ConfigError):
        config_from_text("[profile]\nalpha = 0\nb = 1/2\n")
    with pytest.raises(ConfigError):
        load_config("/nonexistent/run.ini")
    with pytest.raises(ConfigError):
        config_from_text("[run]\nseed = 1\n").require("lattice")
