"""Run configuration files.

A config is an INI file with typed sections::

    [run]
    seed = 1
    samples = 2000
    level = 60

    [lattice]
    a = 1,0,0
    x = 1,1,0
    y = 0,1,2
    omega = 1-40,61-80

    [profile]          ; optional, derived from [lattice] when absent
    alpha = 0,1
    b = 2/3,4/3
    gamma = 1/3

    [weights]          ; optional, derived from [lattice] when absent
    n = 3
    i2 = 2,3
    y = 1,2
    x = 1

    [components]
    K = 1/6,1/6,1/6,1/4,1/4
    r = 6,5,2,1,0

Lists are comma separated; integer lists accept ``lo-hi`` ranges and
weights accept rationals such as ``2/3`` or floats.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass
from pathlib import Path

from .lattice import LatticeSpec
from .limitshape.profiles import BoundaryProfile, WeightProfile, profile_from_omega, weights_from_spec
from .partitions import parse_rational

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 100


class ConfigError(ValueError):
    pass


_RANGE = re.compile(r"^(-?\d+)-(-?\d+)$")


def parse_int_list(text: str) -> list[int]:
    out = []
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        m = _RANGE.match(item)
        if m:
            out.extend(range(int(m.group(1)), int(m.group(2)) + 1))
        else:
            out.append(int(item))
    return out


def parse_number(text: str):
    """Rational when written as an integer or fraction, float otherwise."""
    text = text.strip()
    if any(ch in text for ch in ".eE") and "/" not in text:
        return float(text)
    return parse_rational(text)


def parse_number_list(text: str) -> list:
    return [parse_number(v) for v in text.split(",") if v.strip()]


@dataclass
class ComponentData:
    K: list
    r: list
    n: int
    weights: WeightProfile | None


@dataclass
class RunConfig:
    path: str | None = None
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    level: int | None = None
    mode: str = "auto"
    lattice: LatticeSpec | None = None
    profile: BoundaryProfile | None = None
    weights: WeightProfile | None = None
    components: ComponentData | None = None

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ConfigError(f"config {self.path or '<memory>'} lacks section(s): {', '.join(missing)}")


def _lattice(sec) -> LatticeSpec:
    try:
        a = parse_int_list(sec["a"])
        x = parse_number_list(sec["x"])
        y = parse_number_list(sec.get("y", ",".join("0" for _ in a)))
        omega = parse_int_list(sec["omega"])
    except KeyError as e:
        raise ConfigError(f"[lattice] needs key {e}") from None
    return LatticeSpec.make(a, x, y, omega)


def _weights(sec) -> WeightProfile:
    i2 = parse_int_list(sec.get("i2", ""))
    if "c" in sec:
        return WeightProfile.from_c(int(sec["n"]), parse_number_list(sec["c"]), sec.get("x", "1"))
    return WeightProfile.make(int(sec["n"]), i2, parse_number_list(sec.get("y", "")), sec.get("x", "1"))


def _derived(fn, *args):
    """Blocks derived from [lattice] are optional: None when not admissible."""
    try:
        return fn(*args)
    except ValueError:
        return None


def load_config(path: str | Path) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    if not parser.read(path):
        raise ConfigError(f"cannot read config {path}")
    return config_from_parser(parser, str(path))


def config_from_text(text: str) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    parser.read_string(text)
    return config_from_parser(parser, None)


def config_from_parser(parser: configparser.ConfigParser, path: str | None) -> RunConfig:
    known = {"run", "lattice", "profile", "weights", "components"}
    unknown = set(parser.sections()) - known
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown))}")
    cfg = RunConfig(path=path)
    try:
        if parser.has_section("run"):
            run = parser["run"]
            cfg.seed = run.getint("seed", DEFAULT_SEED)
            cfg.samples = run.getint("samples", DEFAULT_SAMPLES)
            cfg.level = run.getint("level") if "level" in run else None
            cfg.mode = run.get("mode", "auto")
        if parser.has_section("lattice"):
            cfg.lattice = _lattice(parser["lattice"])
        if parser.has_section("profile"):
            sec = parser["profile"]
            cfg.profile = BoundaryProfile.make(
                parse_number_list(sec["alpha"]), parse_number_list(sec["b"]), sec.get("gamma", "0")
            )
        elif cfg.lattice is not None:
            cfg.profile = _derived(profile_from_omega, cfg.lattice.omega, cfg.lattice.gamma)
        if parser.has_section("weights"):
            cfg.weights = _weights(parser["weights"])
        elif cfg.lattice is not None and cfg.lattice.regime == "bipartite":
            cfg.weights = weights_from_spec(cfg.lattice)
        if parser.has_section("components"):
            sec = parser["components"]
            n = int(sec.get("n", cfg.weights.n if cfg.weights else 1))
            cfg.components = ComponentData(parse_number_list(sec["K"]), parse_number_list(sec["r"]), n, cfg.weights)
    except ConfigError:
        raise
    except (KeyError, ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"invalid config {path or '<memory>'}: {e}") from None
    return cfg
