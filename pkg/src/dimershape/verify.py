"""Verification suites shared by the command line and the acceptance tests."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import RunConfig
from .dimer import partition_function_enum, partition_function_schur, reduced_partition
from .lattice import LatticeSpec, build_lattice
from .limitshape.components import component_params
from .limitshape.curves import frozen_boundary, winding_check
from .limitshape.density import level_profile
from .sampling import sample_matching

RESIDUAL_TOL = 1e-8
KS_TOL = 0.05
ORACLE_VERTEX_LIMIT = 60


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def random_spec(rng: random.Random) -> LatticeSpec:
    """Small spec with rational weights, zero x entries allowed."""
    n = rng.randint(1, 3)
    N = rng.randint(1, 4)
    a = [rng.randint(0, 1) for _ in range(n)]
    x = [rng.choice([0, Fraction(rng.randint(1, 5), rng.randint(1, 4))]) for _ in range(n)]
    y = [Fraction(rng.randint(1, 5), rng.randint(1, 4)) for _ in range(n)]
    omega = [1] + sorted(rng.sample(range(2, 8), N - 1))
    return LatticeSpec.make(a, x, y, omega)


def oracle_equivalence(count: int = 50, seed: int = 11, extra: LatticeSpec | None = None) -> SuiteResult:
    """Schur product formula against brute-force enumeration, exactly."""
    rng = random.Random(seed)
    specs = [extra] if extra is not None and len(build_lattice(extra).vertices()) <= ORACLE_VERTEX_LIMIT else []
    target = count + len(specs)
    while len(specs) < target:
        spec = random_spec(rng)
        if len(build_lattice(spec).vertices()) <= ORACLE_VERTEX_LIMIT:
            specs.append(spec)
    bad = [s.describe() for s in specs if partition_function_schur(s) != partition_function_enum(build_lattice(s))]
    detail = f"{len(specs) - len(bad)}/{len(specs)} specs agree exactly"
    if bad:
        detail += f"; first mismatch: {bad[0]}"
    return SuiteResult("oracle", not bad, detail)


def residual_suite(cfg: RunConfig) -> SuiteResult:
    cfg.require("profile")
    curve = frozen_boundary(cfg.profile, cfg.weights)
    worst = float(curve.residual.max())
    return SuiteResult("residual", worst < RESIDUAL_TOL, f"{len(curve)} points, max double-root residual {worst:.2e}")


def winding_suite(cfg: RunConfig, lines: int = 100) -> SuiteResult:
    cfg.require("profile")
    rep = winding_check(cfg.profile, cfg.weights, lines, seed=cfg.seed)
    return SuiteResult(
        "winding",
        rep.passed,
        f"class {rep.class_degree}, min real meetings {rep.min_count} over {rep.lines} lines "
        f"(need {rep.class_degree - 2}), centre lines {sorted(set(rep.center_counts))}",
    )


def _reduced_sample(args):
    spec, seed, index, level, mode = args
    s = sample_matching(spec, seed, index, mode, stop_row=level + 2)
    return reduced_partition(s.sequence, spec, level)


def reduced_atoms(parts: list[tuple[int, ...]]) -> np.ndarray:
    """Pooled positions (lambda_i + L - i)/L of reduced partitions of length L."""
    out = []
    for lam in parts:
        L = len(lam)
        out.extend((lam[i] + L - 1 - i) / L for i in range(L))
    return np.sort(np.array(out))


def kolmogorov_distance(atoms: np.ndarray, cdf) -> float:
    """sup |F_emp - F| for a sorted sample against a continuous CDF."""
    n = len(atoms)
    F = cdf(atoms)
    return float(max(np.max(np.arange(1, n + 1) / n - F), np.max(F - np.arange(n) / n)))


def monte_carlo_ks(
    spec: LatticeSpec, profile, weights, level: int, samples: int, seed: int, threads: int = 1, mode: str = "auto"
):
    """Kolmogorov distance between sampled and limiting reduced measures at one level."""
    kappa = level / (2 * spec.N)
    jobs = [(spec, seed, i, level, mode) for i in range(samples)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_reduced_sample, jobs, chunksize=16))
    else:
        parts = [_reduced_sample(j) for j in jobs]
    atoms = reduced_atoms(parts)
    lp = level_profile(profile, weights, kappa)
    return kolmogorov_distance(atoms, lp.cdf), kappa, len(atoms)


def monte_carlo_suite(cfg: RunConfig, samples: int | None = None, threads: int = 1) -> SuiteResult:
    cfg.require("lattice", "profile")
    spec = cfg.lattice
    level = cfg.level if cfg.level is not None else spec.N
    n = samples if samples is not None else cfg.samples
    ks, kappa, atoms = monte_carlo_ks(spec, cfg.profile, cfg.weights, level, n, cfg.seed, threads, cfg.mode)
    return SuiteResult(
        "montecarlo", ks <= KS_TOL, f"N={spec.N} kappa={kappa:g} samples={n} atoms={atoms} KS={ks:.4f} (tol {KS_TOL})"
    )


def components_suite(cfg: RunConfig) -> SuiteResult:
    cfg.require("components")
    c = cfg.components
    fam = component_params(c.K, c.r, c.n, c.weights)
    bad = fam.overlapping_regions()
    if bad:
        return SuiteResult("components", False, f"bounding regions overlap for curve pairs {bad}")
    return SuiteResult("components", True, f"{fam.n} components, cut points {fam.d}, bounding regions disjoint")


SUITES = ("oracle", "residual", "winding", "montecarlo", "components")


def applicable_suites(cfg: RunConfig) -> list[str]:
    names = ["oracle"]
    if cfg.profile is not None:
        names += ["residual", "winding"]
    if cfg.lattice is not None and cfg.profile is not None and cfg.lattice.regime == "bipartite" and cfg.lattice.N > 4:
        names.append("montecarlo")
    if cfg.components is not None:
        names.append("components")
    return names


def run_suite(name: str, cfg: RunConfig, samples: int | None = None, threads: int = 1) -> SuiteResult:
    if name == "oracle":
        small = cfg.lattice if cfg.lattice is not None and cfg.lattice.exact else None
        return oracle_equivalence(extra=small)
    if name == "residual":
        return residual_suite(cfg)
    if name == "winding":
        return winding_suite(cfg)
    if name == "montecarlo":
        return monte_carlo_suite(cfg, samples, threads)
    if name == "components":
        return components_suite(cfg)
    raise ValueError(f"unknown suite {name!r}")
