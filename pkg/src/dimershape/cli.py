"""Command line entry point: ``dimershape <command> --config FILE``.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .dimer import empirical_counting_measure, partition_function_enum, partition_function_schur
from .io import (
    DensityMap,
    EMPTY_ROW,
    curves_svg,
    density_svg,
    write_curve_csv,
    write_density_csv,
    write_measure_csv,
    write_samples,
)
from .lattice import build_lattice
from .limitshape.components import SeparationError, component_curves, component_params
from .limitshape.curves import frozen_boundary
from .limitshape.density import chi_max, density
from .partitions import EnumerationBoundError, format_partition, format_rational
from .sampling import resolve_mode, sample_matching, sequence_probability
from .verify import SUITES, applicable_suites, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _num_text(v) -> str:
    return repr(v) if isinstance(v, float) else format_rational(v)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_partition_function(cfg: RunConfig, args) -> int:
    cfg.require("lattice")
    z = partition_function_schur(cfg.lattice)
    msg = f"Z = {_num_text(z)}"
    if z == 0:
        msg += ", no matchings"
    status = EXIT_OK
    if args.oracle:
        z_enum = partition_function_enum(build_lattice(cfg.lattice))
        if z_enum == z:
            msg += ", oracle agrees"
        else:
            msg += f", ORACLE MISMATCH (enumeration gives {_num_text(z_enum)})"
            status = EXIT_FAIL
    print(msg)
    return status


def _sequence_key(seq) -> str:
    return "|".join(format_partition(p) or EMPTY_ROW for p in seq.rows)


def _sample_job(job):
    spec, seed, index, mode = job
    return sample_matching(spec, seed, index, mode)


def cmd_sample(cfg: RunConfig, args) -> int:
    cfg.require("lattice")
    spec = cfg.lattice
    count = args.samples if args.samples is not None else cfg.samples
    if count <= 0:
        raise UsageError("--samples must be positive")
    if partition_function_schur(spec) == 0:
        raise UsageError("this lattice has no perfect matchings (Z = 0); nothing to sample")
    seed = args.seed if args.seed is not None else cfg.seed
    mode = resolve_mode(spec, args.mode or cfg.mode)
    jobs = [(spec, seed, i, mode) for i in range(count)]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as ex:
            samples = list(ex.map(_sample_job, jobs, chunksize=16))
    else:
        samples = [_sample_job(j) for j in jobs]
    out = _out_dir(args)
    write_samples(out / "samples.txt", samples)
    seqs = [s.sequence for s in samples]
    levels = []
    for k in range(2 * spec.N):
        if seqs[0].level(k):
            levels.append((k, empirical_counting_measure(seqs, k).atoms))
    write_measure_csv(out / "measure.csv", levels)
    counts = Counter(_sequence_key(s) for s in seqs)
    exact = mode == "exact"
    with open(out / "frequencies.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sequence", "count", "frequency"] + (["probability"] if exact else []))
        first = {}
        for s in seqs:
            first.setdefault(_sequence_key(s), s)
        for key in sorted(counts):
            row = [key, counts[key], repr(counts[key] / count)]
            if exact:
                row.append(repr(float(sequence_probability(spec, first[key]))))
            w.writerow(row)
    print(f"wrote {count} samples ({mode} mode, seed {seed}) and {len(counts)} distinct configurations to {out}")
    return EXIT_OK


def _outline(cfg: RunConfig):
    p, w = cfg.profile, cfg.weights
    right0, right1 = float(p.b[-1]), chi_max(p, w, 1.0)
    return [(0.0, 0.0), (right0, 0.0), (right1, 1.0), (0.0, 1.0)]


def _emit(out: Path, stem: str, fmt: str, svg_text) -> list[str]:
    written = []
    if fmt in ("svg", "both"):
        (out / f"{stem}.svg").write_text(svg_text())
        written.append(f"{stem}.svg")
    return written


def cmd_boundary(cfg: RunConfig, args) -> int:
    out = _out_dir(args)
    written = []
    if args.components:
        cfg.require("components")
        c = cfg.components
        fam = component_params(c.K, c.r, c.n, c.weights)
        curves = component_curves(fam)
        if args.format in ("csv", "both"):
            for i, curve in enumerate(curves, 1):
                write_curve_csv(out / f"component_{i}.csv", curve)
                written.append(f"component_{i}.csv")
        written += _emit(out, "components", args.format, lambda: curves_svg(curves))
    else:
        cfg.require("profile")
        curve = frozen_boundary(cfg.profile, cfg.weights)
        curves = [curve]
        if args.format in ("csv", "both"):
            write_curve_csv(out / "boundary.csv", curve)
            written.append("boundary.csv")
        written += _emit(out, "boundary", args.format, lambda: curves_svg(curves, _outline(cfg)))
    worst = max(float(c.residual.max()) for c in curves)
    print(f"{sum(len(c) for c in curves)} points on {len(curves)} curve(s), max residual {worst:.2e}; wrote {', '.join(written)}")
    return EXIT_OK


def _grid(text: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"--grid expects WxH, got {text!r}") from None
    if w < 2 or h < 1:
        raise UsageError("--grid needs W >= 2 and H >= 1")
    return w, h


def _density_row(job):
    profile, weights, kappa, chis = job
    return [density(c, kappa, profile, weights) for c in chis]


def cmd_density_map(cfg: RunConfig, args) -> int:
    cfg.require("profile")
    nx, ny = _grid(args.grid)
    p, w = cfg.profile, cfg.weights
    chis = np.linspace(0.0, float(p.b[-1]), nx)
    kappas = (np.arange(ny) + 0.5) / ny
    jobs = []
    for k in kappas:
        inside = chis[chis <= chi_max(p, w, k)]
        jobs.append((p, w, float(k), inside))
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as ex:
            rows = list(ex.map(_density_row, jobs))
    else:
        rows = [_density_row(j) for j in jobs]
    cx = np.concatenate([j[3] for j in jobs])
    ck = np.concatenate([np.full(len(j[3]), j[2]) for j in jobs])
    dmap = DensityMap(cx, ck, np.concatenate([np.array(r, dtype=float) for r in rows]))
    out = _out_dir(args)
    written = []
    if args.format in ("csv", "both"):
        write_density_csv(out / "density.csv", dmap)
        written.append("density.csv")
    written += _emit(out, "density", args.format, lambda: density_svg(dmap, nx, ny))
    print(f"{len(cx)} grid points; wrote {', '.join(written)}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    names = args.suite or applicable_suites(cfg)
    failed = 0
    for name in names:
        res = run_suite(name, cfg, args.samples, args.threads)
        print(res.line())
        failed += not res.passed
    print(f"{len(names) - failed}/{len(names)} suites passed")
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "partition-function": cmd_partition_function,
    "sample": cmd_sample,
    "boundary": cmd_boundary,
    "density-map": cmd_density_map,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimershape", description="Dimer models on contracting square-hexagon lattices")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="INI run configuration")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    p = sub.add_parser("partition-function", parents=[common], help="partition function via the Schur formula")
    p.add_argument("--oracle", action="store_true", help="also enumerate matchings and compare")
    p = sub.add_parser("sample", parents=[common], help="draw Boltzmann samples")
    p.add_argument("--seed", type=int, help="base seed (overrides the config)")
    p.add_argument("--samples", type=int, help="number of samples (overrides the config)")
    p.add_argument("--mode", choices=["auto", "exact", "float"], help="transition evaluator")
    p = sub.add_parser("boundary", parents=[common], help="frozen boundary curve(s)")
    p.add_argument("--components", action="store_true", help="one curve per weight class")
    p.add_argument("--format", choices=["csv", "svg", "both"], default="csv")
    p = sub.add_parser("density-map", parents=[common], help="limit density on a grid")
    p.add_argument("--grid", default="60x40", help="WxH grid size")
    p.add_argument("--format", choices=["csv", "svg", "both"], default="csv")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", choices=SUITES, help="suite to run (repeatable)")
    p.add_argument("--samples", type=int, help="Monte Carlo sample count")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, UsageError, EnumerationBoundError) as e:
        print(f"dimershape: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SeparationError as e:
        print(f"dimershape: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
