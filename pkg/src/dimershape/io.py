"""File formats: curve and density CSVs, sample files and SVG drawings."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .dimer import MatchingSequence
from .limitshape.curves import FrozenBoundaryCurve
from .partitions import format_partition, format_rational, parse_partition

CURVE_HEADER = ["t", "chi", "kappa", "residual"]
DENSITY_HEADER = ["chi", "kappa", "density"]
EMPTY_ROW = "-"


def fmt(v: float) -> str:
    """Shortest text that reads back to the same float."""
    return repr(float(v))


def write_curve_csv(path: str | Path, curve: FrozenBoundaryCurve) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CURVE_HEADER)
        for row in zip(curve.t, curve.chi, curve.kappa, curve.residual):
            w.writerow([fmt(v) for v in row])


def read_curve_csv(path: str | Path) -> FrozenBoundaryCurve:
    cols = _read_columns(path, CURVE_HEADER)
    return FrozenBoundaryCurve(*cols, poles=np.array([]), class_degree=None, label=Path(path).stem)


@dataclass
class DensityMap:
    chi: np.ndarray
    kappa: np.ndarray
    density: np.ndarray


def write_density_csv(path: str | Path, dmap: DensityMap) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DENSITY_HEADER)
        for row in zip(dmap.chi, dmap.kappa, dmap.density):
            w.writerow([fmt(v) for v in row])


def read_density_csv(path: str | Path) -> DensityMap:
    return DensityMap(*_read_columns(path, DENSITY_HEADER))


def _read_columns(path, header: list[str]) -> list[np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != header:
        raise ValueError(f"{path}: expected header {','.join(header)}")
    data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, len(header))
    return [data[:, k] for k in range(len(header))]


def _weight_text(w) -> str:
    if w is None:
        return "none"
    return repr(w) if isinstance(w, float) else format_rational(w)


def write_samples(path: str | Path, samples: Iterable) -> None:
    """One block per sample: a header line, then one partition per row."""
    with open(path, "w") as fh:
        for s in samples:
            seed, index = s.rng_seed
            fh.write(f"# sample {index} seed {seed} rows {len(s.sequence.rows)} weight {_weight_text(s.weight)}\n")
            for p in s.sequence.rows:
                fh.write((format_partition(p) or EMPTY_ROW) + "\n")


def read_samples(path: str | Path) -> list[MatchingSequence]:
    out = []
    with open(path) as fh:
        lines = fh.read().splitlines()
    k = 0
    while k < len(lines):
        head = lines[k].split()
        if len(head) < 7 or head[:2] != ["#", "sample"] or head[5] != "rows":
            raise ValueError(f"{path}:{k + 1}: expected a sample header")
        count = int(head[6])
        rows = [() if v == EMPTY_ROW else parse_partition(v) for v in lines[k + 1 : k + 1 + count]]
        out.append(MatchingSequence(tuple(rows)))
        k += 1 + count
    return out


def write_measure_csv(path: str | Path, levels: Sequence[tuple[int, Sequence[tuple[float, float]]]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["level", "position", "mass"])
        for k, atoms in levels:
            for x, m in atoms:
                w.writerow([k, fmt(x), fmt(m)])


# ---- SVG -------------------------------------------------------------------

SVG_W, SVG_H, PAD = 640, 480, 30
PALETTE = ["#1f5fa8", "#b8401f", "#2e8b3a", "#7a3fa0", "#a07a1f"]


class _Frame:
    def __init__(self, x0, x1, y0, y1):
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0, y1

    def px(self, x):
        return PAD + (x - self.x0) / (self.x1 - self.x0) * (SVG_W - 2 * PAD)

    def py(self, y):
        return SVG_H - PAD - (y - self.y0) / (self.y1 - self.y0) * (SVG_H - 2 * PAD)


def _svg(body: list[str]) -> str:
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}">'
    return "\n".join([head, f'<rect x="0" y="0" width="{SVG_W}" height="{SVG_H}" fill="white"/>'] + body + ["</svg>"]) + "\n"


def curves_svg(curves: Sequence[FrozenBoundaryCurve], outline: Sequence[tuple[float, float]] | None = None) -> str:
    """Curves in the (chi, kappa) plane, kappa pointing up."""
    xs = np.concatenate([c.chi for c in curves] + ([np.array([p[0] for p in outline])] if outline else []))
    x0, x1 = float(xs.min()), float(xs.max())
    fr = _Frame(x0 - 0.02 * (x1 - x0 + 1e-9), x1 + 0.02 * (x1 - x0 + 1e-9), 0.0, 1.0)
    body = []
    if outline:
        pts = " ".join(f"{fr.px(x):.2f},{fr.py(y):.2f}" for x, y in outline)
        body.append(f'<polygon points="{pts}" fill="none" stroke="#888" stroke-width="1"/>')
    for k, c in enumerate(curves):
        colour = PALETTE[k % len(PALETTE)]
        for a, b in c.segments():
            if b - a < 2:
                continue
            d = "M " + " L ".join(f"{fr.px(x):.2f},{fr.py(y):.2f}" for x, y in zip(c.chi[a:b], c.kappa[a:b]))
            body.append(f'<path d="{d}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
    return _svg(body)


def density_svg(dmap: DensityMap, nx: int, ny: int) -> str:
    """Grey-level heat map; cells are centred on the grid points."""
    fr = _Frame(float(dmap.chi.min()), float(dmap.chi.max()), 0.0, 1.0)
    span_x = (fr.x1 - fr.x0) / max(nx - 1, 1)
    cw = span_x / (fr.x1 - fr.x0) * (SVG_W - 2 * PAD)
    ch = (SVG_H - 2 * PAD) / ny
    body = []
    for x, y, v in zip(dmap.chi, dmap.kappa, dmap.density):
        g = int(round(255 * (1 - v)))
        body.append(
            f'<rect x="{fr.px(x) - cw / 2:.2f}" y="{fr.py(y) - ch / 2:.2f}" width="{cw:.2f}" height="{ch:.2f}" '
            f'fill="rgb({g},{g},{g})"/>'
        )
    return _svg(body)
