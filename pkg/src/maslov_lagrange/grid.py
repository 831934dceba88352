"""Parameter grids over (alpha, beta) and their CSV form.

Cells are independent, so a grid is evaluated by a process pool and then
written in a fixed row order: alpha ascending outer, beta ascending inner.
The file content does not depend on the number of workers.
"""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

import numpy as np

from .engine import DegenerateCrossing, NonConvergence, omega_index
from .iteration import bott_long_sum, iterate_path
from .model import (ALPHA_MAX, ModelParams, StabilityClass, classify_stability,
                    essential_path, full_path, jump_curve, kepler_path, stability_curve)

__all__ = [
    "GridSpec",
    "KINDS",
    "VALUE_COLUMNS",
    "format_value",
    "grid_rows",
    "write_csv",
    "read_csv",
    "run_grid",
]

ALPHA_CLAMP = ALPHA_MAX - 1e-9
NA = "NA"

VALUE_COLUMNS = {
    "stability": ("class",),
    "morse": ("i1_e2", "i1_e3", "morse_total"),
    "omega": ("theta", "i_omega_e2", "i_omega_e3"),
    "iterate": ("k", "i1_e2_k", "i1_e3_k", "i1_full_k", "method"),
    # alpha and beta already lead every row
    "jump-curves": ("k", "l", "tangent_beta", "tangent_alpha"),
}
KINDS = tuple(VALUE_COLUMNS)


@dataclass(frozen=True)
class GridSpec:
    """Inclusive linspace grid over alpha and beta."""

    alpha_min: float = 0.0
    alpha_max: float = 1.9
    alpha_steps: int = 21
    beta_min: float = 0.1
    beta_max: float = 9.0
    beta_steps: int = 21

    def __post_init__(self):
        if self.alpha_steps < 2 or self.beta_steps < 2:
            raise ValueError("grid needs at least two steps per axis")
        object.__setattr__(self, "alpha_max", min(float(self.alpha_max), ALPHA_CLAMP))
        if not 0.0 <= self.alpha_min <= self.alpha_max:
            raise ValueError(f"need 0 <= alpha_min <= alpha_max < 2, got "
                             f"{self.alpha_min}, {self.alpha_max}")
        if not 0.0 <= self.beta_min <= self.beta_max <= 9.0:
            raise ValueError(f"need 0 <= beta_min <= beta_max <= 9, got "
                             f"{self.beta_min}, {self.beta_max}")

    @property
    def alphas(self) -> np.ndarray:
        return np.linspace(self.alpha_min, self.alpha_max, self.alpha_steps)

    @property
    def betas(self) -> np.ndarray:
        return np.linspace(self.beta_min, self.beta_max, self.beta_steps)

    @property
    def beta_half_width(self) -> float:
        return (self.beta_max - self.beta_min) / (self.beta_steps - 1) / 2

    def cells(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a in self.alphas for b in self.betas]


def format_value(x) -> str:
    """9 significant digits, plain notation for |x| in [1e-4, 1e9)."""
    if x is None:
        return NA
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return NA
        if x == 0.0:
            return "0"
        return format(x, ".9g")
    return str(x)


# -- cell evaluators ------------------------------------------------------------
# Module level so that they pickle for the process pool.


def _index_or_none(path, omega, eps):
    try:
        return omega_index(path, omega, eps).index
    except (DegenerateCrossing, NonConvergence):
        return None


def _stability_cell(cell, half_width: float):
    a, b = cell
    if abs(b - float(stability_curve(a))) < half_width:
        return [[StabilityClass.SS.value]]
    return [[classify_stability(ModelParams(a, b)).value]]


def _morse_cell(cell, eps):
    a, b = cell
    p = ModelParams(a, b)
    e2 = _index_or_none(kepler_path(a), 1.0, eps)
    e3 = _index_or_none(essential_path(p), 1.0, eps)
    total = None if e2 is None or e3 is None else e2 + e3
    return [[e2, e3, total]]


def _omega_cell(cell, theta: float, eps):
    a, b = cell
    w = complex(math.cos(theta), math.sin(theta))
    e2 = _index_or_none(kepler_path(a), w, eps)
    e3 = _index_or_none(essential_path(ModelParams(a, b)), w, eps)
    return [[theta, e2, e3]]


def _iterate_cell(cell, k: int, method: str, eps):
    a, b = cell
    p = ModelParams(a, b)
    values = []
    for path in (kepler_path(a), essential_path(p), full_path(p)):
        try:
            if method == "bott":
                values.append(bott_long_sum(path, k, 1.0, eps))
            else:
                values.append(omega_index(iterate_path(path, k), 1.0, eps).index)
        except (DegenerateCrossing, NonConvergence):
            values.append(None)
    return [[k, *values, method]]


def _jump_rows(alpha: float, kmax: int, beta_min: float, beta_max: float):
    rows = []
    for k in range(1, kmax + 1):
        for l in range(1, math.isqrt(2 * k * k) + 1):
            beta, tang = jump_curve(k, l, alpha)
            if not beta_min <= beta <= beta_max:
                continue
            tb, ta = tang if tang is not None else (None, None)
            rows.append((beta, k, l, tb, ta))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return rows


def _evaluate(fn: Callable, cells: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, cells, chunksize=max(1, len(cells) // (4 * jobs))))


def default_jobs() -> int:
    return os.cpu_count() or 1


def grid_rows(kind: str, spec: GridSpec, *, theta: float | None = None, k: int | None = None,
              method: str = "direct", kmax: int = 8, eps: float | None = None,
              jobs: int = 1) -> tuple[list[str], list[list]]:
    """Header and rows (raw values) of a grid of the given kind."""
    if kind not in VALUE_COLUMNS:
        raise ValueError(f"unknown grid kind {kind!r}; choose from {', '.join(KINDS)}")
    header = ["alpha", "beta", *VALUE_COLUMNS[kind]]
    if kind == "jump-curves":
        if kmax < 1:
            raise ValueError("kmax must be positive")
        rows = []
        for a in spec.alphas:
            for beta, kk, l, tb, ta in _jump_rows(float(a), kmax, spec.beta_min, spec.beta_max):
                rows.append([float(a), beta, kk, l, tb, ta])
        return header, rows
    if kind == "stability":
        fn = partial(_stability_cell, half_width=spec.beta_half_width)
    elif kind == "morse":
        fn = partial(_morse_cell, eps=eps)
    elif kind == "omega":
        if theta is None or not 0.0 < theta <= math.pi:
            raise ValueError("omega grids need an angle theta in (0, pi]")
        fn = partial(_omega_cell, theta=float(theta), eps=eps)
    else:
        if k is None or k < 1:
            raise ValueError("iterate grids need a positive k")
        if method not in ("direct", "bott"):
            raise ValueError("method must be 'direct' or 'bott'")
        fn = partial(_iterate_cell, k=int(k), method=method, eps=eps)
    cells = spec.cells()
    results = _evaluate(fn, cells, jobs)
    rows = []
    for (a, b), res in zip(cells, results):
        for values in res:
            rows.append([a, b, *values])
    return header, rows


def to_csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_value(x) for x in r])
    return buf.getvalue()


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv_text(header, rows))


def read_csv(path) -> tuple[list[str], list[dict[str, str]]]:
    """Header and rows as dicts; raises ValueError on malformed input."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("empty CSV file") from None
        if header[:2] != ["alpha", "beta"]:
            raise ValueError("CSV header must start with alpha,beta")
        rows = []
        for n, line in enumerate(reader, start=2):
            if len(line) != len(header):
                raise ValueError(f"line {n}: expected {len(header)} fields, got {len(line)}")
            rows.append(dict(zip(header, line)))
    return header, rows


def run_grid(kind: str, spec: GridSpec, out, **options) -> int:
    """Evaluate a grid and write it to ``out``; returns the number of rows."""
    header, rows = grid_rows(kind, spec, **options)
    write_csv(out, header, rows)
    return len(rows)
