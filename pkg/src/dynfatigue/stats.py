"""Agreement statistics and the static-validation replication harness.

The harness evaluates every catalog MET model and the dynamic model's
endurance time ``-ln(f) / (k f)`` on a shared grid of relative loads, then
scores each pair with Pearson's r and a one-way intraclass correlation.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .catalog import REGIONS, MetModel, default_catalog, evaluate
from .errors import ArgumentError, DomainError, UndefinedCorrelationError
from .fatigue import DEFAULT_K, met_dynamic_array
from .formatting import fmt

DEFAULT_GRID_START = 0.20
DEFAULT_GRID_END = 0.95
DEFAULT_GRID_STEP = 0.01


def _pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1:
        raise ArgumentError("inputs must be 1-D vectors")
    if a.shape != b.shape:
        raise ArgumentError(f"length mismatch: {a.size} vs {b.size}")
    if a.size < 2:
        raise ArgumentError("need at least 2 paired values")
    return a, b


def pearson_r(a, b) -> float:
    """Product-moment correlation of two equal-length vectors."""
    a, b = _pair(a, b)
    da = a - a.mean()
    db = b - b.mean()
    saa = np.dot(da, da)
    sbb = np.dot(db, db)
    if saa == 0.0 or sbb == 0.0:
        raise UndefinedCorrelationError("correlation undefined: a vector has zero variance")
    r = np.dot(da, db) / math.sqrt(saa * sbb)
    return float(min(1.0, max(-1.0, r)))


def icc(a, b) -> float:
    """One-way random-effects ICC with grid points as rows and the two models as columns.

    ``(MS_between - MS_within) / (MS_between + (p - 1) MS_within)`` with
    ``p = 2``.
    """
    a, b = _pair(a, b)
    x = np.column_stack((a, b))
    n, p = x.shape
    row_mean = x.mean(axis=1)
    grand = x.mean()
    ms_between = p * np.sum((row_mean - grand) ** 2) / (n - 1)
    ms_within = np.sum((x - row_mean[:, None]) ** 2) / (n * (p - 1))
    denom = ms_between + (p - 1) * ms_within
    if denom == 0.0:
        raise UndefinedCorrelationError("ICC undefined: all values identical")
    return float((ms_between - ms_within) / denom)


@dataclass(frozen=True, eq=False)
class ComparisonGrid:
    f_values: np.ndarray
    k: float = DEFAULT_K

    def __post_init__(self):
        f = np.array(self.f_values, dtype=float)
        if f.ndim != 1 or f.size < 3:
            raise ArgumentError(f"grid needs at least 3 points, got {f.size}")
        if np.any(f <= 0) or np.any(f > 1):
            raise ArgumentError("grid values must lie in (0, 1]")
        if np.any(np.diff(f) <= 0):
            raise ArgumentError("grid values must be strictly increasing")
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ArgumentError(f"k must be positive, got {self.k!r}")
        f.flags.writeable = False
        object.__setattr__(self, "f_values", f)

    @classmethod
    def from_range(cls, start=DEFAULT_GRID_START, end=DEFAULT_GRID_END, step=DEFAULT_GRID_STEP, k=DEFAULT_K):
        """Inclusive arithmetic grid; values rounded to 12 decimals to drop float drift."""
        if not step > 0:
            raise ArgumentError(f"grid step must be positive, got {step!r}")
        if end < start:
            raise ArgumentError(f"grid end {end} is before start {start}")
        n = int(math.floor((end - start) / step + 1e-9)) + 1
        values = np.round(start + step * np.arange(n), 12)
        return cls(values, k)

    @classmethod
    def default(cls) -> "ComparisonGrid":
        return cls.from_range()

    def describe(self) -> str:
        f = self.f_values
        return f"{f.size} points in [{f[0]:g}, {f[-1]:g}], k={self.k:g}/min"


@dataclass(frozen=True)
class ModelComparison:
    model_id: str
    display_name: str
    region: str
    r: float
    icc: float
    n_grid_points: int
    clipped: bool = False
    skipped: str | None = None
    published_r: float | None = None
    published_icc: float | None = None


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    records: tuple
    grid: ComparisonGrid
    met_dynamic: np.ndarray
    curves: dict = field(default_factory=dict)

    def record(self, model_id: str) -> ModelComparison:
        for rec in self.records:
            if rec.model_id == model_id:
                return rec
        raise KeyError(model_id)

    def region_records(self, region: str):
        return [r for r in self.records if r.region == region and r.skipped is None]

    def mean_icc(self, region: str) -> float:
        recs = self.region_records(region)
        return float(np.mean([r.icc for r in recs])) if recs else math.nan

    def write_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["model_id", "region", "r", "icc", "n_grid_points"])
            for rec in self.records:
                w.writerow([rec.model_id, rec.region, fmt(rec.r), fmt(rec.icc), rec.n_grid_points])

    def write_region_curves(self, out_dir) -> list[Path]:
        """One ``curves_<region>.csv`` per region: f_mvc, met_<id>..., met_dynamic."""
        out_dir = Path(out_dir)
        written = []
        for region in REGIONS:
            ids = [r.model_id for r in self.records if r.region == region]
            if not ids:
                continue
            path = out_dir / f"curves_{region}.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["f_mvc"] + [f"met_{i}" for i in ids] + ["met_dynamic"])
                for j, f in enumerate(self.grid.f_values):
                    w.writerow([fmt(f)] + [fmt(self.curves[i][j]) for i in ids] + [fmt(self.met_dynamic[j])])
            written.append(path)
        return written

    def write_region_icc(self, out_dir) -> list[Path]:
        """Bar-chart data ``icc_<region>.csv``: one bar per model."""
        out_dir = Path(out_dir)
        written = []
        for region in REGIONS:
            recs = [r for r in self.records if r.region == region]
            if not recs:
                continue
            path = out_dir / f"icc_{region}.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["model_id", "display_name", "icc"])
                for rec in recs:
                    w.writerow([rec.model_id, rec.display_name, fmt(rec.icc)])
            written.append(path)
        return written

    def render(self) -> str:
        head = f"{'model':<26} {'region':<9} {'r':>8} {'icc':>8} {'n':>4}  {'pub r':>8} {'pub icc':>9}"
        lines = [f"grid: {self.grid.describe()}", head, "-" * len(head)]
        for rec in self.records:
            pr = "" if rec.published_r is None else f"{rec.published_r:.4f}"
            pi = "" if rec.published_icc is None else f"{rec.published_icc:.4f}"
            if rec.skipped:
                lines.append(f"{rec.model_id:<26} {rec.region:<9} skipped: {rec.skipped}")
                continue
            flag = "*" if rec.clipped else " "
            lines.append(
                f"{rec.model_id:<26} {rec.region:<9} {rec.r:8.4f} {rec.icc:8.4f} {rec.n_grid_points:4d}{flag} {pr:>8} {pi:>9}"
            )
        if any(r.clipped for r in self.records):
            lines.append("* evaluated on the part of the grid inside the model's valid domain")
        return "\n".join(lines)


def _compare_one(model: MetModel, grid: ComparisonGrid, dyn: np.ndarray):
    f = grid.f_values
    mask = model.valid_domain.contains(f)
    curve = np.full(f.shape, math.nan)
    base = dict(
        model_id=model.id,
        display_name=model.display_name,
        region=model.region,
        published_r=model.published_r,
        published_icc=model.published_icc,
    )
    n = int(mask.sum())
    if n < 3:
        rec = ModelComparison(
            r=math.nan, icc=math.nan, n_grid_points=n, clipped=True,
            skipped=f"grid has {n} point(s) inside valid domain {model.valid_domain}", **base,
        )
        return rec, curve
    curve[mask] = evaluate(model, f[mask])
    rec = ModelComparison(
        r=pearson_r(curve[mask], dyn[mask]),
        icc=icc(curve[mask], dyn[mask]),
        n_grid_points=n,
        clipped=n < f.size,
        **base,
    )
    return rec, curve


def replicate_table2(grid: ComparisonGrid | None = None, catalog=None) -> ComparisonReport:
    """Score every catalog model against the dynamic model's MET on ``grid``."""
    grid = ComparisonGrid.default() if grid is None else grid
    models = default_catalog() if catalog is None else catalog
    try:
        dyn = met_dynamic_array(grid.f_values, grid.k)
    except DomainError as exc:
        raise ArgumentError(str(exc)) from None
    records, curves = [], {}
    for model in models:
        rec, curve = _compare_one(model, grid, dyn)
        records.append(rec)
        curves[model.id] = curve
    return ComparisonReport(tuple(records), grid, dyn, curves)
