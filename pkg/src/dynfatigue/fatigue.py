"""Dynamic muscle fatigue model.

Capacity decays as ``dF_cem/dt = -k (F_cem / MVC) F_load`` and the fatigue
index accumulates as ``dU/dt = (MVC / F_cem) (F_load / F_cem)``. Both have
closed forms in terms of the normalized load integral
``F(t) = int_0^t F_load / MVC``, which makes every numerical path checkable.

Time is in minutes, forces in newtons, ``k`` in 1/minute.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ArgumentError, DomainError, ParseError

DEFAULT_K = 1.0
DEFAULT_DT = 1e-3
DEFAULT_FLOOR = 1e-12

# Table unit label for the fatigue index, reported verbatim in metadata.
U_UNIT_LABEL = "min"


@dataclass(frozen=True)
class MuscleProfile:
    mvc: float
    k: float = DEFAULT_K

    def __post_init__(self):
        if not (self.mvc > 0 and math.isfinite(self.mvc)):
            raise ArgumentError(f"mvc must be positive and finite, got {self.mvc!r}")
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ArgumentError(f"k must be positive and finite, got {self.k!r}")


@dataclass(frozen=True, eq=False)
class LoadProfile:
    """Piecewise-linear external load sampled at increasing times from 0."""

    times: np.ndarray
    loads: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        f = np.array(self.loads, dtype=float)
        if t.ndim != 1 or t.shape != f.shape:
            raise ArgumentError("times and loads must be 1-D and the same length")
        if t.size < 2:
            raise ArgumentError("a load profile needs at least 2 samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(f))):
            raise ArgumentError("profile contains non-finite values")
        if t[0] != 0.0:
            raise ArgumentError(f"profile must start at t=0, starts at {t[0]}")
        if np.any(np.diff(t) <= 0):
            raise ArgumentError("profile times must be strictly increasing")
        if np.any(f < 0):
            raise ArgumentError("loads must be non-negative")
        t.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "loads", f)

    @classmethod
    def constant(cls, load: float, duration: float) -> "LoadProfile":
        return cls([0.0, duration], [load, load])

    @property
    def duration(self) -> float:
        return float(self.times[-1])

    def load_at(self, t):
        return np.interp(t, self.times, self.loads)

    def _check(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0) or np.any(arr > self.duration) or np.any(np.isnan(arr)):
            raise DomainError(f"t={t} outside profile domain [0, {self.duration}]")
        return arr

    @classmethod
    def from_csv(cls, path) -> "LoadProfile":
        """Read a ``time_min,load_N`` CSV. Errors name the offending line."""
        path = Path(path)
        times, loads = [], []
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["time_min", "load_N"]:
                raise ParseError(f"{path}:1: expected header 'time_min,load_N', got {header!r}")
            for row in reader:
                line = reader.line_num
                if not row or all(not c.strip() for c in row):
                    continue
                if len(row) != 2:
                    raise ParseError(f"{path}:{line}: expected 2 columns, got {len(row)}")
                try:
                    t, f = float(row[0]), float(row[1])
                except ValueError:
                    raise ParseError(f"{path}:{line}: non-numeric value in {row!r}") from None
                if times and t <= times[-1]:
                    raise ParseError(f"{path}:{line}: time {t} not greater than previous {times[-1]}")
                times.append(t)
                loads.append(f)
        try:
            return cls(times, loads)
        except ArgumentError as exc:
            raise ParseError(f"{path}: {exc}") from None

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["time_min", "load_N"])
            for t, f in zip(self.times, self.loads):
                w.writerow([repr(float(t)), repr(float(f))])


@dataclass(frozen=True, eq=False)
class FatigueTrajectory:
    times: np.ndarray
    f_cem: np.ndarray
    u: np.ndarray
    f_integral: np.ndarray
    exhausted_at: float | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def final_f_cem(self) -> float:
        return float(self.f_cem[-1])

    @property
    def final_u(self) -> float:
        return float(self.u[-1])

    def to_csv(self, path, stride: int = 1) -> None:
        """Write one row per step, keeping every ``stride``-th row plus the last."""
        from .formatting import fmt

        if stride < 1:
            raise ArgumentError(f"stride must be >= 1, got {stride}")
        idx = list(range(0, len(self.times), stride))
        if idx[-1] != len(self.times) - 1:
            idx.append(len(self.times) - 1)
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["time_min", "f_cem_N", "u_index", "f_integral"])
            for i in idx:
                w.writerow([fmt(self.times[i]), fmt(self.f_cem[i]), fmt(self.u[i]), fmt(self.f_integral[i])])


def normalized_load_integral(profile: LoadProfile, muscle: MuscleProfile, t):
    """Trapezoidal integral of load/MVC over [0, t]; exact for linear segments."""
    t = profile._check(t)
    ts, fs = profile.times, profile.loads
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (fs[1:] + fs[:-1]) * np.diff(ts))))
    j = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, len(ts) - 2)
    ft = np.interp(t, ts, fs)
    out = (cum[j] + 0.5 * (fs[j] + ft) * (t - ts[j])) / muscle.mvc
    return float(out) if out.ndim == 0 else out


def f_cem_closed_form(profile: LoadProfile, muscle: MuscleProfile, t):
    return muscle.mvc * np.exp(-muscle.k * normalized_load_integral(profile, muscle, t))


def fatigue_index_closed_form(profile: LoadProfile, muscle: MuscleProfile, t):
    # expm1 keeps precision for small F(t)
    return np.expm1(2.0 * muscle.k * normalized_load_integral(profile, muscle, t)) / (2.0 * muscle.k)


def fatigue_index_rate(load, f_cem, mvc):
    return (mvc / f_cem) * (load / f_cem)


def f_cem_rate(load, f_cem, mvc, k):
    return -k * (f_cem / mvc) * load


def simulate(
    profile: LoadProfile,
    muscle: MuscleProfile,
    dt: float = DEFAULT_DT,
    floor: float = DEFAULT_FLOOR,
    stop_on_exhaustion: bool = True,
) -> FatigueTrajectory:
    """Fixed-step RK4 over the profile.

    The first time the load exceeds the remaining capacity is reported as
    ``exhausted_at``; by default the trajectory is truncated there. Pass
    ``stop_on_exhaustion=False`` to keep integrating past it.
    """
    if not (dt > 0 and math.isfinite(dt)):
        raise ArgumentError(f"dt must be positive, got {dt!r}")
    if not floor > 0:
        raise ArgumentError(f"floor must be positive, got {floor!r}")
    t, c, u, fi, ex = kernels.simulate_fatigue(
        profile.times, profile.loads, muscle.mvc, muscle.k, dt, floor, stop_on_exhaustion
    )
    exhausted = None if math.isnan(ex) else float(ex)
    meta = {"u_unit": U_UNIT_LABEL, "dt_min": dt, "k_per_min": muscle.k, "mvc_N": muscle.mvc, "backend": kernels.BACKEND}
    return FatigueTrajectory(np.asarray(t), np.asarray(c), np.asarray(u), np.asarray(fi), exhausted, meta)


def met_dynamic(f_mvc: float, k: float = DEFAULT_K) -> float:
    """Endurance time under constant relative load: ``-ln(f) / (k f)`` minutes."""
    if not (k > 0 and math.isfinite(k)):
        raise DomainError(f"k must be positive, got {k!r}")
    if not (0.0 < f_mvc <= 1.0):
        raise DomainError(f"f_mvc={f_mvc!r} outside (0, 1]")
    return -math.log(f_mvc) / (k * f_mvc)


def met_dynamic_array(f_mvc, k: float = DEFAULT_K) -> np.ndarray:
    f = np.asarray(f_mvc, dtype=float)
    if np.any(f <= 0) or np.any(f > 1):
        raise DomainError("f_mvc values must lie in (0, 1]")
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    return -np.log(f) / (k * f)
