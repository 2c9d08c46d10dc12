"""Comparison models used for dynamic validation.

* Reservoir model: capacity ``S0`` recovers toward ``S_upper`` at rate alpha
  and drains in proportion to the exerted force ``S``.
* Active motor-unit model: activated / fatigued / uncommitted unit counts
  driven by brain effort B, fatigue F and recovery R (rates in 1/second),
  with a two-exponential closed form for ``M_A / M_0``.

With no recovery and very large effort the active fraction collapses to
``exp(-F t)``, the same shape as the dynamic model's capacity under full load.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ArgumentError, SingularParameterError
from .formatting import fmt

DEFAULT_ACTIVE_F = 0.02
# relative-load window start for the limit sweep, in units of F*t; the first
# instants are the activation transient, where M_A rises from 0
LIMIT_WINDOW = (0.01, 5.0)


@dataclass(frozen=True)
class ReservoirModel:
    s_upper: float = 1.0
    alpha: float = 0.0
    beta: float = 1.0

    def __post_init__(self):
        if not self.s_upper > 0:
            raise ArgumentError(f"s_upper must be positive, got {self.s_upper!r}")
        if not (self.alpha >= 0 and self.beta >= 0):
            raise ArgumentError("alpha and beta must be non-negative")


def reservoir_rate(model: ReservoirModel, s0: float, s: float) -> float:
    return model.alpha * (model.s_upper - s0) - model.beta * s


def reservoir_step(model: ReservoirModel, s0: float, s: float, dt: float) -> float:
    """One RK4 step of ``dS0/dt = alpha (S_upper - S0) - beta S`` at constant force ``s``."""
    if not (0.0 <= s0 <= model.s_upper):
        raise ArgumentError(f"s0={s0!r} outside [0, {model.s_upper}]")
    if not s >= 0:
        raise ArgumentError(f"force s must be non-negative, got {s!r}")
    if not dt > 0:
        raise ArgumentError(f"dt must be positive, got {dt!r}")
    k1 = reservoir_rate(model, s0, s)
    k2 = reservoir_rate(model, s0 + 0.5 * dt * k1, s)
    k3 = reservoir_rate(model, s0 + 0.5 * dt * k2, s)
    k4 = reservoir_rate(model, s0 + dt * k3, s)
    out = s0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return min(model.s_upper, max(0.0, out))


def reservoir_simulate(model: ReservoirModel, s: float, duration: float, dt: float, s0: float | None = None):
    """Hold force ``s`` for ``duration`` minutes; returns ``(t, S0)`` arrays."""
    if not (duration > 0 and dt > 0):
        raise ArgumentError("duration and dt must be positive")
    n = max(1, int(math.ceil(duration / dt - 1e-9)))
    h = duration / n
    out = np.empty(n + 1)
    out[0] = model.s_upper if s0 is None else s0
    for i in range(n):
        out[i + 1] = reservoir_step(model, out[i], s, h)
    return h * np.arange(n + 1), out


@dataclass(frozen=True)
class ActiveMotorModel:
    m0: float = 1.0
    f_rate: float = DEFAULT_ACTIVE_F
    r_rate: float = 0.0
    b_rate: float = 1.0

    def __post_init__(self):
        if not self.m0 > 0:
            raise ArgumentError(f"m0 must be positive, got {self.m0!r}")
        if not self.f_rate > 0:
            raise ArgumentError(f"f_rate must be positive, got {self.f_rate!r}")
        if not (self.r_rate >= 0 and self.b_rate >= 0):
            raise ArgumentError("r_rate and b_rate must be non-negative")

    @classmethod
    def from_ratios(cls, f_rate: float, beta: float, gamma: float, m0: float = 1.0) -> "ActiveMotorModel":
        return cls(m0=m0, f_rate=f_rate, r_rate=gamma * f_rate, b_rate=beta * f_rate)

    @property
    def beta_ratio(self) -> float:
        return self.b_rate / self.f_rate

    @property
    def gamma_ratio(self) -> float:
        return self.r_rate / self.f_rate

    def is_singular(self) -> bool:
        beta, gamma = self.beta_ratio, self.gamma_ratio
        return abs(beta - 1.0 - gamma) <= 1e-9 * (1.0 + gamma)


@dataclass(frozen=True, eq=False)
class MotorTrajectory:
    t: np.ndarray
    m_a: np.ndarray
    m_f: np.ndarray
    m_uc: np.ndarray
    m0: float

    @property
    def conservation_residual(self) -> float:
        """Largest ``|M_A + M_F + M_uc - M_0|`` over the run."""
        return float(np.max(np.abs(self.m_a + self.m_f + self.m_uc - self.m0)))


def active_motor_simulate(model: ActiveMotorModel, duration: float, dt: float) -> MotorTrajectory:
    if not (dt > 0 and math.isfinite(dt)):
        raise ArgumentError(f"dt must be positive, got {dt!r}")
    if not (duration > 0 and math.isfinite(duration)):
        raise ArgumentError(f"duration must be positive, got {duration!r}")
    t, a, f, uc = kernels.simulate_active_motor(model.m0, model.f_rate, model.r_rate, model.b_rate, duration, dt)
    return MotorTrajectory(np.asarray(t), np.asarray(a), np.asarray(f), np.asarray(uc), model.m0)


def active_motor_closed_form(model: ActiveMotorModel, t):
    """Active fraction ``M_A(t) / M_0`` from the resting initial state."""
    if model.is_singular():
        raise SingularParameterError(
            f"beta={model.beta_ratio:g} equals 1 + gamma={1 + model.gamma_ratio:g}; "
            "closed form is singular, use active_motor_simulate"
        )
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ArgumentError("t must be non-negative")
    beta, gamma, f = model.beta_ratio, model.gamma_ratio, model.f_rate
    d = beta - 1.0 - gamma
    out = (
        gamma / (1.0 + gamma)
        + beta / ((1.0 + gamma) * d) * np.exp(-(1.0 + gamma) * f * t)
        - (beta - gamma) / d * np.exp(-beta * f * t)
    )
    return float(out) if out.ndim == 0 else out


def limit_sweep(betas=(1e2, 1e3, 1e4), f_rate: float = DEFAULT_ACTIVE_F, n_points: int = 2001):
    """Max deviation of the closed form from ``exp(-F t)`` with no recovery, per beta.

    Measured over ``F t`` in ``LIMIT_WINDOW``.
    """
    ft = np.linspace(LIMIT_WINDOW[0], LIMIT_WINDOW[1], n_points)
    t = ft / f_rate
    target = np.exp(-ft)
    rows = []
    for beta in betas:
        model = ActiveMotorModel.from_ratios(f_rate, beta, 0.0)
        rows.append((float(beta), float(np.max(np.abs(active_motor_closed_form(model, t) - target)))))
    return rows


@dataclass(frozen=True, eq=False)
class ComparisonCurve:
    t_min: np.ndarray
    dynamic: np.ndarray
    active_motor: np.ndarray

    @property
    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.dynamic - self.active_motor)))

    def write_csv(self, path) -> None:
        write_curve_csv(path, self.t_min, self.dynamic, self.active_motor)


def mvc_comparison_curve(k: float, f_rate: float, duration: float, n_points: int = 601) -> ComparisonCurve:
    """Capacity under full load: ``exp(-k t)`` vs the active-motor ``exp(-F t)``.

    ``k`` is per minute, ``f_rate`` per second; the shared axis is minutes.
    """
    if not duration > 0:
        raise ArgumentError(f"duration must be positive, got {duration!r}")
    t = np.linspace(0.0, duration, n_points)
    return ComparisonCurve(t, np.exp(-k * t), np.exp(-f_rate * 60.0 * t))


def write_curve_csv(path, t, a, b) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "value_a", "value_b"])
        for row in zip(t, a, b):
            w.writerow([fmt(v) for v in row])
