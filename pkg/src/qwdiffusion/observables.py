"""Position statistics: distributions, moments, MSD and its growth exponent."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qwdiffusion.errors import ConsistencyError, DivergenceError, ValidationError

# rounding noise tolerated below zero before an MSD counts as inconsistent
_MSD_NEGATIVE_TOL = 1e-12


@dataclass(frozen=True)
class PositionDistribution:
    """Probability ``p[x + horizon]`` of finding the walker at site ``x``."""

    horizon: int
    p: np.ndarray

    def __post_init__(self):
        if self.p.shape != (2 * self.horizon + 1,):
            raise ValidationError(
                f"expected {2 * self.horizon + 1} probabilities, got shape {self.p.shape}"
            )

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.horizon, self.horizon + 1)

    def __getitem__(self, x: int) -> float:
        if abs(x) > self.horizon:
            return 0.0
        return float(self.p[x + self.horizon])


def probability_distribution(state) -> PositionDistribution:
    u, d = state.up, state.down
    return PositionDistribution(
        state.horizon, u.real**2 + u.imag**2 + d.real**2 + d.imag**2
    )


def moment(dist: PositionDistribution, n: int) -> float:
    """Raw moment ``sum_x x^n p(x)``."""
    if n <= 0:
        raise ValidationError(f"moment order must be >= 1, got {n}")
    x = dist.positions.astype(float)
    return float(np.dot(x**n, dist.p))


def msd(dist: PositionDistribution) -> float:
    """Mean squared displacement ``<x^2> - <x>^2``.

    Raises
    ------
    ConsistencyError
        If the value falls below -1e-12, which takes negative probabilities.
    """
    # central form equals <x^2> - <x>^2 but cannot cancel below zero for p >= 0
    x = dist.positions.astype(float)
    dx = x - moment(dist, 1)
    value = float(np.dot(dx * dx, dist.p))
    if value < 0.0:
        if value < -_MSD_NEGATIVE_TOL:
            raise ConsistencyError(f"negative mean squared displacement {value}")
        return 0.0
    return value


@dataclass(frozen=True)
class MsdSeries:
    steps: np.ndarray
    msd: np.ndarray

    def __post_init__(self):
        if len(self.steps) != len(self.msd):
            raise ValidationError("steps and msd must have equal length")


@dataclass(frozen=True)
class AlphaEstimate:
    """Growth exponent from ``msd ~ t^alpha`` with its log-log RMS residual."""

    alpha: float
    fit_window: tuple[int, int]
    residual: float


def fit_alpha(series: MsdSeries, window: tuple[int, int] | None = None) -> AlphaEstimate:
    """Least-squares slope of ``ln msd`` against ``ln t`` over ``window``.

    ``window = (t_min, t_max)`` is inclusive and defaults to the whole
    series from ``t = 1``.

    Raises
    ------
    ValidationError
        If the window is empty, starts before ``t = 1`` or runs past the
        series, or if any MSD inside it is not positive.
    """
    steps = np.asarray(series.steps)
    values = np.asarray(series.msd, dtype=float)
    if window is None:
        window = (1, int(steps.max()))
    t_min, t_max = (int(w) for w in window)
    if t_min < 1:
        raise ValidationError(f"fit window must start at t >= 1, got {t_min}")
    if t_max > steps.max() or t_max <= t_min:
        raise ValidationError(
            f"fit window ({t_min}, {t_max}) not inside series range (1, {steps.max()})"
        )
    mask = (steps >= t_min) & (steps <= t_max)
    t = steps[mask].astype(float)
    y = values[mask]
    if t.size < 2:
        raise ValidationError(f"fit window ({t_min}, {t_max}) holds fewer than two points")
    bad = np.flatnonzero(~(y > 0))
    if bad.size:
        raise ValidationError(
            f"msd must be positive to take logs; got {y[bad[0]]} at step {int(t[bad[0]])}"
        )
    lt, ly = np.log(t), np.log(y)
    dt = lt - lt.mean()
    slope = float(np.dot(dt, ly - ly.mean()) / np.dot(dt, dt))
    intercept = ly.mean() - slope * lt.mean()
    residual = float(np.sqrt(np.mean((ly - (intercept + slope * lt)) ** 2)))
    return AlphaEstimate(slope, (t_min, t_max), residual)


def localization_length(theta: float) -> float:
    """Localization length ``-1 / ln(cos theta)`` for ``0 < theta < pi/2``.

    Raises
    ------
    DivergenceError
        At ``theta = 0`` (or so close that ``cos theta`` rounds to 1).
    ValidationError
        When ``theta`` lies outside ``[0, pi/2)``, where ``cos theta``
        is not in ``(0, 1]``.
    """
    if not 0.0 <= theta < math.pi / 2:
        raise ValidationError(f"theta = {theta} outside (0, pi/2); localization length undefined")
    c = math.cos(theta)
    if c >= 1.0:
        raise DivergenceError(f"localization length diverges at theta = {theta}")
    return -1.0 / math.log(c)
