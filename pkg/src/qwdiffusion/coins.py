"""Coin operators and the schedules that place them on the lattice.

Every schedule uses the one-parameter family
``C(theta) = [[cos theta, i sin theta], [i sin theta, cos theta]]``
(the SU(2) coin with ``xi = 0``, ``eta = pi/2``) and differs only in
how the angle depends on step and position:

- :class:`Homogeneous`: one fixed angle.
- :class:`Accelerated`: ``theta0 * exp(-a * step)``, first step is 1.
- :class:`TemporalDisorder`: a random angle per step, shared by all sites.
- :class:`SpatialDisorder`: a random angle per site, fixed in time.

Disorder angles are uniform on ``[0, pi)`` and drawn from a Philox
counter-based generator keyed by the seed, so a table is a pure
function of ``(seed, count)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qwdiffusion.errors import ValidationError

__all__ = [
    "su2_coin",
    "homogeneous_coin",
    "accelerated_theta",
    "sample_disorder_angles",
    "CoinSchedule",
    "Homogeneous",
    "Accelerated",
    "TemporalDisorder",
    "SpatialDisorder",
    "coin_at",
]

_SEED_MASK = (1 << 64) - 1


def su2_coin(xi: float, eta: float, theta: float) -> np.ndarray:
    """Return the SU(2) coin

    ``[[e^{i xi} cos theta, e^{i eta} sin theta],
    [-e^{-i eta} sin theta, e^{-i xi} cos theta]]``

    as a complex128 array of shape (2, 2).
    """
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [complex(math.cos(xi), math.sin(xi)) * c, complex(math.cos(eta), math.sin(eta)) * s],
            [-complex(math.cos(eta), -math.sin(eta)) * s, complex(math.cos(xi), -math.sin(xi)) * c],
        ],
        dtype=np.complex128,
    )


def homogeneous_coin(theta: float) -> np.ndarray:
    # xi = 0, eta = pi/2 written out so the entries are exactly cos and i*sin
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=np.complex128)


def _coin_table(thetas: np.ndarray) -> np.ndarray:
    """Stack ``homogeneous_coin`` for each angle into shape (len, 2, 2)."""
    c = np.cos(thetas)
    s = 1j * np.sin(thetas)
    table = np.empty((thetas.shape[0], 2, 2), np.complex128)
    table[:, 0, 0] = c
    table[:, 0, 1] = s
    table[:, 1, 0] = s
    table[:, 1, 1] = c
    table.flags.writeable = False
    return table


def accelerated_theta(theta0: float, a: float, step: int) -> float:
    """Coin angle ``theta0 * exp(-a * step)`` of the accelerated walk.

    Raises
    ------
    ValidationError
        If ``a < 0`` or ``step < 1``.
    """
    if a < 0:
        raise ValidationError(f"acceleration must be >= 0, got {a}")
    if step < 1:
        raise ValidationError(f"steps are counted from 1, got {step}")
    return theta0 * math.exp(-a * step)


def sample_disorder_angles(seed: int, count: int) -> np.ndarray:
    """Draw ``count`` angles uniformly from ``[0, pi)``.

    The same ``seed`` always yields the same angles; entry ``i`` does not
    depend on ``count`` beyond it.
    """
    if count <= 0:
        raise ValidationError(f"count must be >= 1, got {count}")
    rng = np.random.Generator(np.random.Philox(key=int(seed) & _SEED_MASK))
    return rng.random(count) * math.pi


class CoinSchedule:
    """Assigns a coin to each (step, position) pair of a run.

    Subclasses are frozen dataclasses; a realized schedule never changes.
    ``horizon`` bounds the queries when set. Position-independent
    schedules may leave it as ``None``.
    """

    horizon: int | None
    deterministic: bool = True

    def theta_at(self, step: int, position: int) -> float:
        raise NotImplementedError

    def coin_at(self, step: int, position: int) -> np.ndarray:
        self._check(step, position)
        return homogeneous_coin(self.theta_at(step, position))

    def coin_field(self, step: int, horizon: int) -> np.ndarray:
        """Coins for every site of a ``2 * horizon + 1`` window at ``step``.

        Shape (2 * horizon + 1, 2, 2), read-only, possibly a stride-0
        broadcast of a single coin.
        """
        self._check(step, 0)
        if self.horizon is not None and horizon > self.horizon:
            raise ValidationError(
                f"window horizon {horizon} exceeds schedule horizon {self.horizon}"
            )
        coin = homogeneous_coin(self.theta_at(step, 0))
        return np.broadcast_to(coin, (2 * horizon + 1, 2, 2))

    def _check(self, step: int, position: int) -> None:
        if step < 1:
            raise ValidationError(f"steps are counted from 1, got {step}")
        if self.horizon is not None:
            if step > self.horizon:
                raise ValidationError(f"step {step} beyond schedule horizon {self.horizon}")
            if abs(position) > self.horizon:
                raise ValidationError(
                    f"position {position} outside window [-{self.horizon}, {self.horizon}]"
                )


@dataclass(frozen=True)
class Homogeneous(CoinSchedule):
    theta: float = math.pi / 4
    horizon: int | None = None

    def theta_at(self, step, position):
        return self.theta


@dataclass(frozen=True)
class Accelerated(CoinSchedule):
    theta0: float = math.pi / 4
    a: float = 0.02
    horizon: int | None = None

    def __post_init__(self):
        if self.a < 0:
            raise ValidationError(f"acceleration must be >= 0, got {self.a}")

    def theta_at(self, step, position):
        return accelerated_theta(self.theta0, self.a, step)


@dataclass(frozen=True)
class TemporalDisorder(CoinSchedule):
    """One random angle per step, ``angles[step - 1]``."""

    seed: int
    horizon: int
    angles: np.ndarray = field(init=False, repr=False, compare=False)
    deterministic = False

    def __post_init__(self):
        if self.horizon < 1:
            raise ValidationError(f"horizon must be >= 1, got {self.horizon}")
        angles = sample_disorder_angles(self.seed, self.horizon)
        angles.flags.writeable = False
        object.__setattr__(self, "angles", angles)

    def theta_at(self, step, position):
        return float(self.angles[step - 1])


@dataclass(frozen=True)
class SpatialDisorder(CoinSchedule):
    """One random angle per site, ``angles[position + horizon]``."""

    seed: int
    horizon: int
    angles: np.ndarray = field(init=False, repr=False, compare=False)
    _table: np.ndarray = field(init=False, repr=False, compare=False)
    deterministic = False

    def __post_init__(self):
        if self.horizon < 1:
            raise ValidationError(f"horizon must be >= 1, got {self.horizon}")
        angles = sample_disorder_angles(self.seed, 2 * self.horizon + 1)
        angles.flags.writeable = False
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "_table", _coin_table(angles))

    def theta_at(self, step, position):
        return float(self.angles[position + self.horizon])

    def coin_field(self, step, horizon):
        self._check(step, 0)
        if horizon > self.horizon:
            raise ValidationError(
                f"window horizon {horizon} exceeds schedule horizon {self.horizon}"
            )
        # site x of the smaller window is row x + self.horizon of the table
        trim = self.horizon - horizon
        return self._table[trim:trim + 2 * horizon + 1]


def coin_at(schedule: CoinSchedule, step: int, position: int) -> np.ndarray:
    """Coin applied at lattice ``position`` during ``step`` (1-based)."""
    return schedule.coin_at(step, position)
