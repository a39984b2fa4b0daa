"""Pure coin-position state of a walker on a fixed lattice window.

A walker started at the origin can reach at most ``T`` sites in either
direction after ``T`` steps, so the window for a run of horizon ``T``
holds the ``2T + 1`` sites ``x = -T .. T``. Site ``x`` lives at array
offset ``x + T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qwdiffusion.errors import ValidationError

_COIN_NORM_TOL = 1e-9


@dataclass
class WalkerState:
    """Amplitudes of the up and down coin components at every site.

    ``up`` and ``down`` are complex128 arrays of length ``2 * horizon + 1``.
    The state is mutable; :func:`qwdiffusion.evolution.step` advances it in
    place, swapping in the two scratch buffers kept alongside.
    """

    horizon: int
    up: np.ndarray
    down: np.ndarray
    step: int = 0
    _scratch: tuple[np.ndarray, np.ndarray] = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self):
        if self.horizon < 0:
            raise ValidationError(f"horizon must be >= 0, got {self.horizon}")
        n = 2 * self.horizon + 1
        self.up = np.ascontiguousarray(self.up, dtype=np.complex128)
        self.down = np.ascontiguousarray(self.down, dtype=np.complex128)
        if self.up.shape != (n,) or self.down.shape != (n,):
            raise ValidationError(
                f"amplitude arrays must have shape ({n},) for horizon {self.horizon}"
            )
        if not 0 <= self.step <= self.horizon:
            raise ValidationError(
                f"step {self.step} outside [0, {self.horizon}]"
            )
        if self._scratch is None:
            self._scratch = (np.zeros(n, np.complex128), np.zeros(n, np.complex128))

    @property
    def n_sites(self) -> int:
        return 2 * self.horizon + 1

    @property
    def positions(self) -> np.ndarray:
        """Lattice coordinates ``-T .. T`` of the window."""
        return np.arange(-self.horizon, self.horizon + 1)

    def offset(self, x: int) -> int:
        if not -self.horizon <= x <= self.horizon:
            raise ValidationError(f"site {x} outside window [-{self.horizon}, {self.horizon}]")
        return x + self.horizon

    @property
    def occupied(self) -> tuple[int, int]:
        """Inclusive array offsets of the light cone ``[-step, step]``."""
        return self.horizon - self.step, self.horizon + self.step

    def copy(self) -> WalkerState:
        return WalkerState(self.horizon, self.up.copy(), self.down.copy(), self.step)


def new_localized_state(coin, horizon: int) -> WalkerState:
    """Walker at the origin with coin amplitudes ``coin = (c1, c2)``.

    Raises
    ------
    ValidationError
        If ``|c1|^2 + |c2|^2`` differs from 1 by more than 1e-9 or
        ``horizon`` is negative.
    """
    c1, c2 = (complex(c) for c in coin)
    weight = abs(c1) ** 2 + abs(c2) ** 2
    if not math.isfinite(weight) or abs(weight - 1.0) > _COIN_NORM_TOL:
        raise ValidationError(f"coin amplitudes are not normalized (|c1|^2+|c2|^2 = {weight})")
    if horizon < 0:
        raise ValidationError(f"horizon must be >= 0, got {horizon}")
    n = 2 * horizon + 1
    up = np.zeros(n, np.complex128)
    down = np.zeros(n, np.complex128)
    up[horizon] = c1
    down[horizon] = c2
    return WalkerState(horizon, up, down, 0)


def norm_squared(state: WalkerState) -> float:
    u, d = state.up, state.down
    return float(np.sum(u.real**2 + u.imag**2 + d.real**2 + d.imag**2))
