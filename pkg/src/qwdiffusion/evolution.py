"""Stepping a walker: coin on every site, then the coin-conditioned shift.

The shift moves the up component one site left and the down component
one site right. Each step touches only the current light cone, so a
step costs O(t) rather than the O(t^2) of a dense unitary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qwdiffusion import coherence, kernels
from qwdiffusion.coins import CoinSchedule
from qwdiffusion.errors import CapacityError, ValidationError
from qwdiffusion.observables import PositionDistribution, msd, probability_distribution
from qwdiffusion.state import WalkerState

OBSERVABLES = ("msd", "l1", "re")
DEFAULT_SNAPSHOT_CAP = 64


def step(state: WalkerState, schedule: CoinSchedule) -> WalkerState:
    """Advance ``state`` by one step in place and return it.

    Raises
    ------
    CapacityError
        If the state already sits at the edge of its window.
    """
    if state.step >= state.horizon:
        raise CapacityError(
            f"state is at step {state.step} of horizon {state.horizon}; no room to step"
        )
    coins = schedule.coin_field(state.step + 1, state.horizon)
    lo, hi = state.occupied
    out_up, out_down = state._scratch
    kernels.coin_shift(state.up, state.down, out_up, out_down, coins, lo, hi)
    state._scratch = (state.up, state.down)
    state.up, state.down = out_up, out_down
    state.step += 1
    return state


def _observe(name: str, state: WalkerState) -> float:
    if name == "msd":
        return msd(probability_distribution(state))
    if name == "l1":
        return coherence.l1_coherence_normalized(state)
    if name == "re":
        return coherence.relative_entropy_coherence(state)
    raise ValidationError(f"unknown observable {name!r}; choose from {OBSERVABLES}")


@dataclass
class Trajectory:
    """Per-step observables of one run, steps ``0 .. steps`` inclusive."""

    steps: int
    final: WalkerState
    series: dict[str, np.ndarray] = field(default_factory=dict)
    snapshots: list[WalkerState] = field(default_factory=list)

    @property
    def time(self) -> np.ndarray:
        return np.arange(self.steps + 1)

    def distribution(self) -> PositionDistribution:
        return probability_distribution(self.final)


def evolve(
    initial: WalkerState,
    schedule: CoinSchedule,
    steps: int,
    record=("msd",),
    snapshots: bool = False,
    snapshot_cap: int = DEFAULT_SNAPSHOT_CAP,
) -> Trajectory:
    """Run ``steps`` steps from a copy of ``initial``.

    ``record`` names observables from :data:`OBSERVABLES` to evaluate
    after every step, including step 0. With ``snapshots`` set, copies
    of the state are kept for steps ``0 .. min(steps, snapshot_cap)``.
    """
    record = tuple(record)
    for name in record:
        if name not in OBSERVABLES:
            raise ValidationError(f"unknown observable {name!r}; choose from {OBSERVABLES}")
    if steps < 0 or initial.step + steps > initial.horizon:
        raise CapacityError(
            f"cannot take {steps} steps from step {initial.step} within horizon {initial.horizon}"
        )
    state = initial.copy()
    series = {name: np.empty(steps + 1) for name in record}
    kept = []
    for t in range(steps + 1):
        if t:
            step(state, schedule)
        for name in record:
            series[name][t] = _observe(name, state)
        if snapshots and t <= snapshot_cap:
            kept.append(state.copy())
    return Trajectory(steps, state, series, kept)


def measured_walk_distribution(steps: int) -> PositionDistribution:
    """Position distribution of a walk whose coin is measured every step.

    Measurement removes all interference, leaving the symmetric binomial
    random walk ``p(x) = C(t, (t + x) / 2) / 2^t`` for ``x + t`` even.
    """
    if steps < 0:
        raise ValidationError(f"steps must be >= 0, got {steps}")
    p = np.zeros(2 * steps + 1)
    total = 2**steps
    for k in range(steps + 1):
        # k right moves land on x = 2k - t, offset 2k; int / int rounds once
        p[2 * k] = math.comb(steps, k) / total
    return PositionDistribution(steps, p)
