"""Disorder ensembles: seeded trials, run in parallel, averaged per step.

Each trial owns its state and schedule, so trials run on a thread pool
(the compiled kernels release the GIL). Results are gathered and
reduced in trial-index order, which keeps the averages bit-identical
for any number of workers.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from qwdiffusion.coins import (
    Accelerated,
    CoinSchedule,
    Homogeneous,
    SpatialDisorder,
    TemporalDisorder,
)
from qwdiffusion.errors import ValidationError, WalkError
from qwdiffusion.evolution import OBSERVABLES, evolve
from qwdiffusion.observables import PositionDistribution, probability_distribution
from qwdiffusion.state import new_localized_state

log = logging.getLogger(__name__)

WALKS = ("homogeneous", "accelerated", "temporal", "spatial")
_U64 = (1 << 64) - 1
_SYMMETRIC_COIN = (1 / math.sqrt(2), 1 / math.sqrt(2))


class TrialError(WalkError):
    """A single trial of an ensemble failed."""

    def __init__(self, trial_index: int, cause: BaseException):
        super().__init__(f"trial {trial_index} failed: {cause}")
        self.trial_index = trial_index


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """Mix ``(master_seed, trial_index)`` into an independent 64-bit seed."""
    if trial_index < 0:
        raise ValidationError(f"trial index must be >= 0, got {trial_index}")
    seq = np.random.SeedSequence(int(master_seed) & _U64, spawn_key=(trial_index,))
    return int(seq.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class EnsembleConfig:
    walk: str
    steps: int
    trials: int = 1
    master_seed: int = 0
    theta0: float = math.pi / 4
    accel: float = 0.02
    observables: tuple[str, ...] = ("msd",)
    coin: tuple[complex, complex] = _SYMMETRIC_COIN
    # also average the final-step position distribution over trials
    final_distribution: bool = False

    def __post_init__(self):
        if self.walk not in WALKS:
            raise ValidationError(f"unknown walk {self.walk!r}; choose from {WALKS}")
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if self.steps < 1:
            raise ValidationError(f"steps must be >= 1, got {self.steps}")
        for name in self.observables:
            if name not in OBSERVABLES:
                raise ValidationError(f"unknown observable {name!r}; choose from {OBSERVABLES}")


def make_schedule(config: EnsembleConfig, seed: int) -> CoinSchedule:
    if config.walk == "homogeneous":
        return Homogeneous(config.theta0, horizon=config.steps)
    if config.walk == "accelerated":
        return Accelerated(config.theta0, config.accel, horizon=config.steps)
    if config.walk == "temporal":
        return TemporalDisorder(seed, config.steps)
    return SpatialDisorder(seed, config.steps)


@dataclass
class AveragedSeries:
    """Per-step trial mean and sample standard deviation of each observable."""

    steps: np.ndarray
    mean: dict[str, np.ndarray]
    std: dict[str, np.ndarray]
    trials: int
    distribution: PositionDistribution | None = field(default=None)


def _run_trial(config: EnsembleConfig, index: int):
    try:
        schedule = make_schedule(config, derive_trial_seed(config.master_seed, index))
        start = new_localized_state(config.coin, config.steps)
        traj = evolve(start, schedule, config.steps, record=config.observables)
    except Exception as exc:
        raise TrialError(index, exc) from exc
    p = probability_distribution(traj.final).p if config.final_distribution else None
    return traj.series, p


def run_ensemble(config: EnsembleConfig, workers: int | None = None) -> AveragedSeries:
    """Evolve ``config.trials`` trials and average their recorded series.

    Homogeneous and accelerated schedules are identical in every trial, so
    a single trajectory is evolved and its spread is reported as zero.
    """
    steps = np.arange(config.steps + 1)
    deterministic = config.walk in ("homogeneous", "accelerated")
    if deterministic:
        series, p = _run_trial(config, 0)
        dist = PositionDistribution(config.steps, p) if p is not None else None
        zeros = {name: np.zeros(config.steps + 1) for name in series}
        return AveragedSeries(steps, series, zeros, config.trials, dist)

    workers = workers or os.cpu_count() or 1
    log.debug("running %d %s trials on %d workers", config.trials, config.walk, workers)
    if workers == 1:
        results = [_run_trial(config, i) for i in range(config.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_trial(config, i), range(config.trials)))

    mean, std = {}, {}
    for name in config.observables:
        stacked = np.stack([series[name] for series, _ in results])
        mean[name] = stacked.mean(axis=0)
        std[name] = (
            stacked.std(axis=0, ddof=1) if config.trials > 1 else np.zeros(config.steps + 1)
        )
    dist = None
    if config.final_distribution:
        dist = PositionDistribution(
            config.steps, np.stack([p for _, p in results]).mean(axis=0)
        )
    return AveragedSeries(steps, mean, std, config.trials, dist)
