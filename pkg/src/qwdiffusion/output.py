"""CSV and JSON writers for time series and position distributions.

Floats are written with 12 significant digits, so output is a
deterministic function of the inputs.
"""

from __future__ import annotations

import csv
import json
import sys
from contextlib import contextmanager

import numpy as np

from qwdiffusion.ensemble import AveragedSeries
from qwdiffusion.errors import ValidationError
from qwdiffusion.evolution import Trajectory
from qwdiffusion.observables import AlphaEstimate, PositionDistribution

# (internal observable name, column prefix), in output order
_COLUMNS = (("msd", "msd"), ("l1", "c_l1"), ("re", "c_re"))
ZERO_THRESHOLD = 1e-15


def _fmt(v: float) -> str:
    return format(float(v), ".12g")


def _round(v: float) -> float:
    return float(_fmt(v))


@contextmanager
def _open(path):
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _as_averaged(series) -> AveragedSeries:
    if isinstance(series, AveragedSeries):
        return series
    if isinstance(series, Trajectory):
        zeros = {k: np.zeros_like(v) for k, v in series.series.items()}
        return AveragedSeries(series.time, dict(series.series), zeros, 1)
    raise TypeError(f"cannot emit {type(series).__name__} as a time series")


def timeseries_columns(series) -> dict[str, np.ndarray]:
    """Ordered output columns: ``step`` then value/std pairs of recorded observables."""
    avg = _as_averaged(series)
    cols = {"step": np.asarray(avg.steps)}
    for name, prefix in _COLUMNS:
        if name in avg.mean:
            cols[prefix] = avg.mean[name]
            cols[f"{prefix}_std"] = avg.std[name]
    return cols


def emit_timeseries(
    series,
    fmt: str = "csv",
    path=None,
    config: dict | None = None,
    alpha: AlphaEstimate | None = None,
) -> None:
    """Write an :class:`AveragedSeries` or :class:`Trajectory` to ``path``.

    ``path`` of ``None`` or ``"-"`` writes to stdout. The JSON form holds
    one array per column plus ``config`` (and ``alpha`` when given).
    """
    cols = timeseries_columns(series)
    if len(cols["step"]) == 0:
        raise ValidationError("refusing to emit an empty time series")
    if fmt == "csv":
        with _open(path) as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(cols)
            for i, t in enumerate(cols["step"]):
                writer.writerow(
                    [int(t)] + [_fmt(v[i]) for k, v in cols.items() if k != "step"]
                )
    elif fmt == "json":
        doc = {"config": config or {}}
        for k, v in cols.items():
            doc[k] = [int(t) for t in v] if k == "step" else [_round(x) for x in v]
        if alpha is not None:
            doc["alpha"] = {
                "alpha": _round(alpha.alpha),
                "t_min": alpha.fit_window[0],
                "t_max": alpha.fit_window[1],
                "residual": _round(alpha.residual),
            }
        with _open(path) as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        raise ValidationError(f"unknown output format {fmt!r}; choose csv or json")


def emit_distribution(dist: PositionDistribution, path=None, drop_zeros: bool = False) -> None:
    """Write ``position,probability`` rows; ``drop_zeros`` omits p < 1e-15."""
    with _open(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["position", "probability"])
        for x, p in zip(dist.positions, dist.p):
            if drop_zeros and p < ZERO_THRESHOLD:
                continue
            writer.writerow([int(x), _fmt(p)])
