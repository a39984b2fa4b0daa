"""Command-line entry point: one walk family per invocation.

Examples
--------
::

    qwdiffusion --walk homogeneous --steps 100 --theta0 pi/4 --observables msd,alpha
    qwdiffusion --walk spatial --trials 100 --seed 7 --observables msd,l1,re \\
        --format json --output spatial.json
    qwdiffusion --walk accelerated --accel 0.02 --distribution acc.csv --drop-zeros
    qwdiffusion --config run.json --steps 500
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import re
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from qwdiffusion import kernels
from qwdiffusion.ensemble import AveragedSeries, EnsembleConfig, run_ensemble
from qwdiffusion.errors import ValidationError, WalkError
from qwdiffusion.evolution import measured_walk_distribution
from qwdiffusion.observables import MsdSeries, fit_alpha, msd
from qwdiffusion.output import emit_distribution, emit_timeseries

log = logging.getLogger("qwdiffusion")

WALKS = ("homogeneous", "accelerated", "temporal", "spatial", "classical")
OBSERVABLES = ("prob", "msd", "alpha", "l1", "re")
FORMATS = ("csv", "json")
_DISORDERED = ("temporal", "spatial")
_COHERENCE = ("l1", "re")

_PI_ANGLE = re.compile(
    r"""^\s*(?P<coef>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*
        (?:/\s*(?P<div>\d+(?:\.\d*)?|\.\d+))?\s*$""",
    re.VERBOSE,
)


class UsageError(ValidationError):
    """Bad command-line or config-file input."""


@dataclass(frozen=True)
class RunConfig:
    walk: str = "homogeneous"
    steps: int = 100
    theta0: float = math.pi / 4
    accel: float | None = None
    trials: int = 1
    seed: int = 0
    observables: tuple[str, ...] = ("msd",)
    fit_window: tuple[int, int] | None = None
    output: str | None = None
    format: str = "csv"
    distribution: str | None = None
    drop_zeros: bool = False

    def echo(self) -> dict:
        """JSON-ready dict that :func:`parse_config` reads back."""
        d = asdict(self)
        d["observables"] = list(self.observables)
        d["fit_window"] = list(self.fit_window) if self.fit_window else None
        return d

    @property
    def window(self) -> tuple[int, int]:
        return self.fit_window or (1, self.steps)


def parse_angle(token) -> float:
    """Angle in radians from a number or a multiple of pi ("pi/4", "3*pi/4")."""
    if isinstance(token, bool):
        raise UsageError(f"not an angle: {token!r}")
    if isinstance(token, (int, float)):
        value = float(token)
    else:
        m = _PI_ANGLE.match(str(token))
        if m:
            coef = m.group("coef")
            coef = {"": 1.0, "+": 1.0, "-": -1.0}[coef] if coef in ("", "+", "-") else float(coef)
            div = float(m.group("div")) if m.group("div") else 1.0
            if div == 0:
                raise UsageError(f"not an angle: {token!r}")
            value = coef * math.pi / div
        else:
            try:
                value = float(token)
            except ValueError:
                raise UsageError(f"not an angle: {token!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"not an angle: {token!r}")
    return value


def _parse_observables(token) -> tuple[str, ...]:
    items = token if isinstance(token, (list, tuple)) else str(token).split(",")
    names = [str(s).strip() for s in items if str(s).strip()]
    for name in names:
        if name not in OBSERVABLES:
            raise UsageError(f"unknown observable {name!r}; choose from {', '.join(OBSERVABLES)}")
    # canonical order so equivalent selections compare equal
    return tuple(o for o in OBSERVABLES if o in names)


def _parse_int(token, what: str) -> int:
    if isinstance(token, bool):
        raise UsageError(f"{what} must be an integer, got {token!r}")
    try:
        value = int(token)
    except (TypeError, ValueError):
        raise UsageError(f"{what} must be an integer, got {token!r}") from None
    if isinstance(token, float) and token != value:
        raise UsageError(f"{what} must be an integer, got {token!r}")
    return value


def _parse_window(token) -> tuple[int, int]:
    parts = token if isinstance(token, (list, tuple)) else re.split(r"[,:]", str(token))
    if len(parts) != 2:
        raise UsageError(f"fit window must be 'TMIN,TMAX', got {token!r}")
    return _parse_int(parts[0], "fit window"), _parse_int(parts[1], "fit window")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="qwdiffusion",
        description="Simulate 1D discrete-time quantum walks and emit MSD / coherence series.",
        argument_default=argparse.SUPPRESS,
    )
    p.add_argument("--config", help="JSON file of RunConfig fields; flags override it")
    p.add_argument("--walk", help=f"one of {', '.join(WALKS)}")
    p.add_argument("--steps", help="number of steps (default 100)")
    p.add_argument("--theta0", help="coin angle, radians or e.g. pi/4 (default pi/4)")
    p.add_argument("--accel", help="acceleration a of the accelerated walk (default 0.02)")
    p.add_argument("--trials", help="disorder trials (default 100 for disordered walks, else 1)")
    p.add_argument("--seed", help="master seed (default 0)")
    p.add_argument("--observables", help=f"comma list from {', '.join(OBSERVABLES)} (default msd)")
    p.add_argument("--fit-window", dest="fit_window", help="TMIN,TMAX for alpha (default 1,steps)")
    p.add_argument("--output", "-o", help="time-series file (default stdout)")
    p.add_argument("--format", help="csv or json (default csv)")
    p.add_argument("--distribution", help="write the final position distribution as CSV here")
    p.add_argument("--drop-zeros", dest="drop_zeros", action="store_true",
                   help="omit sites with p < 1e-15 from the distribution file")
    p.add_argument("--workers", type=int, help="threads for ensemble trials")
    p.add_argument("--backend", choices=kernels.BACKENDS, help="kernel backend")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path!r} is not valid JSON: {exc}") from None
    # an emitted JSON result carries its run configuration under "config"
    if isinstance(doc, dict) and isinstance(doc.get("config"), dict):
        doc = doc["config"]
    if not isinstance(doc, dict):
        raise UsageError(f"config {path!r} must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    for key in doc:
        if key not in known:
            raise UsageError(f"unknown config key {key!r} in {path!r}")
    return doc


def _split_args(argv) -> tuple[dict, dict]:
    ns = vars(build_parser().parse_args(argv))
    extras = {k: ns.pop(k) for k in ("workers", "backend", "verbose") if k in ns}
    return ns, extras


def parse_config(argv=None) -> RunConfig:
    """Build a :class:`RunConfig` from flags, layered over an optional ``--config`` file.

    Raises
    ------
    UsageError
        On unknown walks or observables, malformed numbers or angles,
        ``trials < 1`` and conflicting options.
    """
    flags, _ = _split_args(sys.argv[1:] if argv is None else argv)
    return _resolve(flags)


def _resolve(flags: dict) -> RunConfig:
    raw = {}
    if "config" in flags:
        raw.update(_load_config_file(flags.pop("config")))
    raw.update(flags)

    walk = str(raw.get("walk", "homogeneous"))
    if walk not in WALKS:
        raise UsageError(f"unknown walk {walk!r}; choose from {', '.join(WALKS)}")
    steps = _parse_int(raw.get("steps", 100), "steps")
    if steps < 1:
        raise UsageError(f"steps must be >= 1, got {steps}")
    theta0 = parse_angle(raw.get("theta0", math.pi / 4))

    accel = raw.get("accel")
    if accel is not None:
        if walk != "accelerated":
            raise UsageError(f"--accel {accel} only applies to --walk accelerated")
        try:
            accel = float(accel)
        except (TypeError, ValueError):
            raise UsageError(f"accel must be a number, got {accel!r}") from None
        if not accel >= 0 or not math.isfinite(accel):
            raise UsageError(f"accel must be a finite number >= 0, got {accel!r}")
    elif walk == "accelerated":
        accel = 0.02

    default_trials = 100 if walk in _DISORDERED else 1
    trials = _parse_int(raw.get("trials", default_trials), "trials")
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    if walk == "classical" and trials != 1:
        raise UsageError(f"--trials {trials} conflicts with --walk classical (analytic baseline)")
    seed = _parse_int(raw.get("seed", 0), "seed")

    observables = _parse_observables(raw.get("observables", "msd"))
    distribution = raw.get("distribution")
    if distribution is not None and "prob" not in observables:
        observables = _parse_observables(observables + ("prob",))
    if "prob" in observables and distribution is None:
        raise UsageError("observable 'prob' needs --distribution PATH")
    if not [o for o in observables if o != "prob"]:
        observables = _parse_observables(observables + ("msd",))
    if walk == "classical":
        bad = [o for o in observables if o in _COHERENCE]
        if bad:
            raise UsageError(
                f"observable {bad[0]!r} is undefined for --walk classical (no coherence)"
            )

    fit_window = raw.get("fit_window")
    if fit_window is not None:
        fit_window = _parse_window(fit_window)
        if not 1 <= fit_window[0] < fit_window[1] <= steps:
            raise UsageError(f"fit window {fit_window} must satisfy 1 <= TMIN < TMAX <= {steps}")

    fmt = str(raw.get("format", "csv"))
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}; choose csv or json")
    drop_zeros = raw.get("drop_zeros", False)
    if not isinstance(drop_zeros, bool):
        raise UsageError(f"drop_zeros must be true or false, got {drop_zeros!r}")
    output = raw.get("output")

    return RunConfig(
        walk=walk,
        steps=steps,
        theta0=theta0,
        accel=accel,
        trials=trials,
        seed=seed,
        observables=observables,
        fit_window=fit_window,
        output=None if output is None else str(output),
        format=fmt,
        distribution=None if distribution is None else str(distribution),
        drop_zeros=drop_zeros,
    )


def _classical_series(config: RunConfig) -> AveragedSeries:
    values = np.array([msd(measured_walk_distribution(t)) for t in range(config.steps + 1)])
    return AveragedSeries(
        np.arange(config.steps + 1), {"msd": values}, {"msd": np.zeros_like(values)}, 1,
        measured_walk_distribution(config.steps),
    )


def run(config: RunConfig, workers: int | None = None) -> None:
    """Execute ``config`` and write its outputs."""
    if config.walk == "classical":
        series = _classical_series(config)
    else:
        record = tuple(o for o in ("msd", "l1", "re") if o in config.observables)
        if "alpha" in config.observables and "msd" not in record:
            record = ("msd",) + record
        ens = EnsembleConfig(
            walk=config.walk,
            steps=config.steps,
            trials=config.trials,
            master_seed=config.seed,
            theta0=config.theta0,
            accel=config.accel if config.accel is not None else 0.0,
            observables=record,
            final_distribution="prob" in config.observables,
        )
        series = run_ensemble(ens, workers=workers)

    alpha = None
    if "alpha" in config.observables:
        alpha = fit_alpha(MsdSeries(series.steps, series.mean["msd"]), config.window)
        print(
            f"alpha {alpha.alpha:.6f} window {alpha.fit_window[0]}..{alpha.fit_window[1]}"
            f" residual {alpha.residual:.6g}",
            file=sys.stderr,
        )
    if "msd" not in config.observables:
        series.mean.pop("msd", None)
        series.std.pop("msd", None)
    if series.mean:
        emit_timeseries(series, config.format, config.output, config.echo(), alpha)
    if "prob" in config.observables:
        emit_distribution(series.distribution, config.distribution, config.drop_zeros)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        flags, extras = _split_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if extras.get("verbose") else logging.WARNING,
            format="%(name)s: %(message)s",
        )
        if "backend" in extras:
            kernels.set_backend(extras["backend"])
        config = _resolve(flags)
        log.debug("resolved %s", config)
        run(config, workers=extras.get("workers"))
    except UsageError as exc:
        print(f"qwdiffusion: usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qwdiffusion: io error: {exc}", file=sys.stderr)
        return 1
    except WalkError as exc:
        print(f"qwdiffusion: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
