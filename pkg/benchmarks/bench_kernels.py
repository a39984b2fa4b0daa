"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--steps 500] [--repeat 3]

Reports, per backend: a full homogeneous evolution with no observables
(coin-shift only), the l1 pair sum on the final state, and a full run
recording l1 at every step (the O(T^3) workload).
"""

from __future__ import annotations

import argparse
import math
import time

from qwdiffusion import Homogeneous, evolve, kernels, l1_coherence_normalized, new_localized_state


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    start = new_localized_state((1 / math.sqrt(2), 1 / math.sqrt(2)), args.steps)
    schedule = Homogeneous(math.pi / 4)
    final = evolve(start, schedule, args.steps, record=()).final

    rows = []
    for name in kernels.BACKENDS:
        kernels.set_backend(name)
        t_step, _ = _best(lambda: evolve(start, schedule, args.steps, record=()), args.repeat)
        t_l1, value = _best(lambda: l1_coherence_normalized(final), args.repeat)
        t_run, _ = _best(lambda: evolve(start, schedule, args.steps, record=("l1",)), 1)
        rows.append((name, t_step, t_l1, t_run, value))
    kernels.set_backend(kernels.BACKENDS[0])

    print(f"steps={args.steps}  sites={2 * args.steps + 1}")
    print(f"{'backend':<10}{'evolve (s)':>12}{'l1 once (s)':>14}{'l1 series (s)':>16}{'c_l1(T)':>16}")
    for name, t_step, t_l1, t_run, value in rows:
        print(f"{name:<10}{t_step:>12.4f}{t_l1:>14.5f}{t_run:>16.3f}{value:>16.12f}")
    if len(rows) == 2:
        (_, s0, l0, r0, _), (_, s1, l1, r1, _) = rows
        print(f"speedup   {s1 / s0:>11.1f}x{l1 / l0:>13.1f}x{r1 / r0:>15.1f}x")


if __name__ == "__main__":
    main()
