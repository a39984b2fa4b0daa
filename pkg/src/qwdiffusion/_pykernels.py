"""NumPy implementations of the hot loops, used when the extension is absent."""

from __future__ import annotations

import numpy as np

# rows of the pair matrix materialized at once by the l1 sum
_BLOCK = 256


def coin_shift(up, down, out_up, out_down, coins, lo, hi):
    out_up[lo - 1:hi + 2] = 0
    out_down[lo - 1:hi + 2] = 0
    u = up[lo:hi + 1]
    d = down[lo:hi + 1]
    c = coins[lo:hi + 1]
    out_up[lo - 1:hi] = c[:, 0, 0] * u + c[:, 0, 1] * d
    out_down[lo + 1:hi + 2] = c[:, 1, 0] * u + c[:, 1, 1] * d


def l1_offdiag_sum(up, down, lo, hi):
    u = up[lo:hi + 1]
    d = down[lo:hi + 1]
    n = u.shape[0]
    total = 0.0
    for start in range(1, n, _BLOCK):
        stop = min(start + _BLOCK, n)
        block = np.abs(
            np.outer(u[start:stop], u[:stop].conj())
            + np.outer(d[start:stop], d[:stop].conj())
        )
        below = np.tri(stop - start, stop, k=start - 1, dtype=bool)
        total += float(block[below].sum())
    return total
