"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the NumPy
fallback is bound. Call sites must go through this module's attributes
(``kernels.coin_shift``) so that :func:`set_backend` takes effect.

Kernel contracts
----------------
coin_shift(up, down, out_up, out_down, coins, lo, hi)
    For every array offset ``i`` in ``[lo, hi]`` apply ``coins[i]`` to
    ``(up[i], down[i])``; write the up component to ``out_up[i - 1]`` and
    the down component to ``out_down[i + 1]``. Offsets ``lo - 1 .. hi + 1``
    of both outputs are overwritten; requires ``lo >= 1`` and
    ``hi <= len(up) - 2``.
l1_offdiag_sum(up, down, lo, hi)
    Sum of ``|up[j] conj(up[k]) + down[j] conj(down[k])|`` over
    ``lo <= k < j <= hi``.
"""

from __future__ import annotations

from types import ModuleType

from qwdiffusion import _pykernels

try:
    from qwdiffusion import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

BACKENDS = ("compiled", "python") if _compiled is not None else ("python",)

backend: str
coin_shift = _pykernels.coin_shift
l1_offdiag_sum = _pykernels.l1_offdiag_sum


def _module_for(name: str) -> ModuleType:
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            raise ImportError("qwdiffusion._kernels is not built")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def set_backend(name: str) -> None:
    """Bind the kernels of backend ``name`` ("compiled" or "python")."""
    global backend, coin_shift, l1_offdiag_sum
    mod = _module_for(name)
    coin_shift = mod.coin_shift
    l1_offdiag_sum = mod.l1_offdiag_sum
    backend = name


set_backend(BACKENDS[0])
