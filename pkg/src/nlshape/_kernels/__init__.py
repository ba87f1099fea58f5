"""Hot pairwise kernels with backend selection.

The compiled Cython core is used when importable, the numpy fallback
otherwise.  ``NLSHAPE_KERNELS=python`` or ``=compiled`` forces a backend;
``NLSHAPE_THREADS`` sets worker threads for the outer-index blocks.  The
block partition is fixed, and block sums are combined in block order, so
results do not depend on the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _fallback

_FORCE = os.environ.get("NLSHAPE_KERNELS", "auto").lower()
if _FORCE == "python":
    _impl = _fallback
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        if _FORCE == "compiled":
            raise ImportError(
                "NLSHAPE_KERNELS=compiled but the compiled kernel extension is unavailable"
            ) from None
        _impl = _fallback

_BLOCK = 128


def backend_name() -> str:
    return "compiled" if _impl.__name__.endswith("_core") else "python"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("NLSHAPE_THREADS", "1")))
    except ValueError:
        return 1


def _run_blocks(fn, total, lo, args):
    spans = [(a, min(a + _BLOCK, total)) for a in range(lo, total, _BLOCK)]
    threads = _threads()
    if threads <= 1 or len(spans) < 2:
        return sum(fn(*args, a, b) for a, b in spans)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, *args, a, b) for a, b in spans]
        return sum(f.result() for f in futures)


def _c(a):
    return np.ascontiguousarray(a, dtype=float)


def circle_seminorm(values, kern, h) -> float:
    """Full ordered pair sum of (v_i - v_j)^2 kern(|i-j|) h^2 on a uniform circle grid."""
    values, kern = _c(values), _c(kern)
    return float(_run_blocks(_impl.circle_seminorm_block, len(values), 1, (values, kern, h)))


def pair_seminorm(nodes, weights, values, p) -> float:
    """Full ordered pair sum of w_i w_j (v_i - v_j)^2 |x_i - x_j|^(-p)."""
    nodes, weights, values = _c(nodes), _c(weights), _c(values)
    return float(_run_blocks(_impl.pair_seminorm_block, len(weights), 0, (nodes, weights, values, p)))


def circle_radial_q(rvals, chord2, h, p, n, gx, gw) -> float:
    """Ordered pair sum of the radial box integrals on a uniform circle grid."""
    rvals, chord2, gx, gw = _c(rvals), _c(chord2), _c(gx), _c(gw)
    return float(
        _run_blocks(_impl.circle_radial_q_block, len(rvals), 1, (rvals, chord2, h, p, int(n), gx, gw))
    )


def pair_radial_q(nodes, weights, rvals, p, n, gx, gw) -> float:
    nodes, weights, rvals, gx, gw = _c(nodes), _c(weights), _c(rvals), _c(gx), _c(gw)
    return float(
        _run_blocks(
            _impl.pair_radial_q_block, len(weights), 0, (nodes, weights, rvals, p, int(n), gx, gw)
        )
    )
