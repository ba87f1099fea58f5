"""Numpy implementations of the hot pairwise kernels.

Same block signatures as the compiled core; each block function sums a
contiguous range of outer indices so results are independent of how the
ranges are scheduled.
"""

from __future__ import annotations

import numpy as np


def circle_seminorm_block(values, kern, h, start, stop):
    """sum_{m in [start,stop)} kern[m-1] * sum_i (v_i - v_{i+m})^2 * h^2."""
    acc = 0.0
    for m in range(start, stop):
        d = values - np.roll(values, -m)
        acc += kern[m - 1] * float(np.dot(d, d))
    return acc * h * h


def pair_seminorm_block(nodes, weights, values, p, start, stop):
    """sum_{i in rows} w_i sum_{j != i} w_j (v_i - v_j)^2 |x_i - x_j|^(-p)."""
    acc = 0.0
    for i in range(start, stop):
        d2 = np.sum((nodes - nodes[i]) ** 2, axis=1)
        d2[i] = 1.0
        f = weights * (values - values[i]) ** 2 * d2 ** (-0.5 * p)
        f[i] = 0.0
        acc += weights[i] * float(np.sum(f))
    return acc


def circle_radial_q_block(rvals, chord2, h, p, n, gx, gw, start, stop):
    """Ordered pair sum of the boxed radial double integral on a uniform circle grid.

    For each offset m the inner integral over [R_{i+m}, R_i]^2 of
    (r*rho)^(n-1) / ((r-rho)^2 + r*rho*theta^2)^(p/2) is evaluated by the
    fixed tensor Gauss rule (gx, gw) on [0,1]^2.
    """
    acc = 0.0
    for m in range(start, stop):
        rj = np.roll(rvals, -m)
        dr = rvals - rj
        ra = rj[:, None] + gx[None, :] * dr[:, None]
        prod = ra[:, :, None] * ra[:, None, :]
        den = (ra[:, :, None] - ra[:, None, :]) ** 2 + prod * chord2[m - 1]
        f = prod ** (n - 1) * den ** (-0.5 * p)
        inner = np.einsum("a,b,iab->i", gw, gw, f)
        acc += float(np.dot(dr * dr, inner))
    return acc * h * h


def pair_radial_q_block(nodes, weights, rvals, p, n, gx, gw, start, stop):
    acc = 0.0
    for i in range(start, stop):
        d2 = np.sum((nodes - nodes[i]) ** 2, axis=1)
        d2[i] = 1.0
        dr = rvals[i] - rvals
        ra = rvals[None, :] + gx[:, None] * dr[None, :]  # (G, N)
        prod = ra[:, None, :] * ra[None, :, :]
        den = (ra[:, None, :] - ra[None, :, :]) ** 2 + prod * d2[None, None, :]
        f = prod ** (n - 1) * den ** (-0.5 * p)
        inner = np.einsum("a,b,abj->j", gw, gw, f)
        inner[i] = 0.0
        acc += weights[i] * float(np.sum(weights * dr * dr * inner))
    return acc
