"""Real orthonormal harmonics on the circle and on the 2-sphere.

Circle (n = 2): Y_0 = 1/sqrt(2 pi), and for k >= 1 the pair
cos(k t)/sqrt(pi), sin(k t)/sqrt(pi), indexed i = 1, 2.

Sphere (n = 3): fully normalized real spherical harmonics built from
associated Legendre recurrences, indexed i = 1 (m = 0), i = 2m
(cos m phi), i = 2m+1 (sin m phi).

For n >= 4 only the multiplicity d(k) is provided; the spectral theory
needs nothing else there.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "multiplicity",
    "circle_harmonic",
    "circle_harmonic_deriv",
    "sphere_harmonic",
    "sphere_harmonic_grad",
]

_SQRT_PI = math.sqrt(math.pi)


def multiplicity(n: int, k: int) -> int:
    """Dimension d(k) of the space of degree-k spherical harmonics in R^n."""
    if k < 0:
        raise ValueError(f"degree k must be >= 0, got {k}")
    if k == 0:
        return 1
    if k == 1:
        return n
    return math.comb(n + k - 1, k) - math.comb(n + k - 3, k - 2)


def circle_harmonic(k: int, i: int, theta):
    theta = np.asarray(theta, dtype=float)
    if k == 0:
        if i != 1:
            raise ValueError("degree 0 has a single basis element (i = 1)")
        return np.full_like(theta, 1.0 / math.sqrt(2.0 * math.pi))
    if i == 1:
        return np.cos(k * theta) / _SQRT_PI
    if i == 2:
        return np.sin(k * theta) / _SQRT_PI
    raise ValueError(f"circle degree {k} has i in {{1, 2}}, got {i}")


def circle_harmonic_deriv(k: int, i: int, theta):
    theta = np.asarray(theta, dtype=float)
    if k == 0:
        return np.zeros_like(theta)
    if i == 1:
        return -k * np.sin(k * theta) / _SQRT_PI
    if i == 2:
        return k * np.cos(k * theta) / _SQRT_PI
    raise ValueError(f"circle degree {k} has i in {{1, 2}}, got {i}")


def _legendre_norm(K: int, x: np.ndarray) -> np.ndarray:
    """Fully normalized associated Legendre table, shape (K+1, K+1, len(x)).

    table[l, m] integrates to 1 against the factor handling below; built
    with the standard stable (m, m) -> (m+1, m) -> upward-in-l recurrences.
    """
    x = np.asarray(x, dtype=float)
    sx = np.sqrt(np.maximum(0.0, 1.0 - x * x))
    tab = np.zeros((K + 1, K + 1) + x.shape)
    tab[0, 0] = 1.0 / math.sqrt(4.0 * math.pi)
    for m in range(1, K + 1):
        tab[m, m] = -math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * sx * tab[m - 1, m - 1]
    for m in range(K):
        tab[m + 1, m] = math.sqrt(2.0 * m + 3.0) * x * tab[m, m]
    for m in range(K + 1):
        for l in range(m + 2, K + 1):
            a = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            tab[l, m] = a * (x * tab[l - 1, m] - b * tab[l - 2, m])
    return tab


def _split_index(k: int, i: int) -> tuple[int, str]:
    if not 1 <= i <= 2 * k + 1:
        raise ValueError(f"sphere degree {k} has i in 1..{2*k+1}, got {i}")
    if i == 1:
        return 0, "zonal"
    m = i // 2
    return m, ("cos" if i % 2 == 0 else "sin")


def sphere_harmonic(k: int, i: int, theta, phi):
    """Real orthonormal spherical harmonic Y_k^i on S^2 (measure dH, not normalized)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    m, kind = _split_index(k, i)
    tab = _legendre_norm(k, np.cos(theta))
    p = tab[k, m]
    if kind == "zonal":
        return p.copy()
    az = np.cos(m * phi) if kind == "cos" else np.sin(m * phi)
    return math.sqrt(2.0) * p * az


def sphere_harmonic_grad(k: int, i: int, theta, phi):
    """Tangential gradient components (d/dtheta, (1/sin theta) d/dphi) of Y_k^i."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    m, kind = _split_index(k, i)
    x = np.cos(theta)
    sx = np.sin(theta)
    tab = _legendre_norm(k, x)
    p = tab[k, m]
    if k == 0:
        z = np.zeros_like(theta)
        return z, z.copy()
    if m == k:
        lower = np.zeros_like(p)
    else:
        lower = tab[k - 1, m]
    c = math.sqrt((k * k - m * m) * (2.0 * k + 1.0) / (2.0 * k - 1.0))
    dp_dtheta = (k * x * p - c * lower) / sx
    if kind == "zonal":
        return dp_dtheta, np.zeros_like(p)
    if kind == "cos":
        az, daz = np.cos(m * phi), -m * np.sin(m * phi)
    else:
        az, daz = np.sin(m * phi), m * np.cos(m * phi)
    root2 = math.sqrt(2.0)
    return root2 * dp_dtheta * az, root2 * p * daz / sx
