"""Closed-form eigenvalue families of the sphere integral operators.

Four families live here, all diagonal in the spherical-harmonic basis of
L^2 of the unit sphere in R^n:

* ``lambda_star(k, gamma, n)`` -- hypersingular operator with kernel
  |x-y|^(-(n-1+gamma)), gamma in (0,1) or (1,2);
* ``mu_star(k, gamma, n)`` -- smoothing operator with kernel
  |x-y|^(-(n-1-gamma)), gamma in (0, n-1);
* ``lambda_frac(k, n, s)`` -- spectrum of the squared-difference form
  with kernel |x-y|^(-(n+s)), s in (0,1);
* ``mu_alpha(k, n, alpha)`` -- spectrum of the squared-difference form
  with kernel |x-y|^(-(n-alpha)), alpha in (0,n), with a digamma branch
  at alpha = 1 where both closed forms degenerate;
* ``lambda_local(k, n) = k(k+n-2)`` -- sphere Laplacian (s = 1 limit).

All gamma ratios are evaluated in signed log space (module specfun).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import _lgamma_signed, digamma

__all__ = [
    "DomainError",
    "Params",
    "SpectralSequence",
    "lambda_star",
    "mu_star",
    "lambda_frac",
    "lambda_local",
    "mu_alpha",
    "frac_prefactor",
    "riesz_prefactor",
    "sequence",
]

DEFAULT_K = 512

# |alpha - 1| below this routes to the digamma branch: both closed forms
# lose precision as alpha -> 1.
ALPHA_ONE_GATE = 1e-8


class DomainError(ValueError):
    """Parameter outside the admissible range of a closed-form formula."""


@dataclass(frozen=True)
class Params:
    """Validated parameter tuple (n, s, alpha[, beta, m])."""

    n: int
    s: float
    alpha: float
    beta: float | None = None
    m: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"dimension n must be >= 2, got {self.n}")
        if not 0.0 < self.s <= 1.0:
            raise DomainError(f"s must lie in (0, 1], got {self.s}")
        if not 0.0 < self.alpha < self.n:
            raise DomainError(f"alpha must lie in (0, n), got {self.alpha}")
        if self.beta is not None and self.beta <= 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.m is not None and self.m <= 0:
            raise DomainError(f"m must be positive, got {self.m}")


@dataclass(frozen=True, eq=False)
class SpectralSequence:
    """Eigenvalues of one family, materialized for k = 0..K."""

    kind: str  # "lambda_s" | "lambda_local" | "mu_alpha"
    params: Params
    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v[0] != 0.0:
            raise ValueError("spectral sequences start at 0")
        if np.any(np.diff(v) <= 0):
            raise ValueError(f"{self.kind} sequence is not strictly increasing")


def _ratio(a, b):
    sa, ma = _lgamma_signed(a)
    sb, mb = _lgamma_signed(b)
    return sa * sb * np.exp(ma - mb)


def _scalar_or_array(k, val):
    return float(val) if np.ndim(k) == 0 else val


def lambda_star(k, gamma: float, n: int):
    """k-th eigenvalue of the hypersingular sphere operator of order gamma."""
    if not (0.0 < gamma < 2.0) or gamma == 1.0:
        raise DomainError(f"gamma must lie in (0,1) or (1,2), got {gamma}")
    k = np.asarray(k)
    a = (n - 1 + gamma) / 2.0
    b = (n - 1 - gamma) / 2.0
    return _scalar_or_array(k, _ratio(k + a, k + b) - _ratio(a, b))


def mu_star(k, gamma: float, n: int):
    """k-th eigenvalue of the smoothing sphere operator of order gamma."""
    if not (0.0 < gamma < n - 1):
        raise DomainError(f"gamma must lie in (0, n-1), got {gamma}")
    k = np.asarray(k)
    a = (n - 1 - gamma) / 2.0
    b = (n - 1 + gamma) / 2.0
    return _scalar_or_array(k, _ratio(k + a, k + b))


def frac_prefactor(n: int, s: float) -> float:
    """Constant linking the |x-y|^(-(n+s)) form to the order-(1+s) hypersingular family."""
    if not (0.0 < s < 1.0):
        raise DomainError(f"s must lie in (0,1), got {s}")
    _, m_num = _lgamma_signed((1.0 - s) / 2.0)
    _, m_den = _lgamma_signed((n + s) / 2.0)
    return float(2.0 ** (1.0 - s) * np.pi ** ((n - 1) / 2.0) / (1.0 + s) * np.exp(m_num - m_den))


def riesz_prefactor(n: int, alpha: float) -> float:
    """Constant linking the |x-y|^(-(n-alpha)) form (alpha < 1) to the order-(1-alpha) family."""
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0,1), got {alpha}")
    _, m_num = _lgamma_signed((1.0 + alpha) / 2.0)
    _, m_den = _lgamma_signed((n - alpha) / 2.0)
    return float(2.0 ** (1.0 + alpha) * np.pi ** ((n - 1) / 2.0) / (1.0 - alpha) * np.exp(m_num - m_den))


def lambda_frac(k, n: int, s: float):
    """Eigenvalues of the |x-y|^(-(n+s)) squared-difference form on the sphere."""
    return frac_prefactor(n, s) * lambda_star(k, 1.0 + s, n)


def lambda_local(k, n: int):
    """Sphere Laplacian eigenvalues k(k+n-2)."""
    k = np.asarray(k, dtype=float)
    return _scalar_or_array(k, k * (k + n - 2.0))


def mu_alpha(k, n: int, alpha: float):
    """Eigenvalues of the |x-y|^(-(n-alpha)) squared-difference form.

    Three regimes share one increasing family: closed forms for
    alpha < 1 and alpha > 1, and the digamma limit at alpha = 1.
    The alpha > 1 prefactor 1/Gamma((n-alpha)/2) is distributed into the
    bracket so the expression stays stable as alpha -> n.
    """
    if not (0.0 < alpha < n):
        raise DomainError(f"alpha must lie in (0, n), got {alpha}")
    k = np.asarray(k)
    half = np.pi ** ((n - 1) / 2.0)
    if abs(alpha - 1.0) < ALPHA_ONE_GATE:
        _, m_half = _lgamma_signed((n - 1) / 2.0)
        pref = 4.0 * half * np.exp(-m_half)
        val = pref * (digamma(k + (n - 1) / 2.0) - digamma((n - 1) / 2.0))
        return _scalar_or_array(k, val)
    a = (n - alpha) / 2.0
    b = (n - 2 + alpha) / 2.0
    if alpha < 1.0:
        val = riesz_prefactor(n, alpha) * (_ratio(k + a, k + b) - _ratio(a, b))
        return _scalar_or_array(k, val)
    # alpha > 1: kernel is locally integrable, eigenvalues are bounded.
    _, m_g = _lgamma_signed((alpha - 1.0) / 2.0)
    _, m_a = _lgamma_signed(a)
    pref = 2.0**alpha * half * np.exp(m_g)
    sb, mb = _lgamma_signed(b)
    s1, m1 = _lgamma_signed(k + a)
    s2, m2 = _lgamma_signed(k + b)
    val = pref * (sb * np.exp(-mb) - s1 * s2 * np.exp(m1 - m2 - m_a))
    return _scalar_or_array(k, val)


def sequence(kind: str, params: Params, K: int = DEFAULT_K) -> SpectralSequence:
    """Materialize one eigenvalue family for k = 0..K."""
    k = np.arange(K + 1)
    if kind == "lambda_s":
        if params.s == 1.0:
            raise DomainError("lambda_s needs s < 1; use lambda_local for s = 1")
        values = lambda_frac(k, params.n, params.s)
    elif kind == "lambda_local":
        values = lambda_local(k, params.n)
    elif kind == "mu_alpha":
        values = mu_alpha(k, params.n, params.alpha)
    else:
        raise DomainError(f"unknown sequence kind {kind!r}")
    return SpectralSequence(kind=kind, params=params, values=values)
