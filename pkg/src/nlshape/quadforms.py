"""Quadratic stability forms in spherical-harmonic coordinates.

A profile u on the unit sphere is held as real orthonormal-harmonic
coefficients a_k^i, so Parseval gives ||u||_{L^2}^2 = sum (a_k^i)^2.  The
two second-variation forms and their beta-combination are then plain
spectral sums:

    qp_form(u)        perimeter form, weights lambda_k - lambda_1
                      (normalized by (1-s)/omega_{n-1} for s < 1);
    qv_form(u)        Riesz form, weights mu_k^alpha - mu_1^alpha;
    stability_form(u) qp - beta * qv, defined on mean-zero profiles.

The ball is volume-constrained stable for the combined energy exactly
when beta <= beta_star, i.e. when every degree's bracket is >= 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .ball import unit_ball_volume
from .harmonics import multiplicity
from .spectrum import DomainError, Params, lambda_frac, lambda_local, mu_alpha
from .thresholds import beta_star

__all__ = [
    "HarmonicProfile",
    "qp_form",
    "qv_form",
    "stability_form",
    "stability_verdict",
]

MEAN_ZERO_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class HarmonicProfile:
    """Function on the sphere as (degree, index, coefficient) triples.

    ``n`` is the ambient dimension; sampling on grids is available for
    n = 2, 3 while the purely spectral operations work for any n >= 2.
    """

    n: int
    coeffs: tuple[tuple[int, int, float], ...]
    samples: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        seen = set()
        for k, i, _ in self.coeffs:
            if k < 0 or not 1 <= i <= multiplicity(self.n, k):
                raise DomainError(f"invalid harmonic index (k={k}, i={i}) for n={self.n}")
            if (k, i) in seen:
                raise DomainError(f"duplicate harmonic index (k={k}, i={i})")
            seen.add((k, i))

    @classmethod
    def single_mode(cls, n: int, k: int, i: int = 1, amplitude: float = 1.0) -> "HarmonicProfile":
        return cls(n=n, coeffs=((k, i, amplitude),))

    @property
    def max_degree(self) -> int:
        return max((k for k, _, _ in self.coeffs), default=0)

    def coefficient(self, k: int, i: int) -> float:
        for kk, ii, a in self.coeffs:
            if (kk, ii) == (k, i):
                return a
        return 0.0

    def degree_power(self) -> np.ndarray:
        """sum_i (a_k^i)^2 per degree, k = 0..max_degree."""
        out = np.zeros(self.max_degree + 1)
        for k, _, a in self.coeffs:
            out[k] += a * a
        return out

    def norm_l2_sq(self) -> float:
        return float(sum(a * a for _, _, a in self.coeffs))

    def scaled(self, c: float) -> "HarmonicProfile":
        return HarmonicProfile(self.n, tuple((k, i, c * a) for k, i, a in self.coeffs))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "coeffs": [[k, i, a] for k, i, a in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "HarmonicProfile":
        data = json.loads(text)
        return cls(n=int(data["n"]), coeffs=tuple((int(k), int(i), float(a)) for k, i, a in data["coeffs"]))


def _perimeter_weights(n: int, s: float, kmax: int) -> np.ndarray:
    k = np.arange(kmax + 1)
    if s == 1.0:
        lam = lambda_local(k, n)
        return lam - lam[1]
    lam = lambda_frac(k, n, s)
    return (1.0 - s) / unit_ball_volume(n - 1) * (lam - lam[1])


def qp_form(u: HarmonicProfile, s: float) -> float:
    """Perimeter stability form: spectral sum of (lambda_k - lambda_1) a^2."""
    if not (0.0 < s <= 1.0):
        raise DomainError(f"s must lie in (0,1], got {s}")
    w = _perimeter_weights(u.n, s, u.max_degree)
    return float(np.dot(w, u.degree_power()))


def qv_form(u: HarmonicProfile, alpha: float) -> float:
    """Riesz stability form: spectral sum of (mu_k - mu_1) a^2."""
    k = np.arange(u.max_degree + 1)
    mu = mu_alpha(k, u.n, alpha)
    return float(np.dot(mu - mu[1], u.degree_power()))


def stability_form(u: HarmonicProfile, params: Params) -> float:
    """Combined form qp - beta * qv as a single spectral sum.

    Only defined on mean-zero profiles; a constant component beyond
    tolerance is rejected since the form's natural domain excludes it.
    """
    if params.beta is None:
        raise DomainError("params.beta must be set for the stability form")
    a0 = u.coefficient(0, 1)
    if abs(a0) > MEAN_ZERO_RTOL * max(1.0, np.sqrt(u.norm_l2_sq())):
        raise DomainError(f"profile is not mean-zero (a_0 = {a0})")
    k = np.arange(u.max_degree + 1)
    wp = _perimeter_weights(u.n, params.s, u.max_degree)
    mu = mu_alpha(k, u.n, params.alpha)
    bracket = wp - params.beta * (mu - mu[1])
    return float(np.dot(bracket, u.degree_power()))


def stability_verdict(params: Params, kmax: int = 500) -> str:
    """"stable" iff beta <= beta_star (closed interval at beta_star).

    Cross-checked against the sign of the combined form over single
    modes up to kmax: the two must agree.
    """
    if params.beta is None:
        raise DomainError("params.beta must be set for the stability verdict")
    stable = params.beta <= beta_star(params, "closed")
    k = np.arange(kmax + 1)
    wp = _perimeter_weights(params.n, params.s, kmax)
    mu = mu_alpha(k, params.n, params.alpha)
    bracket = wp[2:] - params.beta * (mu[2:] - mu[1])
    min_bracket = float(bracket.min())
    # agreement up to roundoff on the bracket scale
    tol = 1e-12 * max(1.0, float(np.abs(bracket).max()))
    if stable and min_bracket < -tol:
        raise AssertionError("verdict disagrees with single-mode form signs")
    if not stable and min_bracket > tol:
        raise AssertionError("verdict disagrees with single-mode form signs")
    return "stable" if stable else "unstable"
