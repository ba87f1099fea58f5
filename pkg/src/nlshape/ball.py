"""Exact energies of the unit ball.

The s-perimeter and the Riesz energy of the unit ball are defined through
the degree-1 eigenvalue identities

    lambda_1^s   = s (n - s)     P_s(B) / P(B),
    mu_1^alpha   = alpha (n + alpha) V_alpha(B) / P(B),

inverted for P_s(B) and V_alpha(B).  This gives closed forms; Monte
Carlo and quadrature enter only as independent cross-checks in the test
suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .spectrum import DomainError, lambda_frac, mu_alpha

__all__ = [
    "BallGeometry",
    "unit_ball_volume",
    "geometry",
    "ps_ball",
    "valpha_ball",
    "pers_ball",
    "curvature_ball",
]


@dataclass(frozen=True)
class BallGeometry:
    n: int
    omega_n: float  # volume of the unit ball
    surface: float  # perimeter P(B) = n * omega_n


def unit_ball_volume(n: int) -> float:
    """omega_n = pi^(n/2) / Gamma(n/2 + 1), valid for any n >= 0."""
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def geometry(n: int) -> BallGeometry:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    omega = unit_ball_volume(n)
    return BallGeometry(n=n, omega_n=omega, surface=n * omega)


def ps_ball(n: int, s: float) -> float:
    """s-perimeter of the unit ball, P_s(B), for s in (0,1)."""
    if not (0.0 < s < 1.0):
        raise DomainError(f"s must lie in (0,1), got {s}")
    g = geometry(n)
    return g.surface * lambda_frac(1, n, s) / (s * (n - s))


def valpha_ball(n: int, alpha: float) -> float:
    """Riesz self-energy of the unit ball, V_alpha(B), for alpha in (0,n)."""
    if not (0.0 < alpha < n):
        raise DomainError(f"alpha must lie in (0,n), got {alpha}")
    g = geometry(n)
    return g.surface * mu_alpha(1, n, alpha) / (alpha * (n + alpha))


def pers_ball(n: int, s: float) -> float:
    """Normalized perimeter of the unit ball.

    (1-s)/omega_{n-1} * P_s(B) for s < 1 and the classical perimeter P(B)
    at s = 1; the two branches join continuously at s = 1.
    """
    if not (0.0 < s <= 1.0):
        raise DomainError(f"s must lie in (0,1], got {s}")
    if s == 1.0:
        return geometry(n).surface
    return (1.0 - s) / unit_ball_volume(n - 1) * ps_ball(n, s)


def curvature_ball(n: int, s: float) -> float:
    """Constant nonlocal mean curvature of the unit sphere, (n-s) P_s(B)/P(B).

    Equals the first variation density of the s-perimeter at the ball;
    by scaling P_s(B_r) = r^(n-s) P_s(B) this is d/dr P_s(B_r)|_1 / P(B).
    """
    if not (0.0 < s < 1.0):
        raise DomainError(f"s must lie in (0,1), got {s}")
    return (n - s) * ps_ball(n, s) / geometry(n).surface
