"""Stability and minimality thresholds of the ball, plus lemma constants.

``beta_star`` is the largest coupling beta for which the quadratic
stability form of the normalized perimeter plus beta times the Riesz
energy stays nonnegative on mean-zero profiles.  It has two equivalent
evaluations:

* spectral -- minimum over harmonic degrees k >= 2 of the normalized
  eigenvalue-difference ratio;
* closed  -- the degree-2 value, since the ratio is minimized at k = 2.

``m_star`` is the mass below which the ball is an L^1-local
volume-constrained minimizer; it equals omega_n * beta_star^(n/(s+alpha)).

``constants_ledger`` evaluates every explicit constant from the density,
nucleation, truncation, existence, and penalization lemmas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .ball import geometry, ps_ball, pers_ball, unit_ball_volume, valpha_ball
from .spectrum import DomainError, Params, lambda_frac, lambda_local, mu_alpha

__all__ = [
    "ThresholdReport",
    "ConstantsLedger",
    "beta_star",
    "m_star",
    "ratio_min_check",
    "constants_ledger",
    "threshold_report",
]

# The lemma constants r0 and eps1 need a penalization weight Lambda
# strictly above Lambda_0; we take the smallest admissible value.
_LAMBDA_MARGIN = 1e-6

# Crude published upper bound for the Besicovitch covering number in R^n,
# used only as a default; any valid covering constant may be supplied.
def _default_besicovitch(n: int) -> float:
    return 5.0**n


@dataclass(frozen=True)
class ThresholdReport:
    params: Params
    beta_star_spectral: float
    beta_star_closed: float
    argmin_k: int
    m_star: float


@dataclass(frozen=True)
class ConstantsLedger:
    """Explicit lemma constants at one (n, s, alpha)."""

    n: int
    s: float
    alpha: float
    c0_density: float
    r0_density: float
    chi1: float
    chi2: float
    C1_trunc: float
    C2_trunc: float
    Lambda0: float
    eps1: float
    C4: float
    m1: float
    R0: float
    C7: float
    C8: float
    Lambda1: float

    def constants(self) -> dict[str, float]:
        skip = {"n", "s", "alpha"}
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name not in skip}


def _spectral_ratios(params: Params, kmax: int) -> np.ndarray:
    """Candidate beta values (lambda_k - lambda_1)/(mu_k - mu_1), normalized, k = 2..kmax."""
    n, s, alpha = params.n, params.s, params.alpha
    k = np.arange(kmax + 1)
    if s == 1.0:
        lam = lambda_local(k, n)
        pref = 1.0
    else:
        lam = lambda_frac(k, n, s)
        pref = (1.0 - s) / unit_ball_volume(n - 1)
    mu = mu_alpha(k, n, alpha)
    return pref * (lam[2:] - lam[1]) / (mu[2:] - mu[1])


def beta_star(params: Params, mode: str = "closed", kmax: int = 500) -> float:
    """Stability threshold beta_star, spectral or closed-form evaluation."""
    n, s, alpha = params.n, params.s, params.alpha
    if mode == "spectral":
        if kmax < 2:
            raise DomainError(f"spectral mode needs kmax >= 2, got {kmax}")
        return float(np.min(_spectral_ratios(params, kmax)))
    if mode != "closed":
        raise DomainError(f"mode must be 'spectral' or 'closed', got {mode!r}")
    g = geometry(n)
    va = valpha_ball(n, alpha)
    if s == 1.0:
        return (n + 1.0) / (n - alpha) * g.surface / (alpha * va)
    return (
        (n + s)
        / (n - alpha)
        * s
        * (1.0 - s)
        * ps_ball(n, s)
        / (alpha * unit_ball_volume(n - 1) * va)
    )


def m_star(params: Params) -> float:
    """Local-minimality mass threshold, omega_n * beta_star^(n/(s+alpha))."""
    n, s, alpha = params.n, params.s, params.alpha
    return unit_ball_volume(n) * beta_star(params, "closed") ** (n / (alpha + s))


def ratio_min_check(params: Params, kmax: int) -> tuple[int, np.ndarray]:
    """Table of normalized eigenvalue-difference ratios for k = 2..kmax.

    Returns (argmin degree, table) where table rows are (k, ratio); the
    minimum of the ratio column is the spectral beta_star.
    """
    if kmax < 3:
        raise DomainError(f"kmax must be >= 3, got {kmax}")
    ratios = _spectral_ratios(params, kmax)
    ks = np.arange(2, kmax + 1)
    argmin = int(ks[np.argmin(ratios)])
    return argmin, np.column_stack([ks, ratios])


def threshold_report(params: Params, kmax: int = 500) -> ThresholdReport:
    argmin, table = ratio_min_check(params, kmax)
    return ThresholdReport(
        params=params,
        beta_star_spectral=float(table[:, 1].min()),
        beta_star_closed=beta_star(params, "closed"),
        argmin_k=argmin,
        m_star=m_star(params),
    )


def constants_ledger(
    n: int,
    s: float,
    alpha: float,
    besicovitch: float | None = None,
    quantitative_constant: float = 1.0,
) -> ConstantsLedger:
    """Every explicit lemma constant at (n, s, alpha).

    ``besicovitch`` is the covering constant xi(n); the default is a crude
    valid bound since only *a* valid constant is needed.
    ``quantitative_constant`` stands in for the non-explicit constant of the
    quantitative isoperimetric inequality that enters m1.
    """
    if not (0.0 < s < 1.0):
        raise DomainError(f"s must lie in (0,1), got {s}")
    if not (0.0 < alpha < n):
        raise DomainError(f"alpha must lie in (0,n), got {alpha}")
    g = geometry(n)
    vol, per_cl = g.omega_n, g.surface
    psb = ps_ball(n, s)
    renorm = (1.0 - s) * psb  # (1-s) P_s(B)
    xi = besicovitch if besicovitch is not None else _default_besicovitch(n)

    c0 = (s / (8.0 * vol * 2.0 ** (n / s)) * renorm / per_cl) ** (n / s)
    lam0 = renorm / vol
    lam = lam0 * (1.0 + _LAMBDA_MARGIN)
    r0 = (renorm / (2.0 * lam * vol)) ** (1.0 / s)
    chi1 = renorm / (4.0 * vol ** ((n - s) / n) * xi)
    chi2 = 2.0 ** (3.0 + n / s) * vol ** ((n - s) / n) * per_cl / (s * renorm)
    c1 = 2.0 ** (1.0 + (n - s) / s) * (4.0 * vol ** ((n - s) / n) * per_cl / (s * renorm)) ** (1.0 / s)
    c2 = 2.0 * vol ** ((n - s) / n) / renorm
    eps1 = 0.5 * min(1.0, ((lam + 1.0) * c2) ** (-n / s), 4.0 * vol)
    c4 = 1.0 + c1 * (2.0 * eps1) ** (1.0 / n)

    per = pers_ball(n, s)
    va = valpha_ball(n, alpha)
    c7 = 2.0 * (per + va)
    c8 = (1.0 + va / per) ** (n / (n - s))
    # m1 in log space: the truncation-gap power can be astronomically small.
    log_candidates = [
        0.0,
        math.log(per / (8.0 * vol**2 * quantitative_constant * va)),
        math.log(per / (2.0 * vol**2 * quantitative_constant * va))
        + (2.0 * n / s) * math.log(vol / (8.0 * c2 * c7)),
    ]
    log_m1 = math.log(vol) + (n / (alpha + s)) * min(log_candidates)
    m1 = math.exp(log_m1) if log_m1 > -700.0 else 0.0
    if m1 == 0.0:
        raise DomainError(
            f"m1 underflows double precision at n={n}, s={s}, alpha={alpha}"
        )
    r0_exist = 3.0 * (1.0 + c1)
    lam1 = 4.0 * c7 / vol + 6.0 * vol * (1.0 + c8) * c8 ** (alpha / n) / alpha

    ledger = ConstantsLedger(
        n=n,
        s=s,
        alpha=alpha,
        c0_density=c0,
        r0_density=r0,
        chi1=chi1,
        chi2=chi2,
        C1_trunc=c1,
        C2_trunc=c2,
        Lambda0=lam0,
        eps1=eps1,
        C4=c4,
        m1=m1,
        R0=r0_exist,
        C7=c7,
        C8=c8,
        Lambda1=lam1,
    )
    for name, value in ledger.constants().items():
        if not (value > 0.0 and math.isfinite(value)):
            raise DomainError(f"ledger constant {name} = {value} is not a positive finite number")
    return ledger
