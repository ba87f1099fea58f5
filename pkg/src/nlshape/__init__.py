"""Nonlocal shape-energy toolkit.

Fractional perimeters and Riesz potential energies of explicit shapes,
spherical-harmonic spectra of the associated sphere operators, quadratic
stability forms, and the global/local minimality thresholds of the ball
for the combined energy (normalized s-perimeter) + beta * (Riesz energy).
"""

from .ball import BallGeometry, curvature_ball, geometry, pers_ball, ps_ball, valpha_ball
from .quadforms import HarmonicProfile, qp_form, qv_form, stability_form, stability_verdict
from .spectrum import (
    DomainError,
    Params,
    SpectralSequence,
    lambda_frac,
    lambda_local,
    lambda_star,
    mu_alpha,
    mu_star,
    sequence,
)
from .specfun import PoleError, SignedLog, digamma, gamma_ratio, log_gamma
from .thresholds import (
    ConstantsLedger,
    ThresholdReport,
    beta_star,
    constants_ledger,
    m_star,
    ratio_min_check,
    threshold_report,
)

__version__ = "0.1.0"

__all__ = [
    "BallGeometry",
    "ConstantsLedger",
    "DomainError",
    "HarmonicProfile",
    "Params",
    "PoleError",
    "SignedLog",
    "SpectralSequence",
    "ThresholdReport",
    "beta_star",
    "constants_ledger",
    "curvature_ball",
    "digamma",
    "gamma_ratio",
    "geometry",
    "lambda_frac",
    "lambda_local",
    "lambda_star",
    "log_gamma",
    "m_star",
    "mu_alpha",
    "mu_star",
    "pers_ball",
    "ps_ball",
    "qp_form",
    "qv_form",
    "ratio_min_check",
    "sequence",
    "stability_form",
    "stability_verdict",
    "threshold_report",
    "valpha_ball",
    "__version__",
]
