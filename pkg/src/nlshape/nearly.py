"""Nearly-spherical sets: boundary {(1 + v(x)) x}, normalized energies, scans.

The energies of a star-shaped set with radial function R = 1 + v split
into one singular-free boxed double-radial integral plus an exact ball
term weighted by a one-dimensional moment of R:

    P_s(E)      =  Q_s/2 + P_s(B)/P(B) * int R^(n-s)
    V_alpha(E)  = -Q_v/2 + V_alpha(B)/P(B) * int R^(n+alpha)

where Q integrates (r rho)^(n-1) / (|r-rho|^2 + r rho |x-y|^2)^(q/2) over
the box [R(y), R(x)]^2 for every sphere pair (q = n+s resp. n-alpha).
Both terms are evaluated as differences from the ball, with expm1/log1p
throughout, so deficits of order t^2 keep full relative precision.

Volume and barycenter normalization represent the set exactly as
scale * E_0 - shift of the profile set E_0 and re-solve the radial
function pointwise after each translation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import _kernels
from .ball import geometry, ps_ball, unit_ball_volume, valpha_ball
from .quadforms import HarmonicProfile
from .spectrum import DomainError, Params, lambda_frac, lambda_local, mu_alpha
from .sphere import (
    SphereGrid,
    _circle_defect,
    _sphere_moment_defect,
    harmonic_project,
    make_grid,
    profile_gradient,
    sample_profile,
)
from .thresholds import beta_star

__all__ = [
    "NearlySphericalSet",
    "NormalizationError",
    "ScanTable",
    "build_normalized",
    "energy",
    "energy_deficit",
    "variation_probe",
    "fuglede_scan",
]

VOLUME_RTOL = 1e-12
BARYCENTER_TOL = 1e-10
MAX_AMPLITUDE = 0.45

_GAUSS_X, _GAUSS_W = leggauss(8)
_GAUSS_X = 0.5 * (_GAUSS_X + 1.0)
_GAUSS_W = 0.5 * _GAUSS_W


class NormalizationError(RuntimeError):
    """Star-shapedness lost or the normalization loop failed to converge."""


@dataclass(frozen=True, eq=False)
class NearlySphericalSet:
    profile: HarmonicProfile
    t: float
    n: int
    grid: SphereGrid
    v: np.ndarray = field(repr=False)  # radial perturbation on grid nodes, R = 1 + v
    scale: float
    shift: np.ndarray
    normalized: bool
    volume_error: float
    barycenter_norm: float


def _profile_at_directions(u: HarmonicProfile, dirs: np.ndarray, n: int) -> np.ndarray:
    from .harmonics import circle_harmonic, sphere_harmonic

    if n == 2:
        theta = np.arctan2(dirs[:, 1], dirs[:, 0])
        out = np.zeros(len(dirs))
        for k, i, a in u.coeffs:
            out += a * circle_harmonic(k, i, theta)
        return out
    theta = np.arccos(np.clip(dirs[:, 2], -1.0, 1.0))
    phi = np.arctan2(dirs[:, 1], dirs[:, 0])
    out = np.zeros(len(dirs))
    for k, i, a in u.coeffs:
        out += a * sphere_harmonic(k, i, theta, phi)
    return out


def _radial_solve(u: HarmonicProfile, t: float, scale: float, shift: np.ndarray, grid: SphereGrid):
    """Radial perturbation v of scale*E_0 - shift on the grid directions."""
    base = t * sample_profile(u, grid)
    if not np.any(shift):
        return np.expm1(math.log(scale) + np.log1p(base))
    omega = grid.nodes
    r = scale * (1.0 + base) - omega @ shift
    for _ in range(60):
        y = r[:, None] * omega + shift
        rho = np.sqrt(np.einsum("ij,ij->i", y, y))
        if np.any(rho <= 0.0) or not np.all(np.isfinite(rho)):
            raise NormalizationError("radial solve left the star-shaped regime")
        target = scale * (1.0 + t * _profile_at_directions(u, y / rho[:, None], grid.n))
        f = rho - target
        if np.max(np.abs(f)) < 1e-14:
            break
        slope = np.einsum("ij,ij->i", omega, y) / rho
        if np.any(slope <= 0.1):
            raise NormalizationError("radial solve left the star-shaped regime")
        r = r - f / slope
    else:
        raise NormalizationError("radial solve did not converge")
    if np.any(r <= 0.0):
        raise NormalizationError("radial function is not positive")
    return r - 1.0


def _volume_excess(v: np.ndarray, grid: SphereGrid) -> float:
    """(|E| - |B|) computed as a difference."""
    n = grid.n
    return float(np.dot(grid.weights, np.expm1(n * np.log1p(v)))) / n


def _barycenter(v: np.ndarray, grid: SphereGrid) -> np.ndarray:
    n = grid.n
    vol = unit_ball_volume(n) + _volume_excess(v, grid)
    mom = grid.nodes.T @ (grid.weights * (1.0 + v) ** (n + 1))
    return mom / ((n + 1) * vol)


def build_normalized(
    profile: HarmonicProfile,
    t: float,
    grid: SphereGrid,
    max_iter: int = 40,
) -> NearlySphericalSet:
    """Scale and translate the profile set until |E| = |B| and the barycenter vanishes."""
    n = grid.n
    base = t * sample_profile(profile, grid)
    if np.max(np.abs(base)) > MAX_AMPLITUDE:
        raise DomainError(f"amplitude sup |t u| = {np.max(np.abs(base)):.3f} exceeds {MAX_AMPLITUDE}")
    scale = 1.0
    shift = np.zeros(n)
    vol_target = unit_ball_volume(n)
    v = base.copy()
    for _ in range(max_iter):
        v = _radial_solve(profile, t, scale, shift, grid)
        excess = _volume_excess(v, grid)
        bary = _barycenter(v, grid)
        if abs(excess) <= VOLUME_RTOL * vol_target and np.linalg.norm(bary) <= BARYCENTER_TOL:
            return NearlySphericalSet(
                profile=profile,
                t=t,
                n=n,
                grid=grid,
                v=v,
                scale=scale,
                shift=shift.copy(),
                normalized=True,
                volume_error=abs(excess),
                barycenter_norm=float(np.linalg.norm(bary)),
            )
        scale *= (vol_target / (vol_target + excess)) ** (1.0 / n)
        shift = shift + bary
    raise NormalizationError("volume/barycenter normalization did not converge")


def _v_gradient(nset: NearlySphericalSet):
    """Tangential gradient of the radial perturbation on the grid."""
    grid = nset.grid
    if nset.n == 2:
        vhat = np.fft.rfft(nset.v)
        kk = np.arange(len(vhat))
        if len(nset.v) % 2 == 0:
            kk = kk.copy()
            kk[-1] = 0  # drop the unpaired Nyquist mode from the derivative
        return np.fft.irfft(1j * kk * vhat, len(nset.v))
    degree = min(grid.degree_exactness // 2, nset.profile.max_degree + 6)
    vprof = harmonic_project(nset.v, grid, degree)
    return profile_gradient(vprof, grid)


def _boxed_term(nset: NearlySphericalSet, p: float) -> float:
    """Q: ordered pair sum of the boxed radial integrals, singularity-corrected."""
    grid = nset.grid
    n = nset.n
    rvals = 1.0 + nset.v
    weight = rvals ** (2.0 * (n - 1) - p)
    if n == 2:
        h = 2.0 * math.pi / grid.size
        m = np.arange(1, grid.size)
        chord2 = (2.0 * np.sin(0.5 * m * h)) ** 2
        q = _kernels.circle_radial_q(rvals, chord2, h, p, n, _GAUSS_X, _GAUSS_W)
        dv = _v_gradient(nset)
        q += _circle_defect(grid, p) * h * float(np.sum(dv * dv * weight))
    else:
        q = _kernels.pair_radial_q(grid.nodes, grid.weights, rvals, p, n, _GAUSS_X, _GAUSS_W)
        gt, gp = _v_gradient(nset)
        dtt, dpp, dtp = _sphere_moment_defect(grid, p)
        q += float(np.dot(grid.weights, (gt * gt * dtt + gp * gp * dpp + 2.0 * gt * gp * dtp) * weight))
    if not math.isfinite(q):
        raise ArithmeticError("singular pair overflow in the radial double integral")
    return q


def energy_deficit(nset: NearlySphericalSet, kind: tuple[str, float]) -> float:
    """Signed deviation from the ball, computed without large-term cancellation.

    ("P_s", s)      returns P_s(E) - P_s(B);
    ("V_alpha", a)  returns V_alpha(B) - V_alpha(E)  (nonnegative near the ball).
    """
    if not nset.normalized:
        raise DomainError("energies are defined on normalized sets only")
    n = nset.n
    surface = geometry(n).surface
    name, value = kind
    if name == "P_s":
        s = value
        q = _boxed_term(nset, n + s)
        moment = float(np.dot(nset.grid.weights, np.expm1((n - s) * np.log1p(nset.v))))
        return 0.5 * q + ps_ball(n, s) * moment / surface
    if name == "V_alpha":
        alpha = value
        q = _boxed_term(nset, n - alpha)
        moment = float(np.dot(nset.grid.weights, np.expm1((n + alpha) * np.log1p(nset.v))))
        return 0.5 * q - valpha_ball(n, alpha) * moment / surface
    raise DomainError(f"unknown energy kind {name!r}")


def energy(nset: NearlySphericalSet, kind: tuple[str, float]) -> float:
    """P_s(E) or V_alpha(E) of a normalized nearly-spherical set."""
    name, value = kind
    if name == "P_s":
        return ps_ball(nset.n, value) + energy_deficit(nset, kind)
    if name == "V_alpha":
        return valpha_ball(nset.n, value) - energy_deficit(nset, kind)
    raise DomainError(f"unknown energy kind {name!r}")


def _default_grid(n: int) -> SphereGrid:
    return make_grid(n, 1024 if n == 2 else 24)


def _quadratic_limit(ts: np.ndarray, ys: np.ndarray) -> float:
    """Extrapolate y(t) = L + a t + b t^2 to t = 0, guarding against higher-order terms."""
    A = np.vander(ts, 3, increasing=True)
    if len(ts) == 3:
        coef = np.linalg.solve(A, ys)
        check = np.polyfit(ts[1:], ys[1:], 1)[1]  # linear extrapolation on the two smallest t
        if abs(coef[0] - check) > 0.05 * max(abs(coef[0]), 1e-12):
            raise ArithmeticError("deficit/t^2 is not quadratic over the probe amplitudes")
        return float(coef[0])
    coef, res, *_ = np.linalg.lstsq(A, ys, rcond=None)
    rms = math.sqrt(res[0] / len(ts)) if len(res) else 0.0
    if rms > 1e-3 * max(abs(coef[0]), 1e-12):
        raise ArithmeticError("deficit/t^2 is not quadratic over the probe amplitudes")
    return float(coef[0])


def variation_probe(
    profile: HarmonicProfile,
    params: Params,
    t_sequence,
    grid: SphereGrid | None = None,
) -> tuple[float, float]:
    """Extrapolated limits of the energy deficits over t^2.

    Returns (limit_ps, limit_v) with
      limit_ps = lim [P_s(E_t) - P_s(B)] / t^2,
      limit_v  = lim [V_alpha(B) - V_alpha(E_t)] / t^2,
    matching half the spectral stability brackets for mean-zero,
    barycenter-neutral profiles.
    """
    if params.s == 1.0:
        raise DomainError("the radial decomposition needs s < 1")
    ts = np.asarray(sorted(t_sequence, reverse=True), dtype=float)
    if len(ts) < 3:
        raise DomainError("variation probe needs at least three amplitudes")
    grid = grid or _default_grid(params.n)
    dps, dv = [], []
    for t in ts:
        nset = build_normalized(profile, float(t), grid)
        dps.append(energy_deficit(nset, ("P_s", params.s)) / t**2)
        dv.append(energy_deficit(nset, ("V_alpha", params.alpha)) / t**2)
    return _quadratic_limit(ts, np.asarray(dps)), _quadratic_limit(ts, np.asarray(dv))


@dataclass(frozen=True)
class ScanTable:
    """Per-amplitude deficits of one profile against the bound functionals."""

    params: Params
    beta: float
    columns: tuple[str, ...]
    rows: np.ndarray  # (len(t_grid), len(columns))

    def to_csv(self, fh) -> None:
        fh.write(",".join(self.columns) + "\n")
        for row in self.rows:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


_SCAN_COLUMNS = (
    "t",
    "deficit_ps",
    "deficit_v",
    "deficit_combined",
    "bound_fug0",
    "bound_alpha",
    "bound_fugbeta",
    "quotient",
)


def fuglede_scan(
    profile: HarmonicProfile,
    params: Params,
    t_grid,
    grid: SphereGrid | None = None,
) -> ScanTable:
    """Deficits of the combined energy along a family of amplitudes.

    For beta < beta_star the combined deficit is positive throughout the
    admissible amplitude range; above beta_star it turns negative for
    small t, which is exactly the instability direction.
    """
    if params.beta is None:
        raise DomainError("params.beta must be set for the combined scan")
    if params.s == 1.0:
        raise DomainError("the radial decomposition needs s < 1")
    n, s, alpha, beta = params.n, params.s, params.alpha, params.beta
    grid = grid or _default_grid(n)
    bstar = beta_star(params, "closed")
    omega_prev = unit_ball_volume(n - 1)
    psb, vab = ps_ball(n, s), valpha_ball(n, alpha)
    rows = []
    for t in sorted(t_grid):
        nset = build_normalized(profile, float(t), grid)
        # spectral seminorms of the realized radial perturbation
        degree = min(grid.degree_exactness // 2, profile.max_degree + 6)
        vprof = harmonic_project(nset.v, grid, degree)
        power = vprof.degree_power()
        k = np.arange(len(power))
        sem_s = float(np.dot(lambda_frac(k, n, s), power))
        sem_a = float(np.dot(mu_alpha(k, n, alpha), power))
        norm_sq = float(np.dot(grid.weights, nset.v**2))
        d_ps = energy_deficit(nset, ("P_s", s))
        d_v = energy_deficit(nset, ("V_alpha", alpha))
        combined = (1.0 - s) / omega_prev * d_ps - beta * d_v
        bound0 = sem_s + s * psb * norm_sq
        bound_a = sem_a + alpha * vab * norm_sq
        bound_b = (1.0 - beta / bstar) * ((1.0 - s) * sem_s + norm_sq)
        quot = combined / bound_b if bound_b != 0.0 else math.nan
        rows.append([t, d_ps, d_v, combined, bound0, bound_a, bound_b, quot])
    return ScanTable(params=params, beta=beta, columns=_SCAN_COLUMNS, rows=np.asarray(rows))
