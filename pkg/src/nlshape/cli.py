"""Command-line front-end.

Subcommands: spectrum, ball, thresholds, stability, fuglede,
isoperimetric, constants, verify.  Output is JSON (default) or CSV with
every float printed to 17 significant digits.  Exit codes: 0 success,
1 verification failure, 2 usage error.  NLSHAPE_THREADS controls worker
threads inside the pairwise kernels; NLSHAPE_KERNELS=python|compiled
forces a kernel backend.
"""

from __future__ import annotations

import argparse
import io
import sys

import numpy as np

from .ball import curvature_ball, geometry, pers_ball, ps_ball, valpha_ball
from .nearly import fuglede_scan
from .quadforms import HarmonicProfile, stability_verdict
from .shapes import BallUnionShape, asymmetry, iso_gap
from .spectrum import DomainError, Params, lambda_frac, lambda_local, mu_alpha
from .thresholds import beta_star, constants_ledger, threshold_report
from .verify import VerifyConfig, run_all

_FMT = ".17g"


def _fmt(x) -> str:
    return format(float(x), _FMT)


def _to_json(obj, indent=0) -> str:
    """JSON text with floats at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        inner = ",\n".join(
            f'{pad}  "{k}": {_to_json(v, indent + 1).lstrip()}' for k, v in obj.items()
        )
        return f"{pad}{{\n{inner}\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        inner = ",\n".join(f"{pad}  {_to_json(v, indent + 1).lstrip()}" for v in obj)
        return f"{pad}[\n{inner}\n{pad}]"
    if isinstance(obj, bool):
        return pad + ("true" if obj else "false")
    if obj is None:
        return pad + "null"
    if isinstance(obj, (int, np.integer)):
        return pad + str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return pad + _fmt(obj)
    return pad + '"' + str(obj).replace('"', '\\"') + '"'


def _emit_table(out, fmt, name, columns, rows, meta):
    if fmt == "csv":
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(_fmt(x) if isinstance(x, (float, np.floating)) else str(x) for x in row) + "\n")
    else:
        payload = dict(meta)
        payload[name] = [dict(zip(columns, row)) for row in rows]
        out.write(_to_json(payload) + "\n")


def _params(args, need_beta=False) -> Params:
    beta = args.beta if need_beta else args.beta
    return Params(n=args.n, s=args.s, alpha=args.alpha, beta=beta, m=args.m)


def cmd_spectrum(args, out) -> int:
    p = _params(args)
    k = np.arange(args.kmax + 1)
    lam = lambda_local(k, p.n) if p.s == 1.0 else lambda_frac(k, p.n, p.s)
    loc = lambda_local(k, p.n)
    mu = mu_alpha(k, p.n, p.alpha)
    rows = [(int(kk), lam[kk], loc[kk], mu[kk]) for kk in k]
    meta = {"n": p.n, "s": p.s, "alpha": p.alpha, "kmax": args.kmax}
    _emit_table(out, args.format, "rows", ("k", "lambda_s", "lambda_local", "mu_alpha"), rows, meta)
    return 0


def cmd_ball(args, out) -> int:
    p = _params(args)
    g = geometry(p.n)
    frac = p.s < 1.0
    payload = {
        "n": p.n,
        "s": p.s,
        "alpha": p.alpha,
        "omega_n": g.omega_n,
        "surface": g.surface,
        "ps_ball": ps_ball(p.n, p.s) if frac else None,
        "valpha_ball": valpha_ball(p.n, p.alpha),
        "pers_ball": pers_ball(p.n, p.s),
        "curvature_ball": curvature_ball(p.n, p.s) if frac else None,
    }
    if args.format == "csv":
        keys = list(payload)
        out.write(",".join(keys) + "\n")
        out.write(",".join("" if payload[k] is None else _fmt(payload[k]) if isinstance(payload[k], float) else str(payload[k]) for k in keys) + "\n")
    else:
        out.write(_to_json(payload) + "\n")
    return 0


def cmd_thresholds(args, out) -> int:
    p = _params(args)
    rep = threshold_report(p, kmax=max(args.kmax, 2))
    payload = {
        "n": p.n,
        "s": p.s,
        "alpha": p.alpha,
        "beta_star_spectral": rep.beta_star_spectral,
        "beta_star_closed": rep.beta_star_closed,
        "argmin_k": rep.argmin_k,
        "m_star": rep.m_star,
    }
    if args.format == "csv":
        keys = list(payload)
        out.write(",".join(keys) + "\n")
        out.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in payload.values()) + "\n")
    else:
        out.write(_to_json(payload) + "\n")
    return 0


def cmd_stability(args, out) -> int:
    if args.beta is None:
        raise DomainError("stability needs --beta")
    p = _params(args, need_beta=True)
    verdict = stability_verdict(p, kmax=max(args.kmax, 2))
    k = np.arange(max(args.kmax, 2) + 1)
    if p.s == 1.0:
        lam = lambda_local(k, p.n)
        pref = 1.0
    else:
        from .ball import unit_ball_volume

        lam = lambda_frac(k, p.n, p.s)
        pref = (1.0 - p.s) / unit_ball_volume(p.n - 1)
    mu = mu_alpha(k, p.n, p.alpha)
    bracket = pref * (lam - lam[1]) - p.beta * (mu - mu[1])
    rows = [(int(kk), bracket[kk]) for kk in range(2, len(k))]
    meta = {
        "n": p.n,
        "s": p.s,
        "alpha": p.alpha,
        "beta": p.beta,
        "beta_star": beta_star(p, "closed"),
        "verdict": verdict,
    }
    _emit_table(out, args.format, "modes", ("k", "form_value"), rows, meta)
    return 0


def cmd_fuglede(args, out) -> int:
    p0 = Params(n=args.n, s=args.s, alpha=args.alpha)
    beta = args.beta if args.beta is not None else 0.5 * beta_star(p0, "closed")
    p = Params(n=args.n, s=args.s, alpha=args.alpha, beta=beta, m=args.m)
    profile = HarmonicProfile.single_mode(p.n, 2)
    from .sphere import make_grid

    grid = make_grid(p.n, args.resolution if p.n == 2 else min(args.resolution, 48))
    table = fuglede_scan(profile, p, [0.001, 0.002, 0.005, 0.01, 0.02], grid=grid)
    if args.format == "csv":
        buf = io.StringIO()
        table.to_csv(buf)
        out.write(buf.getvalue())
    else:
        meta = {"n": p.n, "s": p.s, "alpha": p.alpha, "beta": beta}
        _emit_table(out, "json", "rows", table.columns, [tuple(r) for r in table.rows], meta)
    return 0


def cmd_isoperimetric(args, out) -> int:
    p = _params(args)
    seps = np.geomspace(2.5, 50.0, 8)
    rows = []
    for d in seps:
        shape = BallUnionShape(p.n, ((np.zeros(p.n), 1.0), (np.r_[d, np.zeros(p.n - 1)], 1.0)), rng_seed=args.seed)
        gap = iso_gap(shape, p.s, args.samples)
        asym = asymmetry(shape)
        rows.append((float(d), gap.value, gap.std_error, asym, asym * asym / gap.value if gap.value > 0 else float("nan")))
    meta = {"n": p.n, "s": p.s, "samples": args.samples, "seed": args.seed}
    _emit_table(
        out, args.format, "rows", ("separation", "gap", "gap_error", "asymmetry", "sq_ratio"), rows, meta
    )
    return 0


def cmd_constants(args, out) -> int:
    led = constants_ledger(args.n, args.s, args.alpha)
    payload = {"n": led.n, "s": led.s, "alpha": led.alpha}
    payload.update(led.constants())
    if args.format == "csv":
        out.write(",".join(payload) + "\n")
        out.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in payload.values()) + "\n")
    else:
        out.write(_to_json(payload) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    cfg = VerifyConfig(
        seed=args.seed,
        kmax=max(args.kmax, 100),
        resolution=args.resolution,
        samples=args.samples,
        tolerance=args.tolerance,
        quick=args.quick,
    )
    ok = run_all(cfg, report=lambda line: out.write(line + "\n"))
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlshape",
        description="Fractional perimeters, Riesz energies, sphere spectra and ball-stability thresholds.",
        epilog="Environment: NLSHAPE_THREADS sets kernel worker threads; "
        "NLSHAPE_KERNELS=python|compiled forces a kernel backend.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "spectrum": (cmd_spectrum, "eigenvalue tables of the three operator families"),
        "ball": (cmd_ball, "exact unit-ball energies and nonlocal curvature"),
        "thresholds": (cmd_thresholds, "stability threshold and local-minimality mass"),
        "stability": (cmd_stability, "stability verdict and per-mode form values"),
        "fuglede": (cmd_fuglede, "energy-deficit scan of a nearly-spherical family"),
        "isoperimetric": (cmd_isoperimetric, "gap/asymmetry sweep over two-ball separations"),
        "constants": (cmd_constants, "explicit lemma-constant ledger"),
        "verify": (cmd_verify, "full identity/property suite (exit 0 iff all pass)"),
    }
    for name, (fn, help_text) in commands.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--n", type=int, default=3)
        sp.add_argument("--s", type=float, default=0.5)
        sp.add_argument("--alpha", type=float, default=1.0)
        sp.add_argument("--beta", type=float, default=None)
        sp.add_argument("--m", type=float, default=None)
        sp.add_argument("--kmax", type=int, default=512)
        sp.add_argument("--resolution", type=int, default=None)
        sp.add_argument("--samples", type=int, default=1_000_000)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--tolerance", type=float, default=1e-9)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", type=str, default=None)
        if name == "verify":
            sp.add_argument("--quick", action="store_true")
        sp.set_defaults(handler=fn)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.resolution is None:
        args.resolution = 2048 if args.n == 2 else 32
    try:
        if args.out:
            with open(args.out, "w") as fh:
                code = args.handler(args, fh)
        else:
            code = args.handler(args, sys.stdout)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
