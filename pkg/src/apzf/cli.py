"""Command-line front end.

Subcommands:

* ``gdof``      closed-form values and the layer table for a config
* ``simulate``  Monte Carlo mean sum rate at one SNR point
* ``sweep``     full curve to CSV plus a JSON summary next to it
* ``validate``  self-check suites (identities, cancellation, exponents)

Exit codes: 0 success, 1 validation-suite failure, 2 bad config or
usage, 3 config outside the supported domain, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .channel import sample_channel, sample_csit
from .gdof import distributed_gdof, genie_outer_bound, scheme_layout
from .harness import (
    ConfigError,
    closed_forms,
    estimate_slope,
    fit_exponent,
    load_config,
    simulate_point,
    sweep,
    write_csv,
    write_summary,
)
from .precoders import apzf
from .scheme import plan_layout
from .topology import CsitQuality, Topology, ValidationError, canonicalize, validate

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apzf",
        description="GDoF closed forms and sum-rate Monte Carlo for the "
        "2-user MISO BC with distributed CSIT",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True):
        p.add_argument(
            "--config",
            required=config_required,
            help="JSON config (gamma, alpha, schemes, snr_db, draws, seed)",
        )
        p.add_argument("--seed", type=int, default=None, help="override config seed")

    p = sub.add_parser("gdof", help="print closed-form GDoF values and the layer table")
    add_common(p)

    p = sub.add_parser("simulate", help="mean sum rate at one SNR point")
    add_common(p)
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--scheme", default=None, help="comma-separated subset of config schemes")

    p = sub.add_parser("sweep", help="simulate the SNR grid, write CSV + JSON summary")
    add_common(p)
    p.add_argument("--out", required=True, help="output CSV path (summary goes to .json)")
    p.add_argument("--scheme", default=None, help="comma-separated subset of config schemes")
    p.add_argument("--window", default=None, help="slope-fit window, lo:hi in dB")
    p.add_argument("--workers", type=int, default=None, help="processes for point evaluation")

    p = sub.add_parser("validate", help="run identity/cancellation/exponent self-checks")
    add_common(p, config_required=False)

    return parser


def _apply_overrides(config, args):
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    if getattr(args, "scheme", None):
        config.schemes = tuple(s.strip() for s in args.scheme.split(","))
    if getattr(args, "window", None):
        try:
            lo, hi = (float(v) for v in args.window.split(":"))
        except ValueError as exc:
            raise ConfigError(f"--window must be lo:hi, got {args.window!r}") from exc
        config.window_db = (lo, hi)
    if getattr(args, "workers", None) is not None:
        config.workers = args.workers
    return config.__class__(**vars(config))  # re-run validation


def _cmd_gdof(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    forms = closed_forms(config)
    dist = distributed_gdof(config.topology, config.csit)
    genie = genie_outer_bound(config.topology, config.csit)
    canon = canonicalize(config.topology, config.csit)
    layout = scheme_layout(canon)
    print(f"distributed GDoF : {forms['distributed']:g}  "
          f"(branch {dist.branch}: d1={dist.d1:g}, d2={dist.d2:g})")
    print(f"centralized GDoF : {forms['centralized']:g}  "
          f"(branch {genie.branch}: d1={genie.d1:g}, d2={genie.d2:g})")
    print(f"no-CSIT GDoF     : {forms['no_csit']:g}")
    print(f"layout           : {layout.case_id}"
          + (" (parallel)" if layout.parallel else "")
          + f", rho = {layout.rho:g}")
    print("  layer  rate_exp  power_exp")
    for tag in ("s0", "s1", "s2", "z1"):
        if tag in layout.rate_exp:
            print(f"  {tag:5s}  {layout.rate_exp[tag]:<8g}  {layout.power_exp[tag]:g}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    print(f"snr_db = {args.snr_db:g}, draws = {config.draws}, seed = {config.seed}")
    for scheme in config.schemes:
        mean, stderr = simulate_point(config, scheme, args.snr_db)
        print(f"{scheme:15s} sum_rate = {mean:.6f} +/- {stderr:.6f}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    curve = sweep(config)
    out = Path(args.out)
    write_csv(curve, out)
    summary_path = out.with_suffix(".json")
    write_summary(config, curve, summary_path)
    for s in config.schemes:
        slope = curve.slopes[s]
        shown = f"{slope:.4f}" if slope is not None else "n/a (fewer than 2 window points)"
        print(f"{s:15s} slope over {config.window_db[0]:g}-{config.window_db[1]:g} dB: {shown}")
    print(f"wrote {out} and {summary_path}")
    return EXIT_OK


def _dyadic_instance(rng, grid=1024):
    """Random instance on the 1/grid lattice with a dominant transmitter."""
    gamma = rng.integers(0, grid + 1, size=(2, 2)) / grid
    hi = rng.integers(0, (gamma * grid).astype(int) + 1, size=(2, 2)) / grid
    lo = rng.integers(0, (hi * grid).astype(int) + 1, size=(2, 2)) / grid
    alpha = np.stack([hi, lo]) if rng.random() < 0.5 else np.stack([lo, hi])
    return Topology(gamma), CsitQuality(alpha)


def _check_identity(rng, n=1000):
    for _ in range(n):
        topo, csit = _dyadic_instance(rng)
        if distributed_gdof(topo, csit).value != genie_outer_bound(topo, csit).value:
            return False, f"mismatch at gamma={topo.gamma.tolist()}"
    return True, f"{n} random instances, bit-exact"


def _check_layout_sum(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        topo, csit = _dyadic_instance(rng)
        layout = scheme_layout(canonicalize(topo, csit))
        worst = max(worst, abs(layout.rate_total() - distributed_gdof(topo, csit).value))
        if worst > 1e-12:
            return False, f"layout sum off by {worst:g}"
    return True, f"{n} random instances, max |diff| = {worst:g}"


def _check_cancellation(rng, n=1000):
    worst = 0.0
    p = 1e6
    for _ in range(n):
        topo, _ = _dyadic_instance(rng)
        ch = sample_channel(topo, p, rng)
        v = apzf(ch.h, 0, 1.0, topo, p, regularize=False)
        resid = abs(ch.h[1] @ v.t)
        rel = resid / (np.linalg.norm(ch.h[1]) * np.linalg.norm(v.t) + 1e-300)
        worst = max(worst, rel)
    ok = worst < 1e-10
    return ok, f"{n} draws, worst relative residual = {worst:.3g}"


def _check_coefficient_exponents(rng, n_topologies=3, draws=1500):
    grid = np.logspace(4, 8, 5)
    worst = 0.0
    for _ in range(n_topologies):
        gamma = 0.3 + 0.7 * rng.random((2, 2))
        topo = Topology(gamma)
        csit = CsitQuality(np.stack([gamma * rng.random((2, 2)), np.zeros((2, 2))]))
        tau = 0.5 + 0.5 * rng.random()
        acc = np.zeros((len(grid), 2, 2))  # mean log power, [P, target, tx]
        for ip, p in enumerate(grid):
            for _ in range(draws):
                ch = sample_channel(topo, p, rng)
                est = sample_csit(ch, topo, csit, rng)
                for tgt in (0, 1):
                    v = apzf(est.h_hat[0], tgt, tau, topo, p)
                    acc[ip, tgt] += np.log(np.abs(v.t) ** 2)
        acc /= draws
        for tgt in (0, 1):
            itf = 1 - tgt
            for k in (0, 1):
                expected = tau - max(float(gamma[itf, k] - gamma[itf, 1 - k]), 0.0)
                slope = fit_exponent(list(zip(grid, np.exp(acc[:, tgt, k]))))
                worst = max(worst, abs(slope - expected))
    ok = worst < 0.05
    return ok, f"{n_topologies} topologies, worst |fit - exponent| = {worst:.4f}"


def _check_determinism(config):
    a = simulate_point(config, config.schemes[0], config.snr_db[0])
    b = simulate_point(config, config.schemes[0], config.snr_db[0])
    return a == b, f"repeated point identical: {a == b}"


def _cmd_validate(args) -> int:
    seed = args.seed if args.seed is not None else 0
    checks = [
        ("closed-form identity (distributed == centralized reference)",
         lambda: _check_identity(np.random.default_rng([seed, 1]))),
        ("layout rate total == closed form",
         lambda: _check_layout_sum(np.random.default_rng([seed, 2]))),
        ("exact cancellation (perfect CSIT, no regularizer)",
         lambda: _check_cancellation(np.random.default_rng([seed, 3]))),
        ("AP-ZF coefficient power exponents",
         lambda: _check_coefficient_exponents(np.random.default_rng([seed, 4]))),
    ]
    if args.config:
        config = load_config(args.config)
        validate(config.topology, config.csit).raise_first()
        small = config.__class__(
            topology=config.topology, csit=config.csit, schemes=config.schemes,
            snr_db=config.snr_db, draws=min(config.draws, 50), seed=seed,
            window_db=config.window_db,
        )
        checks.append(("deterministic re-simulation", lambda: _check_determinism(small)))

    failed = 0
    for name, fn in checks:
        ok, detail = fn()
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failed += 0 if ok else 1
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "gdof": _cmd_gdof,
        "simulate": _cmd_simulate,
        "sweep": _cmd_sweep,
        "validate": _cmd_validate,
    }[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationError as exc:
        print(f"unsupported configuration: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
