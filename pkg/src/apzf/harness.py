"""Monte Carlo sum-rate sweeps, slope fitting, and result serialization.

Each (scheme, SNR point, draw index) triple gets its own RNG substream
derived from the config seed, so results are independent of evaluation
order and of how points are distributed across worker processes, and
all schemes see the same fading draws (common random numbers).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import sample_channel, sample_csit
from .gdof import centralized_gdof, distributed_gdof, genie_outer_bound
from .scheme import SchemeKind, achievable_rates, build_plan, plan_layout
from .topology import CsitQuality, Topology, canonicalize

__all__ = [
    "SweepConfig",
    "SweepCurve",
    "ConfigError",
    "InsufficientPoints",
    "simulate_point",
    "sweep",
    "estimate_slope",
    "fit_exponent",
    "closed_forms",
    "write_csv",
    "summary_dict",
    "write_summary",
    "load_config",
    "config_to_dict",
]

DEFAULT_WINDOW_DB = (40.0, 60.0)

# log2(P) advances by this much per dB of SNR.
_LOG2P_PER_DB = math.log2(10.0) / 10.0


class ConfigError(ValueError):
    """Malformed or incomplete sweep configuration."""


class InsufficientPoints(ValueError):
    """Not enough points to fit a slope."""


@dataclass
class SweepConfig:
    topology: Topology
    csit: CsitQuality
    schemes: tuple
    snr_db: tuple
    draws: int
    seed: int
    window_db: tuple = DEFAULT_WINDOW_DB
    workers: int = 1

    def __post_init__(self):
        try:
            self.schemes = tuple(str(SchemeKind(s).value) for s in self.schemes)
        except ValueError as exc:
            raise ConfigError(f"unknown scheme: {exc}") from exc
        self.snr_db = tuple(float(s) for s in self.snr_db)
        if not self.schemes:
            raise ConfigError("schemes must be non-empty")
        if any(b <= a for a, b in zip(self.snr_db, self.snr_db[1:])):
            raise ConfigError("snr_db grid must be strictly increasing")
        if not self.snr_db:
            raise ConfigError("snr_db grid must be non-empty")
        if self.draws < 1:
            raise ConfigError("draws must be >= 1")
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        lo, hi = self.window_db
        if not lo < hi:
            raise ConfigError("window_db must satisfy lo < hi")
        self.window_db = (float(lo), float(hi))
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


@dataclass
class SweepCurve:
    schemes: tuple
    snr_db: tuple
    mean: dict
    stderr: dict
    slopes: dict
    window_db: tuple
    gdof: dict = field(default_factory=dict)


def _substream(seed: int, snr_db: float, draw: int) -> np.random.Generator:
    snr_key = int(round(snr_db * 1000.0)) % (2**31)
    return np.random.default_rng([seed, snr_key, draw])


def simulate_point(config: SweepConfig, scheme_kind, snr_db: float):
    """Mean sum rate and its standard error at one SNR point.

    Draw d at this point always uses the substream (seed, snr, d)
    regardless of which draws ran before it.
    """
    kind = SchemeKind(scheme_kind)
    canon = canonicalize(config.topology, config.csit)
    layout = plan_layout(canon, kind)
    p = 10.0 ** (snr_db / 10.0)
    sums = np.empty(config.draws)
    for d in range(config.draws):
        rng = _substream(config.seed, snr_db, d)
        ch = sample_channel(canon.topology, p, rng)
        est = sample_csit(ch, canon.topology, canon.csit, rng)
        plan = build_plan(canon, est, layout, kind, p)
        sums[d] = achievable_rates(ch, plan).sum
    mean = float(sums.mean())
    stderr = float(sums.std(ddof=1) / math.sqrt(config.draws)) if config.draws > 1 else 0.0
    return mean, stderr


def _point_task(args):
    config, scheme, snr = args
    return scheme, snr, simulate_point(config, scheme, snr)


def closed_forms(config: SweepConfig) -> dict:
    """The three closed-form GDoF references for a config."""
    return {
        "distributed": distributed_gdof(config.topology, config.csit).value,
        "centralized": genie_outer_bound(config.topology, config.csit).value,
        "no_csit": centralized_gdof(config.topology, np.zeros((2, 2))).value,
    }


def sweep(config: SweepConfig) -> SweepCurve:
    """Simulate every (scheme, SNR) point and fit per-scheme slopes.

    With ``config.workers > 1`` points are farmed out to processes; the
    per-draw substreams make the result identical for any worker count.
    Schemes whose window holds fewer than two grid points get slope None.
    """
    tasks = [(config, s, snr) for s in config.schemes for snr in config.snr_db]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_point_task, tasks))
    else:
        results = [_point_task(t) for t in tasks]

    table = {(s, snr): val for s, snr, val in results}
    mean, stderr, slopes = {}, {}, {}
    for s in config.schemes:
        mean[s] = np.array([table[(s, snr)][0] for snr in config.snr_db])
        stderr[s] = np.array([table[(s, snr)][1] for snr in config.snr_db])
        try:
            slopes[s] = estimate_slope(list(zip(config.snr_db, mean[s])), config.window_db)
        except InsufficientPoints:
            slopes[s] = None
    return SweepCurve(
        config.schemes,
        config.snr_db,
        mean,
        stderr,
        slopes,
        config.window_db,
        closed_forms(config),
    )


def estimate_slope(points, window_db) -> float:
    """Least-squares slope of sum rate against log2(P) inside a dB window.

    ``points`` is a sequence of (snr_db, mean_rate) pairs; both window
    edges are inclusive.
    """
    lo, hi = window_db
    sel = [(snr, y) for snr, y in points if lo <= snr <= hi]
    if len(sel) < 2:
        raise InsufficientPoints(
            f"need >= 2 points inside [{lo}, {hi}] dB, found {len(sel)}"
        )
    x = np.array([snr * _LOG2P_PER_DB for snr, _ in sel])
    y = np.array([y for _, y in sel])
    return float(np.polyfit(x, y, 1)[0])


def fit_exponent(samples) -> float:
    """Log-log slope of (P, power) pairs.

    Reliable only when the P values span a couple of decades; raises
    InsufficientPoints below two distinct P values.
    """
    pts = [(p, v) for p, v in samples]
    if len({p for p, _ in pts}) < 2:
        raise InsufficientPoints("need >= 2 distinct P values")
    x = np.log([p for p, _ in pts])
    y = np.log([v for _, v in pts])
    return float(np.polyfit(x, y, 1)[0])


def write_csv(curve: SweepCurve, path) -> None:
    """One row per (scheme, SNR): snr_db,scheme,sum_rate_mean,sum_rate_stderr.

    Values carry 12 significant digits; rows are ordered by scheme (config
    order) then SNR, so equal configs produce byte-identical files.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("snr_db,scheme,sum_rate_mean,sum_rate_stderr\n")
        for s in curve.schemes:
            for i, snr in enumerate(curve.snr_db):
                f.write(
                    f"{snr:.12g},{s},{curve.mean[s][i]:.12g},{curve.stderr[s][i]:.12g}\n"
                )


def summary_dict(config: SweepConfig, curve: SweepCurve) -> dict:
    return {
        "config": config_to_dict(config),
        "slopes": dict(curve.slopes),
        "gdof_closed_form": dict(curve.gdof),
    }


def write_summary(config: SweepConfig, curve: SweepCurve, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(summary_dict(config, curve), f, indent=2, sort_keys=True)
        f.write("\n")


def config_to_dict(config: SweepConfig) -> dict:
    return {
        "gamma": config.topology.gamma.tolist(),
        "alpha": config.csit.alpha.tolist(),
        "schemes": list(config.schemes),
        "snr_db": list(config.snr_db),
        "draws": config.draws,
        "seed": config.seed,
        "window_db": list(config.window_db),
        "workers": config.workers,
    }


_REQUIRED_KEYS = ("gamma", "alpha", "schemes", "snr_db", "draws", "seed")


def config_from_dict(raw: dict) -> SweepConfig:
    missing = [k for k in _REQUIRED_KEYS if k not in raw]
    if missing:
        raise ConfigError(f"config missing keys: {', '.join(missing)}")
    try:
        return SweepConfig(
            topology=Topology(raw["gamma"]),
            csit=CsitQuality(raw["alpha"]),
            schemes=tuple(raw["schemes"]),
            snr_db=tuple(raw["snr_db"]),
            draws=int(raw["draws"]),
            seed=int(raw["seed"]),
            window_db=tuple(raw.get("window_db", DEFAULT_WINDOW_DB)),
            workers=int(raw.get("workers", 1)),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad config value: {exc}") from exc


def load_config(path) -> SweepConfig:
    """Parse a JSON sweep config; wraps every parse failure in ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return config_from_dict(raw)
