"""Assembling transmit plans and evaluating their achievable rates.

A transmit plan instantiates a layout for one fading/CSIT draw: a common
layer on top, the two private layers underneath, and (when the layout
carries it) the below-the-floor z layer for RX 1.  Decoding is
successive: both receivers decode the common layer treating everything
else as noise, each then strips it and decodes its private layer; RX 1
finally strips its private layer and decodes the z layer with only the
other private layer left as noise.

Scheme kinds differ only in how the private vectors are produced:

* ``apzf``             active-passive ZF from the active TX's estimate,
* ``centralized_zf``   regularized ZF from the active TX's estimate used
                       as if it were shared by both TXs,
* ``naive_zf``         per-TX regularized ZF from local estimates, and
                       the worst-transmitter layout (a TX that adapts
                       with quality it does not have only injects
                       interference),
* ``no_csit``          a single full-power common layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import ChannelRealization, CsitEstimate
from .gdof import SchemeLayout, scheme_layout
from .precoders import PrecodingVector, apzf, centralized_zf, matched, multicast, naive_zf
from .topology import CanonicalForm, effective_alphas

__all__ = [
    "SchemeKind",
    "PlanLayer",
    "TransmitPlan",
    "RateBreakdown",
    "PowerInfeasible",
    "plan_layout",
    "build_plan",
    "achievable_rates",
    "interference_power",
    "per_tx_power",
]

_POWER_TOL = 1e-9


class PowerInfeasible(RuntimeError):
    """A plan's per-transmitter power came out above the budget."""


class SchemeKind(str, Enum):
    APZF = "apzf"
    CENTRALIZED_ZF = "centralized_zf"
    NAIVE_ZF = "naive_zf"
    NO_CSIT = "no_csit"


@dataclass
class PlanLayer:
    tag: str
    vector: PrecodingVector
    rate_exp: float


@dataclass
class TransmitPlan:
    layers: list
    scheme_kind: SchemeKind
    p: float

    def get(self, tag: str) -> PrecodingVector | None:
        for layer in self.layers:
            if layer.tag == tag:
                return layer.vector
        return None


@dataclass
class RateBreakdown:
    """Per-layer achievable rates of one draw, in bits per channel use.

    ``r0`` common, ``r1``/``r2`` private, ``rz`` the z layer at RX 1.
    """

    r0: float
    r1: float
    r2: float
    rz: float
    sum: float = 0.0

    def __post_init__(self):
        self.sum = self.r0 + self.r1 + self.r2 + self.rz


def plan_layout(canonical: CanonicalForm, scheme_kind) -> SchemeLayout:
    """Layout a scheme transmits with on a canonical instance.

    AP-ZF and the centralized baseline use the effective (best-TX)
    exponents.  The naive baseline only delivers the cancellation quality
    of the worse transmitter, so its layout is evaluated at the
    entrywise-minimum alphas; transmitting the optimistic layout instead
    would drown the common layer in residual interference.
    """
    kind = SchemeKind(scheme_kind)
    if kind is SchemeKind.NAIVE_ZF:
        worst = canonical.csit.alpha.min(axis=0)
        return scheme_layout(canonical, alpha_prime=worst.min(axis=1))
    return scheme_layout(canonical)


def _private_pair(canonical, estimate, layout, kind, p):
    tau = layout.power_exp["s1"]
    act = canonical.active_tx
    if kind is SchemeKind.APZF:
        est = estimate.h_hat[act]
        return [
            apzf(est, rx, tau, canonical.topology, p, active_tx=act) for rx in (0, 1)
        ]
    if kind is SchemeKind.CENTRALIZED_ZF:
        est = estimate.h_hat[act]
        return [centralized_zf(est, rx, tau, p) for rx in (0, 1)]
    return [naive_zf(estimate.h_hat, rx, tau, p) for rx in (0, 1)]


def _scale_layer(layer: PlanLayer, beta: float) -> None:
    layer.vector.t = layer.vector.t * math.sqrt(max(beta, 0.0))


def _cap_to_budget(layers: list, p: float) -> None:
    """Scale adaptive layers down if a draw overshoots a TX's power budget.

    The active AP-ZF coefficient is a ratio of Gaussians, so a small
    fraction of draws exceeds the per-TX share at finite P.  All
    non-common layers are scaled by one common factor (both coefficients
    of each pair together), which preserves their cancellation directions
    and their relative power split.
    """
    adaptive = [l for l in layers if l.tag != "s0"]
    if not adaptive:
        return
    budget = np.full(2, p)
    totals = np.zeros(2)
    for layer in layers:
        if layer.tag == "s0":
            budget -= np.abs(layer.vector.t) ** 2
        else:
            totals += np.abs(layer.vector.t) ** 2
    over = totals > budget
    if np.any(over):
        beta = float(np.min(budget[over] / totals[over]))
        for layer in adaptive:
            _scale_layer(layer, beta)


def per_tx_power(plan: TransmitPlan) -> np.ndarray:
    total = np.zeros(2)
    for layer in plan.layers:
        total += np.abs(layer.vector.t) ** 2
    return total


def build_plan(
    canonical: CanonicalForm,
    estimate: CsitEstimate,
    layout: SchemeLayout,
    scheme_kind,
    p: float,
) -> TransmitPlan:
    """Instantiate ``layout`` for one CSIT draw under the given scheme.

    Layers whose rate exponent is zero are not transmitted.  Per-TX power
    never exceeds P (enforced by a back-off on pathological draws).
    """
    kind = SchemeKind(scheme_kind)
    layers: list[PlanLayer] = []

    if kind is SchemeKind.NO_CSIT:
        g = canonical.topology.gamma
        rate = float(min(g[0].max(), g[1].max()))
        t = np.full(2, math.sqrt(p / 2.0), dtype=complex)
        layers.append(PlanLayer("s0", PrecodingVector(t, None, "s0"), rate))
        return TransmitPlan(layers, kind, float(p))

    bc = multicast(p, layout)
    if bc.power() > 0.0:
        layers.append(PlanLayer("s0", bc, layout.rate_exp["s0"]))
    if layout.rate_exp.get("s1", 0.0) > 0.0:
        v1, v2 = _private_pair(canonical, estimate, layout, kind, p)
        layers.append(PlanLayer("s1", v1, layout.rate_exp["s1"]))
        layers.append(PlanLayer("s2", v2, layout.rate_exp["s2"]))
    if kind is SchemeKind.APZF and layout.rate_exp.get("z1", 0.0) > 0.0:
        z = matched(estimate.h_hat[canonical.active_tx], p, layout)
        layers.append(PlanLayer("z1", z, layout.rate_exp["z1"]))

    _cap_to_budget(layers, p)
    plan = TransmitPlan(layers, kind, float(p))
    if np.any(per_tx_power(plan) > p * (1.0 + _POWER_TOL)):
        raise PowerInfeasible(f"per-TX power exceeds budget P = {p!r}")
    return plan


def _received(channel: ChannelRealization, plan: TransmitPlan) -> dict:
    h = channel.h
    return {layer.tag: np.abs(h @ layer.vector.t) ** 2 for layer in plan.layers}


def achievable_rates(channel: ChannelRealization, plan: TransmitPlan) -> RateBreakdown:
    """Rates of the successive-decoding chain on one draw.

    The common layer's rate is the worse of the two receivers' mutual
    informations with all lower layers as noise; absent layers carry 0.
    """
    q = _received(channel, plan)

    def at(tag: str, rx: int) -> float:
        v = q.get(tag)
        return float(v[rx]) if v is not None else 0.0

    r0 = r1 = r2 = rz = 0.0
    if "s0" in q:
        sinr0 = min(
            at("s0", rx) / (1.0 + at("s1", rx) + at("s2", rx) + at("z1", rx))
            for rx in (0, 1)
        )
        r0 = math.log2(1.0 + sinr0)
    if "s1" in q:
        r1 = math.log2(1.0 + at("s1", 0) / (1.0 + at("z1", 0) + at("s2", 0)))
    if "s2" in q:
        r2 = math.log2(1.0 + at("s2", 1) / (1.0 + at("s1", 1) + at("z1", 1)))
    if "z1" in q:
        rz = math.log2(1.0 + at("z1", 0) / (1.0 + at("s2", 0)))
    return RateBreakdown(r0, r1, r2, rz)


def interference_power(channel: ChannelRealization, plan: TransmitPlan, rx: int) -> float:
    """Received power of the private layer aimed at the other receiver.

    This is the quantity the zero-forcing pair is supposed to suppress;
    the common and z layers are excluded (they are handled by the
    decoding order, not by cancellation).
    """
    q = _received(channel, plan)
    total = 0.0
    for tag, target in (("s1", 0), ("s2", 1)):
        if tag in q and target != rx:
            total += float(q[tag][rx])
    return total
