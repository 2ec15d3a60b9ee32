"""Precoding vectors: active-passive ZF, multicast, matched, and baselines.

Active-passive zero-forcing (AP-ZF) is the distributed answer to the ZF
precoder.  The passive transmitter applies a deterministic power-scaled
constant; the active (better-informed) transmitter alone adapts to its
local estimate so that the pair cancels at the unintended receiver:

    t_pas = sqrt(P ** x),   x = tau - (gamma[itf, pas] - gamma[itf, act])+
    t_act = -conj(hhat[itf, act]) * hhat[itf, pas] / (|hhat[itf, act]|^2 + 1/P) * t_pas

where itf is the receiver to protect and tau the power budget exponent.
Because t_pas is deterministic, no estimate of it needs to be shared; the
1/P regularizer keeps the active coefficient finite on deep-fade draws.

``centralized_zf`` and ``naive_zf`` are the comparison points: a
regularized full-matrix ZF computed from one shared estimate, and the
same computation done independently at each TX from its own local
estimate (each TX then transmits only its own entry, so the two entries
come from inconsistent matrix inverses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gdof import SchemeLayout
from .topology import Topology

__all__ = [
    "PrecodingVector",
    "apzf",
    "multicast",
    "matched",
    "centralized_zf",
    "naive_zf",
]

_EYE2 = np.eye(2)


@dataclass
class PrecodingVector:
    """Entry ``t[k]`` is applied at TX ``k``.  ``target_rx`` is None for
    layers meant for both receivers."""

    t: np.ndarray
    target_rx: int | None
    layer: str

    def power(self) -> float:
        return float(np.sum(np.abs(self.t) ** 2))


def apzf(
    estimate_active: np.ndarray,
    target_rx: int,
    tau: float,
    topology: Topology,
    p: float,
    active_tx: int = 0,
    regularize: bool = True,
) -> PrecodingVector:
    """AP-ZF vector for ``target_rx``, cancelling at the other receiver.

    ``estimate_active`` is the active transmitter's full 2x2 estimate.
    With ``regularize=False`` the 1/P term is dropped; combined with a
    perfect estimate this cancels the unintended receiver exactly.
    """
    itf = 1 - target_rx
    passive_tx = 1 - active_tx
    g = topology.gamma
    x = tau - max(float(g[itf, passive_tx] - g[itf, active_tx]), 0.0)
    t_pas = math.sqrt(p**x)
    e_act = estimate_active[itf, active_tx]
    e_pas = estimate_active[itf, passive_tx]
    reg = 1.0 / p if regularize else 0.0
    t_act = -np.conj(e_act) * e_pas * t_pas / (abs(e_act) ** 2 + reg)
    t = np.zeros(2, dtype=complex)
    t[active_tx] = t_act
    t[passive_tx] = t_pas
    return PrecodingVector(t, target_rx, f"s{target_rx + 1}")


def multicast(p: float, layout: SchemeLayout) -> PrecodingVector:
    """Common layer soaking up the power the lower layers leave over.

    Each transmitter dedicates one power slot per transmitted band, so
    the residual is P minus P**power_exp once per band actually carrying
    rate (the private pair counts once, the z-layer once).
    """
    residual = p
    if layout.rate_exp.get("s1", 0.0) > 0.0:
        residual -= p ** layout.power_exp["s1"]
    if layout.rate_exp.get("z1", 0.0) > 0.0:
        residual -= p ** layout.power_exp["z1"]
    residual = max(residual, 0.0)
    t = np.full(2, math.sqrt(residual / 2.0), dtype=complex)
    return PrecodingVector(t, None, "s0")


def matched(estimate_active: np.ndarray, p: float, layout: SchemeLayout) -> PrecodingVector:
    """Matched-filter layer for RX 1 riding below the interference floor.

    Beamforms along the active TX's estimate of RX 1's row at the
    z-layer power; degenerates to the zero vector when the layout
    carries no z rate.
    """
    if layout.rate_exp.get("z1", 0.0) <= 0.0:
        return PrecodingVector(np.zeros(2, dtype=complex), 0, "z1")
    d = np.conj(estimate_active[0, :])
    n = float(np.linalg.norm(d))
    if n == 0.0:
        return PrecodingVector(np.zeros(2, dtype=complex), 0, "z1")
    t = d * (math.sqrt(p ** layout.power_exp["z1"]) / n)
    return PrecodingVector(t, 0, "z1")


def _regularized_zf(estimate: np.ndarray, target_rx: int, p: float) -> np.ndarray:
    """Direction of the regularized channel-inverse column for ``target_rx``."""
    gram = estimate @ estimate.conj().T + (1.0 / p) * _EYE2
    return estimate.conj().T @ np.linalg.solve(gram, _EYE2[:, target_rx])


def _scaled(w: np.ndarray, tau: float, p: float) -> np.ndarray:
    n = float(np.linalg.norm(w))
    if n == 0.0:
        return np.zeros(2, dtype=complex)
    return w * (math.sqrt(p**tau) / n)


def centralized_zf(
    shared_estimate: np.ndarray, target_rx: int, tau: float, p: float
) -> PrecodingVector:
    """Regularized ZF from one shared estimate, norm sqrt(P**tau)."""
    t = _scaled(_regularized_zf(shared_estimate, target_rx, p), tau, p)
    return PrecodingVector(t, target_rx, f"s{target_rx + 1}")


def naive_zf(estimates: np.ndarray, target_rx: int, tau: float, p: float) -> PrecodingVector:
    """Each TX runs the centralized computation on its own estimate.

    TX j normalizes its locally computed full vector to sqrt(P**tau) and
    transmits entry j of it; the entries generally do not cohere because
    the two estimates differ.
    """
    t = np.zeros(2, dtype=complex)
    for j in range(2):
        w = _scaled(_regularized_zf(estimates[j], target_rx, p), tau, p)
        t[j] = w[j]
    return PrecodingVector(t, target_rx, f"s{target_rx + 1}")
