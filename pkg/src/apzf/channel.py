"""Fading draws and noisy per-transmitter channel estimates.

The receive model at nominal power P is y_i = h_i x + n_i with unit-power
noise; link (i, k) fades as CN(0, P**(gamma[i,k]-1)).  TX j observes

    h_hat[j][i, k] = h[i, k] + sqrt(P**(-alpha[j][i,k])) * e,
    e ~ CN(0, P**(gamma[i,k]-1)),

independent across transmitters and entries, so the estimation error sits
``alpha`` exponent levels below the link itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .topology import CsitQuality, Topology

__all__ = ["ChannelRealization", "CsitEstimate", "sample_channel", "sample_csit"]


@dataclass
class ChannelRealization:
    """One fading draw; ``h[i, k]`` is the TX k -> RX i coefficient."""

    h: np.ndarray
    p: float


@dataclass
class CsitEstimate:
    """Per-transmitter estimates; ``h_hat[j]`` is what TX j sees."""

    h_hat: np.ndarray
    p: float


def _crandn(rng: np.random.Generator, shape) -> np.ndarray:
    """Unit-variance circularly symmetric complex Gaussians."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def sample_channel(topology: Topology, p: float, rng: np.random.Generator) -> ChannelRealization:
    scale = np.sqrt(p ** (topology.gamma - 1.0))
    return ChannelRealization(scale * _crandn(rng, (2, 2)), float(p))


def sample_csit(
    channel: ChannelRealization,
    topology: Topology,
    csit: CsitQuality,
    rng: np.random.Generator,
) -> CsitEstimate:
    """Draw both transmitters' estimates of one channel realization."""
    p = channel.p
    err_scale = np.sqrt(p ** (-csit.alpha)) * np.sqrt(p ** (topology.gamma - 1.0))
    h_hat = channel.h[np.newaxis, :, :] + err_scale * _crandn(rng, (2, 2, 2))
    return CsitEstimate(h_hat, p)
