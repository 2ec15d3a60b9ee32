"""Topology and CSIT-quality model for the 2x2 network.

Two single-antenna transmitters jointly serve two single-antenna receivers.
Link strengths and channel-estimate qualities are described on the exponent
scale relative to a nominal power ``P``:

* ``gamma[i, k]`` is the strength exponent of the link TX ``k`` -> RX ``i``;
  the fading coefficient of that link has variance ``P**(gamma[i, k] - 1)``.
* ``alpha[j][i, k]`` is the quality exponent of TX ``j``'s local estimate of
  the (i, k) fading coefficient; the estimation-error variance decays as
  ``P**(-alpha[j][i, k])`` relative to the link variance.

Everything downstream (closed forms, layered schemes) assumes exponents in
``[0, 1]``, estimate quality no better than the link itself
(``alpha <= gamma`` entrywise), and one transmitter whose quality matrix
dominates the other's entrywise.  ``validate`` checks exactly these
conditions, ``canonicalize`` relabels the network into the orientation the
closed forms are written for.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Topology",
    "CsitQuality",
    "EffectiveExponents",
    "CanonicalForm",
    "ValidationError",
    "GammaOutOfRange",
    "AlphaOutOfRange",
    "NoDominantTransmitter",
    "ValidationReport",
    "validate",
    "canonicalize",
    "effective_alphas",
]


class ValidationError(ValueError):
    """Input outside the domain covered by the closed-form results."""


class GammaOutOfRange(ValidationError):
    """A link-strength exponent lies outside [0, 1]."""

    def __init__(self, rx: int, tx: int, value: float):
        self.rx, self.tx, self.value = rx, tx, value
        super().__init__(f"gamma[{rx},{tx}] = {value!r} outside [0, 1]")


class AlphaOutOfRange(ValidationError):
    """A CSIT quality exponent lies outside [0, gamma] for its link."""

    def __init__(self, tx_est: int, rx: int, tx: int, value: float, gamma: float):
        self.tx_est, self.rx, self.tx, self.value = tx_est, rx, tx, value
        self.gamma = gamma
        super().__init__(
            f"alpha[{tx_est}][{rx},{tx}] = {value!r} outside [0, gamma] with gamma = {gamma!r}"
        )


class NoDominantTransmitter(ValidationError):
    """Neither transmitter's quality matrix dominates the other entrywise.

    The achievability construction assigns all interference-cancelling
    duties to a single better-informed transmitter, so it needs one TX
    whose alpha matrix is >= the other's in every entry.
    """

    def __init__(self):
        super().__init__("neither TX's CSIT quality dominates the other elementwise")


@dataclass
class Topology:
    """Link-strength exponents, ``gamma[i, k]`` for TX ``k`` -> RX ``i``."""

    gamma: np.ndarray

    def __post_init__(self):
        self.gamma = np.asarray(self.gamma, dtype=float)
        if self.gamma.shape != (2, 2):
            raise ValueError(f"gamma must be 2x2, got shape {self.gamma.shape}")

    @classmethod
    def parallel(cls, cross: float) -> "Topology":
        """Symmetric topology with unit direct links and equal cross links."""
        return cls(np.array([[1.0, cross], [cross, 1.0]]))


@dataclass
class CsitQuality:
    """Per-transmitter estimate qualities, ``alpha[j, i, k]`` at TX ``j``."""

    alpha: np.ndarray

    def __post_init__(self):
        self.alpha = np.asarray(self.alpha, dtype=float)
        if self.alpha.shape != (2, 2, 2):
            raise ValueError(f"alpha must be 2x2x2, got shape {self.alpha.shape}")

    @classmethod
    def uniform(cls, alpha_tx1: float, alpha_tx2: float) -> "CsitQuality":
        """Each TX has a single quality exponent for every link."""
        a = np.empty((2, 2, 2))
        a[0] = alpha_tx1
        a[1] = alpha_tx2
        return cls(a)


@dataclass
class EffectiveExponents:
    """Reduced CSIT exponents used by the closed forms.

    alpha_rx[j, i]   worst quality at TX j about RX i's row (min over columns)
    alpha_max[i, k]  best quality about link (i, k) across the two TXs
    alpha_prime[i]   min over columns of alpha_max, the network-wide
                     effective quality about RX i
    """

    alpha_rx: np.ndarray
    alpha_max: np.ndarray
    alpha_prime: np.ndarray


@dataclass
class CanonicalForm:
    """A relabelled instance with the strongest link moved to gamma[0, 0].

    ``rx_swap`` / ``tx_swap`` record the relabelling that was applied.
    ``active_tx`` is the index (after relabelling) of the transmitter whose
    quality matrix dominates; it carries the interference-cancelling role.
    """

    topology: Topology
    csit: CsitQuality
    rx_swap: bool
    tx_swap: bool
    active_tx: int


@dataclass
class ValidationReport:
    violations: list

    @property
    def passes(self) -> bool:
        return not self.violations

    def raise_first(self) -> None:
        if self.violations:
            raise self.violations[0]


def validate(topology: Topology, csit: CsitQuality) -> ValidationReport:
    """Collect every domain violation of a (topology, csit) pair.

    Checks, in order: gamma entries in [0, 1]; alpha entries in
    [0, gamma] for their link; existence of an entrywise dominant TX.
    """
    g, a = topology.gamma, csit.alpha
    violations: list[ValidationError] = []
    for i in range(2):
        for k in range(2):
            if not (0.0 <= g[i, k] <= 1.0):
                violations.append(GammaOutOfRange(i, k, float(g[i, k])))
    for j in range(2):
        for i in range(2):
            for k in range(2):
                if not (0.0 <= a[j, i, k] <= g[i, k]):
                    violations.append(
                        AlphaOutOfRange(j, i, k, float(a[j, i, k]), float(g[i, k]))
                    )
    if not (np.all(a[0] >= a[1]) or np.all(a[1] >= a[0])):
        violations.append(NoDominantTransmitter())
    return ValidationReport(violations)


def _permute(gamma: np.ndarray, alpha: np.ndarray, rx_swap: bool, tx_swap: bool):
    g, a = gamma, alpha
    if rx_swap:
        g = g[::-1, :]
        a = a[:, ::-1, :]
    if tx_swap:
        g = g[:, ::-1]
        a = a[::-1, :, ::-1]
    return g.copy(), a.copy()


# Candidate relabellings, tried in order; first hit wins so that the
# identity is preferred on ties.
_RELABELLINGS = ((False, False), (True, False), (False, True), (True, True))


def canonicalize(topology: Topology, csit: CsitQuality) -> CanonicalForm:
    """Relabel RXs/TXs so the strongest link sits at gamma[0, 0].

    Swapping TX labels also swaps which estimate belongs to which TX, so
    alpha is permuted in both its transmitter axis and its column axis.
    The dominant transmitter keeps its role but may end up at either
    index; the result's ``active_tx`` says where.  Raises the first
    validation error if the input is outside the supported domain.
    """
    validate(topology, csit).raise_first()
    target = topology.gamma.max()
    for rx_swap, tx_swap in _RELABELLINGS:
        g, a = _permute(topology.gamma, csit.alpha, rx_swap, tx_swap)
        if g[0, 0] == target:
            break
    active_tx = 0 if np.all(a[0] >= a[1]) else 1
    return CanonicalForm(Topology(g), CsitQuality(a), rx_swap, tx_swap, active_tx)


def effective_alphas(topology: Topology, csit: CsitQuality) -> EffectiveExponents:
    """Reduce the 2x2x2 quality tensor to the exponents the closed forms use.

    A transmitter cancelling interference caused at RX i is limited by its
    worst estimate in row i (min over columns); the network is limited by
    the best-informed transmitter for each link (max over TXs).
    """
    a = csit.alpha
    alpha_rx = a.min(axis=2)
    alpha_max = a.max(axis=0)
    alpha_prime = alpha_max.min(axis=1)
    return EffectiveExponents(alpha_rx, alpha_max, alpha_prime)
