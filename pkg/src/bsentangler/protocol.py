"""The two-arm entangler: each input is split on a weakly reflecting beam
splitter, the two reflected modes are mixed on a 50:50 splitter with a
wave-plate phase ``gamma``, and a single click at D1 or D2 heralds an entangled
state of the two transmitted modes.

Two routes to the heralded state are provided. :func:`run_analytic` uses the
one-photon branches from :func:`~bsentangler.beamsplitter.weak_split`;
:func:`run_exact` starts from the exact splitter outputs and projects the
reflected modes onto one photon in the clicked detector mode and none in the
other.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .beamsplitter import BeamSplitterParams, apply_bs_exact, weak_split
from .fock import BipartiteState, DomainError, SingleModeState, tensor

__all__ = [
    "Detector",
    "ProtocolConfig",
    "ConditionalOutcome",
    "bs3_matrix",
    "herald_sign",
    "run_analytic",
    "run_exact",
    "detection_probabilities",
    "collapse_infidelity",
    "success_probability_scaling",
]


class Detector(str, enum.Enum):
    D1 = "D1"
    D2 = "D2"

    @classmethod
    def parse(cls, value) -> "Detector":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise DomainError(f"detector must be D1 or D2, got {value!r}") from None


@dataclass(frozen=True, eq=False)
class ProtocolConfig:
    """Inputs of both arms, splitter settings and the heralding detector.

    ``norm_tolerance`` bounds ``|1 - ||psi||^2|`` for the inputs; truncated
    constructor states may fall short of unit norm by up to their tail bound.
    """

    psi1: SingleModeState
    psi2: SingleModeState
    bs: BeamSplitterParams
    gamma: float = 0.0
    detector: Detector = Detector.D1
    norm_tolerance: float = 1e-10

    def __post_init__(self):
        object.__setattr__(self, "detector", Detector.parse(self.detector))
        if not math.isfinite(self.gamma):
            raise DomainError("gamma must be finite")
        for name in ("psi1", "psi2"):
            nsq = getattr(self, name).norm_squared()
            if abs(nsq - 1.0) > self.norm_tolerance:
                raise DomainError(f"{name} must be normalized, squared norm is {nsq:.12g}")

    def with_reflectivity(self, R: float) -> "ProtocolConfig":
        return replace(self, bs=BeamSplitterParams.from_reflectivity(R, self.bs.phi))


@dataclass(frozen=True, eq=False)
class ConditionalOutcome:
    """Heralded strong-mode state.

    ``state`` is unnormalized and its squared norm is ``success_probability``.
    ``normalized_state`` is ``None`` when nothing can be heralded.
    """

    state: BipartiteState
    success_probability: float
    normalized_state: BipartiteState | None
    detector: Detector

    @classmethod
    def from_state(cls, state: BipartiteState, detector: Detector) -> "ConditionalOutcome":
        p = state.norm_squared()
        if p > 1.0 + 1e-12:
            raise DomainError(f"success probability {p} exceeds 1")
        return cls(state, min(p, 1.0), state.normalize() if p > 0.0 else None, detector)


def bs3_matrix(gamma: float) -> np.ndarray:
    """Rows express the detector modes ``A1, A2`` in terms of ``c1, c2``.

    ``A1 = (i c1 + e^{i gamma} c2)/sqrt2`` and ``A2 = (c1 + i e^{i gamma} c2)/sqrt2``.
    """
    e = cmath.exp(1j * gamma)
    return np.array([[1j, e], [1.0, 1j * e]], dtype=np.complex128) / math.sqrt(2.0)


def herald_sign(gamma: float, detector: Detector) -> complex:
    """Relative amplitude of ``|u1>|v2>`` against ``|v1>|u2>``: ``-/+ i e^{i gamma}``."""
    s = -1.0 if Detector.parse(detector) is Detector.D1 else 1.0
    return s * 1j * cmath.exp(1j * gamma)


def run_analytic(c: ProtocolConfig) -> ConditionalOutcome:
    """Heralded state ``e^{i phi} R/sqrt2 (|v1>|u2> -/+ i e^{i gamma} |u1>|v2>)``."""
    w1 = weak_split(c.psi1, c.bs)
    w2 = weak_split(c.psi2, c.bs)
    pref = cmath.exp(1j * c.bs.phi) * c.bs.R / math.sqrt(2.0)
    state = (tensor(w1.v, w2.u) + herald_sign(c.gamma, c.detector) * tensor(w1.u, w2.v)) * pref
    return ConditionalOutcome.from_state(state, c.detector)


def _arm_outputs(c: ProtocolConfig) -> tuple[np.ndarray, np.ndarray]:
    """Exact splitter outputs, padded so rows ``k = 0, 1`` always exist."""
    out = []
    for psi in (c.psi1, c.psi2):
        amp = apply_bs_exact(psi, c.bs).amplitudes
        if amp.shape[0] < 2:
            amp = np.vstack([amp, np.zeros_like(amp)])
        out.append(amp)
    return out[0], out[1]


def run_exact(c: ProtocolConfig) -> ConditionalOutcome:
    """Project the exact four-mode output onto one photon at the clicked
    detector and none at the other."""
    a1, a2 = _arm_outputs(c)
    row = bs3_matrix(c.gamma)[0 if c.detector is Detector.D1 else 1]
    # <1_{A_d} 0|c_j^dagger|0> = U[d, j]
    amps = row[0] * np.outer(a1[1], a2[0]) + row[1] * np.outer(a1[0], a2[1])
    return ConditionalOutcome.from_state(BipartiteState(amps), c.detector)


def detection_probabilities(c: ProtocolConfig) -> dict[str, float]:
    """Probabilities of every detection event on the reflected modes.

    ``D1`` and ``D2`` come from the heralding projection; ``no_click`` and
    ``multi_photon`` come from the reflected-port photon-number marginals of the
    two arms, which the 50:50 mixer leaves unchanged.
    """
    q1 = apply_bs_exact(c.psi1, c.bs).weak_port_marginal()
    q2 = apply_bs_exact(c.psi2, c.bs).weak_port_marginal()
    q1 = np.pad(q1, (0, max(0, 2 - len(q1))))
    q2 = np.pad(q2, (0, max(0, 2 - len(q2))))
    no_click = float(q1[0] * q2[0])
    multi = float(q1.sum() * q2.sum() - q1[0] * q2[0] - q1[1] * q2[0] - q1[0] * q2[1])
    return {
        "no_click": no_click,
        "D1": run_exact(replace(c, detector=Detector.D1)).success_probability,
        "D2": run_exact(replace(c, detector=Detector.D2)).success_probability,
        "multi_photon": multi,
    }


def _lower_weak(amp: np.ndarray) -> np.ndarray:
    """Annihilation operator on the reflected-port index of ``amp[k, m]``."""
    out = np.zeros_like(amp)
    out[:-1] = np.sqrt(np.arange(1, amp.shape[0]))[:, None] * amp[1:]
    return out


def collapse_infidelity(c: ProtocolConfig) -> float:
    """Infidelity between the analytic heralded state (with both reflected modes
    in vacuum) and the operator collapse ``A_d (|Psi1> x |Psi2>)`` of the exact
    four-mode state.

    The collapsed vector keeps the terms where two or more photons were
    reflected and one of them is removed, so the infidelity is of relative
    order ``R**2``. The four-mode vector is never built: it is a sum of two
    product terms and all needed overlaps factorise.
    """
    a1, a2 = _arm_outputs(c)
    row = bs3_matrix(c.gamma)[0 if c.detector is Detector.D1 else 1]
    l1, l2 = _lower_weak(a1), _lower_weak(a2)

    def dot(x, y):
        return np.vdot(x.ravel(), y.ravel())

    # |X + Y|^2 with X = row[0] (c1 a1) x a2 and Y = row[1] a1 x (c2 a2)
    xx = abs(row[0]) ** 2 * dot(l1, l1).real * dot(a2, a2).real
    yy = abs(row[1]) ** 2 * dot(a1, a1).real * dot(l2, l2).real
    xy = np.conj(row[0]) * row[1] * dot(l1, a1) * dot(a2, l2)
    total = xx + yy + 2.0 * xy.real
    if total <= 0.0:
        raise DomainError("nothing to collapse: the reflected modes carry no photons")
    block = row[0] * np.outer(l1[0], a2[0]) + row[1] * np.outer(a1[0], l2[0])
    analytic = run_analytic(c).state
    if analytic.norm_squared() == 0.0:
        raise DomainError("analytic heralded state is zero")
    shape = (max(block.shape[0], analytic.shape[0]), max(block.shape[1], analytic.shape[1]))
    blk = BipartiteState(block).padded(shape)
    ana = analytic.padded(shape)
    overlap = abs(np.vdot(ana.ravel(), blk.ravel())) ** 2
    return float(1.0 - overlap / (analytic.norm_squared() * total))


def success_probability_scaling(c: ProtocolConfig,
                                r_values: Iterable[float]) -> list[tuple[float, float]]:
    """Exact heralding probability for each reflectivity, keeping ``phi``."""
    return [(float(R), run_exact(c.with_reflectivity(R)).success_probability)
            for R in r_values]
