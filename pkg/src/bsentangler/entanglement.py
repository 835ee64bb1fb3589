"""Concurrence of the heralded two-mode state.

The heralded state has the form ``a |V1>|U2> + b |U1>|V2>`` with normalized but
generally nonorthogonal ``U_j, V_j``. :func:`concurrence_general` evaluates the
closed form in terms of the branch norms and overlaps,
:func:`concurrence_identical` its specialisation to identical inputs, and
:func:`concurrence_oracle` a basis-free value from the reduced density matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .beamsplitter import WeakSplitResult
from .fock import BipartiteState, DomainError, inner_product
from .protocol import Detector, herald_sign

__all__ = [
    "ConcurrenceInputs",
    "concurrence_inputs",
    "concurrence_general",
    "concurrence_identical",
    "concurrence_oracle",
    "hybrid_concurrence",
    "mes_condition_example4",
    "solve_mes_example4",
]

RANGE_TOL = 1e-9


@dataclass(frozen=True)
class ConcurrenceInputs:
    """Branch norms ``mu_j, nu_j`` and overlaps ``<V_j|U_j>`` of both arms."""

    mu1: float
    nu1: float
    mu2: float
    nu2: float
    overlap1: complex
    overlap2: complex
    gamma: float
    detector: Detector

    def __post_init__(self):
        object.__setattr__(self, "detector", Detector.parse(self.detector))
        for name in ("mu1", "nu1", "mu2", "nu2"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be nonnegative")
        for name in ("overlap1", "overlap2"):
            if abs(getattr(self, name)) > 1.0 + 1e-12:
                raise DomainError(f"|{name}| exceeds 1")


def _overlap(w: WeakSplitResult) -> complex:
    if w.mu == 0.0 or w.nu == 0.0:
        return 0j
    return inner_product(w.v, w.u) / (w.mu * w.nu)


def concurrence_inputs(w1: WeakSplitResult, w2: WeakSplitResult, gamma: float,
                       detector: Detector) -> ConcurrenceInputs:
    return ConcurrenceInputs(w1.mu, w1.nu, w2.mu, w2.nu, _overlap(w1), _overlap(w2),
                             gamma, detector)


def _check_range(c: float) -> float:
    if not (-RANGE_TOL <= c <= 1.0 + RANGE_TOL):
        raise DomainError(f"concurrence {c!r} outside [0, 1]; formula inputs are inconsistent")
    return float(min(max(c, 0.0), 1.0))


def concurrence_general(x: ConcurrenceInputs) -> float:
    """Closed-form concurrence for arbitrary (non-identical) arms.

    Raises:
        DomainError: both arms lack a one-photon branch, or the state norm
            vanishes.
    """
    if x.nu1 == 0.0 and x.nu2 == 0.0:
        raise DomainError("both one-photon branches vanish: nothing is heralded")
    s = herald_sign(x.gamma, x.detector)
    w = x.mu1 * x.nu1 * x.mu2 * x.nu2
    # cross term  s <V1|U1><U2|V2> + c.c.
    cross = s * x.overlap1 * np.conj(x.overlap2)
    denom = (x.mu1 * x.nu2) ** 2 + (x.nu1 * x.mu2) ** 2 + w * 2.0 * cross.real
    if denom <= 1e-300:
        raise DomainError("heralded state has zero norm (branches cancel)")
    num = 2.0 * w * math.sqrt(max(0.0, (1.0 - abs(x.overlap1) ** 2) * (1.0 - abs(x.overlap2) ** 2)))
    return _check_range(num / denom)


def concurrence_identical(overlap_mag_sq: float, gamma: float, detector: Detector) -> float:
    """Concurrence for identical inputs: ``(1 - q)/(1 +/- sin(gamma) q)``,
    ``+`` for D1 and ``-`` for D2, with ``q = |<V|U>|^2``."""
    if not 0.0 <= overlap_mag_sq <= 1.0:
        raise DomainError(f"squared overlap must lie in [0, 1], got {overlap_mag_sq}")
    sign = 1.0 if Detector.parse(detector) is Detector.D1 else -1.0
    denom = 1.0 + sign * math.sin(gamma) * overlap_mag_sq
    if denom <= 1e-15:
        raise DomainError("degenerate denominator: heralded state vanishes")
    return _check_range((1.0 - overlap_mag_sq) / denom)


def concurrence_oracle(s: BipartiteState) -> float:
    """``sqrt(2 (1 - Tr rho_1^2))`` from the reduced state of the first mode.

    The spectrum of ``rho_1`` is taken from the singular values of the
    amplitude matrix, and ``1 - Tr rho^2`` is evaluated as
    ``2 sum_{i<j} l_i l_j / (sum l)^2`` so that nearly separable states do not
    lose everything to cancellation.
    """
    nsq = s.norm_squared()
    if abs(nsq - 1.0) > 1e-8:
        raise DomainError(f"oracle needs a normalized state, squared norm is {nsq:.12g}")
    lam = np.linalg.svd(s.amplitudes, compute_uv=False) ** 2
    lam = np.sort(lam)
    # sum_{i<j} l_i l_j, accumulated from the small end
    pairs = float(np.dot(lam[:-1], np.cumsum(lam[::-1])[::-1][1:]))
    total = float(lam.sum())
    return _check_range(2.0 * math.sqrt(max(pairs, 0.0)) / total)


def hybrid_concurrence(n: int, t_alpha_mag: float) -> float:
    """Closed-form concurrence for a number state ``|n>`` in one arm and an even
    cat in the other, as a function of ``|T alpha|``."""
    x = t_alpha_mag**2
    if x == 0.0:
        return 0.0
    # divide through by cosh(x) so large x stays finite
    th = math.tanh(x)
    return 2.0 * t_alpha_mag * math.sqrt(n * th) / (x * th + n)


def mes_condition_example4(n: int, t_alpha_mag: float) -> float:
    """Residual ``|T alpha|^2 tanh(|T alpha|^2) - n``; zero at maximal entanglement."""
    if n < 1:
        raise DomainError("photon number must be >= 1")
    x = t_alpha_mag**2
    return x * math.tanh(x) - n


def solve_mes_example4(n: int, xtol: float = 1e-14) -> float:
    """``|T alpha|`` at which the hybrid state is maximally entangled."""
    if n < 1:
        raise DomainError("photon number must be >= 1")
    # x tanh x is increasing with x tanh x >= x - 1, so the root lies in (0, n + 1]
    x = brentq(lambda x: x * math.tanh(x) - n, 0.0, n + 1.0, xtol=xtol, rtol=4 * np.finfo(float).eps)
    return math.sqrt(x)
