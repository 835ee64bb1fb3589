"""Constructors for the input-state families: number states, coherent states,
even/odd coherent (cat) states and single-mode squeezed vacuum.

Every constructor picks the smallest cutoff whose tail mass is below the
configured ``epsilon_tail`` unless an explicit ``n_max`` is passed, in which
case that cutoff is validated and used. Coefficients are evaluated in log
space so that factorials never overflow below ``n_max_cap``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .fock import (
    DEFAULT_TRUNCATION,
    DomainError,
    SingleModeState,
    TruncationConfig,
    choose_cutoff,
)

__all__ = [
    "CoherentParams",
    "SqueezeParams",
    "make_fock",
    "make_coherent",
    "make_even_cat",
    "make_odd_cat",
    "make_squeezed_vacuum",
]


@dataclass(frozen=True)
class CoherentParams:
    alpha: complex

    def __post_init__(self):
        a = complex(self.alpha)
        if not cmath.isfinite(a):
            raise DomainError(f"alpha must be finite, got {self.alpha}")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze parameter ``r >= 0`` and squeeze phase ``theta`` (radians)."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise DomainError(f"squeeze parameter must be finite and >= 0, got {self.r}")
        if math.tanh(self.r) >= 1.0:
            raise DomainError(f"tanh(r) rounds to 1 for r={self.r}")
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))

    @property
    def gamma(self) -> complex:
        """``exp(i theta) tanh r``."""
        return cmath.exp(1j * self.theta) * math.tanh(self.r)


def _coherent_arg(p) -> complex:
    return p.alpha if isinstance(p, CoherentParams) else CoherentParams(p).alpha


def _squeeze_arg(p) -> SqueezeParams:
    return p if isinstance(p, SqueezeParams) else SqueezeParams(float(p))


def _log_cosh(x: float) -> float:
    return float(np.logaddexp(x, -x) - math.log(2.0))


def _log_sinh(x: float) -> float:
    if x < 20.0:
        return math.log(math.sinh(x))
    return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)


def _build(log_mag: np.ndarray, phase: np.ndarray, config: TruncationConfig,
           n_max: int | None) -> SingleModeState:
    """Assemble a state from per-index log-magnitudes (``-inf`` = exact zero)."""
    with np.errstate(under="ignore"):
        mag = np.exp(log_mag)
    cutoff = choose_cutoff(mag**2, config, n_max=n_max)
    amps = mag[: cutoff + 1] * phase[: cutoff + 1]
    return SingleModeState(amps, normalized=True)


def _grid(config: TruncationConfig, n_max: int | None) -> np.ndarray:
    top = config.n_max_cap if n_max is None else max(config.n_max_cap, n_max)
    return np.arange(top + 1)


def make_fock(n: int, config: TruncationConfig = DEFAULT_TRUNCATION) -> SingleModeState:
    """Number state ``|n>`` with cutoff ``n``."""
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"photon number must be an integer, got {n!r}")
    n = int(n)
    if not 0 <= n <= config.n_max_cap:
        raise DomainError(f"photon number {n} outside [0, {config.n_max_cap}]")
    amps = np.zeros(n + 1, dtype=np.complex128)
    amps[n] = 1.0
    return SingleModeState(amps)


def make_coherent(p: CoherentParams | complex, config: TruncationConfig = DEFAULT_TRUNCATION,
                  n_max: int | None = None) -> SingleModeState:
    """Coherent state ``f_n = exp(-|a|^2/2) a^n / sqrt(n!)``."""
    alpha = _coherent_arg(p)
    n = _grid(config, n_max)
    if alpha == 0:
        log_mag = np.where(n == 0, 0.0, -np.inf)
    else:
        log_mag = -abs(alpha) ** 2 / 2 + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    phase = np.exp(1j * n * cmath.phase(alpha))
    return _build(log_mag, phase, config, n_max)


def _cat(alpha: complex, parity: int, config: TruncationConfig,
         n_max: int | None) -> SingleModeState:
    n = _grid(config, n_max)
    x = abs(alpha) ** 2
    log_norm = _log_cosh(x) if parity == 0 else _log_sinh(x)
    with np.errstate(divide="ignore"):
        log_mag = n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1) - 0.5 * log_norm
    log_mag = np.where(n % 2 == parity, log_mag, -np.inf)
    phase = np.exp(1j * n * cmath.phase(alpha))
    return _build(log_mag, phase, config, n_max)


def make_even_cat(p: CoherentParams | complex, config: TruncationConfig = DEFAULT_TRUNCATION,
                  n_max: int | None = None) -> SingleModeState:
    """Even coherent state ``(cosh|a|^2)^{-1/2} sum_n a^{2n}/sqrt((2n)!) |2n>``.

    ``alpha = 0`` gives the vacuum.
    """
    alpha = _coherent_arg(p)
    if alpha == 0:
        return make_coherent(0.0, config, n_max=n_max)
    return _cat(alpha, 0, config, n_max)


def make_odd_cat(p: CoherentParams | complex, config: TruncationConfig = DEFAULT_TRUNCATION,
                 n_max: int | None = None) -> SingleModeState:
    """Odd coherent state ``(sinh|a|^2)^{-1/2} sum_n a^{2n+1}/sqrt((2n+1)!) |2n+1>``."""
    alpha = _coherent_arg(p)
    if alpha == 0:
        raise DomainError("odd coherent state is undefined at alpha = 0")
    return _cat(alpha, 1, config, n_max)


def make_squeezed_vacuum(p: SqueezeParams | float,
                         config: TruncationConfig = DEFAULT_TRUNCATION,
                         n_max: int | None = None) -> SingleModeState:
    """Squeezed vacuum with amplitudes on even photon numbers only.

    ``f_{2k} = (cosh r)^{-1/2} (-G)^k sqrt((2k)!) / (k! 2^k)`` with
    ``G = exp(i theta) tanh r``.
    """
    p = _squeeze_arg(p)
    n = _grid(config, n_max)
    k = n // 2
    if p.r == 0.0:
        log_mag = np.where(n == 0, 0.0, -np.inf)
    else:
        log_mag = (-0.5 * math.log(math.cosh(p.r)) + k * math.log(math.tanh(p.r))
                   + 0.5 * gammaln(2 * k + 1) - gammaln(k + 1) - k * math.log(2.0))
        log_mag = np.where(n % 2 == 0, log_mag, -np.inf)
    phase = (-cmath.exp(1j * p.theta)) ** k
    return _build(log_mag, np.asarray(phase, dtype=np.complex128), config, n_max)
