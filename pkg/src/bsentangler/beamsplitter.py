"""Lossless beam splitter acting on ``|0>_a |psi>_b`` (vacuum in the second
input port), both exactly and in the weak-reflectivity approximation that keeps
at most one photon in the reflected port.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .fock import DomainError, SingleModeState, TwoModeState, apply_annihilation

__all__ = [
    "BeamSplitterParams",
    "WeakSplitResult",
    "WEAK_REFLECTIVITY_WARNING",
    "bs_coefficient",
    "apply_bs_exact",
    "weak_split",
    "truncation_residual",
]

#: ``weak_split`` warns above this amplitude reflection coefficient.
WEAK_REFLECTIVITY_WARNING = 0.2


@dataclass(frozen=True)
class BeamSplitterParams:
    """Mixing angle ``theta`` and reflection phase ``phi``, both in radians.

    ``T = cos(theta/2)`` and ``R = sin(theta/2)``, so ``R**2 + T**2 == 1``
    holds by construction. Use :meth:`from_reflectivity` to set ``R`` directly.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise DomainError("beam-splitter angles must be finite")

    @classmethod
    def from_reflectivity(cls, R: float, phi: float = 0.0) -> "BeamSplitterParams":
        if not 0.0 <= R <= 1.0:
            raise DomainError(f"amplitude reflectivity must lie in [0, 1], got {R}")
        return cls(2.0 * math.asin(R), phi)

    @property
    def T(self) -> float:
        return math.cos(self.theta / 2)

    @property
    def R(self) -> float:
        return math.sin(self.theta / 2)


@dataclass(frozen=True, eq=False)
class WeakSplitResult:
    """Unnormalized strong-port states for zero (``u``) and one (``v``)
    reflected photon, with their norms ``mu`` and ``nu``."""

    u: SingleModeState
    v: SingleModeState
    mu: float
    nu: float

    @property
    def U(self) -> SingleModeState:
        return self.u.normalize()

    @property
    def V(self) -> SingleModeState:
        return self.v.normalize()


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def bs_coefficient(n: int, k: int, p: BeamSplitterParams) -> complex:
    """Amplitude of ``|k, n-k>_out`` in the image of ``|0, n>_in``.

    ``sqrt(C(n, k)) exp(i k phi) R^k T^(n-k)``.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    mag = math.exp(0.5 * _log_binom(n, k)) * p.R**k * p.T ** (n - k)
    return complex(mag * np.exp(1j * k * p.phi))


def _coefficient_table(n_max: int, p: BeamSplitterParams) -> np.ndarray:
    """``table[n, k] = c_k^n`` (zero for ``k > n``)."""
    n = np.arange(n_max + 1)[:, None]
    k = np.arange(n_max + 1)[None, :]
    valid = k <= n
    kk = np.where(valid, k, 0)
    with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
        mag = np.exp(0.5 * _log_binom(n, kk)) * p.R**kk * p.T ** (n - kk)
    return np.where(valid, mag * np.exp(1j * kk * p.phi), 0.0)


def apply_bs_exact(state: SingleModeState, p: BeamSplitterParams) -> TwoModeState:
    """Exact two-port output; entry ``[k, m]`` multiplies ``|k>_c |m>_d``."""
    f = state.amplitudes
    n_max = state.n_max
    table = _coefficient_table(n_max, p)
    out = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    for n in range(n_max + 1):
        if f[n] == 0:
            continue
        k = np.arange(n + 1)
        out[k, n - k] += f[n] * table[n, : n + 1]
    return TwoModeState(out)


def weak_split(state: SingleModeState, p: BeamSplitterParams) -> WeakSplitResult:
    """Split a state into its zero- and one-reflected-photon branches.

    ``u_n = f_n T^n`` and ``v_n = sqrt(n+1) T^n f_{n+1}``. The ``exp(i phi) R``
    prefactor of the one-photon branch is not folded into ``v``.
    """
    if p.R > WEAK_REFLECTIVITY_WARNING:
        warnings.warn(
            f"R={p.R:.3g} exceeds the weak-reflectivity threshold "
            f"{WEAK_REFLECTIVITY_WARNING}; dropped two-photon terms may matter",
            stacklevel=2,
        )
    f = state.amplitudes
    t_pow = p.T ** np.arange(len(f))
    u = SingleModeState(f * t_pow, normalized=False)
    shifted = np.zeros_like(f)
    shifted[1:] = f[1:] * t_pow[:-1]  # f_{n+1} T^n placed on |n+1>
    v = apply_annihilation(SingleModeState(shifted, normalized=False))
    return WeakSplitResult(u=u, v=v, mu=u.norm(), nu=v.norm())


def truncation_residual(state: SingleModeState, p: BeamSplitterParams) -> float:
    """Probability of two or more photons in the reflected port."""
    return float(apply_bs_exact(state, p).weak_port_marginal()[2:].sum())
