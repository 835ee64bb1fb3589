"""Truncated Fock-space state containers and the small set of linear-algebra
helpers the rest of the package builds on.

States are immutable value objects wrapping complex numpy arrays. Amplitude
index ``n`` is the photon number, so a single-mode state with ``n_max`` has
``n_max + 1`` entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "CapacityError",
    "TruncationConfig",
    "DEFAULT_TRUNCATION",
    "SingleModeState",
    "TwoModeState",
    "BipartiteState",
    "inner_product",
    "apply_annihilation",
    "tensor",
    "fidelity",
    "mean_photon_number",
    "choose_cutoff",
]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class CapacityError(ValueError):
    """Raised when a state cannot be truncated within the configured cap."""


@dataclass(frozen=True)
class TruncationConfig:
    """Truncation policy for constructors of formally infinite expansions.

    Attributes:
        epsilon_tail: largest probability mass allowed beyond the cutoff.
        n_max_cap: hard upper bound on the cutoff.
    """

    epsilon_tail: float = 1e-12
    n_max_cap: int = 200

    def __post_init__(self):
        if not 0.0 < self.epsilon_tail < 1.0:
            raise DomainError(f"epsilon_tail must lie in (0, 1), got {self.epsilon_tail}")
        if self.n_max_cap < 1:
            raise DomainError(f"n_max_cap must be >= 1, got {self.n_max_cap}")


DEFAULT_TRUNCATION = TruncationConfig()


def _frozen_complex(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.ndim != ndim:
        raise DomainError(f"expected a {ndim}-d amplitude array, got shape {arr.shape}")
    if arr.size == 0:
        raise DomainError("amplitude array must not be empty")
    if not np.all(np.isfinite(arr)):
        raise DomainError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SingleModeState:
    """Single-mode state ``sum_n f_n |n>`` truncated at ``n_max``.

    ``normalized`` records whether the state is meant to be a physical,
    unit-norm state (up to truncation tail) or an unnormalized intermediate
    such as the image of an annihilation operator.
    """

    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen_complex(self.amplitudes, 1))

    @property
    def n_max(self) -> int:
        return self.amplitudes.shape[0] - 1

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def normalize(self) -> "SingleModeState":
        nrm = self.norm()
        if nrm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return SingleModeState(self.amplitudes / nrm, normalized=True)

    def scaled(self, factor: complex) -> "SingleModeState":
        return SingleModeState(self.amplitudes * factor, normalized=False)

    def padded(self, n_max: int) -> np.ndarray:
        """Amplitudes zero-padded (never cut) to length ``n_max + 1``."""
        if n_max < self.n_max:
            raise DomainError(f"cannot pad n_max={self.n_max} down to {n_max}")
        out = np.zeros(n_max + 1, dtype=np.complex128)
        out[: self.n_max + 1] = self.amplitudes
        return out

    def __len__(self):
        return self.amplitudes.shape[0]


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Output of one beam splitter: amplitude ``[k, m]`` on ``|k>_c |m>_d``.

    ``k`` counts photons in the weak (reflected) port and ``m`` in the strong
    (transmitted) port.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen_complex(self.amplitudes, 2))

    @property
    def n_max(self) -> int:
        return max(self.amplitudes.shape) - 1

    def norm_squared(self) -> float:
        a = self.amplitudes.ravel()
        return float(np.vdot(a, a).real)

    def weak_port_marginal(self) -> np.ndarray:
        """Photon-number distribution of the weak port (unnormalized)."""
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Pure state of the two strong modes, amplitude ``[n1, n2]``."""

    amplitudes: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen_complex(self.amplitudes, 2))
        if self.normalized and abs(self.norm_squared() - 1.0) > 1e-12:
            raise DomainError(
                f"state flagged normalized has squared norm {self.norm_squared():.16g}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.amplitudes.shape

    def norm_squared(self) -> float:
        a = self.amplitudes.ravel()
        return float(np.vdot(a, a).real)

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def normalize(self) -> "BipartiteState":
        nrm = self.norm()
        if nrm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return BipartiteState(self.amplitudes / nrm, normalized=True)

    def padded(self, shape: tuple[int, int]) -> np.ndarray:
        if shape[0] < self.shape[0] or shape[1] < self.shape[1]:
            raise DomainError(f"cannot pad {self.shape} down to {shape}")
        out = np.zeros(shape, dtype=np.complex128)
        out[: self.shape[0], : self.shape[1]] = self.amplitudes
        return out

    def __add__(self, other: "BipartiteState") -> "BipartiteState":
        shape = (max(self.shape[0], other.shape[0]), max(self.shape[1], other.shape[1]))
        return BipartiteState(self.padded(shape) + other.padded(shape))

    def __mul__(self, factor: complex) -> "BipartiteState":
        return BipartiteState(self.amplitudes * factor)

    __rmul__ = __mul__


def inner_product(a: SingleModeState, b: SingleModeState) -> complex:
    """Return ``<a|b> = sum_n conj(a_n) b_n``; the shorter state is zero-padded."""
    n = min(len(a), len(b))
    return complex(np.vdot(a.amplitudes[:n], b.amplitudes[:n]))


def apply_annihilation(s: SingleModeState) -> SingleModeState:
    """Ladder operator: amplitude ``n`` of the result is ``sqrt(n+1) f_{n+1}``."""
    f = s.amplitudes
    out = np.zeros_like(f)
    if len(f) > 1:
        out[:-1] = np.sqrt(np.arange(1, len(f))) * f[1:]
    return SingleModeState(out, normalized=False)


def tensor(a: SingleModeState, b: SingleModeState) -> BipartiteState:
    return BipartiteState(np.outer(a.amplitudes, b.amplitudes))


def fidelity(a, b) -> float:
    """Normalized overlap ``|<a|b>|^2 / (<a|a><b|b>)`` for same-kind states.

    Works for single-mode and bipartite states of different truncations.
    """
    if isinstance(a, SingleModeState) and isinstance(b, SingleModeState):
        n = max(a.n_max, b.n_max)
        x, y = a.padded(n), b.padded(n)
    elif isinstance(a, BipartiteState) and isinstance(b, BipartiteState):
        shape = (max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1]))
        x, y = a.padded(shape).ravel(), b.padded(shape).ravel()
    else:
        raise TypeError("fidelity needs two single-mode or two bipartite states")
    nx = np.vdot(x, x).real
    ny = np.vdot(y, y).real
    if nx == 0.0 or ny == 0.0:
        raise DomainError("fidelity undefined for the zero vector")
    return float(abs(np.vdot(x, y)) ** 2 / (nx * ny))


def mean_photon_number(s: SingleModeState) -> float:
    """``<n>`` of the state after normalization."""
    p = np.abs(s.amplitudes) ** 2
    return float(np.dot(np.arange(len(p)), p) / p.sum())


def choose_cutoff(probs: np.ndarray, config: TruncationConfig, total: float = 1.0,
                  n_max: int | None = None) -> int:
    """Smallest cutoff whose tail mass is below ``config.epsilon_tail``.

    Args:
        probs: ``|f_n|^2`` for ``n = 0 .. n_max_cap``.
        total: exact total mass of the untruncated series; whatever ``probs``
            misses beyond the cap is charged to every tail.
        n_max: explicit cutoff to validate instead of searching for one.

    Raises:
        CapacityError: no cutoff within the cap reaches the tail bound.
    """
    probs = np.asarray(probs, dtype=float)
    beyond_cap = max(total - float(probs.sum()), 0.0)
    # tail[n] = mass strictly above n
    tail = np.concatenate([np.cumsum(probs[::-1])[::-1][1:], [0.0]]) + beyond_cap
    eps = config.epsilon_tail
    if n_max is not None:
        if n_max < 0 or n_max >= len(probs):
            raise CapacityError(f"n_max={n_max} outside [0, {len(probs) - 1}]")
        if tail[n_max] >= eps:
            raise CapacityError(
                f"tail mass {tail[n_max]:.3g} at n_max={n_max} exceeds epsilon_tail={eps:g}"
            )
        return n_max
    ok = np.nonzero(tail < eps)[0]
    if ok.size == 0:
        raise CapacityError(
            f"tail mass {tail[-1]:.3g} still exceeds epsilon_tail={eps:g} at "
            f"n_max_cap={config.n_max_cap}"
        )
    return int(ok[0])
