"""Randomized invariant suite behind ``bsentangler verify``.

Each case draws its inputs from its own child of ``SeedSequence(seed)``, so a
failing case is reproduced from ``(seed, case index)`` alone.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .beamsplitter import BeamSplitterParams, apply_bs_exact, truncation_residual, weak_split
from .entanglement import (
    concurrence_general,
    concurrence_identical,
    concurrence_inputs,
    concurrence_oracle,
)
from .fock import DEFAULT_TRUNCATION, SingleModeState, TruncationConfig, fidelity, inner_product
from .protocol import (
    Detector,
    ProtocolConfig,
    collapse_infidelity,
    detection_probabilities,
    run_analytic,
    run_exact,
)
from .states import SqueezeParams, make_even_cat, make_fock, make_odd_cat, make_squeezed_vacuum

__all__ = ["PROFILES", "SuiteResult", "VerificationReport", "run_verification", "fit_order"]

PROFILES = {
    "default": {"oracle": 1e-9, "norm": 1e-12, "probability": 1e-10, "fidelity": 1e-10,
                "exact_vs_analytic": 1e-12, "order": 0.2},
    "strict": {"oracle": 1e-11, "norm": 1e-12, "probability": 1e-11, "fidelity": 1e-11,
               "exact_vs_analytic": 1e-13, "order": 0.1},
}

ORDER_REFLECTIVITIES = (0.1, 0.05, 0.025, 0.0125)


@dataclass
class SuiteResult:
    name: str
    tolerance: float
    cases: int = 0
    worst: float = 0.0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, err: float, label: str) -> None:
        self.cases += 1
        if not math.isfinite(err) or err > self.tolerance:
            self.failures.append(f"{label}: error {err:.3e} > {self.tolerance:.1e}")
        if math.isfinite(err):
            self.worst = max(self.worst, err)
        else:
            self.worst = math.inf


@dataclass
class VerificationReport:
    seed: int
    corpus_size: int
    profile: str
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def render(self) -> str:
        lines = [f"verify  seed={self.seed}  corpus={self.corpus_size}  profile={self.profile}",
                 f"{'suite':<34}{'cases':>6}{'worst':>12}{'tol':>10}  result"]
        for s in self.suites:
            lines.append(f"{s.name:<34}{s.cases:>6}{s.worst:>12.3e}{s.tolerance:>10.1e}  "
                         f"{'PASS' if s.passed else 'FAIL'}")
        for s in self.suites:
            lines += [f"  FAIL {s.name}: {f}" for f in s.failures]
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def fit_order(xs, ys) -> float:
    """Least-squares slope of ``log y`` against ``log x``; NaN if any ``y <= 0``."""
    ys = np.asarray(ys, dtype=float)
    if np.any(~np.isfinite(ys)) or np.any(ys <= 0):
        return math.nan
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def _random_state(rng: np.random.Generator, config: TruncationConfig) -> tuple[str, SingleModeState]:
    kind = rng.integers(6)
    if kind == 0:
        n = int(rng.integers(0, 6))
        return f"fock({n})", make_fock(n, config)
    if kind == 1:
        alpha = complex(rng.uniform(0.3, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        return f"even_cat({alpha:.3f})", make_even_cat(alpha, config)
    if kind == 2:
        alpha = complex(rng.uniform(0.3, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        return f"odd_cat({alpha:.3f})", make_odd_cat(alpha, config)
    if kind == 3:
        r, th = rng.uniform(0.0, 1.0), rng.uniform(0, 2 * np.pi)
        return f"squeezed({r:.3f},{th:.3f})", make_squeezed_vacuum(SqueezeParams(r, th), config)
    dim = int(rng.integers(2, 8))
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return f"superposition(dim={dim})", SingleModeState(amps).normalize()


def _draw_case(rng: np.random.Generator, config: TruncationConfig):
    name1, psi1 = _random_state(rng, config)
    identical = rng.random() < 0.3
    name2, psi2 = (name1, psi1) if identical else _random_state(rng, config)
    R = float(rng.uniform(0.01, 0.2))
    phi = float(rng.uniform(0, 2 * np.pi))
    gamma = float(rng.uniform(0, 2 * np.pi))
    det = Detector.D1 if rng.random() < 0.5 else Detector.D2
    c = ProtocolConfig(psi1, psi2, BeamSplitterParams.from_reflectivity(R, phi), gamma, det)
    return f"{name1} x {name2}", c


def _order_corpus(config: TruncationConfig):
    return [("fock(1)", make_fock(1, config)), ("fock(2)", make_fock(2, config)),
            ("even_cat(1)", make_even_cat(1.0, config)),
            ("squeezed(0.8)", make_squeezed_vacuum(SqueezeParams(0.8), config))]


def run_verification(corpus_size: int = 40, seed: int = 0, profile: str = "default",
                     config: TruncationConfig = DEFAULT_TRUNCATION) -> VerificationReport:
    if profile not in PROFILES:
        raise ValueError(f"unknown tolerance profile {profile!r}; choose from {sorted(PROFILES)}")
    tol = PROFILES[profile]
    suites = {
        "unitarity": SuiteResult("beam-splitter unitarity", tol["norm"]),
        "conservation": SuiteResult("photon-number conservation", 0.0),
        "bookkeeping": SuiteResult("branch probability bookkeeping", tol["norm"]),
        "events": SuiteResult("detection events sum to norm", tol["probability"]),
        "oracle": SuiteResult("branch formula vs oracle", tol["oracle"]),
        "identical": SuiteResult("identical-arm formula vs general", tol["oracle"]),
        "exact": SuiteResult("exact vs analytic infidelity", tol["exact_vs_analytic"]),
        "symmetry": SuiteResult("detector swap with gamma + pi", tol["fidelity"]),
        "periodicity": SuiteResult("gamma + 2 pi periodicity", tol["norm"]),
        "order": SuiteResult("operator-collapse order (slope 2)", tol["order"]),
    }
    children = np.random.SeedSequence(seed).spawn(corpus_size)
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        name, c = _draw_case(rng, config)
        label = f"seed={seed} case={i} [{name}]"

        for psi in (c.psi1, c.psi2):
            out = apply_bs_exact(psi, c.bs)
            suites["unitarity"].record(abs(out.norm_squared() - psi.norm_squared()), label)
            w = weak_split(psi, c.bs)
            total = w.mu**2 + c.bs.R**2 * w.nu**2 + truncation_residual(psi, c.bs)
            suites["bookkeeping"].record(abs(total - psi.norm_squared()), label)
        n = int(rng.integers(0, 12))
        amp = apply_bs_exact(make_fock(n, config), c.bs).amplitudes
        k, m = np.indices(amp.shape)
        suites["conservation"].record(float(np.abs(amp[k + m != n]).max(initial=0.0)),
                                      f"{label} fock({n})")

        probs = detection_probabilities(c)
        expect = c.psi1.norm_squared() * c.psi2.norm_squared()
        suites["events"].record(abs(sum(probs.values()) - expect), label)

        analytic, exact = run_analytic(c), run_exact(c)
        if analytic.normalized_state is None:
            suites["exact"].record(exact.success_probability, label)
            continue
        w1, w2 = weak_split(c.psi1, c.bs), weak_split(c.psi2, c.bs)
        formula = concurrence_general(concurrence_inputs(w1, w2, c.gamma, c.detector))
        suites["oracle"].record(abs(formula - concurrence_oracle(analytic.normalized_state)), label)
        suites["exact"].record(1.0 - fidelity(analytic.normalized_state, exact.normalized_state), label)

        if c.psi1 is c.psi2 and w1.nu > 0:
            q = abs(inner_product(w1.v, w1.u)) ** 2 / (w1.mu * w1.nu) ** 2
            try:
                ident = concurrence_identical(min(q, 1.0), c.gamma, c.detector)
                suites["identical"].record(abs(ident - formula), label)
            except ValueError:
                pass

        other = Detector.D2 if c.detector is Detector.D1 else Detector.D1
        swapped = run_analytic(dataclasses.replace(c, gamma=c.gamma + math.pi, detector=other))
        suites["symmetry"].record(1.0 - fidelity(analytic.normalized_state, swapped.normalized_state),
                                  label)
        shifted = run_analytic(dataclasses.replace(c, gamma=c.gamma + 2 * math.pi))
        suites["periodicity"].record(
            float(np.abs(shifted.state.amplitudes - analytic.state.amplitudes).max()), label)

    rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
    for name, psi in _order_corpus(config):
        gamma, phi = float(rng.uniform(0, 2 * np.pi)), float(rng.uniform(0, 2 * np.pi))
        base = ProtocolConfig(psi, psi, BeamSplitterParams.from_reflectivity(0.1, phi), gamma)
        errs = [collapse_infidelity(base.with_reflectivity(R)) for R in ORDER_REFLECTIVITIES]
        slope = fit_order(ORDER_REFLECTIVITIES, errs)
        suites["order"].record(abs(slope - 2.0), f"seed={seed} order [{name}] slope={slope:.4f}")

    return VerificationReport(seed, corpus_size, profile, list(suites.values()))
