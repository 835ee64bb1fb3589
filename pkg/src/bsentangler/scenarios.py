"""Named input scenarios with closed-form heralded states and concurrences.

Scenarios: number states ``|n>, |m>``; identical even or odd cat states;
identical squeezed vacua; a number state in arm 1 with an even cat in arm 2
("hybrid"); and arbitrary finite superpositions given by their coefficients,
which have no closed-form state but are checked formula-against-oracle.
:func:`check_example` runs both protocol routes and returns a structured report.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .beamsplitter import BeamSplitterParams, weak_split
from .entanglement import (
    concurrence_general,
    concurrence_identical,
    concurrence_inputs,
    concurrence_oracle,
    hybrid_concurrence,
)
from .fock import (
    DEFAULT_TRUNCATION,
    BipartiteState,
    DomainError,
    SingleModeState,
    TruncationConfig,
    apply_annihilation,
    fidelity,
    inner_product,
    tensor,
)
from .protocol import Detector, ProtocolConfig, herald_sign, run_analytic, run_exact
from .states import (
    SqueezeParams,
    make_even_cat,
    make_fock,
    make_odd_cat,
    make_squeezed_vacuum,
)

__all__ = [
    "ExampleId",
    "ExampleSpec",
    "Check",
    "ExampleReport",
    "input_states",
    "build_config",
    "squeezed_parameter_after_split",
    "expected_state",
    "expected_concurrence",
    "CheckTolerances",
    "check_example",
]


class ExampleId(str, enum.Enum):
    FOCK = "fock"
    EVEN_CAT = "evencat"
    ODD_CAT = "oddcat"
    SQUEEZED_VACUUM = "squeezed"
    HYBRID = "hybrid"
    SUPERPOSITION = "superposition"


_REQUIRED = {
    ExampleId.FOCK: ("n", "m"),
    ExampleId.EVEN_CAT: ("alpha",),
    ExampleId.ODD_CAT: ("alpha",),
    ExampleId.SQUEEZED_VACUUM: ("r",),
    ExampleId.HYBRID: ("n", "alpha"),
    ExampleId.SUPERPOSITION: ("coeffs1",),
}


@dataclass(frozen=True)
class ExampleSpec:
    id: ExampleId
    n: int | None = None
    m: int | None = None
    alpha: complex | None = None
    r: float | None = None
    theta: float = 0.0
    coeffs1: tuple[complex, ...] | None = None
    coeffs2: tuple[complex, ...] | None = None
    gamma: float = 0.0
    detector: Detector = Detector.D1

    def __post_init__(self):
        object.__setattr__(self, "id", ExampleId(self.id))
        for k in ("coeffs1", "coeffs2"):
            v = getattr(self, k)
            if v is not None:
                v = tuple(complex(x) for x in v)
                if not v or not any(v):
                    raise DomainError(f"{k} must contain a nonzero coefficient")
                object.__setattr__(self, k, v)
        object.__setattr__(self, "detector", Detector.parse(self.detector))
        missing = [k for k in _REQUIRED[self.id] if getattr(self, k) is None]
        if missing:
            raise DomainError(f"{self.id.value} example needs {', '.join(missing)}")
        for k in ("n", "m"):
            v = getattr(self, k)
            if v is not None and (int(v) != v or v < 0):
                raise DomainError(f"{k} must be a nonnegative integer, got {v}")
        if self.id is ExampleId.HYBRID and self.n < 1:
            raise DomainError("hybrid example needs n >= 1")
        if self.id is ExampleId.ODD_CAT and self.alpha == 0:
            raise DomainError("odd cat needs alpha != 0")
        if self.r is not None and self.r < 0:
            raise DomainError("squeeze parameter must be nonnegative")


def input_states(e: ExampleSpec, config: TruncationConfig = DEFAULT_TRUNCATION
                 ) -> tuple[SingleModeState, SingleModeState]:
    if e.id is ExampleId.FOCK:
        return make_fock(e.n, config), make_fock(e.m, config)
    if e.id is ExampleId.EVEN_CAT:
        s = make_even_cat(e.alpha, config)
        return s, s
    if e.id is ExampleId.ODD_CAT:
        s = make_odd_cat(e.alpha, config)
        return s, s
    if e.id is ExampleId.SQUEEZED_VACUUM:
        s = make_squeezed_vacuum(SqueezeParams(e.r, e.theta), config)
        return s, s
    if e.id is ExampleId.SUPERPOSITION:
        s1 = SingleModeState(e.coeffs1).normalize()
        s2 = s1 if e.coeffs2 is None else SingleModeState(e.coeffs2).normalize()
        return s1, s2
    return make_fock(e.n, config), make_even_cat(e.alpha, config)


def build_config(e: ExampleSpec, R: float, phi: float = 0.0,
                 config: TruncationConfig = DEFAULT_TRUNCATION) -> ProtocolConfig:
    psi1, psi2 = input_states(e, config)
    return ProtocolConfig(psi1, psi2, BeamSplitterParams.from_reflectivity(R, phi),
                          gamma=e.gamma, detector=e.detector,
                          norm_tolerance=max(1e-10, config.epsilon_tail))


def squeezed_parameter_after_split(r: float, t: float) -> float:
    """Squeeze parameter of the transmitted vacuum-branch: ``atanh(T^2 tanh r)``."""
    return math.atanh(t * t * math.tanh(r))


def _symmetric(a: SingleModeState, b: SingleModeState, s: complex) -> BipartiteState:
    """Normalized ``|a>|b> + s |b>|a>``."""
    return (tensor(a, b) + s * tensor(b, a)).normalize()


def expected_state(e: ExampleSpec, t: float,
                   config: TruncationConfig = DEFAULT_TRUNCATION) -> BipartiteState | None:
    """Closed-form normalized heralded state for transmission ``t``.

    Returns ``None`` when nothing can be heralded (no photons in either arm).

    Raises:
        DomainError: the scenario has no closed form (``superposition``).
    """
    if e.id is ExampleId.SUPERPOSITION:
        raise DomainError("superposition inputs have no closed-form heralded state")
    s = herald_sign(e.gamma, e.detector)
    if e.id is ExampleId.FOCK:
        n, m = int(e.n), int(e.m)
        if n == 0 and m == 0:
            return None
        shape = (max(n, 1) + 1, max(m, 1) + 1)
        amps = np.zeros(shape, dtype=np.complex128)
        if n > 0:
            amps[n - 1, m] += math.sqrt(n)
        if m > 0:
            amps[n, m - 1] += s * math.sqrt(m)
        return BipartiteState(amps / math.sqrt(n + m), normalized=True)
    if e.id in (ExampleId.EVEN_CAT, ExampleId.ODD_CAT):
        if e.alpha == 0:
            return None
        ta = t * complex(e.alpha)
        even, odd = make_even_cat(ta, config), make_odd_cat(ta, config)
        if e.id is ExampleId.EVEN_CAT:
            return _symmetric(odd, even, s)
        return _symmetric(even, odd, s)
    if e.id is ExampleId.SQUEEZED_VACUUM:
        if e.r == 0:
            return None
        sv = make_squeezed_vacuum(SqueezeParams(squeezed_parameter_after_split(e.r, t), e.theta),
                                  config)
        lowered = apply_annihilation(sv).normalize()
        return _symmetric(lowered, sv, s)
    # hybrid: sqrt(n cosh x)|n-1>|e> + s T alpha sqrt(sinh x)|n>|o>, divided by sqrt(cosh x)
    n = int(e.n)
    ta = t * complex(e.alpha)
    if ta == 0:
        return BipartiteState(tensor(make_fock(n - 1, config), make_fock(0, config)).amplitudes,
                              normalized=True)
    x = abs(ta) ** 2
    first = tensor(make_fock(n - 1, config), make_even_cat(ta, config)) * math.sqrt(n)
    second = tensor(make_fock(n, config), make_odd_cat(ta, config)) * (s * ta * math.sqrt(math.tanh(x)))
    return (first + second).normalize()


def expected_concurrence(e: ExampleSpec, t: float) -> float | None:
    """Closed-form concurrence; ``None`` when nothing is heralded.

    Identical superposition inputs use the identical-arm formula; distinct
    ones have no closed form and also give ``None``.
    """
    if e.id is ExampleId.SUPERPOSITION:
        if e.coeffs2 is not None and e.coeffs2 != e.coeffs1:
            return None
        psi = SingleModeState(e.coeffs1).normalize()
        w = weak_split(psi, BeamSplitterParams.from_reflectivity(math.sqrt(max(0.0, 1 - t * t))))
        if w.nu == 0.0:
            return None
        q = abs(inner_product(w.v, w.u)) ** 2 / (w.mu * w.nu) ** 2
        return concurrence_identical(min(q, 1.0), e.gamma, e.detector)
    if e.id is ExampleId.FOCK:
        n, m = int(e.n), int(e.m)
        if n + m == 0:
            return None
        return 2.0 * math.sqrt(n * m) / (n + m)
    if e.id in (ExampleId.EVEN_CAT, ExampleId.ODD_CAT):
        return None if e.alpha == 0 else 1.0
    if e.id is ExampleId.SQUEEZED_VACUUM:
        return None if e.r == 0 else 1.0
    return hybrid_concurrence(int(e.n), t * abs(complex(e.alpha)))


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: {self.value:.3e} (tol {self.tolerance:.1e})"


@dataclass
class ExampleReport:
    spec: ExampleSpec
    R: float
    phi: float
    success_probability: float
    concurrence_expected: float | None
    concurrence_analytic: float | None
    concurrence_exact: float | None
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        e = self.spec
        params = {k: getattr(e, k) for k in ("n", "m", "alpha", "r", "coeffs1", "coeffs2")
                  if getattr(e, k) is not None}
        if e.r is not None:
            params["theta"] = e.theta
        shown = " ".join(f"{k}={v}" for k, v in params.items())
        head = (f"example {e.id.value}  {shown} "
                f"gamma={e.gamma:.6g} detector={e.detector.value} R={self.R:g} phi={self.phi:g}")
        body = [
            f"  success probability   {self.success_probability:.10g}",
            f"  concurrence expected  {_fmt(self.concurrence_expected)}",
            f"  concurrence analytic  {_fmt(self.concurrence_analytic)}",
            f"  concurrence exact     {_fmt(self.concurrence_exact)}",
        ]
        body += ["  " + c.line() for c in self.checks]
        body.append("  overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join([head] + body)


def _fmt(x):
    return "n/a" if x is None else f"{x:.12f}"


@dataclass(frozen=True)
class CheckTolerances:
    fidelity_analytic: float = 1e-10
    fidelity_exact: float | None = None  # defaults to R**2
    concurrence: float = 1e-9


def check_example(e: ExampleSpec, R: float, phi: float = 0.0,
                  tolerances: CheckTolerances = CheckTolerances(),
                  config: TruncationConfig = DEFAULT_TRUNCATION) -> ExampleReport:
    """Run both protocol routes for a scenario and compare with closed forms."""
    c = build_config(e, R, phi, config)
    t = c.bs.T
    analytic, exact = run_analytic(c), run_exact(c)
    closed_form = e.id is not ExampleId.SUPERPOSITION
    want_state = expected_state(e, t, config) if closed_form else None
    want_c = expected_concurrence(e, t)
    report = ExampleReport(e, R, phi, exact.success_probability, want_c, None, None)
    checks = report.checks

    if (closed_form and want_state is None) or exact.success_probability == 0.0:
        checks.append(Check("nothing heralded (success probability)",
                            exact.success_probability, 0.0, exact.success_probability == 0.0))
        return report

    checks.append(Check("success probability > 0", exact.success_probability, 0.0,
                        exact.success_probability > 0.0))
    if exact.normalized_state is None or analytic.normalized_state is None:
        return report

    fid_tol_exact = tolerances.fidelity_exact if tolerances.fidelity_exact is not None else R * R
    reference = want_state if closed_form else analytic.normalized_state
    ref_name = "closed form" if closed_form else "analytic route"
    if closed_form:
        inf_a = 1.0 - fidelity(analytic.normalized_state, reference)
        checks.append(Check("infidelity analytic vs closed form", inf_a,
                            tolerances.fidelity_analytic, inf_a <= tolerances.fidelity_analytic))
    inf_e = 1.0 - fidelity(exact.normalized_state, reference)
    checks.append(Check(f"infidelity exact vs {ref_name}", inf_e, fid_tol_exact,
                        inf_e <= fid_tol_exact))

    w1, w2 = weak_split(c.psi1, c.bs), weak_split(c.psi2, c.bs)
    report.concurrence_analytic = concurrence_general(concurrence_inputs(w1, w2, e.gamma, e.detector))
    report.concurrence_exact = concurrence_oracle(exact.normalized_state)
    oracle_analytic = concurrence_oracle(analytic.normalized_state)
    ctol = tolerances.concurrence
    target = want_c if want_c is not None else oracle_analytic
    pairs = [("branch-formula concurrence", report.concurrence_analytic),
             ("oracle concurrence, exact route", report.concurrence_exact)]
    if want_c is not None:
        pairs.insert(1, ("oracle concurrence, analytic route", oracle_analytic))
    label = "expected" if want_c is not None else "oracle (analytic route)"
    for name, val in pairs:
        err = abs(val - target)
        checks.append(Check(f"|{name} - {label}|", err, ctol, err <= ctol))
    return report
