import math

import numpy as np
import pytest

from bsentangler.beamsplitter import BeamSplitterParams, weak_split
from bsentangler.entanglement import concurrence_oracle
from bsentangler.fock import DomainError, fidelity
from bsentangler.protocol import run_analytic
from bsentangler.scenarios import (
    CheckTolerances,
    ExampleId,
    ExampleSpec,
    build_config,
    check_example,
    expected_concurrence,
    expected_state,
    squeezed_parameter_after_split,
)
from bsentangler.states import SqueezeParams, make_squeezed_vacuum

GAMMAS = np.linspace(0, 2 * math.pi, 8, endpoint=False)
HYBRID_OFF_MES = 0.4663388073966019  # closed form at |T alpha| = 0.5, n = 1

specs = [
    ExampleSpec("fock", n=1, m=1),
    ExampleSpec("fock", n=2, m=1),
    ExampleSpec("fock", n=3, m=3),
    ExampleSpec("evencat", alpha=1.0),
    ExampleSpec("evencat", alpha=0.5 + 1.5j),
    ExampleSpec("oddcat", alpha=1.2),
    ExampleSpec("squeezed", r=0.8),
    ExampleSpec("squeezed", r=0.5, theta=2.0),
    ExampleSpec("hybrid", n=1, alpha=0.7),
    ExampleSpec("hybrid", n=2, alpha=1.6),
]
ids = [f"{e.id.value}-{i}" for i, e in enumerate(specs)]


def at(e, gamma, detector):
    return ExampleSpec(e.id, e.n, e.m, e.alpha, e.r, e.theta, e.coeffs1, e.coeffs2, gamma, detector)


class TestSpec:
    def test_missing_parameter(self):
        with pytest.raises(DomainError):
            ExampleSpec("fock", n=1)

    def test_bad_photon_number(self):
        with pytest.raises(DomainError):
            ExampleSpec("fock", n=1, m=-2)

    def test_hybrid_needs_photon(self):
        with pytest.raises(DomainError):
            ExampleSpec("hybrid", n=0, alpha=1.0)

    def test_zero_coefficients(self):
        with pytest.raises(DomainError):
            ExampleSpec("superposition", coeffs1=(0, 0))


class TestExpectedState:
    def test_fock_one_one(self):
        s = expected_state(ExampleSpec("fock", n=1, m=1, gamma=0.3), 0.99)
        amps = s.amplitudes
        assert amps[0, 1] == pytest.approx(1 / math.sqrt(2))
        assert amps[1, 0] == pytest.approx(-1j * np.exp(0.3j) / math.sqrt(2))

    def test_squeezed_zero_flagged(self):
        assert expected_state(ExampleSpec("squeezed", r=0.0), 0.99) is None
        report = check_example(ExampleSpec("squeezed", r=0.0), 0.05)
        assert report.passed and report.success_probability == 0

    def test_superposition_has_no_closed_form(self):
        with pytest.raises(DomainError):
            expected_state(ExampleSpec("superposition", coeffs1=(1, 1)), 0.9)

    @pytest.mark.parametrize("e", specs, ids=ids)
    @pytest.mark.parametrize("gamma", GAMMAS[::2])
    @pytest.mark.parametrize("detector", ["D1", "D2"])
    def test_analytic_route_matches(self, e, gamma, detector):
        e = at(e, gamma, detector)
        c = build_config(e, 0.05)
        out = run_analytic(c)
        assert 1 - fidelity(out.normalized_state, expected_state(e, c.bs.T)) <= 1e-10

    @pytest.mark.parametrize("r", [0.3, 0.8, 1.2])
    def test_squeezed_branch_relation(self, r):
        p = BeamSplitterParams.from_reflectivity(0.05)
        psi = make_squeezed_vacuum(r)
        u = weak_split(psi, p).U
        rbar = squeezed_parameter_after_split(r, p.T)
        assert math.tanh(rbar) == pytest.approx(p.T**2 * math.tanh(r), rel=1e-15)
        n = max(u.n_max, make_squeezed_vacuum(rbar).n_max)
        target = make_squeezed_vacuum(SqueezeParams(rbar), n_max=n).amplitudes
        np.testing.assert_allclose(u.padded(n), target, atol=1e-10)


class TestExpectedConcurrence:
    def test_fock_unbalanced(self):
        assert expected_concurrence(ExampleSpec("fock", n=2, m=1, gamma=3 * math.pi / 2), 0.99) == \
            pytest.approx(2 * math.sqrt(2) / 3, abs=1e-15)

    def test_cat_is_mes(self):
        assert expected_concurrence(ExampleSpec("evencat", alpha=0.3), 0.9) == 1.0

    def test_hybrid_root(self):
        e = ExampleSpec("hybrid", n=1, alpha=math.sqrt(1.19968) / 0.9)
        assert expected_concurrence(e, 0.9) == pytest.approx(1.0, abs=1e-9)

    def test_identical_superposition(self):
        e = ExampleSpec("superposition", coeffs1=(0, 1, 1), gamma=3 * math.pi / 2)
        assert expected_concurrence(e, 0.99) == pytest.approx(1.0, abs=1e-12)

    def test_distinct_superposition_has_none(self):
        assert expected_concurrence(ExampleSpec("superposition", coeffs1=(0, 1), coeffs2=(1, 1)), 0.9) is None

    def test_fock_against_oracle(self):
        e = ExampleSpec("fock", n=2, m=1, gamma=3 * math.pi / 2)
        assert concurrence_oracle(expected_state(e, 0.99)) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)


class TestCheckExample:
    @pytest.mark.parametrize("e", specs, ids=ids)
    @pytest.mark.parametrize("gamma,detector", [(0.0, "D1"), (3 * math.pi / 2, "D1"), (1.0, "D2")])
    def test_passes(self, e, gamma, detector):
        report = check_example(at(e, gamma, detector), 0.05, phi=0.4)
        assert report.passed, report.render()

    def test_squeezed_concurrence_error(self):
        report = check_example(ExampleSpec("squeezed", r=0.8), 0.05)
        assert abs(report.concurrence_analytic - 1.0) <= 1e-9

    def test_hybrid_off_mes_value(self):
        e = ExampleSpec("hybrid", n=1, alpha=0.5 / math.sqrt(1 - 0.05**2))
        report = check_example(e, 0.05)
        assert report.concurrence_expected == pytest.approx(HYBRID_OFF_MES, abs=1e-14)
        assert report.concurrence_exact == pytest.approx(HYBRID_OFF_MES, abs=1e-9)

    def test_superposition_checked_against_oracle(self):
        e = ExampleSpec("superposition", coeffs1=(1, 0.5j, -0.3), coeffs2=(0, 1, 1), gamma=2.0)
        report = check_example(e, 0.05)
        assert report.passed, report.render()
        assert report.concurrence_expected is None

    def test_failures_are_report_entries(self):
        report = check_example(ExampleSpec("fock", n=1, m=1), 0.05,
                               tolerances=CheckTolerances(fidelity_exact=-1.0))
        assert not report.passed
        assert "[FAIL] infidelity exact" in report.render()

    def test_render_lists_every_check(self):
        report = check_example(ExampleSpec("fock", n=1, m=1), 0.05)
        text = report.render()
        assert text.count("[PASS]") == len(report.checks)
        assert text.splitlines()[-1].strip() == "overall: PASS"

    def test_odd_cat_mes_on_grid(self):
        for g in GAMMAS:
            for det in ("D1", "D2"):
                r = check_example(ExampleSpec(ExampleId.ODD_CAT, alpha=1.0, gamma=g, detector=det), 0.05)
                assert abs(r.concurrence_analytic - 1) <= 1e-9
