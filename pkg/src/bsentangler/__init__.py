"""Beam-splitter entangler for light fields in a truncated Fock basis."""

from .beamsplitter import (
    BeamSplitterParams,
    WeakSplitResult,
    apply_bs_exact,
    bs_coefficient,
    truncation_residual,
    weak_split,
)
from .entanglement import (
    ConcurrenceInputs,
    concurrence_general,
    concurrence_identical,
    concurrence_inputs,
    concurrence_oracle,
    hybrid_concurrence,
    mes_condition_example4,
    solve_mes_example4,
)
from .fock import (
    BipartiteState,
    CapacityError,
    DomainError,
    SingleModeState,
    TruncationConfig,
    TwoModeState,
    apply_annihilation,
    fidelity,
    inner_product,
    mean_photon_number,
    tensor,
)
from .protocol import (
    ConditionalOutcome,
    Detector,
    ProtocolConfig,
    collapse_infidelity,
    detection_probabilities,
    run_analytic,
    run_exact,
    success_probability_scaling,
)
from .scenarios import ExampleId, ExampleSpec, check_example, expected_concurrence, expected_state
from .states import (
    CoherentParams,
    SqueezeParams,
    make_coherent,
    make_even_cat,
    make_fock,
    make_odd_cat,
    make_squeezed_vacuum,
)

__version__ = "0.1.0"

__all__ = [
    "BeamSplitterParams",
    "WeakSplitResult",
    "apply_bs_exact",
    "bs_coefficient",
    "truncation_residual",
    "weak_split",
    "ConcurrenceInputs",
    "concurrence_general",
    "concurrence_identical",
    "concurrence_inputs",
    "concurrence_oracle",
    "hybrid_concurrence",
    "mes_condition_example4",
    "solve_mes_example4",
    "BipartiteState",
    "CapacityError",
    "DomainError",
    "SingleModeState",
    "TruncationConfig",
    "TwoModeState",
    "apply_annihilation",
    "fidelity",
    "inner_product",
    "mean_photon_number",
    "tensor",
    "ConditionalOutcome",
    "Detector",
    "ProtocolConfig",
    "collapse_infidelity",
    "detection_probabilities",
    "run_analytic",
    "run_exact",
    "success_probability_scaling",
    "ExampleId",
    "ExampleSpec",
    "check_example",
    "expected_concurrence",
    "expected_state",
    "CoherentParams",
    "SqueezeParams",
    "make_coherent",
    "make_even_cat",
    "make_fock",
    "make_odd_cat",
    "make_squeezed_vacuum",
]
