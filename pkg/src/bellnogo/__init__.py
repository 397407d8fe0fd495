"""Bell's no-go argument on finite probability spaces, small spin matrices and LP feasibility."""

from . import contextual, nogo, probspace, quantum, realizability
from .contextual import Context, RunReport, cross_context_bell, sample_lhv_run, sample_singlet_run
from .nogo import angle_scan, check_anticorrelation, check_range_postulate, theorem4_pipeline, vn_additivity_counterexample
from .probspace import (
    BellReport,
    FiniteProbabilitySpace,
    RandomVariable,
    SignVariable,
    bell_functional,
    bell_proof_trace,
    covariation,
    expectation,
    make_space,
    random_sign_model,
)
from .quantum import pauli, quantum_bell_expression, sigma_theta, singlet_correlation, singlet_density, spectrum, tensor, trace_average
from .realizability import RealizabilityProblem, FeasibilityOutcome, brute_force_oracle, decide, triple_closed_form

__version__ = "0.1.0"
