"""Correspondence postulates as executable checks, and the Bell no-go pipeline.

The pipeline follows the classical reduction step by step: quantum singlet
correlations between the two particles are computed by trace, the perfect
anti-correlation at equal angles turns them into correlations among three
variables of the first particle, and the realizability LP then decides
whether any single probability space could carry those three variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from . import quantum
from ._format import csv_text
from .errors import DimensionMismatch, InvalidCorrespondence, NotHermitian
from .probspace import BellReport, FiniteProbabilitySpace, RandomVariable, SignVariable
from .realizability import FeasibilityOutcome, RealizabilityProblem, decide

RANGE_TOL = 1e-9

CLASSICAL_MODEL_EXISTS = "ClassicalModelExists"
NO_CLASSICAL_MODEL = "NoClassicalModel"


@dataclass(frozen=True)
class CorrespondenceRecord:
    """Bookkeeping for a classical-to-quantum map ``j`` and its chosen inverse ``i``.

    ``pairs`` maps variable names to observable names and ``statistical_pairs``
    maps space names to state names, both through the registries given here.
    A variable may appear in at most one pair since ``j`` is a function;
    several variables may share an observable.
    """

    variables: Mapping[str, RandomVariable]
    observables: Mapping[str, np.ndarray]
    pairs: tuple[tuple[str, str], ...] = ()
    spaces: Mapping[str, FiniteProbabilitySpace] = field(default_factory=dict)
    states: Mapping[str, quantum.DensityOperator] = field(default_factory=dict)
    statistical_pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        self._check(self.pairs, self.variables, self.observables, "variable", "observable")
        self._check(self.statistical_pairs, self.spaces, self.states, "space", "state")

    @staticmethod
    def _check(pairs, domain, codomain, dname, cname):
        mapped = set()
        for src, dst in pairs:
            if src not in domain:
                raise InvalidCorrespondence(f"unknown {dname} {src!r}")
            if dst not in codomain:
                raise InvalidCorrespondence(f"unknown {cname} {dst!r}")
            if src in mapped:
                raise InvalidCorrespondence(f"{dname} {src!r} is mapped twice")
            mapped.add(src)

    def image_of(self, variable: str) -> str:
        return dict(self.pairs)[variable]

    def preimage(self, observable: str) -> list[str]:
        """All variables sent to ``observable``; often more than one."""
        return [v for v, o in self.pairs if o == observable]

    def state_preimage(self, state: str) -> list[str]:
        return [s for s, r in self.statistical_pairs if r == state]

    def is_injective(self) -> bool:
        targets = [o for _, o in self.pairs]
        return len(targets) == len(set(targets))

    def contains_observable(self, observable) -> bool:
        """Whether some mapped variable has ``observable`` (a matrix) as its image."""
        m = quantum.as_matrix(observable)
        return any(
            self.observables[o].shape == m.shape and np.allclose(self.observables[o], m, atol=1e-12)
            for _, o in self.pairs
        )

    def contains_state(self, rho: quantum.DensityOperator) -> bool:
        return any(
            self.states[r].matrix.shape == rho.matrix.shape
            and np.allclose(self.states[r].matrix, rho.matrix, atol=1e-12)
            for _, r in self.statistical_pairs
        )

    def range_violations(self) -> list[tuple[str, str]]:
        """Pairs whose variable range differs from the observable's spectrum."""
        return [
            (v, o)
            for v, o in self.pairs
            if not check_range_postulate(self.variables[v], self.observables[o])
        ]


def _distinct(values, tol: float) -> list[float]:
    out: list[float] = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


def check_range_postulate(x: RandomVariable, a) -> bool:
    """Do the values taken by ``x`` coincide (as a set) with the spectrum of ``a``?"""
    if not quantum.is_hermitian(a):
        raise NotHermitian("observable must be Hermitian")
    taken = _distinct(np.asarray(x.values, dtype=float), RANGE_TOL)
    spec = _distinct(quantum.spectrum(a), RANGE_TOL)
    if len(taken) != len(spec):
        return False
    return all(abs(u - v) <= RANGE_TOL for u, v in zip(taken, spec))


def check_anticorrelation(space: FiniteProbabilitySpace, x: SignVariable, x_prime: SignVariable) -> bool:
    """``x == -x_prime`` on every atom of positive weight."""
    if len(x.values) != space.atom_count or len(x_prime.values) != space.atom_count:
        raise DimensionMismatch("variables must have one value per atom")
    charged = space.weights > 0
    return bool(np.all(x.values[charged] == -x_prime.values[charged]))


@dataclass(frozen=True)
class AdditivityReport:
    operator_sum_spectrum: list[float]
    eigenvalue_sums: list[float]
    disjoint: bool

    def to_dict(self) -> dict:
        return {
            "operator_sum_spectrum": self.operator_sum_spectrum,
            "eigenvalue_sums": self.eigenvalue_sums,
            "disjoint": self.disjoint,
        }


def vn_additivity_counterexample() -> AdditivityReport:
    """sigma_x + sigma_z has spectrum {-sqrt 2, +sqrt 2}, but sums of two +/-1 values lie in {-2, 0, 2}.

    So no +/-1-valued classical variables can add up to a variable whose range
    is the spectrum of the operator sum.
    """
    sx, sz = quantum.pauli("x"), quantum.pauli("z")
    spec = quantum.spectrum(sx + sz)
    sums = sorted({u + v for u in quantum.spectrum(sx) for v in quantum.spectrum(sz)})
    sums = _distinct(sums, RANGE_TOL)
    disjoint = all(min(abs(s - t) for t in sums) > RANGE_TOL for s in spec)
    return AdditivityReport(operator_sum_spectrum=spec, eigenvalue_sums=sums, disjoint=disjoint)


@dataclass(frozen=True)
class NoGoVerdict:
    angles: tuple[float, float, float]
    quantum_report: BellReport
    classical_targets: dict[str, float]
    problem: RealizabilityProblem
    classical_outcome: FeasibilityOutcome
    conclusion: str

    @property
    def violation_margin(self) -> float:
        """``lhs - rhs`` of the quantum expression; positive means violated."""
        return self.quantum_report.lhs - self.quantum_report.rhs

    def to_dict(self) -> dict:
        return {
            "angles": list(self.angles),
            "quantum_report": self.quantum_report.to_dict(),
            "margin": self.violation_margin,
            "classical_targets": dict(self.classical_targets),
            "problem": self.problem.to_dict(),
            "classical_outcome": self.classical_outcome.to_dict(),
            "conclusion": self.conclusion,
        }


def theorem4_pipeline(theta1: float, theta2: float, theta3: float) -> NoGoVerdict:
    """Run the no-go reduction for the measurement angles ``theta1, theta2, theta3``.

    Variables 0, 1, 2 of the posed problem are the first-particle spins at the
    three angles. Correlations are measured across particles, so each one is
    sign-flipped by perfect anti-correlation before it becomes a classical
    target: ``c_ij = -E(theta_i, theta_j)``.
    """
    e12 = quantum.singlet_correlation(theta1, theta2)
    e32 = quantum.singlet_correlation(theta3, theta2)
    e13 = quantum.singlet_correlation(theta1, theta3)
    targets = {"c12": -e12, "c32": -e32, "c13": -e13}
    problem = RealizabilityProblem(3, ((0, 1, targets["c12"]), (2, 1, targets["c32"]), (0, 2, targets["c13"])))
    outcome = decide(problem)
    report = quantum.quantum_bell_expression(theta1, theta2, theta3)
    conclusion = CLASSICAL_MODEL_EXISTS if outcome.feasible else NO_CLASSICAL_MODEL
    return NoGoVerdict(
        angles=(float(theta1), float(theta2), float(theta3)),
        quantum_report=report,
        classical_targets=targets,
        problem=problem,
        classical_outcome=outcome,
        conclusion=conclusion,
    )


class ScanRow(NamedTuple):
    theta2: float
    theta3: float
    quantum_lhs: float
    quantum_rhs: float
    margin: float
    verdict: str


SCAN_COLUMNS = list(ScanRow._fields)


def angle_scan(grid_size: int) -> list[ScanRow]:
    """Pipeline verdicts with ``theta1 = 0`` and ``(theta2, theta3)`` on a uniform grid over [0, 2 pi)^2.

    Rows are ordered by ``theta2`` then ``theta3``; ``margin = lhs - rhs``.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    grid = [2 * np.pi * k / grid_size for k in range(grid_size)]
    rows = []
    for t2 in grid:
        for t3 in grid:
            v = theorem4_pipeline(0.0, t2, t3)
            q = v.quantum_report
            rows.append(ScanRow(t2, t3, q.lhs, q.rhs, q.lhs - q.rhs, v.classical_outcome.verdict))
    return rows


def scan_csv(rows: list[ScanRow]) -> str:
    return csv_text(SCAN_COLUMNS, rows)
