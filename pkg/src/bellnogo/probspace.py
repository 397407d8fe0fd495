"""Finite Kolmogorov probability spaces and the covariation form of Bell's inequality.

The sample space is a finite set of atoms and every subset is an event, so
integrals reduce to weighted sums. Covariation here is the raw mixed moment
``<u, v> = sum_i p_i u_i v_i``; it is deliberately *not* mean-centred.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatch,
    IdentityViolated,
    NegativeWeight,
    NotSignValued,
    ProofChainBroken,
    WeightsNotNormalized,
)

CONSTRUCTION_TOL = 1e-9
ASSERTION_TOL = 1e-12


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional sequence of values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteProbabilitySpace:
    """Atoms with nonnegative weights summing to one. Build with :func:`make_space`."""

    weights: np.ndarray

    @property
    def atom_count(self) -> int:
        return len(self.weights)

    def __repr__(self) -> str:
        return f"FiniteProbabilitySpace(atom_count={self.atom_count})"


@dataclass(frozen=True, eq=False)
class RandomVariable:
    """A real value per atom."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __add__(self, other: RandomVariable) -> RandomVariable:
        return RandomVariable(self.values + other.values)

    def __rmul__(self, scalar: float) -> RandomVariable:
        return RandomVariable(scalar * self.values)


@dataclass(frozen=True, eq=False)
class SignVariable(RandomVariable):
    """A random variable whose every value is exactly +1 or -1."""

    def __post_init__(self):
        super().__post_init__()
        bad = np.abs(self.values) != 1.0
        if bad.any():
            idx = int(np.flatnonzero(bad)[0])
            raise NotSignValued(f"value {self.values[idx]!r} at atom {idx} is not +1 or -1")


@dataclass(frozen=True)
class BellReport:
    """Both sides of ``|<a,b> - <c,b>| <= 1 - <a,c>`` (or any inequality shaped like it)."""

    lhs: float
    rhs: float
    delta: float
    holds: bool
    margin: float

    @classmethod
    def from_sides(cls, lhs: float, rhs: float, delta: float) -> BellReport:
        return cls(lhs=lhs, rhs=rhs, delta=delta, holds=bool(lhs <= rhs + ASSERTION_TOL), margin=rhs - lhs)

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "delta": self.delta, "holds": self.holds, "margin": self.margin}


class ProofStep(NamedTuple):
    name: str
    value: float
    ok: bool


def make_space(weights) -> FiniteProbabilitySpace:
    """Validate ``weights`` and return a space.

    Weights within 1e-9 of summing to one are rescaled to sum to one exactly;
    anything further off is rejected rather than silently renormalized.
    """
    w = np.array(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weights must be a nonempty one-dimensional sequence")
    if (w < 0).any():
        idx = int(np.flatnonzero(w < 0)[0])
        raise NegativeWeight(f"weight {w[idx]!r} at atom {idx} is negative")
    total = w.sum()
    if abs(total - 1.0) > CONSTRUCTION_TOL:
        raise WeightsNotNormalized(f"weights sum to {total!r}, not 1")
    w = w / total
    w.setflags(write=False)
    return FiniteProbabilitySpace(weights=w)


def _check_dims(space: FiniteProbabilitySpace, *variables: RandomVariable) -> None:
    for x in variables:
        if len(x.values) != space.atom_count:
            raise DimensionMismatch(
                f"variable has {len(x.values)} values but the space has {space.atom_count} atoms"
            )


def expectation(space: FiniteProbabilitySpace, x: RandomVariable) -> float:
    _check_dims(space, x)
    return float(space.weights @ x.values)


def covariation(space: FiniteProbabilitySpace, u: RandomVariable, v: RandomVariable) -> float:
    """Raw second moment ``sum_i p_i u_i v_i``."""
    _check_dims(space, u, v)
    # multiply u*v first so that the result is exactly symmetric in (u, v)
    return float(space.weights @ (u.values * v.values))


def bell_functional(
    space: FiniteProbabilitySpace, a: SignVariable, b: SignVariable, c: SignVariable
) -> BellReport:
    """Evaluate ``|<a,b> - <c,b>|`` against ``1 - <a,c>``.

    For genuine sign variables on a single space the inequality always holds.
    """
    _check_dims(space, a, b, c)
    delta = covariation(space, a, b) - covariation(space, c, b)
    return BellReport.from_sides(abs(delta), 1.0 - covariation(space, a, c), delta)


def bell_proof_trace(
    space: FiniteProbabilitySpace, a: RandomVariable, b: RandomVariable, c: RandomVariable
) -> list[ProofStep]:
    """Replay the proof of the covariation Bell inequality step by step.

    Each step is recomputed from the atoms rather than from the previous
    step, so a broken link shows up as a numerical mismatch. Raises
    :class:`IdentityViolated` if ``a**2 == 1`` fails on any atom and
    :class:`ProofChainBroken` if any link does not hold.
    """
    _check_dims(space, a, b, c)
    p, xa, xb, xc = space.weights, a.values, b.values, c.values

    steps: list[ProofStep] = []
    delta = float(p @ (xa * xb)) - float(p @ (xc * xb))
    steps.append(ProofStep("delta", delta, True))

    # linearity of the integral
    delta_linear = float(p @ ((xa - xc) * xb))
    steps.append(ProofStep("delta_by_linearity", delta_linear, abs(delta_linear - delta) <= ASSERTION_TOL))

    squares = xa * xa
    if (squares != 1.0).any():
        idx = int(np.flatnonzero(squares != 1.0)[0])
        raise IdentityViolated(f"a[{idx}]**2 = {squares[idx]!r}, expected 1")
    steps.append(ProofStep("integrand_identity_check", 1.0, True))

    # (a - c) b == (1 - a c) a b once a**2 == 1
    delta_rewritten = float(p @ ((1.0 - xa * xc) * xa * xb))
    steps.append(
        ProofStep("delta_rewritten", delta_rewritten, abs(delta_rewritten - delta_linear) <= ASSERTION_TOL)
    )

    majorant = float(p @ (1.0 - xa * xc))
    steps.append(ProofStep("majorant", majorant, abs(delta_rewritten) <= majorant + ASSERTION_TOL))

    rhs = 1.0 - float(p @ (xa * xc))
    steps.append(ProofStep("majorant_equals_rhs", rhs, abs(majorant - rhs) <= ASSERTION_TOL))
    steps.append(ProofStep("abs_delta_le_rhs", abs(delta), abs(delta) <= rhs + ASSERTION_TOL))

    for step in steps:
        if not step.ok:
            raise ProofChainBroken(f"link {step.name!r} failed with value {step.value!r}")
    return steps


def random_sign_model(
    seed: int, atom_count: int
) -> tuple[FiniteProbabilitySpace, SignVariable, SignVariable, SignVariable]:
    """Seeded random space plus three independent fair sign variables."""
    if atom_count < 1:
        raise ValueError("atom_count must be at least 1")
    rng = np.random.default_rng(seed)
    # normalized unit exponentials are exactly a flat Dirichlet draw
    w = rng.standard_exponential(atom_count)
    w = w / w.sum()
    signs = rng.integers(0, 2, size=(3, atom_count)) * 2.0 - 1.0
    return make_space(w), SignVariable(signs[0]), SignVariable(signs[1]), SignVariable(signs[2])
