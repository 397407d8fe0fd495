"""Seeded measurement runs, one probability model per context.

Each :class:`Context` is one run of an experiment: an angle pair, a sample
count and a seed. Within a run everything is classical. Bell's inequality
needs three correlations taken from *one* space, but an experiment supplies
them from three runs, and :func:`cross_context_bell` reports what happens
when they are combined anyway.

Random numbers come from numpy's Philox4x32-10 counter-based generator.
Its key is derived from the context seed through ``numpy.random.SeedSequence``,
so a run depends only on ``(seed, angles, sample_count)``.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import quantum
from ._format import csv_text
from .errors import AngleMismatch, InvalidContext

CHUNK = 1 << 16
ANGLE_TOL = 1e-12
EXCEEDANCE_SIGMAS = 3.0

CAVEAT = (
    "The three correlations come from three separate runs, each with its own "
    "probability space. Exceeding the single-space bound refutes the assumption "
    "that all runs share one probability space; it is not by itself evidence "
    "about locality."
)

# outcome pairs in count order (++, +-, -+, --)
_OUTCOMES = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]])


@dataclass(frozen=True)
class Context:
    id: str
    angle_pair: tuple[float, float]
    sample_count: int
    seed: int

    def __post_init__(self):
        if isinstance(self.sample_count, bool) or not isinstance(self.sample_count, (int, np.integer)):
            raise InvalidContext(f"sample_count must be an integer, got {self.sample_count!r}")
        if self.sample_count < 1:
            raise InvalidContext(f"sample_count must be at least 1, got {self.sample_count}")
        if len(self.angle_pair) != 2 or not all(math.isfinite(a) for a in self.angle_pair):
            raise InvalidContext(f"angle_pair must be two finite angles, got {self.angle_pair!r}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise InvalidContext(f"seed must be a nonnegative integer, got {self.seed!r}")
        object.__setattr__(self, "angle_pair", (float(self.angle_pair[0]), float(self.angle_pair[1])))

    @property
    def theta(self) -> float:
        return self.angle_pair[0]

    @property
    def theta_prime(self) -> float:
        return self.angle_pair[1]


@dataclass(frozen=True)
class RunReport:
    context_id: str
    theta: float
    theta_prime: float
    counts: tuple[int, int, int, int]
    empirical_correlation: float
    standard_error: float

    @property
    def sample_count(self) -> int:
        return sum(self.counts)

    def row(self) -> list:
        return [self.context_id, self.theta, self.theta_prime, *self.counts,
                self.empirical_correlation, self.standard_error]


RUN_COLUMNS = ["context_id", "theta", "theta_prime", "n_pp", "n_pm", "n_mp", "n_mm", "correlation", "stderr"]


def runs_csv(reports) -> str:
    return csv_text(RUN_COLUMNS, [r.row() for r in reports])


def context_seed(master_seed: int, context_id: str) -> int:
    """Per-context seed derived from a master seed and the context label."""
    seq = np.random.SeedSequence([int(master_seed), zlib.crc32(context_id.encode("utf-8"))])
    return int(seq.generate_state(2, dtype=np.uint64)[0] >> np.uint64(1))


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def _report(context: Context, counts: np.ndarray, product_sum: int) -> RunReport:
    n_pp, n_pm, n_mp, n_mm = (int(c) for c in counts)
    n = context.sample_count
    if n_pp + n_pm + n_mp + n_mm != n:
        raise AssertionError("counts do not add up to the sample count")
    if n_pp + n_mm - n_pm - n_mp != product_sum:
        raise AssertionError("streamed product sum disagrees with the counts")
    r = product_sum / n
    return RunReport(
        context_id=context.id,
        theta=context.theta,
        theta_prime=context.theta_prime,
        counts=(n_pp, n_pm, n_mp, n_mm),
        empirical_correlation=r,
        standard_error=math.sqrt(max(0.0, 1.0 - r * r) / n),
    )


def _check(context) -> None:
    if not isinstance(context, Context):
        raise InvalidContext("expected a Context")


def sample_singlet_run(context: Context) -> RunReport:
    """Draw outcome pairs from the singlet law at ``theta - theta_prime``.

    The four outcome probabilities are projector traces against the singlet
    state, taken from :func:`bellnogo.quantum.singlet_joint_law`.
    """
    _check(context)
    law = quantum.singlet_joint_law(context.theta, context.theta_prime)
    cdf = np.cumsum(law)
    cdf[-1] = 1.0
    rng = _generator(context.seed)
    counts = np.zeros(4, dtype=np.int64)
    product_sum = 0
    remaining = context.sample_count
    while remaining:
        size = min(CHUNK, remaining)
        idx = np.searchsorted(cdf, rng.random(size), side="right")
        products = _OUTCOMES[idx, 0] * _OUTCOMES[idx, 1]
        counts += np.bincount(idx, minlength=4)
        product_sum += int(products.sum())
        remaining -= size
    return _report(context, counts, product_sum)


def _sign(x: np.ndarray) -> np.ndarray:
    return np.where(x >= 0, 1, -1)


def sample_lhv_run(context: Context) -> RunReport:
    """Sign-of-cosine hidden-variable model on one explicit space.

    A hidden angle ``lam`` is uniform on [0, 2 pi); the outcomes are
    ``sign(cos(theta - lam))`` and ``-sign(cos(theta_prime - lam))``.
    """
    _check(context)
    rng = _generator(context.seed)
    counts = np.zeros(4, dtype=np.int64)
    product_sum = 0
    remaining = context.sample_count
    while remaining:
        size = min(CHUNK, remaining)
        lam = rng.uniform(0.0, 2 * np.pi, size)
        a = _sign(np.cos(context.theta - lam))
        b = -_sign(np.cos(context.theta_prime - lam))
        idx = (a == -1) * 2 + (b == -1)
        counts += np.bincount(idx, minlength=4)
        product_sum += int((a * b).sum())
        remaining -= size
    return _report(context, counts, product_sum)


def lhv_correlation(delta: float) -> float:
    """Exact correlation of the sign-of-cosine model: ``-1 + 2|delta|/pi`` folded into [0, pi]."""
    d = abs(math.remainder(delta, 2 * math.pi))
    return -1.0 + 2.0 * d / math.pi


@dataclass(frozen=True)
class CrossContextReport:
    lhs: float
    rhs: float
    combined_standard_error: float
    exceeded: bool
    caveat: str = CAVEAT

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "combined_standard_error": self.combined_standard_error,
            "exceeded": self.exceeded,
            "caveat": self.caveat,
        }


def _same_angle(a: float, b: float) -> bool:
    return abs(math.remainder(a - b, 2 * math.pi)) <= ANGLE_TOL


def cross_context_bell(report1: RunReport, report2: RunReport, report3: RunReport) -> CrossContextReport:
    """Combine three runs as if they shared one space.

    The runs must measure ``(t1, t2)``, ``(t3, t2)`` and ``(t1, t3)``
    respectively. The bound checked is ``|r1 - r2| <= 1 + r3`` and it counts
    as exceeded only beyond three combined standard errors.
    """
    if not (
        _same_angle(report1.theta, report3.theta)
        and _same_angle(report1.theta_prime, report2.theta_prime)
        and _same_angle(report2.theta, report3.theta_prime)
    ):
        raise AngleMismatch(
            "runs must measure (t1, t2), (t3, t2), (t1, t3); got "
            f"({report1.theta}, {report1.theta_prime}), ({report2.theta}, {report2.theta_prime}), "
            f"({report3.theta}, {report3.theta_prime})"
        )
    lhs = abs(report1.empirical_correlation - report2.empirical_correlation)
    rhs = 1.0 + report3.empirical_correlation
    se = math.sqrt(sum(r.standard_error**2 for r in (report1, report2, report3)))
    return CrossContextReport(
        lhs=lhs, rhs=rhs, combined_standard_error=se, exceeded=lhs > rhs + EXCEEDANCE_SIGMAS * se
    )


def bell_contexts(
    theta1: float, theta2: float, theta3: float, sample_count: int, master_seed: int
) -> tuple[Context, Context, Context]:
    """The three runs a Bell test needs, each with its own derived seed."""
    specs = (("C1", (theta1, theta2)), ("C2", (theta3, theta2)), ("C3", (theta1, theta3)))
    return tuple(Context(cid, pair, sample_count, context_seed(master_seed, cid)) for cid, pair in specs)


@dataclass(frozen=True)
class SensitivityTable:
    reports: list[RunReport]
    offsets: list[tuple[float, float]]
    between_context_sd: Optional[float]
    pooled_standard_error: float
    variance_ratio: Optional[float]

    def csv(self) -> str:
        return runs_csv(self.reports)


def context_sensitivity_demo(
    base_angles: tuple[float, float], perturbation: float, n_contexts: int, sample_count: int, seed: int
) -> SensitivityTable:
    """Singlet runs at jittered angles: spread between runs versus sampling noise within runs.

    Every run gets independent uniform offsets in ``[-perturbation, perturbation]``
    on both angles. ``variance_ratio`` is the between-run sample variance of the
    correlations over the mean squared standard error; it stays near 1 when
    the runs really are the same experiment. Spread statistics are ``None``
    for a single context.
    """
    if perturbation < 0:
        raise ValueError("perturbation must be nonnegative")
    if n_contexts < 1:
        raise ValueError("n_contexts must be at least 1")
    jitter = _generator(context_seed(seed, "jitter"))
    reports, offsets = [], []
    for k in range(n_contexts):
        d1, d2 = jitter.uniform(-perturbation, perturbation, 2) if perturbation > 0 else (0.0, 0.0)
        cid = f"C{k + 1}"
        ctx = Context(cid, (base_angles[0] + d1, base_angles[1] + d2), sample_count, context_seed(seed, cid))
        reports.append(sample_singlet_run(ctx))
        offsets.append((float(d1), float(d2)))
    se2 = np.array([r.standard_error**2 for r in reports])
    pooled = float(np.sqrt(se2.mean()))
    if n_contexts < 2:
        return SensitivityTable(reports, offsets, None, pooled, None)
    corr = np.array([r.empirical_correlation for r in reports])
    var = float(corr.var(ddof=1))
    ratio = var / float(se2.mean()) if se2.mean() > 0 else None
    return SensitivityTable(reports, offsets, math.sqrt(var), pooled, ratio)
