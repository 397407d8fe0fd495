"""Small dense operator algebra for two spin-1/2 particles.

Matrices are plain complex ``numpy`` arrays. The two-particle basis is
ordered ``|++>, |+->, |-+>, |-->`` with ``|+>, |->`` the eigenvectors of
sigma_z, so the tensor product is an ordinary Kronecker product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonRealAverage, NotHermitian
from .probspace import BellReport

VALIDATION_TOL = 1e-10
ASSERTION_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def is_hermitian(a, tol: float = VALIDATION_TOL) -> bool:
    m = as_matrix(a)
    return m.shape[0] == m.shape[1] and bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def pauli(which: str) -> np.ndarray:
    """Return sigma_x or sigma_z (``which`` is ``"x"`` or ``"z"``)."""
    if which == "x":
        return _SIGMA_X.copy()
    if which == "z":
        return _SIGMA_Z.copy()
    raise ValueError(f"unknown Pauli matrix {which!r}; expected 'x' or 'z'")


@dataclass(frozen=True, eq=False)
class SpinObservable:
    theta: float
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (2, 2) or not is_hermitian(m, ASSERTION_TOL):
            raise NotHermitian("spin observable must be a Hermitian 2x2 matrix")
        if np.max(np.abs(m @ m - I2)) > ASSERTION_TOL:
            raise ValueError("spin observable must square to the identity")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if not is_hermitian(m):
            raise NotHermitian("density operator must be Hermitian")
        if abs(np.trace(m) - 1.0) > VALIDATION_TOL:
            raise ValueError(f"density operator must have unit trace, got {np.trace(m)!r}")
        if np.linalg.eigvalsh(m)[0] < -VALIDATION_TOL:
            raise ValueError("density operator must be positive semidefinite")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def sigma_theta(theta: float) -> SpinObservable:
    """Spin component ``cos(theta) sigma_z + sin(theta) sigma_x``."""
    theta = float(theta) % (2 * np.pi)
    m = np.cos(theta) * _SIGMA_Z + np.sin(theta) * _SIGMA_X
    return SpinObservable(theta=theta, matrix=m)


def tensor(a, b) -> np.ndarray:
    """Kronecker product; entry ``a[i, j]`` scales the ``(i, j)`` block ``b``."""
    return np.kron(as_matrix(a), as_matrix(b))


_SINGLET_VECTOR = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)


def singlet_vector() -> np.ndarray:
    return _SINGLET_VECTOR.copy()


def pure_density(psi) -> DensityOperator:
    psi = np.asarray(psi, dtype=complex)
    return DensityOperator(np.outer(psi, psi.conj()))


def singlet_density() -> DensityOperator:
    """Rank-one projector onto ``(|+-> - |-+>)/sqrt(2)``."""
    return pure_density(_SINGLET_VECTOR)


def trace_average(rho: DensityOperator, a) -> float:
    """``Tr(rho a)``; raises if the result is not real (non-Hermitian ``a``)."""
    a = as_matrix(a)
    if a.shape != rho.matrix.shape:
        raise DimensionMismatch(f"state is {rho.matrix.shape}, observable is {a.shape}")
    value = np.trace(rho.matrix @ a)
    if abs(value.imag) > VALIDATION_TOL:
        raise NonRealAverage(f"Tr(rho a) has imaginary part {value.imag!r}")
    return float(value.real)


_SINGLET = singlet_density()


def singlet_correlation(theta1: float, theta2: float) -> float:
    """Singlet expectation of ``(sigma(theta1) x I)(I x sigma(theta2))`` by explicit trace."""
    left = tensor(sigma_theta(theta1).matrix, I2)
    right = tensor(I2, sigma_theta(theta2).matrix)
    return trace_average(_SINGLET, left @ right)


def spin_projector(theta: float, outcome: int) -> np.ndarray:
    """Spectral projector of sigma(theta) for eigenvalue ``outcome`` (+1 or -1)."""
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    return (I2 + outcome * sigma_theta(theta).matrix) / 2


def singlet_joint_law(theta1: float, theta2: float) -> np.ndarray:
    """Probabilities of the outcome pairs ``(++, +-, -+, --)`` for the singlet.

    Each entry is ``Tr(rho (P_s(theta1) x P_t(theta2)))`` for spectral projectors;
    tiny negative round-off is clipped and the vector renormalized.
    """
    probs = np.array(
        [
            trace_average(_SINGLET, tensor(spin_projector(theta1, s), spin_projector(theta2, t)))
            for s, t in ((1, 1), (1, -1), (-1, 1), (-1, -1))
        ]
    )
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def spectrum(a) -> list[float]:
    """Ascending real eigenvalues of a Hermitian matrix."""
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitian("spectrum is only defined here for Hermitian matrices")
    if a.shape == (2, 2):
        # closed form from trace and determinant
        half_tr = (a[0, 0].real + a[1, 1].real) / 2
        gap = np.hypot((a[0, 0].real - a[1, 1].real) / 2, abs(a[0, 1]))
        return [float(half_tr - gap), float(half_tr + gap)]
    return [float(x) for x in np.linalg.eigvalsh(a)]


def quantum_bell_expression(theta1: float, theta2: float, theta3: float) -> BellReport:
    """``|E(t1,t2) - E(t3,t2)|`` against ``1 + E(t1,t3)`` for singlet correlations ``E``.

    This is the anti-correlated form of the covariation inequality; it fails
    for suitable angles.
    """
    e12 = singlet_correlation(theta1, theta2)
    e32 = singlet_correlation(theta3, theta2)
    e13 = singlet_correlation(theta1, theta3)
    delta = e12 - e32
    return BellReport.from_sides(abs(delta), 1.0 + e13, delta)
