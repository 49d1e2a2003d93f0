"""Dense complex-matrix kernels shared by the rest of the package.

Permanents (direct and Ryser), the principal logarithm of a unitary, Haar
sampling, a few special matrices and the Frobenius/Hilbert-Schmidt metrics.

Random number generation
------------------------
Every random routine takes a ``seed`` that is handed to
:func:`numpy.random.default_rng` (PCG64). Independent trials draw from child
streams ``numpy.random.SeedSequence(seed).spawn(k)[t]`` (see
:func:`spawn_rngs`), so trial ``t`` does not depend on how many trials ran
before it.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ArgumentError, CapacityError, DimensionError, PreconditionError

#: Default max-norm tolerance for unitarity checks.
UNITARY_TOL = 1e-8

#: Environment variable that overrides :data:`UNITARY_TOL` in the CLI.
TOL_ENV = "PHOTONLIFT_TOL"

# eigenvalue arguments this close to -pi are moved to +pi
_BRANCH_SNAP = 1e-12

_RYSER_MAX_N = 62


def default_tol() -> float:
    """Unitarity tolerance, honouring ``PHOTONLIFT_TOL`` when it is set."""
    value = os.environ.get(TOL_ENV)
    return float(value) if value else UNITARY_TOL


@dataclass(frozen=True)
class UnitarityReport:
    """Outcome of a unitarity check.

    Attributes:
        max_deviation: max-norm of ``S^dagger S - I``.
        tolerance: tolerance the check was made against.
    """

    max_deviation: float
    tolerance: float

    @property
    def is_unitary(self) -> bool:
        return self.max_deviation <= self.tolerance


def as_matrix(A, name: str = "matrix") -> np.ndarray:
    """Return ``A`` as a 2-D complex array, raising DimensionError otherwise."""
    arr = np.asarray(A, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    return arr


def as_square(A, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(A, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    return arr


def unitarity_report(U, tol: float = UNITARY_TOL) -> UnitarityReport:
    U = as_square(U)
    dev = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    return UnitarityReport(float(dev), tol)


def is_unitary(U, tol: float = UNITARY_TOL) -> bool:
    return unitarity_report(U, tol).is_unitary


def require_unitary(U, tol: float = UNITARY_TOL, name: str = "matrix") -> np.ndarray:
    """Validate ``U`` as a unitary and return it as a complex array.

    Raises:
        DimensionError: ``U`` is not square.
        PreconditionError: ``max|U^dagger U - I| > tol``.
    """
    U = as_square(U, name)
    report = unitarity_report(U, tol)
    if not report.is_unitary:
        raise PreconditionError(
            f"{name} is not unitary: max deviation {report.max_deviation:.3e} > tolerance {tol:.1e}"
        )
    return U


# ---------------------------------------------------------------------------
# permanents


def permanent_naive(A) -> complex:
    """Permanent as the sum over all ``n!`` permutations of row-column products."""
    A = as_square(A)
    n = A.shape[0]
    rows = range(n)
    total = 0j
    for sigma in itertools.permutations(rows):
        total += math.prod(A[i, sigma[i]] for i in rows)
    return complex(total)


def permanent_ryser(A) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula.

    Sums ``(-1)^{|X|} prod_i sum_{j in X} A_ij`` over non-empty column subsets
    ``X`` and multiplies by ``(-1)^n``. Subsets are visited in Gray-code order so
    each step adds or removes a single column from the running row sums.

    Raises:
        DimensionError: ``A`` is not square.
        CapacityError: ``n > 62``.
    """
    A = as_square(A)
    n = A.shape[0]
    if n > _RYSER_MAX_N:
        raise CapacityError(f"Ryser permanent supports n <= {_RYSER_MAX_N}, got {n}")
    cols = [A[:, j].copy() for j in range(n)]
    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    gray = 0
    for k in range(1, 1 << n):
        bit = (k & -k).bit_length() - 1
        gray ^= 1 << bit
        if gray >> bit & 1:
            row_sums += cols[bit]
        else:
            row_sums -= cols[bit]
        term = np.prod(row_sums)
        if gray.bit_count() & 1:
            total -= term
        else:
            total += term
    return complex(-total if n & 1 else total)


PERMANENTS = {"naive": permanent_naive, "ryser": permanent_ryser}


# ---------------------------------------------------------------------------
# exponentials and logarithms


def exp_i_hermitian(H) -> np.ndarray:
    """``exp(iH)`` for Hermitian ``H`` via its eigendecomposition."""
    H = as_square(H)
    H = (H + H.conj().T) / 2
    w, V = np.linalg.eigh(H)
    return (V * np.exp(1j * w)) @ V.conj().T


def exp_antihermitian(X) -> np.ndarray:
    """``exp(X)`` for antihermitian ``X``."""
    return exp_i_hermitian(-1j * as_square(X))


def principal_log_unitary(U, tol: float = UNITARY_TOL) -> np.ndarray:
    """Hermitian ``K`` with ``exp(iK) = U`` and spectrum in ``(-pi, pi]``.

    The unitary is brought to (numerically diagonal) Schur form, whose
    unitary factor is well conditioned even for degenerate spectra such as the
    QFT's. Eigenvalue arguments within ``1e-12`` of ``-pi`` are mapped to
    ``+pi`` so that ``-1`` always lands on the closed end of the branch.

    Raises:
        PreconditionError: ``U`` is not unitary within ``tol``.
    """
    U = require_unitary(U, tol)
    T, Z = scipy.linalg.schur(U, output="complex")
    theta = np.angle(np.diag(T))
    theta[theta <= -np.pi + _BRANCH_SNAP] = np.pi
    K = (Z * theta) @ Z.conj().T
    return (K + K.conj().T) / 2


# ---------------------------------------------------------------------------
# random matrices


def make_rng(seed=None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(seed, count: int) -> list[np.random.Generator]:
    """Independent child generators, one per trial."""
    if isinstance(seed, np.random.Generator):
        return seed.spawn(count)
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in seed.spawn(count)]


def random_complex_matrix(n1: int, n2: int, seed=None) -> np.ndarray:
    """``n1 x n2`` matrix with standard-normal real and imaginary parts."""
    if n1 < 1 or n2 < 1:
        raise DimensionError(f"dimensions must be positive, got {n1}x{n2}")
    rng = make_rng(seed)
    return rng.standard_normal((n1, n2)) + 1j * rng.standard_normal((n1, n2))


def haar_random_unitary(m: int, seed=None) -> np.ndarray:
    """Haar-distributed ``m x m`` unitary.

    QR of a complex Gaussian matrix, with the columns of ``Q`` rephased by
    ``r_jj / |r_jj|`` so the distribution is exactly Haar (Mezzadri 2007).
    """
    if m < 1:
        raise DimensionError(f"m must be positive, got {m}")
    Z = random_complex_matrix(m, m, seed)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


# ---------------------------------------------------------------------------
# special matrices and metrics


def qft_matrix(N: int) -> np.ndarray:
    """Unitary DFT matrix with entries ``exp(2 pi i x y / N) / sqrt(N)``."""
    if N < 1:
        raise DimensionError(f"N must be positive, got {N}")
    x = np.arange(N)
    # reduce x*y mod N first so large N keeps full phase accuracy
    return np.exp(2j * np.pi * (np.outer(x, x) % N) / N) / np.sqrt(N)


def rotation_matrix(N: int, shift: int) -> np.ndarray:
    """Permutation matrix sending basis vector ``j`` to ``(j + shift) mod N``."""
    if N < 1:
        raise DimensionError(f"N must be positive, got {N}")
    if not 0 <= shift < N:
        raise ArgumentError(f"shift must lie in [0, {N}), got {shift}")
    P = np.zeros((N, N), dtype=complex)
    j = np.arange(N)
    P[(j + shift) % N, j] = 1
    return P


def _same_shape(A, B):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch: {A.shape} vs {B.shape}")
    return A, B


def frobenius_distance(A, B) -> float:
    A, B = _same_shape(A, B)
    return float(np.linalg.norm(A - B))


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product ``tr(A^dagger B)``."""
    A, B = _same_shape(A, B)
    return complex(np.vdot(A, B))


def min_phase_distance(A, B) -> tuple[float, float]:
    """Frobenius distance between ``A`` and ``exp(i alpha) B`` minimised over alpha.

    Returns:
        ``(distance, alpha)``.
    """
    A, B = _same_shape(A, B)
    overlap = np.vdot(B, A)
    alpha = float(np.angle(overlap)) if abs(overlap) > 0 else 0.0
    return float(np.linalg.norm(A - np.exp(1j * alpha) * B)), alpha
