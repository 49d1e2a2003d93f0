"""The photonic homomorphism S -> U and its differential on Hamiltonians.

``phi`` sends an m x m scattering matrix to the evolution of n photons on the
``C(m+n-1, n)``-dimensional Fock space. Four routes are available in
:func:`s_to_u`: expanding creation-operator polynomials (Heisenberg picture),
permanents computed directly or with Ryser's formula, and exponentiating the
lifted Hamiltonian of the principal logarithm of S.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import ArgumentError, DimensionError, PreconditionError
from .fock import FockBasis, Occupation, StateVector
from .fock import basis as default_basis

HERMITIAN_TOL = 1e-10
GRAM_SCHMIDT_DROP = 1e-10

_METHODS = {
    "heisenberg": "heisenberg",
    "naive": "naive",
    "perm": "naive",
    "permanent_naive": "naive",
    "ryser": "ryser",
    "permanent_ryser": "ryser",
    "hamiltonian": "hamiltonian",
    "ham": "hamiltonian",
}
METHODS = ("heisenberg", "naive", "ryser", "hamiltonian")


@dataclass(frozen=True)
class EvolutionUnitary:
    """n-photon evolution matrix together with the basis that indexes it."""

    matrix: np.ndarray
    basis: FockBasis

    def __post_init__(self):
        if self.matrix.shape != (len(self.basis), len(self.basis)):
            raise DimensionError(f"matrix shape {self.matrix.shape} does not match basis length {len(self.basis)}")

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def shape(self):
        return self.matrix.shape

    def evolve(self, state: Sequence[int]) -> StateVector:
        """Output state for a single input basis ket."""
        return StateVector(self.basis, self.matrix[:, self.basis.index(state)])


def _check_basis(basis: FockBasis | None, m: int, n: int) -> FockBasis:
    if basis is None:
        return default_basis(m, n)
    if basis.m != m or basis.n != n:
        raise ArgumentError(f"basis is for m={basis.m}, n={basis.n} but m={m}, n={n} was requested")
    return basis


def _check_occupation(state, m: int, n: int | None = None) -> Occupation:
    occ = tuple(int(k) for k in state)
    if len(occ) != m or min(occ, default=0) < 0:
        raise ArgumentError(f"{occ} is not an occupation vector over {m} modes")
    if n is not None and sum(occ) != n:
        raise ArgumentError(f"{occ} carries {sum(occ)} photons, expected {n}")
    return occ


def evolve_state_heisenberg(S, state: Sequence[int], basis: FockBasis, tol: float = linalg.UNITARY_TOL) -> StateVector:
    """Evolve one basis ket by expanding ``prod_k (sum_j S_jk a_j^dag)^{n_k} / sqrt(n_k!)``.

    The product is expanded one creation-operator factor at a time into a
    dictionary of monomials; the monomial ``prod_j a_j^dag^{q_j}|0>`` equals
    ``sqrt(prod_j q_j!) |q>``.
    """
    S = linalg.require_unitary(S, tol, "S")
    m = S.shape[0]
    if basis.m != m:
        raise ArgumentError(f"basis has {basis.m} modes but S is {m}x{m}")
    occ = _check_occupation(state, m, basis.n)

    poly: dict[Occupation, complex] = {(0,) * m: 1.0 + 0j}
    for k, nk in enumerate(occ):
        column = [(j, S[j, k]) for j in range(m) if S[j, k] != 0]
        for _ in range(nk):
            grown: dict[Occupation, complex] = defaultdict(complex)
            for mono, c in poly.items():
                for j, s in column:
                    nxt = mono[:j] + (mono[j] + 1,) + mono[j + 1 :]
                    grown[nxt] += c * s
            poly = grown
        if nk > 1:
            scale = 1 / math.sqrt(math.factorial(nk))
            poly = {mono: c * scale for mono, c in poly.items()}

    amps = np.zeros(len(basis), dtype=complex)
    for mono, c in poly.items():
        amps[basis.index(mono)] += c * math.sqrt(math.prod(math.factorial(q) for q in mono))
    return StateVector(basis, amps)


def transition_amplitude(S, state_in: Sequence[int], state_out: Sequence[int], engine: str = "ryser") -> complex:
    """``<out|U|in>`` as ``Per(S_in,out) / sqrt(prod n'_i! prod n_j!)``.

    ``S_in,out`` repeats row ``i`` of S ``n'_i`` times (output occupations) and
    column ``j`` ``n_j`` times (input occupations).
    """
    S = linalg.as_square(S, "S")
    m = S.shape[0]
    q = _check_occupation(state_in, m)
    p = _check_occupation(state_out, m)
    if sum(q) != sum(p):
        raise ArgumentError(f"photon number is not conserved: {sum(q)} in, {sum(p)} out")
    try:
        per = linalg.PERMANENTS[engine]
    except KeyError:
        raise ArgumentError(f"unknown permanent engine {engine!r}") from None
    if sum(q) == 0:
        return 1.0 + 0j
    rows = np.repeat(np.arange(m), p)
    cols = np.repeat(np.arange(m), q)
    norm = math.prod(math.factorial(k) for k in p + q)
    return per(S[np.ix_(rows, cols)]) / math.sqrt(norm)


def number_preserving_operator(X, basis: FockBasis) -> np.ndarray:
    """Matrix of ``sum_{j,l} X_jl a_j^dag a_l`` on ``basis``.

    Linear in X; for Hermitian X this is the lifted Hamiltonian and for
    antihermitian X it is the differential of phi.
    """
    X = linalg.as_square(X, "generator")
    m = X.shape[0]
    if basis.m != m:
        raise ArgumentError(f"basis has {basis.m} modes but the generator is {m}x{m}")
    M = len(basis)
    out = np.zeros((M, M), dtype=complex)
    for col, q in enumerate(basis):
        for l in range(m):
            if q[l] == 0:
                continue
            lowered = q[:l] + (q[l] - 1,) + q[l + 1 :]
            for j in range(m):
                x = X[j, l]
                if x == 0:
                    continue
                raised = lowered[:j] + (lowered[j] + 1,) + lowered[j + 1 :]
                out[basis.index(raised), col] += x * math.sqrt(q[l] * (lowered[j] + 1))
    return out


def lift_hamiltonian(H_S, n: int, basis: FockBasis | None = None) -> np.ndarray:
    """n-photon Hamiltonian ``H_U`` generated by a single-photon Hamiltonian ``H_S``.

    ``exp(i H_U) = phi(exp(i H_S))``.
    """
    H_S = linalg.as_square(H_S, "H_S")
    if np.abs(H_S - H_S.conj().T).max() > HERMITIAN_TOL:
        raise PreconditionError("H_S is not Hermitian")
    basis = _check_basis(basis, H_S.shape[0], n)
    H_U = number_preserving_operator(H_S, basis)
    return (H_U + H_U.conj().T) / 2


def d_phi(X, basis: FockBasis) -> np.ndarray:
    """Differential of phi applied to an element of u(m)."""
    return number_preserving_operator(X, basis)


def s_to_u(S, n: int, basis: FockBasis | None = None, method: str = "ryser", tol: float = linalg.UNITARY_TOL) -> EvolutionUnitary:
    """Evolution matrix of ``n`` photons through the interferometer ``S``.

    Args:
        S: m x m unitary scattering matrix.
        n: photon number.
        basis: ordering of the Fock states; the default descending basis if None.
        method: ``"heisenberg"``, ``"naive"``, ``"ryser"`` or ``"hamiltonian"``.
        tol: unitarity tolerance for ``S``.

    Returns:
        :class:`EvolutionUnitary` whose column ``i`` is the image of ``basis[i]``.
    """
    S = linalg.require_unitary(S, tol, "S")
    m = S.shape[0]
    basis = _check_basis(basis, m, n)
    if not basis.is_complete():
        raise ArgumentError("s_to_u needs a complete basis")
    try:
        method = _METHODS[method]
    except KeyError:
        raise ArgumentError(f"unknown method {method!r}; choose from {METHODS}") from None

    M = len(basis)
    if method == "hamiltonian":
        H_U = lift_hamiltonian(linalg.principal_log_unitary(S, tol), n, basis)
        return EvolutionUnitary(linalg.exp_i_hermitian(H_U), basis)

    U = np.empty((M, M), dtype=complex)
    for col, q in enumerate(basis):
        if method == "heisenberg":
            U[:, col] = evolve_state_heisenberg(S, q, basis, tol).amplitudes
        else:
            for row, p in enumerate(basis):
                U[row, col] = transition_amplitude(S, q, p, method)
    return EvolutionUnitary(U, basis)


# ---------------------------------------------------------------------------
# algebra bases


@dataclass(frozen=True)
class AlgebraBasis:
    """A list of antihermitian matrices spanning a real Lie algebra."""

    elements: np.ndarray  # shape (count, d, d)
    orthonormalized: bool = False

    def __len__(self) -> int:
        return self.elements.shape[0]

    def __getitem__(self, k) -> np.ndarray:
        return self.elements[k]

    def __iter__(self):
        return iter(self.elements)


def u_m_canonical_basis(m: int) -> AlgebraBasis:
    """The m^2 generators ``iE_jj``, ``E_jk - E_kj`` and ``i(E_jk + E_kj)`` (j < k)."""
    if m < 1:
        raise ArgumentError(f"m must be positive, got {m}")
    out = []
    for j in range(m):
        X = np.zeros((m, m), dtype=complex)
        X[j, j] = 1j
        out.append(X)
    pairs = [(j, k) for j in range(m) for k in range(j + 1, m)]
    for j, k in pairs:
        X = np.zeros((m, m), dtype=complex)
        X[j, k], X[k, j] = 1, -1
        out.append(X)
    for j, k in pairs:
        X = np.zeros((m, m), dtype=complex)
        X[j, k] = X[k, j] = 1j
        out.append(X)
    return AlgebraBasis(np.array(out))


def _realify(A: np.ndarray) -> np.ndarray:
    flat = A.reshape(A.shape[0], -1) if A.ndim == 3 else A.reshape(-1)
    return np.concatenate([flat.real, flat.imag], axis=-1)


@dataclass(frozen=True)
class ImageAlgebra:
    """Basis of the image of d(phi) inside u(M).

    Attributes:
        canonical: the u(m) basis that was lifted.
        raw: ``d_phi`` of each canonical element.
        orthonormal: real Gram-Schmidt of ``raw`` under ``Re tr(A^dag B)``.
        transform: ``orthonormal[k] = sum_j transform[k, j] * raw[j]``.
        basis: Fock basis the lifted matrices act on.
    """

    canonical: AlgebraBasis
    raw: AlgebraBasis
    orthonormal: AlgebraBasis
    transform: np.ndarray
    basis: FockBasis

    def coefficients(self, Y) -> np.ndarray:
        """Real coordinates ``Re tr(o_k^dag Y)`` on the orthonormal basis."""
        return _realify(self.orthonormal.elements) @ _realify(np.asarray(Y, dtype=complex))

    def project(self, Y) -> tuple[np.ndarray, float]:
        """Orthogonal projection of ``Y`` on the image and the Frobenius residual."""
        Y = np.asarray(Y, dtype=complex)
        P = np.tensordot(self.coefficients(Y), self.orthonormal.elements, axes=1)
        return P, float(np.linalg.norm(Y - P))

    def pull_back(self, Y) -> np.ndarray:
        """The x in u(m) whose lift is the projection of ``Y`` on the image."""
        raw_coeffs = self.coefficients(Y) @ self.transform
        return np.tensordot(raw_coeffs, self.canonical.elements, axes=1)


def _gram_schmidt(vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # modified Gram-Schmidt with one re-orthogonalization pass; returns (Q, C) with Q = C @ vectors
    k = vectors.shape[0]
    Q = np.zeros_like(vectors)
    C = np.zeros((k, k))
    for i in range(k):
        v = vectors[i].copy()
        c = np.zeros(k)
        c[i] = 1.0
        for _ in range(2):
            for j in range(i):
                r = Q[j] @ v
                v -= r * Q[j]
                c -= r * C[j]
        norm = np.linalg.norm(v)
        if norm < GRAM_SCHMIDT_DROP:
            raise ArithmeticError(f"lifted generator {i} is linearly dependent on the previous ones")
        Q[i] = v / norm
        C[i] = c / norm
    return Q, C


def image_algebra_basis(m: int, n: int, basis: FockBasis | None = None) -> ImageAlgebra:
    """Lift the canonical u(m) basis through d(phi) and orthonormalize it."""
    basis = _check_basis(basis, m, n)
    canonical = u_m_canonical_basis(m)
    raw = np.array([d_phi(X, basis) for X in canonical])
    Q, C = _gram_schmidt(_realify(raw))
    half = Q.shape[1] // 2
    M = len(basis)
    ortho = (Q[:, :half] + 1j * Q[:, half:]).reshape(len(canonical), M, M)
    return ImageAlgebra(canonical, AlgebraBasis(raw), AlgebraBasis(ortho, True), C, basis)
