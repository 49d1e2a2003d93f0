"""Inverse design: recover S from a target evolution, or approximate it locally.

:func:`s_from_u` decides whether a target n-photon unitary lies in the image
of phi by testing whether conjugation by it preserves the image algebra, then
rebuilds S from that adjoint action. :func:`toponogov` searches the image for
a locally closest evolution when no exact S exists.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ArgumentError, CapacityError, DimensionError
from .fock import FockBasis, dimension
from .lift import EvolutionUnitary, ImageAlgebra, _check_basis, image_algebra_basis, s_to_u

ADJOINT_TOL = 1e-6
CONV_TOL = 1e-8
MAX_ITER = 1000
DEDUPE_TOL = 1e-4
PERM_CAP = 8

# phi is evaluated through the lifted Hamiltonian inside the search loop
_PHI_METHOD = "hamiltonian"


@dataclass(frozen=True)
class InverseResult:
    """Outcome of :func:`s_from_u`.

    Attributes:
        realizable: whether a scattering matrix was found.
        S: the recovered scattering matrix, or None.
        phase: alpha such that ``phi(S) ~ exp(i alpha) U_target``.
        max_residual: largest adjoint residual over the image basis.
        distance: min-over-phase Frobenius distance between phi(S) and the target
            (``inf`` if reconstruction was not attempted).
        permutation: basis reordering under which the target became realizable,
            None for the original order.
    """

    realizable: bool
    S: np.ndarray | None
    phase: float
    max_residual: float
    distance: float
    permutation: tuple[int, ...] | None = None

    @property
    def status(self) -> str:
        return "Realizable" if self.realizable else "NotInImage"


def rand_image_unitary(m: int, n: int, basis: FockBasis | None = None, seed=None) -> tuple[np.ndarray, EvolutionUnitary]:
    """Random S from the Haar measure and its n-photon evolution ``phi(S)``."""
    S = linalg.haar_random_unitary(m, seed)
    return S, s_to_u(S, n, basis)


def _adjoint_residuals(U: np.ndarray, alg: ImageAlgebra) -> np.ndarray:
    Ud = U.conj().T
    return np.array([alg.project(U @ o @ Ud)[1] for o in alg.orthonormal])


def _reconstruct_S(U: np.ndarray, alg: ImageAlgebra) -> np.ndarray:
    m = alg.canonical[0].shape[0]
    Ud = U.conj().T
    # Ad_S(x) = S x S^dag for each canonical x
    ad = [alg.pull_back(U @ b @ Ud) for b in alg.raw]

    columns = []
    for j in range(m):
        # Ad_S(i E_jj) = i s_j s_j^dag
        w, V = np.linalg.eigh(-1j * ad[j])
        columns.append(V[:, -1])
    cols = np.array(columns).T

    n_pairs = m * (m - 1) // 2
    for j in range(1, m):
        # Ad_S(i(E_1j + E_j1)) = i(s_1 s_j^dag + s_j s_1^dag); pair (0, j) sits at offset j - 1
        Q = -1j * ad[m + n_pairs + j - 1]
        beta = -np.angle(cols[:, 0].conj() @ Q @ cols[:, j])
        cols[:, j] *= np.exp(1j * beta)

    first = cols[np.argmax(np.abs(cols[:, 0]) > 1e-8), 0]
    cols *= np.exp(-1j * np.angle(first))
    # snap to the nearest unitary; a no-op up to rounding for image members
    W, _, Vh = np.linalg.svd(cols)
    return W @ Vh


def _attempt(U: np.ndarray, alg: ImageAlgebra, n: int, tol: float) -> InverseResult:
    residual = float(_adjoint_residuals(U, alg).max())
    if residual > tol:
        return InverseResult(False, None, 0.0, residual, np.inf)
    S = _reconstruct_S(U, alg)
    phiS = s_to_u(S, n, alg.basis, method=_PHI_METHOD).matrix
    dist, alpha = linalg.min_phase_distance(phiS, U)
    if dist <= 10 * tol * np.sqrt(U.shape[0]):
        return InverseResult(True, S, alpha, residual, dist)
    return InverseResult(False, None, 0.0, residual, dist)


def s_from_u(
    U_target,
    m: int,
    n: int,
    basis: FockBasis | None = None,
    tol: float = ADJOINT_TOL,
    perm: bool = False,
    perm_cap: int = PERM_CAP,
    force: bool = False,
    unitary_tol: float = linalg.UNITARY_TOL,
) -> InverseResult:
    """Find S with ``phi(S) = U_target`` up to a global phase, if one exists.

    Args:
        U_target: M x M unitary, ``M = C(m+n-1, n)``.
        m, n: modes and photons.
        basis: ordering of the Fock states that indexes ``U_target``.
        tol: tolerance on the adjoint residuals.
        perm: also try every reordering ``P U P^T`` of the basis states.
        perm_cap: largest M for which ``perm`` is allowed without ``force``.
        force: lift the ``perm_cap`` restriction.

    Raises:
        DimensionError: ``U_target`` has the wrong size.
        CapacityError: ``perm`` with ``M > perm_cap`` and no ``force``.
    """
    U = linalg.require_unitary(U_target, unitary_tol, "U_target")
    basis = _check_basis(basis, m, n)
    M = dimension(m, n)
    if U.shape[0] != M:
        raise DimensionError(f"U_target is {U.shape[0]}x{U.shape[0]} but dim H(m={m}, n={n}) = {M}")
    if perm and M > perm_cap and not force:
        raise CapacityError(f"perm search over {M}! orderings exceeds the cap M <= {perm_cap}; pass force=True")

    alg = image_algebra_basis(m, n, basis)
    result = _attempt(U, alg, n, tol)
    if result.realizable or not perm:
        return result
    for order in itertools.islice(itertools.permutations(range(M)), 1, None):
        idx = np.array(order)
        trial = _attempt(U[np.ix_(idx, idx)], alg, n, tol)
        if trial.realizable:
            return InverseResult(True, trial.S, trial.phase, trial.max_residual, trial.distance, order)
    return result


# ---------------------------------------------------------------------------
# local approximation


@dataclass
class Attempt:
    """One run of the local search.

    Attributes:
        S: final scattering matrix.
        U: ``phi(S)``.
        distance: Frobenius distance from ``U`` to the target.
        iterations: accepted steps.
        history: distance before the first step and after every accepted step.
        try_index: position of this run among the tries.
        duplicate_of: try index of an earlier-listed attempt with the same ``U``.
    """

    S: np.ndarray
    U: np.ndarray
    distance: float
    iterations: int
    history: list[float]
    try_index: int
    duplicate_of: int | None = None


@dataclass
class ToponogovReport:
    """Attempts sorted by distance; ``attempts[best_index]`` is the best one."""

    attempts: list[Attempt]
    basis: FockBasis
    best_index: int = 0
    deduplicated: bool = True

    @property
    def best(self) -> Attempt:
        return self.attempts[self.best_index]

    def distinct(self) -> list[Attempt]:
        return [a for a in self.attempts if a.duplicate_of is None]


def _search(U_t, S0, alg: ImageAlgebra, n: int, conv_tol: float, max_iter: int, try_index: int) -> Attempt:
    basis = alg.basis
    S = S0
    U = s_to_u(S, n, basis, method=_PHI_METHOD).matrix
    d = linalg.frobenius_distance(U_t, U)
    history = [d]
    steps = 0
    while steps < max_iter:
        K = linalg.principal_log_unitary(U_t @ U.conj().T, tol=1e-6)
        x = alg.pull_back(1j * K)
        accepted = False
        for scale in (1.0, 0.5):
            S_new = linalg.exp_antihermitian(scale * x) @ S
            U_new = s_to_u(S_new, n, basis, method=_PHI_METHOD).matrix
            d_new = linalg.frobenius_distance(U_t, U_new)
            if d_new <= d:
                accepted = True
                break
        if not accepted:
            break
        gain = d - d_new
        S, U, d = S_new, U_new, d_new
        history.append(d)
        steps += 1
        if gain < conv_tol:
            break
    return Attempt(S, U, d, steps, history, try_index)


def toponogov(
    U_target,
    m: int,
    n: int,
    basis: FockBasis | None = None,
    tries: int = 1,
    conv_tol: float = CONV_TOL,
    max_iter: int = MAX_ITER,
    seed=None,
    initial=None,
    dedupe_tol: float = DEDUPE_TOL,
    workers: int = 1,
) -> ToponogovReport:
    """Locally closest linear-optics evolution to ``U_target``.

    Each try starts at ``phi(S0)`` for a Haar-random ``S0`` drawn from child
    stream ``t`` of ``seed`` (or ``initial[t]`` when given), then repeats

    1. ``K = log(U_target U^dag)`` (principal branch),
    2. project ``iK`` on the image algebra and pull it back to ``x`` in u(m),
    3. ``S <- exp(x) S``, ``U <- phi(S)``,

    until the distance gains less than ``conv_tol`` or ``max_iter`` steps are
    taken. A step that would increase the distance is retried at half length
    and the run stops if that also fails, so distances never increase.

    Args:
        U_target: M x M target unitary.
        m, n: modes and photons.
        basis: Fock ordering of ``U_target``; default order if None.
        tries: number of independent starts.
        conv_tol: minimum per-step improvement.
        max_iter: cap on accepted steps per try.
        seed: seed for the random starts.
        initial: optional list of starting scattering matrices, one per try.
        dedupe_tol: Frobenius radius under which two results count as the same.
        workers: threads used to run tries concurrently.

    Returns:
        :class:`ToponogovReport` with attempts sorted by ``(distance, try index)``.
    """
    if tries < 1:
        raise ArgumentError(f"tries must be at least 1, got {tries}")
    U_t = linalg.require_unitary(U_target, linalg.UNITARY_TOL, "U_target")
    basis = _check_basis(basis, m, n)
    if U_t.shape[0] != len(basis):
        raise DimensionError(f"U_target is {U_t.shape[0]}x{U_t.shape[0]} but the basis has {len(basis)} states")
    if initial is not None:
        starts = [linalg.require_unitary(S, linalg.UNITARY_TOL, "initial S") for S in initial]
        if len(starts) != tries:
            raise ArgumentError(f"{len(starts)} initial matrices for {tries} tries")
    else:
        starts = [linalg.haar_random_unitary(m, rng) for rng in linalg.spawn_rngs(seed, tries)]

    alg = image_algebra_basis(m, n, basis)

    def run(t):
        return _search(U_t, starts[t], alg, n, conv_tol, max_iter, t)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            attempts = list(pool.map(run, range(tries)))
    else:
        attempts = [run(t) for t in range(tries)]

    attempts.sort(key=lambda a: (a.distance, a.try_index))
    for i, a in enumerate(attempts):
        for b in attempts[:i]:
            if b.duplicate_of is None and linalg.frobenius_distance(a.U, b.U) < dedupe_tol:
                a.duplicate_of = b.try_index
                break
    return ToponogovReport(attempts, basis)
