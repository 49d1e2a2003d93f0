"""Compile scattering matrices into beam splitters, phase shifters, loss and gain.

Mode labels in optical elements are 1-based, as in ``T_{1,2}``. Element lists
are in propagation order: the first element acts first on the input, so the
matrix of a list is ``S_L ... S_2 S_1``.

The two-mode beam splitter used throughout is::

    T(theta, phi) = [[exp(i phi) cos(theta), -sin(theta)],
                     [exp(i phi) sin(theta),  cos(theta)]]

i.e. a phase ``phi`` on the first input followed by a splitter of angle ``theta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import linalg
from .errors import ArgumentError, DegenerateMatrixError, UnsupportedElementError

TWO_PI = 2 * np.pi
UNIT_GAIN_TOL = 1e-10
# entries already this small need no splitter; theta = phi = 0 is used
_ZERO = 1e-15


@dataclass(frozen=True)
class BeamSplitter:
    """``T_{k,l}(theta, phi)`` on modes ``k < l``; ``inverted`` applies its inverse."""

    k: int
    l: int
    theta: float
    phi: float
    inverted: bool = False

    def block(self) -> np.ndarray:
        c, s = np.cos(self.theta), np.sin(self.theta)
        e = np.exp(1j * self.phi)
        T = np.array([[e * c, -s], [e * s, c]])
        return T.conj().T if self.inverted else T


@dataclass(frozen=True)
class PhaseDiag:
    """Output phase shifters ``diag(exp(i phi_1), ..., exp(i phi_m))``."""

    phases: tuple[float, ...]


@dataclass(frozen=True)
class LossChannel:
    """Attenuation of ``mode`` to amplitude transmission ``d`` in [0, 1].

    Realized as a beam splitter onto a vacuum ancilla with reflection
    ``sqrt(1 - d^2)``.
    """

    mode: int
    d: float


@dataclass(frozen=True)
class GainChannel:
    """Amplification of ``mode`` by amplitude gain ``d > 1``.

    Realized as a two-mode squeezer with ``cosh r = d`` against an ancilla.
    """

    mode: int
    d: float


OpticalElement = Union[BeamSplitter, PhaseDiag, LossChannel, GainChannel]


@dataclass
class ElementList:
    """Optical elements on ``m`` modes in propagation order."""

    m: int
    elements: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def beam_splitters(self) -> list[BeamSplitter]:
        return [e for e in self.elements if isinstance(e, BeamSplitter)]


def embed_element(e: OpticalElement, m: int) -> np.ndarray:
    """m x m matrix of a single unitary element.

    Raises:
        UnsupportedElementError: for loss and gain channels.
        ArgumentError: modes out of range.
    """
    if isinstance(e, BeamSplitter):
        if not 1 <= e.k < e.l <= m:
            raise ArgumentError(f"beam splitter modes ({e.k}, {e.l}) invalid for m={m}")
        out = np.eye(m, dtype=complex)
        i, j = e.k - 1, e.l - 1
        out[np.ix_([i, j], [i, j])] = e.block()
        return out
    if isinstance(e, PhaseDiag):
        if len(e.phases) != m:
            raise ArgumentError(f"{len(e.phases)} phases for {m} modes")
        return np.diag(np.exp(1j * np.asarray(e.phases, dtype=float)))
    if isinstance(e, (LossChannel, GainChannel)):
        raise UnsupportedElementError(f"{type(e).__name__} has no unitary matrix; use quasi_decompose")
    raise TypeError(f"not an optical element: {e!r}")


def reconstruct(elements: ElementList) -> np.ndarray:
    """Product of the embedded elements, last element leftmost."""
    S = np.eye(elements.m, dtype=complex)
    for e in elements:
        S = embed_element(e, elements.m) @ S
    return S


# ---------------------------------------------------------------------------
# meshes


def _null_from_right(U, r, a):
    # T on columns (a, a+1) with U T^{-1} zeroing U[r, a]
    x, y = U[r, a], U[r, a + 1]
    theta = np.arctan2(abs(x), abs(y))
    if abs(x) <= _ZERO:
        return 0.0, 0.0
    phi = (np.angle(x) - np.angle(y)) % TWO_PI
    return float(theta), float(phi)


def _null_from_left(U, r, c):
    # T on rows (r-1, r) with T U zeroing U[r, c]
    x, y = U[r - 1, c], U[r, c]
    theta = np.arctan2(abs(y), abs(x))
    if abs(y) <= _ZERO:
        return 0.0, 0.0
    phi = (np.angle(y) - np.angle(x) + np.pi) % TWO_PI
    return float(theta), float(phi)


def _diag_phases(U) -> tuple[float, ...]:
    return tuple(float(p) for p in np.angle(np.diag(U)) % TWO_PI)


def clements_decompose(S, tol: float = linalg.UNITARY_TOL) -> ElementList:
    """Rectangular (Clements) mesh for a unitary S.

    Alternate diagonals of S are nulled by beam splitters applied from the
    right (emitted before the phase screen) and from the left (emitted after it,
    inverted), giving ``S = prod(T_left^{-1}) D prod(T_right)``.
    """
    U = linalg.require_unitary(S, tol, "S").copy()
    m = U.shape[0]
    before, after = [], []
    for i in range(m - 1):
        if i % 2 == 0:
            for j in range(i + 1):
                r, a = m - 1 - j, i - j
                bs = BeamSplitter(a + 1, a + 2, *_null_from_right(U, r, a))
                U = U @ embed_element(bs, m).conj().T
                before.append(bs)
        else:
            for j in range(i + 1):
                r, c = m - 1 - i + j, j
                theta, phi = _null_from_left(U, r, c)
                U = embed_element(BeamSplitter(r, r + 1, theta, phi), m) @ U
                after.append(BeamSplitter(r, r + 1, theta, phi, inverted=True))
    return ElementList(m, before + [PhaseDiag(_diag_phases(U))] + after[::-1])


def reck_decompose(S, tol: float = linalg.UNITARY_TOL) -> ElementList:
    """Triangular (Reck) mesh for a unitary S.

    Rows are cleared bottom-up, each from left to right, with column
    operations only, so ``S = D prod(T)``.
    """
    U = linalg.require_unitary(S, tol, "S").copy()
    m = U.shape[0]
    elements = []
    for r in range(m - 1, 0, -1):
        for a in range(r):
            bs = BeamSplitter(a + 1, a + 2, *_null_from_right(U, r, a))
            U = U @ embed_element(bs, m).conj().T
            elements.append(bs)
    return ElementList(m, elements + [PhaseDiag(_diag_phases(U))])


SCHEMES = {"clements": clements_decompose, "reck": reck_decompose}


# ---------------------------------------------------------------------------
# loss and gain


def _g_metric(modes: int) -> np.ndarray:
    return np.diag(np.concatenate([np.ones(modes), -np.ones(modes)]))


def is_quasiunitary(S, tol: float = linalg.UNITARY_TOL) -> tuple[bool, float]:
    """Check ``S G S^dagger = G`` with ``G = diag(I, -I)``.

    Returns:
        ``(ok, max deviation)``.
    """
    S = linalg.as_square(S, "S")
    if S.shape[0] % 2:
        raise ArgumentError(f"quasiunitary matrices have even size, got {S.shape[0]}")
    G = _g_metric(S.shape[0] // 2)
    dev = float(np.abs(S @ G @ S.conj().T - G).max())
    return dev <= tol, dev


@dataclass(frozen=True)
class QuasiUnitaryMatrix:
    """``[[A, B], [B*, A*]]`` acting on ``(a, a^dagger)`` of ``modes`` modes."""

    matrix: np.ndarray

    @property
    def modes(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def A(self) -> np.ndarray:
        k = self.modes
        return self.matrix[:k, :k]

    @property
    def B(self) -> np.ndarray:
        k = self.modes
        return self.matrix[:k, k:]

    @property
    def passive(self) -> bool:
        return bool(np.abs(self.B).max(initial=0.0) < 1e-12)


@dataclass
class QuasiDecomposition:
    """Result of :func:`quasi_decompose`.

    Attributes:
        elements: mesh for W, the loss/gain channels, then the mesh for U, on
            the N system modes (ancillas implicit).
        quasi: the doubled quasiunitary matrix on ``N + #loss + #gain`` modes.
        U, D, W: ``N x N`` factors with ``U diag(D) W`` extending the input matrix.
        losses: ``(mode, ancilla, d)`` per loss channel, 1-based modes.
        gains: ``(mode, ancilla, d)`` per gain channel, 1-based modes.
    """

    elements: ElementList
    quasi: QuasiUnitaryMatrix
    U: np.ndarray
    D: np.ndarray
    W: np.ndarray
    losses: list
    gains: list

    def passive_unitary(self) -> np.ndarray:
        """The A block as an ordinary unitary on system plus loss ancillas."""
        if self.gains:
            raise UnsupportedElementError("active network: gain couples a and a^dagger")
        return self.quasi.A.copy()


def quasi_decompose(M, scheme: str = "clements") -> QuasiDecomposition:
    """Lossy/amplifying network realizing an arbitrary complex matrix M.

    M (``N1 x N2``) is factored by singular value decomposition and extended to
    ``N x N``, ``N = max(N1, N2)``, with unit singular values on the added
    ports so they carry no loss or gain. Each singular value below one becomes
    a beam splitter onto a vacuum ancilla; each above one a two-mode squeezer
    onto an ancilla. The unitary factors are compiled with ``scheme``.

    Raises:
        DegenerateMatrixError: M is identically zero.
    """
    M = linalg.as_matrix(M, "M")
    if not np.any(M):
        raise DegenerateMatrixError("cannot decompose the zero matrix")
    N1, N2 = M.shape
    N = max(N1, N2)
    u, s, vh = np.linalg.svd(M)
    U = np.eye(N, dtype=complex)
    U[:N1, :N1] = u
    W = np.eye(N, dtype=complex)
    W[:N2, :N2] = vh
    d = np.ones(N)
    d[: len(s)] = s

    # gauge: largest entry of each left singular vector real positive
    for k in range(N):
        j = np.argmax(np.abs(U[:, k]))
        ph = np.exp(-1j * np.angle(U[j, k]))
        U[:, k] *= ph
        W[k, :] /= ph

    loss_modes = [j for j in range(N) if d[j] < 1 - UNIT_GAIN_TOL]
    gain_modes = [j for j in range(N) if d[j] > 1 + UNIT_GAIN_TOL]
    total = N + len(loss_modes) + len(gain_modes)

    A_D = np.eye(total, dtype=complex)
    B_D = np.zeros((total, total), dtype=complex)
    losses, gains = [], []
    anc = N
    for j in loss_modes:
        r = np.sqrt(max(1 - d[j] ** 2, 0.0))
        A_D[np.ix_([j, anc], [j, anc])] = [[d[j], r], [-r, d[j]]]
        losses.append((j + 1, anc + 1, float(d[j])))
        anc += 1
    for j in gain_modes:
        sh = np.sqrt(d[j] ** 2 - 1)
        A_D[j, j] = A_D[anc, anc] = d[j]
        B_D[j, anc] = B_D[anc, j] = sh
        gains.append((j + 1, anc + 1, float(d[j])))
        anc += 1

    Ue = np.eye(total, dtype=complex)
    Ue[:N, :N] = U
    We = np.eye(total, dtype=complex)
    We[:N, :N] = W
    A = Ue @ A_D @ We
    B = Ue @ B_D @ We.conj()
    quasi = QuasiUnitaryMatrix(np.block([[A, B], [B.conj(), A.conj()]]))

    decompose = SCHEMES[scheme]
    channels = [LossChannel(j, dj) for j, _, dj in losses] + [GainChannel(j, dj) for j, _, dj in gains]
    channels.sort(key=lambda c: c.mode)
    elements = ElementList(N, list(decompose(W).elements) + channels + list(decompose(U).elements))
    return QuasiDecomposition(elements, quasi, U, d, W, losses, gains)
