"""Photon-number (Fock) bases for n photons in m modes, states and Schmidt ranks."""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, CapacityError, DegenerateStateError, DimensionError, PreconditionError

Occupation = tuple[int, ...]

STATE_NORM_TOL = 1e-6
SCHMIDT_TOL = 1e-6


def dimension(m: int, n: int) -> int:
    """Number of ways to place ``n`` photons in ``m`` modes, ``C(m+n-1, n)``."""
    if m < 1 or n < 0:
        raise ArgumentError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    M = math.comb(m + n - 1, n)
    if M > sys.maxsize:
        raise CapacityError(f"dimension C({m + n - 1}, {n}) exceeds the machine integer range")
    return M


def _occupations(m: int, n: int):
    if m == 1:
        yield (n,)
        return
    for k in range(n, -1, -1):
        for rest in _occupations(m - 1, n - k):
            yield (k,) + rest


@dataclass(frozen=True)
class FockBasis:
    """Ordered list of occupation vectors spanning the n-photon, m-mode space.

    The position of a state in :attr:`states` is its row/column index in every
    state vector and evolution matrix built on this basis.
    """

    m: int
    n: int
    states: tuple[Occupation, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for i, s in enumerate(self.states):
            if len(s) != self.m or sum(s) != self.n or min(s) < 0:
                raise ArgumentError(f"{s} is not an occupation vector for m={self.m}, n={self.n}")
            if s in index:
                raise ArgumentError(f"duplicate basis state {s}")
            index[s] = i
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i) -> Occupation:
        return self.states[i]

    def __contains__(self, state) -> bool:
        return tuple(state) in self._index

    def index(self, state: Sequence[int]) -> int:
        try:
            return self._index[tuple(int(k) for k in state)]
        except KeyError:
            raise ArgumentError(f"state |{''.join(map(str, state))}> is not in the basis") from None

    def is_complete(self) -> bool:
        return len(self) == dimension(self.m, self.n)


def basis(m: int, n: int) -> FockBasis:
    """Full basis in lexicographically descending order.

    >>> basis(2, 3).states
    ((3, 0), (2, 1), (1, 2), (0, 3))
    """
    dimension(m, n)
    return FockBasis(m, n, tuple(_occupations(m, n)))


def subspace_basis(m: int, n: int, priority_states: Iterable[Sequence[int]] = ()) -> FockBasis:
    """Basis that lists ``priority_states`` first, then the rest in default order."""
    front = [tuple(int(k) for k in s) for s in priority_states]
    for s in front:
        if len(s) != m or sum(s) != n or min(s) < 0:
            raise ArgumentError(f"{s} is not an occupation vector for m={m}, n={n}")
    if len(set(front)) != len(front):
        raise ArgumentError("priority states must be distinct")
    seen = set(front)
    rest = [s for s in _occupations(m, n) if s not in seen]
    return FockBasis(m, n, tuple(front + rest))


@dataclass(frozen=True)
class StateVector:
    """Amplitudes of a pure state over a :class:`FockBasis`."""

    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != len(self.basis):
            raise DimensionError(f"{amps.size} amplitudes for a basis of length {len(self.basis)}")
        object.__setattr__(self, "amplitudes", amps)

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def __len__(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, state: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.basis.index(state)])

    def terms(self, atol: float = 0.0) -> list[tuple[Occupation, complex]]:
        """Non-negligible ``(occupation, amplitude)`` pairs in basis order."""
        return [(self.basis[i], complex(a)) for i, a in enumerate(self.amplitudes) if abs(a) > atol]


def _coerce(state, basis: FockBasis | None) -> StateVector:
    if isinstance(state, StateVector):
        if basis is not None and basis != state.basis:
            raise ArgumentError("state is expressed in a different basis")
        return state
    if basis is None:
        raise ArgumentError("a basis is required for a bare amplitude array")
    return StateVector(basis, state)


def _require_normalized(psi: StateVector, tol: float = STATE_NORM_TOL):
    sq = float(np.vdot(psi.amplitudes, psi.amplitudes).real)
    if abs(sq - 1) > tol:
        raise PreconditionError(f"state is not normalized: sum |a|^2 = {sq:.9g}")


def state_in_basis(terms: Sequence[Sequence[int]], weights: Sequence[complex], basis: FockBasis) -> StateVector:
    """Build a state vector from kets and their complex weights.

    Repeated kets have their weights summed.
    """
    if len(terms) != len(weights):
        raise ArgumentError(f"{len(terms)} terms but {len(weights)} weights")
    amps = np.zeros(len(basis), dtype=complex)
    for ket, w in zip(terms, weights):
        amps[basis.index(ket)] += complex(w)
    return StateVector(basis, amps)


def leading_terms(state, cumulative: float, basis: FockBasis | None = None) -> list[tuple[Occupation, complex]]:
    """Most probable terms whose probabilities add up to at least ``cumulative``.

    Terms come out by decreasing probability; equal probabilities keep basis
    order.
    """
    psi = _coerce(state, basis)
    if not 0 < cumulative <= 1:
        raise ArgumentError(f"cumulative must lie in (0, 1], got {cumulative}")
    _require_normalized(psi)
    probs = np.abs(psi.amplitudes) ** 2
    order = np.argsort(-probs, kind="stable")
    # rounding slack so cumulative = 1 terminates
    k = int(np.searchsorted(np.cumsum(probs[order]), cumulative - 1e-12)) + 1
    k = min(k, len(order))
    return [(psi.basis[i], complex(psi.amplitudes[i])) for i in order[:k]]


def state_leading_fidelity(state, basis: FockBasis | None, fidelity: float):
    """Shortest truncation ``psi~`` of ``state`` with ``|<psi|psi~>|^2 > fidelity``.

    Returns:
        ``(terms, weights)`` with the weights renormalized, ready for
        :func:`state_in_basis`.
    """
    psi = _coerce(state, basis)
    if not 0 < fidelity < 1:
        raise ArgumentError(f"fidelity must lie in (0, 1), got {fidelity}")
    _require_normalized(psi)
    probs = np.abs(psi.amplitudes) ** 2
    order = np.argsort(-probs, kind="stable")
    # for a renormalized truncation the fidelity equals the kept probability
    kept = np.cumsum(probs[order]) / probs.sum()
    k = min(int(np.searchsorted(kept, fidelity, side="right")) + 1, len(order))
    idx = order[:k]
    w = psi.amplitudes[idx]
    w = w / np.linalg.norm(w)
    return [psi.basis[i] for i in idx], [complex(a) for a in w]


def state_leading_terms(state, p_min: float, basis: FockBasis | None = None) -> StateVector:
    """Zero every amplitude with probability below ``p_min`` and renormalize.

    Raises:
        DegenerateStateError: nothing survives the threshold.
    """
    psi = _coerce(state, basis)
    _require_normalized(psi)
    amps = psi.amplitudes.copy()
    amps[np.abs(amps) ** 2 < p_min] = 0
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise DegenerateStateError(f"no term has probability >= {p_min}")
    return StateVector(psi.basis, amps / norm)


def schmidt_rank_vector(state, basis: FockBasis | None, grouping: Sequence[int], tol: float = SCHMIDT_TOL) -> list[int]:
    """Schmidt rank of each group of consecutive modes against the remaining modes.

    For every group the amplitudes are arranged in a matrix whose rows are
    indexed by the occupation pattern of the group's modes and whose columns
    are indexed by the pattern of the complement. The rank is the number of
    singular values above ``tol`` times the largest one.

    Args:
        state: :class:`StateVector` or amplitude array.
        basis: basis of a bare amplitude array; may be ``None`` for a StateVector.
        grouping: sizes of consecutive mode groups, summing to ``m``.
        tol: relative singular-value cutoff.
    """
    psi = _coerce(state, basis)
    B = psi.basis
    grouping = [int(g) for g in grouping]
    if any(g < 1 for g in grouping) or sum(grouping) != B.m:
        raise ArgumentError(f"grouping {grouping} does not partition {B.m} modes")
    _require_normalized(psi)
    support = [(B[i], a) for i, a in enumerate(psi.amplitudes) if a != 0]

    ranks = []
    start = 0
    for g in grouping:
        stop = start + g
        # rows/columns only for patterns that occur; absent patterns are zero rows
        rows: dict = {}
        cols: dict = {}
        entries = []
        for occ, a in support:
            local, rest = occ[start:stop], occ[:start] + occ[stop:]
            entries.append((rows.setdefault(local, len(rows)), cols.setdefault(rest, len(cols)), a))
        C = np.zeros((len(rows), len(cols)), dtype=complex)
        for r, c, a in entries:
            C[r, c] += a
        s = np.linalg.svd(C, compute_uv=False)
        ranks.append(int(np.sum(s > tol * s[0])))
        start = stop
    return ranks
