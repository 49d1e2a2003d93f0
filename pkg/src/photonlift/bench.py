"""Timing harness comparing the four ways of computing phi(S)."""

from __future__ import annotations

import contextlib
import csv
import io
import logging
import os
import time
from dataclasses import dataclass

from . import linalg
from .errors import ArgumentError
from .fock import basis as fock_basis
from .fock import dimension
from .lift import METHODS, s_to_u

log = logging.getLogger(__name__)

CSV_COLUMNS = ("m", "n", "M", "method", "seconds", "reps", "source", "seconds_per_column")
SOURCES = ("haar", "qft")


@dataclass(frozen=True)
class BenchConfig:
    """Grid and settings for :func:`bench_run`.

    Attributes:
        modes: mode counts to time.
        photons: photon counts to time.
        methods: names from :data:`photonlift.lift.METHODS`.
        reps: timed repetitions averaged per cell (a warm-up run is extra).
        source: ``"haar"`` for a seeded random S per cell, ``"qft"`` for the DFT matrix.
        seed: base seed for ``"haar"``.
    """

    modes: tuple[int, ...] = (2, 3, 4, 5)
    photons: tuple[int, ...] = (2, 3, 4, 5)
    methods: tuple[str, ...] = METHODS
    reps: int = 5
    source: str = "haar"
    seed: int = 0


@dataclass(frozen=True)
class BenchRecord:
    m: int
    n: int
    M: int
    method: str
    wall_time: float
    repetitions: int
    matrix_source: str

    @property
    def seconds_per_column(self) -> float:
        """Single-output-state estimate: time divided by the M columns."""
        return self.wall_time / self.M


@contextlib.contextmanager
def single_core():
    """Pin the process to one logical CPU; yields False when that is unavailable."""
    if not hasattr(os, "sched_setaffinity"):
        yield False
        return
    try:
        saved = os.sched_getaffinity(0)
        os.sched_setaffinity(0, {min(saved)})
    except OSError:
        yield False
        return
    try:
        yield True
    finally:
        os.sched_setaffinity(0, saved)


def _cell_matrix(config: BenchConfig, m: int, n: int):
    if config.source == "qft":
        return linalg.qft_matrix(m)
    # one fixed matrix per (m, n) cell, shared across methods
    return linalg.haar_random_unitary(m, [config.seed, m, n])


def bench_run(config: BenchConfig) -> tuple[list[BenchRecord], bool]:
    """Time ``s_to_u`` for every (m, n, method) in the grid.

    Returns:
        The records in grid order and whether CPU pinning took effect.
    """
    if not config.modes or not config.photons or not config.methods:
        raise ArgumentError("benchmark ranges must be nonempty")
    if config.reps < 1:
        raise ArgumentError(f"reps must be at least 1, got {config.reps}")
    if config.source not in SOURCES:
        raise ArgumentError(f"source must be one of {SOURCES}, got {config.source!r}")
    records = []
    with single_core() as pinned:
        for m in config.modes:
            for n in config.photons:
                S = _cell_matrix(config, m, n)
                B = fock_basis(m, n)
                for method in config.methods:
                    s_to_u(S, n, B, method=method)
                    start = time.perf_counter()
                    for _ in range(config.reps):
                        s_to_u(S, n, B, method=method)
                    elapsed = (time.perf_counter() - start) / config.reps
                    records.append(
                        BenchRecord(m, n, dimension(m, n), method, max(elapsed, 1e-12), config.reps, config.source)
                    )
    _log_crossover(records)
    return records, pinned


def _log_crossover(records: list[BenchRecord]) -> None:
    times = {(r.m, r.n, r.method): r.wall_time for r in records}
    for m in sorted({r.m for r in records}):
        faster = [n for (mm, n, meth) in times if mm == m and meth == "hamiltonian"
                  and (m, n, "ryser") in times and times[m, n, "hamiltonian"] < times[m, n, "ryser"]]
        if faster:
            log.info("m=%d: hamiltonian faster than ryser from n=%d", m, min(faster))
        else:
            log.info("m=%d: ryser faster than hamiltonian at every n timed", m)


def records_to_csv(records: list[BenchRecord], pinned: bool) -> str:
    buf = io.StringIO()
    if not pinned:
        buf.write("# single-core pinning unavailable on this platform\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([r.m, r.n, r.M, r.method, f"{r.wall_time:.6e}", r.repetitions, r.matrix_source,
                         f"{r.seconds_per_column:.6e}"])
    return buf.getvalue()
