"""
Designing an interferometer for a target evolution
==================================================

Not every unitary on the two-photon space comes from an interferometer.
The six-dimensional discrete Fourier transform is a standard example for
three modes and two photons. This script

#. shows that it has no exact realization,
#. searches for nearby realizable evolutions from random starts,
#. recovers the scattering matrix of the best one, and
#. compiles it into beam splitters and phase shifters.
"""

import numpy as np

import photonlift as pl

Q = pl.qft_matrix(6)

######################################################################
# Exact realization test
# ----------------------
#
# A realizable ``U`` maps the image algebra onto itself by conjugation. The
# residual measures how far conjugation by ``Q`` leaves that algebra.

result = pl.s_from_u(Q, m=3, n=2)
print(result.status, f"(max residual {result.max_residual:.3f})")

######################################################################
# Local search
# ------------
#
# Each try starts at a Haar-random ``S`` and repeatedly steps along the
# projection of ``log(Q U^dag)`` onto the image algebra. Different starts end
# in different local optima.

report = pl.toponogov(Q, m=3, n=2, tries=20, seed=0)
print(f"{len(report.distinct())} distinct optima from {len(report.attempts)} tries")
for a in report.distinct()[:5]:
    print(f"  try {a.try_index:2d}: distance {a.distance:.5f} after {a.iterations} steps")

######################################################################
# From evolution back to the interferometer
# -----------------------------------------

best = report.best
recovered = pl.s_from_u(best.U, m=3, n=2)
print(recovered.status, "phase-free error", recovered.distance)
S = recovered.S

######################################################################
# Compilation
# -----------
#
# The rectangular mesh uses three beam splitters for three modes, split
# around a screen of output phases.

mesh = pl.clements_decompose(S)
for e in mesh:
    print(" ", e)
print("reconstruction error:", np.linalg.norm(pl.reconstruct(mesh) - S))

triangle = pl.reck_decompose(S)
print("triangular mesh reconstruction error:", np.linalg.norm(pl.reconstruct(triangle) - S))
