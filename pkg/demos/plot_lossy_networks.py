"""
Loss and gain
=============

An arbitrary complex matrix ``M`` can describe a network with loss or
amplification. Its singular value decomposition ``M = U diag(d) W`` reads as
a passive interferometer ``W``, one channel per mode, and a second
interferometer ``U``. A channel with ``d < 1`` leaks into a vacuum ancilla. A
channel with ``d > 1`` is a two-mode squeezer, which mixes creation and
annihilation operators.
"""

import numpy as np

import photonlift as pl

######################################################################
# A lossy balanced splitter
# -------------------------
#
# Half the light of the symmetric input is lost. One singular value is zero,
# so a single ancilla absorbs it and the network is passive.

T = 0.5 * np.array([[1, -1], [-1, 1]])
dec = pl.quasi_decompose(T)
print("singular values:", np.round(dec.D, 6))
print("losses (mode, ancilla, d):", dec.losses)
A = dec.passive_unitary()
print(np.round(A.real, 3))

######################################################################
# The three-mode unitary can go through the photon-number machinery.

U = pl.s_to_u(A, 2)
print("two-photon evolution is", U.shape, "and unitary:", pl.is_unitary(U.matrix))

######################################################################
# An amplifying network
# ---------------------
#
# This 2x3 matrix has two singular values above one, so two squeezers are
# needed. With three system modes and two ancillas the doubled matrix acting
# on ``(a, a^dagger)`` is 10x10.

M = np.array([[0.77 - 0.04j, -0.07 - 0.57j, 0.21 - 0.71j], [0.53 - 0.34j, 1.08 + 0.16j, -0.24 - 0.05j]])
dec = pl.quasi_decompose(M)
print("singular values:", np.round(dec.D, 4))
print("gains:", [(j, anc, round(d, 4)) for j, anc, d in dec.gains])
ok, dev = pl.is_quasiunitary(dec.quasi.matrix)
print("quasiunitary:", ok, f"(deviation {dev:.1e})", "size", dec.quasi.matrix.shape)
print("M sits in the corner:", np.abs(dec.quasi.A[:2, :3] - M).max() < 1e-12)

for e in dec.elements:
    print(" ", e)
