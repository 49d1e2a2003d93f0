"""
Counting entanglement with Schmidt rank vectors
===============================================

For a grouping of modes into subsystems, the Schmidt rank of each subsystem
against the rest is the rank of the coefficient matrix between the two
parts. Separable states give all ones.
"""

import numpy as np

import photonlift as pl

######################################################################
# Polarization Bell pair
# ----------------------
#
# Two photons in four modes, with modes (1, 2) and (3, 4) the two
# polarizations of each photon.

B = pl.basis(4, 2)
bell = pl.state_in_basis([(1, 0, 1, 0), (0, 1, 0, 1)], [1 / np.sqrt(2)] * 2, B)
print("Bell:", pl.schmidt_rank_vector(bell, B, [2, 2]))

######################################################################
# A state that only looks entangled
# ---------------------------------
#
# A tiny admixture keeps the rank at 2. Truncating to the fewest terms with
# fidelity above 0.99 exposes the separable core.

eps = 1e-3
almost = pl.state_in_basis([(1, 0, 1, 0), (0, 1, 0, 1)], [np.sqrt(1 - eps), np.sqrt(eps)], B)
print("raw:", pl.schmidt_rank_vector(almost, B, [2, 2]))
terms, weights = pl.state_leading_fidelity(almost, B, 0.99)
clean = pl.state_in_basis(terms, weights, B)
print("truncated:", terms, pl.schmidt_rank_vector(clean, B, [2, 2]))

######################################################################
# High-dimensional entanglement
# -----------------------------
#
# One photon over four orbital angular momentum modes and two photons over
# two modes each.

B8 = pl.basis(8, 3)
terms = [(0, 0, 0, 1, 0, 1, 0, 1), (0, 0, 1, 0, 0, 1, 1, 0), (0, 1, 0, 0, 1, 0, 0, 1), (1, 0, 0, 0, 1, 0, 1, 0)]
psi = pl.state_in_basis(terms, [0.5] * 4, B8)
print("psi_422:", pl.schmidt_rank_vector(psi, B8, [4, 2, 2]))

######################################################################
# Random interferometers spread the state
# ---------------------------------------
#
# Four single photons through a random five-mode interferometer land in a
# superposition of most of the 70 patterns, entangled across every mode.

holes = [(1, 1, 1, 1, 0), (1, 1, 1, 0, 1), (1, 1, 0, 1, 1), (1, 0, 1, 1, 1), (0, 1, 1, 1, 1)]
B5 = pl.subspace_basis(5, 4, holes)
U = pl.s_to_u(pl.haar_random_unitary(5, seed=3), 4, B5)
out = U.evolve((1, 1, 1, 1, 0))
print("terms for 90%:", len(pl.leading_terms(out, 0.9)), " for 99%:", len(pl.leading_terms(out, 0.99)))
print("ranks:", pl.schmidt_rank_vector(out, None, [1, 1, 1, 1, 1]))
