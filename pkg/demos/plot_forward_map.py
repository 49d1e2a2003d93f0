"""
Photons through an interferometer
=================================

A scattering matrix ``S`` says how a single photon entering mode ``k`` leaves
the interferometer. With ``n`` photons the relevant object is the evolution
``U = phi(S)`` on the space of occupation patterns, of dimension
``C(m + n - 1, n)``.

This script builds ``U`` four ways and shows the two-photon bunching of a
balanced beam splitter.
"""

import time

import numpy as np

import photonlift as pl

######################################################################
# The Fock basis
# --------------
#
# States are listed in descending lexicographic order.

B = pl.basis(3, 2)
print(len(B), "states:", list(B))

######################################################################
# Bunching at a balanced splitter
# -------------------------------
#
# Two photons entering different ports of a 50:50 splitter always leave
# together: the ``|11>`` output amplitude is a 2x2 permanent that cancels.

S = np.array([[1, -1], [1, 1]]) / np.sqrt(2)
U = pl.s_to_u(S, 2)
out = U.evolve((1, 1))
for occ, amp in out.terms(atol=1e-12):
    print(occ, np.round(amp, 6))

######################################################################
# Four routes to the same matrix
# ------------------------------
#
# ``heisenberg`` expands creation-operator polynomials, ``naive`` and
# ``ryser`` evaluate permanents, and ``hamiltonian`` exponentiates the lifted
# logarithm of ``S``. They agree to rounding.

S = pl.haar_random_unitary(4, seed=1)
results = {}
for method in pl.METHODS:
    start = time.perf_counter()
    results[method] = pl.s_to_u(S, 3, method=method).matrix
    print(f"{method:12s} {time.perf_counter() - start:8.4f} s")

ref = results["ryser"]
print("largest disagreement:", max(np.abs(U - ref).max() for U in results.values()))

######################################################################
# Homomorphism
# ------------
#
# Composing interferometers composes their evolutions.

S1, S2 = pl.haar_random_unitary(3, seed=2), pl.haar_random_unitary(3, seed=3)
lhs = pl.s_to_u(S1 @ S2, 2).matrix
rhs = pl.s_to_u(S1, 2).matrix @ pl.s_to_u(S2, 2).matrix
print("phi(S1 S2) - phi(S1) phi(S2):", np.abs(lhs - rhs).max())
