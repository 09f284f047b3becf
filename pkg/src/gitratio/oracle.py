"""Brute-force Hilbert-Mumford oracle for small ranks.

Enumerates every integer cocharacter in the box ``[-L, L]^r`` with
``L = max(1, M * |Xi|)`` (``M`` the largest absolute coordinate) and tests
separation directly. Independent of the LP path.

Completeness for ``r <= 2``: the cone of functionals that are non-negative
on ``Xi`` is generated by vectors normal to single weights, i.e.
``(-y, x)`` for ``(x, y)`` in ``Xi``, whose entries are bounded by ``M``. An
open separating sector is either a half-plane around a weight direction
(witness: that weight, entries ``<= M``) or has two such bounding rays, and
their sum is a strict witness with entries ``<= 2M <= M |Xi|``. In rank 1
the witnesses are ``+-1``.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .stability import StateSet, Stability


def box_bound(states: StateSet) -> int:
    m = max(abs(c) for w in states.weights for c in w.coords)
    return max(1, m * len(states))


def brute_force_classify(states: StateSet) -> Stability:
    r = states.rank
    if r > 2:
        raise ValueError("the box oracle is only known to be complete for rank <= 2")
    bound = box_bound(states)
    axis = np.arange(-bound, bound + 1)
    grid = np.array(list(product(axis, repeat=r)), dtype=np.int64)
    grid = grid[np.any(grid != 0, axis=1)]
    xi = np.array([w.coords for w in states.weights], dtype=np.int64)
    pairings = grid @ xi.T
    if np.any(np.all(pairings > 0, axis=1)):
        return Stability.UNSTABLE
    if np.any(np.all(pairings >= 0, axis=1)):
        return Stability.STRICTLY_SEMISTABLE
    return Stability.STABLE
