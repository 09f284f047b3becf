"""Hilbert-Mumford classification of torus states.

A point with state ``Xi`` is semistable iff 0 lies in the convex hull of
``Xi`` and stable iff 0 lies in the (full-dimensional) interior of that
hull. Hull membership is an exact LP whose Farkas certificate is a strictly
separating cocharacter. Interior membership is decided by a second LP (a
strictly positive convex combination); when it fails, the supporting
cocharacter is found among the normals of hyperplanes through 0 spanned
by weights of the state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .lattice import (
    Cocharacter,
    RankMismatch,
    Weight,
    annihilator,
    constant_cocharacter_lattice,
    integer_kernel,
    integer_rank,
    pair,
    primitive,
)
from .simplex import solve_feasibility


class StateSet:
    """The finite set of weights attached to a point (set semantics, sorted)."""

    __slots__ = ("rank", "weights", "_hash")

    def __init__(self, rank: int, weights: Iterable):
        ws = {w if isinstance(w, Weight) else Weight(w) for w in weights}
        if not ws:
            raise ValueError("a state set must be non-empty")
        for w in ws:
            if w.rank != rank:
                raise RankMismatch(f"weight {w.coords} does not have rank {rank}")
        self.rank = rank
        self.weights: tuple[Weight, ...] = tuple(sorted(ws))
        self._hash = hash((rank, self.weights))

    @classmethod
    def of(cls, *weights: Sequence[int]) -> "StateSet":
        return cls(len(weights[0]), weights)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __eq__(self, other):
        return isinstance(other, StateSet) and (self.rank, self.weights) == (other.rank, other.weights)

    def __hash__(self):
        return self._hash

    def scaled(self, k: int) -> "StateSet":
        return StateSet(self.rank, (w * k for w in self.weights))

    def to_json(self) -> dict:
        return {"rank": self.rank, "weights": [list(w.coords) for w in self.weights]}

    @classmethod
    def from_json(cls, data: dict) -> "StateSet":
        return cls(int(data["rank"]), [tuple(w) for w in data["weights"]])

    def __repr__(self) -> str:
        return f"StateSet({[w.coords for w in self.weights]})"


class Stability(enum.Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"

    @property
    def semistable(self) -> bool:
        return self is not Stability.UNSTABLE


@dataclass(frozen=True)
class Classification:
    """Outcome of the criterion plus a cocharacter witnessing it.

    * ``UNSTABLE``: ``pair(certificate, chi) > 0`` for every weight.
    * ``STRICTLY_SEMISTABLE``: certificate is nonzero and ``pair >= 0`` on
      every weight, with equality somewhere.
    * ``STABLE``: no certificate.
    """

    kind: Stability
    certificate: Cocharacter | None = None

    def to_json(self) -> dict:
        return {
            "classification": self.kind.value,
            "certificate": None if self.certificate is None else list(self.certificate.coords),
        }


def _rational_solve(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system by Gauss-Jordan over Q."""
    n = len(m)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def _independent(vectors: Sequence[Weight]) -> list[Weight]:
    basis: list[Weight] = []
    for v in vectors:
        if integer_rank([b.coords for b in basis] + [v.coords]) > len(basis):
            basis.append(v)
    return basis


def _project_to_span(lam: Sequence[Fraction], weights: Sequence[Weight]) -> tuple[int, ...]:
    """Orthogonal projection of ``lam`` onto span(weights), as a primitive integer vector.

    Pairings with the weights are unchanged, so any separating inequality
    survives; the projection just strips directions the weights never see.
    """
    basis = _independent(weights)
    if not basis:
        return primitive(tuple(int(x * lcm(*(Fraction(y).denominator for y in lam))) for x in lam))
    gram = [[Fraction(pair(u, v)) for v in basis] for u in basis]
    rhs = [sum(Fraction(x) * c for x, c in zip(lam, b)) for b in basis]
    coef = _rational_solve(gram, rhs)
    proj = [sum(coef[k] * basis[k][i] for k in range(len(basis))) for i in range(len(lam))]
    den = lcm(*(x.denominator for x in proj))
    return primitive(tuple(int(x * den) for x in proj))


def _hull_lp(states: StateSet):
    ws = states.weights
    a = [[w[k] for w in ws] for k in range(states.rank)]
    a.append([1] * len(ws))
    b = [0] * states.rank + [1]
    return solve_feasibility(a, b)


def contains_zero_hull(states: StateSet) -> tuple[bool, Cocharacter | None]:
    """Is 0 in conv(states)? If not, also return a strictly separating cocharacter."""
    res = _hull_lp(states)
    if res.feasible:
        return True, None
    lam = res.farkas[: states.rank]
    cert = Cocharacter(_project_to_span(lam, states.weights))
    return False, cert


def hull_coefficients(states: StateSet) -> dict[Weight, Fraction] | None:
    """A convex combination of the weights summing to 0, or None."""
    res = _hull_lp(states)
    if not res.feasible:
        return None
    return {w: c for w, c in zip(states.weights, res.x) if c}


def candidate_facet_normals(states: StateSet) -> list[Cocharacter]:
    """Primitive normals of hyperplanes through 0 spanned by rank-1-fewer subsets of the state."""
    r = states.rank
    nonzero = [w for w in states.weights if not w.is_zero()]
    seen: set[tuple[int, ...]] = set()
    out: list[Cocharacter] = []
    for subset in combinations(nonzero, r - 1):
        rows = [w.coords for w in subset]
        if integer_rank(rows) != r - 1:
            continue
        (normal,) = integer_kernel(rows, r)
        key = normal if normal > tuple(-x for x in normal) else tuple(-x for x in normal)
        if key not in seen:
            seen.add(key)
            out.append(Cocharacter(normal))
    return out


def contains_zero_interior(states: StateSet) -> tuple[bool, Cocharacter | None]:
    """Is 0 in the full-dimensional interior of conv(states)?

    When it is not, the returned cocharacter is nonzero and pairs
    non-negatively with every weight.
    """
    inside, sep = contains_zero_hull(states)
    if not inside:
        return False, sep
    r = states.rank
    # 0 is in the hull, so the affine hull is full iff the linear span is.
    if integer_rank([w.coords for w in states.weights]) < r:
        return False, annihilator(states.weights, r)[0]
    if _strictly_positive_combination(states):
        return True, None
    for lam in candidate_facet_normals(states):
        vals = [pair(lam, w) for w in states.weights]
        if min(vals) >= 0:
            return False, lam
        if max(vals) <= 0:
            return False, -lam
    raise ArithmeticError(f"interior LP and facet enumeration disagree on {states}")


def _strictly_positive_combination(states: StateSet) -> bool:
    """``sum c_chi chi = 0`` with every ``c_chi > 0`` (substitute ``c = 1 + d``, ``d >= 0``).

    With a full-rank span this is equivalent to 0 being interior.
    """
    ws = states.weights
    a = [[w[k] for w in ws] for k in range(states.rank)]
    b = [-sum(w[k] for w in ws) for k in range(states.rank)]
    return solve_feasibility(a, b).feasible


def interior_by_facet_enumeration(states: StateSet) -> bool:
    """Interior test from candidate facet normals alone (no interior LP)."""
    if not contains_zero_hull(states)[0]:
        return False
    if integer_rank([w.coords for w in states.weights]) < states.rank:
        return False
    for lam in candidate_facet_normals(states):
        vals = [pair(lam, w) for w in states.weights]
        if min(vals) >= 0 or max(vals) <= 0:
            return False
    return True


def classify(states: StateSet) -> Classification:
    inside, sep = contains_zero_hull(states)
    if not inside:
        return Classification(Stability.UNSTABLE, sep)
    interior, support = contains_zero_interior(states)
    if interior:
        return Classification(Stability.STABLE)
    return Classification(Stability.STRICTLY_SEMISTABLE, support)


def stabilizer_rank(states: StateSet) -> int:
    """Rank of the identity component of the stabilizer torus of a point with this state."""
    return len(constant_cocharacter_lattice(states.weights))


def polystable_face(states: StateSet) -> StateSet | None:
    """Weights on the minimal face of conv(states) containing 0.

    This is the state of the closed orbit in the orbit closure of a
    semistable point; ``None`` for unstable states.
    """
    ws = states.weights
    base = hull_coefficients(states)
    if base is None:
        return None
    on_face = set(base)
    a = [[w[k] for w in ws] for k in range(states.rank)]
    for i, w in enumerate(ws):
        if w in on_face:
            continue
        # Is there d >= 0 with sum d_j w_j = 0 and d_i = 1?
        row = [int(j == i) for j in range(len(ws))]
        if solve_feasibility(a + [row], [0] * states.rank + [1]).feasible:
            on_face.add(w)
    return StateSet(states.rank, on_face)


def polystable_stabilizer(states: StateSet) -> list[Cocharacter]:
    """Stabilizer cocharacter lattice of the polystable degeneration of a semistable point.

    Positive rank exactly when the point is strictly semistable.
    """
    face = polystable_face(states)
    if face is None:
        raise ValueError("unstable state has no polystable degeneration")
    return annihilator(face.weights, states.rank)
