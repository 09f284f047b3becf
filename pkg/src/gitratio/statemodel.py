"""Finite point-with-state models of linearized varieties and the
elimination of strictly semistable points by flag-variety products.

A model samples finitely many points of a ``T``-linearized variety and
records each point's state. Taking the product with the flag variety
``G/B`` linearized by ``L(chi)`` and the original bundle to the power ``N``
turns the state ``Xi`` of ``z`` and the state ``Psi`` of a flag point into
``{N xi + psi}``. The flag variety is sampled by its ``T``-fixed points
(state ``{w chi}``) and one generic point (state ``W chi``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import count
from typing import Iterable, Sequence

from .lattice import Cocharacter, RankMismatch, Weight, pair
from .rootsys import RootSystem, act, from_fundamental, is_strictly_dominant
from .simplex import solve_feasibility
from .stability import (
    Classification,
    StateSet,
    Stability,
    classify,
    contains_zero_hull,
    contains_zero_interior,
    polystable_stabilizer,
)

log = logging.getLogger(__name__)


class EliminationError(RuntimeError):
    """The stabilizer rank failed to drop: an implementation bug, never a valid outcome."""


@dataclass(frozen=True)
class ModelPoint:
    id: str
    states: StateSet


@dataclass(frozen=True)
class StateModel:
    rank: int
    points: tuple[ModelPoint, ...]

    def __post_init__(self):
        ids = [p.id for p in self.points]
        if len(set(ids)) != len(ids):
            raise ValueError("point ids must be unique")
        for p in self.points:
            if p.states.rank != self.rank:
                raise RankMismatch(f"point {p.id!r} has rank {p.states.rank}, model has {self.rank}")

    @classmethod
    def build(cls, rank: int, points: Iterable[tuple[str, Iterable]]) -> "StateModel":
        return cls(rank, tuple(ModelPoint(pid, StateSet(rank, ws)) for pid, ws in points))

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "points": [
                {"id": p.id, "weights": [list(w.coords) for w in p.states.weights]}
                for p in self.points
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StateModel":
        rank = int(data["rank"])
        return cls.build(rank, [(str(p["id"]), [tuple(w) for w in p["weights"]]) for p in data["points"]])


_classify = lru_cache(maxsize=None)(classify)


def classify_point(states: StateSet) -> Classification:
    """Memoized :func:`classify` (state sets repeat heavily inside products)."""
    return _classify(states)


def census(model: StateModel) -> dict[Stability, int]:
    out = {k: 0 for k in Stability}
    for p in model.points:
        out[classify_point(p.states).kind] += 1
    return out


def strictly_semistable_points(model: StateModel) -> list[ModelPoint]:
    return [
        p for p in model.points if classify_point(p.states).kind is Stability.STRICTLY_SEMISTABLE
    ]


def _combine(xi: StateSet, psi: StateSet, n_a: int, n_b: int) -> StateSet:
    return StateSet(xi.rank, {x * n_a + y * n_b for x in xi.weights for y in psi.weights})


def product(a: StateModel, b: StateModel, n_a: int = 1, n_b: int = 1) -> StateModel:
    """State model of ``A x B`` linearized by ``L^{n_a} [x] M^{n_b}``."""
    if a.rank != b.rank:
        raise RankMismatch(f"product of rank {a.rank} and rank {b.rank} models")
    if n_a < 1 or n_b < 1:
        raise ValueError("tensor powers must be positive")
    return StateModel(
        a.rank,
        tuple(
            ModelPoint(f"{p.id}|{q.id}", _combine(p.states, q.states, n_a, n_b))
            for p in a.points
            for q in b.points
        ),
    )


def flag_model(sys: RootSystem, chi: Weight) -> StateModel:
    """Fixed points ``w B`` with state ``{w chi}``, plus a generic point with state ``W chi``."""
    sys.check(chi)
    if not is_strictly_dominant(chi, sys):
        raise ValueError(f"{chi.coords} is not strictly dominant for {sys.label}")
    orbit = [(w, act(w, chi, sys)) for w in sys.weyl_group]
    pts = [ModelPoint(f"w={w}", StateSet(sys.rank, [wc])) for w, wc in orbit]
    pts.append(ModelPoint("generic", StateSet(sys.rank, [wc for _, wc in orbit])))
    return StateModel(sys.rank, tuple(pts))


def _dominant_search(sys: RootSystem):
    """Strictly dominant weights by fundamental-coefficient sum, ties lexicographic."""
    k = len(sys.simple_roots)
    for total in count(k):
        for c in _compositions(total, k):
            yield total, from_fundamental(c, sys)


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` positive integers summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def avoids(chi: Weight, sys: RootSystem, stab_tori: Sequence[Sequence[Cocharacter]]) -> bool:
    """``(w chi)`` restricts nontrivially to every listed subtorus, for every ``w``."""
    for w in sys.weyl_group:
        wc = act(w, chi, sys)
        for basis in stab_tori:
            if all(pair(lam, wc) == 0 for lam in basis):
                return False
    return True


def choose_chi(
    sys: RootSystem, stab_tori: Sequence[Sequence[Cocharacter]] = (), max_height: int = 10_000
) -> Weight:
    """Smallest strictly dominant weight whose Weyl orbit avoids every ``H_i = T_i^perp``."""
    if sys.torus_rank:
        raise ValueError("flag-variety perturbation needs a semisimple root system")
    for basis in stab_tori:
        if not basis:
            raise ValueError("stabilizer subtori must have positive rank")
    for height, chi in _dominant_search(sys):
        if height > max_height:
            break
        if avoids(chi, sys, stab_tori):
            return chi
    raise RuntimeError(f"no admissible dominant weight of height <= {max_height}")


def asymptotic_class(xi: StateSet, psi: StateSet) -> Stability:
    """Classification of the state ``{N xi + psi}`` for all sufficiently large ``N``.

    For semistable ``xi`` this is decided at ``N = infinity``: semistable iff
    ``sum a_x x + sum b_p p = 0`` has a solution with ``a, b >= 0`` and
    ``sum b = 1``; stable iff 0 is interior to ``conv(xi u psi)``.
    """
    zc = classify_point(xi)
    if zc.kind is Stability.UNSTABLE:
        return Stability.UNSTABLE
    if zc.kind is Stability.STABLE:
        return Stability.STABLE
    union = StateSet(xi.rank, set(xi.weights) | set(psi.weights))
    if contains_zero_interior(union)[0]:
        return Stability.STABLE
    xs, ps = xi.weights, psi.weights
    a = [[x[k] for x in xs] + [p[k] for p in ps] for k in range(xi.rank)]
    a.append([0] * len(xs) + [1] * len(ps))
    if solve_feasibility(a, [0] * xi.rank + [1]).feasible:
        return Stability.STRICTLY_SEMISTABLE
    return Stability.UNSTABLE


def settled(xi: StateSet, psi: StateSet, n: int) -> bool:
    """Certificate that the class of ``{m xi + psi}`` is the asymptotic one for every ``m >= n``.

    Unstable ``xi``: 0 is outside ``conv(n xi u (n xi + psi))``, so the
    segment from 0 to ``-psi/n`` never meets ``conv(xi)``. Semistable
    ``xi``: the class at ``n`` already equals the limit; both the hull and
    its interior grow monotonically in ``n`` when 0 lies in ``conv(xi)``.
    """
    zc = classify_point(xi)
    if zc.kind is Stability.UNSTABLE:
        scaled = [x * n for x in xi.weights]
        widened = StateSet(xi.rank, scaled + [s + p for s in scaled for p in psi.weights])
        return not contains_zero_hull(widened)[0]
    return classify_point(_combine(xi, psi, n, 1)).kind is asymptotic_class(xi, psi)


@dataclass(frozen=True)
class NChoice:
    n: int
    doubling_n: int
    stable_under_doubling: bool
    factor_consistent: bool

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "doubling_N": self.doubling_n,
            "stable_under_doubling": self.stable_under_doubling,
            "factor_consistent": self.factor_consistent,
        }


def choose_N(z_model: StateModel, flag: StateModel, max_doublings: int = 64) -> NChoice:
    """Smallest ``N`` from which every product point's class is certified final.

    Doubling from 1 finds a certified ``N``; the certificate is monotone in
    ``N`` so a bisection then returns the least one. The choice is also
    checked against ``2N`` and against the classification of the ``z``
    factor (stable stays stable, unstable stays unstable).
    """
    if z_model.rank != flag.rank:
        raise RankMismatch("z model and flag model have different ranks")
    pairs = [(p.states, q.states) for p in z_model.points for q in flag.points]

    def ok(n: int) -> bool:
        return all(settled(xi, psi, n) for xi, psi in pairs)

    hi = 1
    for _ in range(max_doublings):
        if ok(hi):
            break
        hi *= 2
    else:
        raise RuntimeError("no certified N found")
    doubling_n = hi
    lo = hi // 2  # ok(lo) is false, or lo == 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    n = hi
    doubled = all(
        classify_point(_combine(xi, psi, n, 1)).kind is classify_point(_combine(xi, psi, 2 * n, 1)).kind
        for xi, psi in pairs
    )
    consistent = True
    for xi, psi in pairs:
        zk = classify_point(xi).kind
        if zk is not Stability.STRICTLY_SEMISTABLE:
            consistent &= classify_point(_combine(xi, psi, n, 1)).kind is zk
    return NChoice(n=n, doubling_n=doubling_n, stable_under_doubling=doubled, factor_consistent=consistent)


def max_polystable_rank(model: StateModel) -> int:
    """Largest stabilizer rank of the polystable degenerations of strictly semistable points."""
    return max((len(polystable_stabilizer(p.states)) for p in strictly_semistable_points(model)), default=0)


@dataclass(frozen=True)
class EliminationStep:
    chi: Weight
    n: NChoice
    tori: tuple[tuple[Cocharacter, ...], ...]
    max_rank_before: int
    max_rank_after: int
    points_before: int
    points_after: int
    strictly_semistable_after: int

    def to_json(self) -> dict:
        return {
            "chi": list(self.chi.coords),
            **self.n.to_json(),
            "stabilizer_tori": [[list(l.coords) for l in basis] for basis in self.tori],
            "max_stabilizer_rank_before": self.max_rank_before,
            "max_stabilizer_rank_after": self.max_rank_after,
            "points_before": self.points_before,
            "points_after": self.points_after,
            "strictly_semistable_after": self.strictly_semistable_after,
        }


def eliminate_strictly_semistable(
    z: StateModel, sys: RootSystem
) -> tuple[StateModel, list[EliminationStep]]:
    """Multiply by flag models until no point is strictly semistable.

    Each round collects the stabilizer subtori of the polystable
    degenerations of the strictly semistable points, picks ``chi`` avoiding
    them and a certified ``N``, and replaces the model by
    ``model x (G/B, L(chi))`` with bundle ``L^N [x] L(chi)``. The maximal
    subtorus rank must drop every round, so at most ``rank`` rounds occur.
    """
    if z.rank != sys.rank:
        raise RankMismatch(f"model rank {z.rank} but {sys.label} has rank {sys.rank}")
    model = z
    steps: list[EliminationStep] = []
    for _ in range(sys.rank + 1):
        ss = strictly_semistable_points(model)
        if not ss:
            return model, steps
        if len(steps) == sys.rank:
            break
        tori = sorted({tuple(polystable_stabilizer(p.states)) for p in ss}, key=lambda t: [l.coords for l in t])
        before = max(len(t) for t in tori)
        chi = choose_chi(sys, tori)
        flag = flag_model(sys, chi)
        choice = choose_N(model, flag)
        new = product(model, flag, choice.n, 1)
        _check_factor_status(model, flag, new)
        after = max_polystable_rank(new)
        if after >= before:
            raise EliminationError(
                f"stabilizer rank did not drop ({before} -> {after}) with chi={chi.coords}, N={choice.n}"
            )
        steps.append(
            EliminationStep(
                chi=chi,
                n=choice,
                tori=tuple(tori),
                max_rank_before=before,
                max_rank_after=after,
                points_before=len(model),
                points_after=len(new),
                strictly_semistable_after=len(strictly_semistable_points(new)),
            )
        )
        log.info("elimination round %d: chi=%s N=%d rank %d -> %d", len(steps), chi.coords, choice.n, before, after)
        model = new
    raise EliminationError(f"strictly semistable points remain after {sys.rank} rounds")


def _check_factor_status(z: StateModel, flag: StateModel, prod_model: StateModel) -> None:
    k = len(flag)
    for i, p in enumerate(prod_model.points):
        zk = classify_point(z.points[i // k].states).kind
        if zk is Stability.STRICTLY_SEMISTABLE:
            continue
        pk = classify_point(p.states).kind
        if pk is not zk:
            raise EliminationError(f"point {p.id} is {pk.value} over a {zk.value} point")
