"""Acceptance criteria, runnable from pytest and from ``gitratio accept``.

Each criterion returns a :class:`CriterionResult`; a criterion passes only
if every check holds exactly and the run fits its time budget.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from .lattice import Weight
from .localization import identity_sign, verify_antiinvariant_identity
from .oracle import brute_force_classify
from .poly import Polynomial
from .ratio import (
    closed_form_check,
    pairing_rule_check,
    pm_n_state_census,
    ratio_pgl,
    ratio_product,
    vandermonde_check,
)
from .rootsys import (
    RootSystem,
    act,
    act_polynomial,
    all_parabolics,
    build_type_A,
    ctop,
    det,
    sqrt_ctop,
)
from .stability import StateSet, Stability, classify
from .statemodel import StateModel, eliminate_strictly_semistable, strictly_semistable_points

THREADS_ENV = "GITRATIO_THREADS"
DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2}. {self.name} ({self.seconds:.2f}s / {self.budget:g}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "budget_seconds": self.budget,
            "details": self.details,
        }


def _timed(number: int, name: str, budget: float, body: Callable[[list[str]], bool]) -> CriterionResult:
    details: list[str] = []
    start = time.perf_counter()
    ok = body(details)
    elapsed = time.perf_counter() - start
    if elapsed >= budget:
        details.append(f"over time budget: {elapsed:.2f}s >= {budget}s")
        ok = False
    return CriterionResult(number, name, bool(ok), elapsed, budget, details)


def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for n in (2, 3, 4, 5):
            r = ratio_pgl(n).ratio
            good = r == factorial(n)
            d.append(f"r_PGL({n}) = {r}, n! = {factorial(n)}: {'ok' if good else 'MISMATCH'}")
            ok &= good
        return ok

    return _timed(1, "ratio_pgl(n) = n! for n in 2..5", 10, body)


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for n in (2, 3, 4):
            good = closed_form_check(n)
            d.append(f"n={n}: reduced c_top == n! * prod t_i^(n-1): {good}")
            ok &= good
        return ok

    return _timed(2, "c_top closed form in Q[t]/(t_i^n)", 5, body)


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for n in (2, 3, 4):
            good = vandermonde_check(n)
            d.append(f"n={n}: Vandermonde identity: {good}")
            ok &= good
        return ok

    return _timed(3, "Vandermonde identity (untruncated)", 5, body)


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for n in (2, 3, 4):
            good = pairing_rule_check(n)
            d.append(f"n={n}: m_s * m_s' != 0 iff s' = w0 o s, sign product (-1)^(n(n-1)/2): {good}")
            ok &= good
        return ok

    return _timed(4, "w0 pairing rule", 5, body)


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for n in (2, 3, 4, 5):
            cen = pm_n_state_census(n)
            counts = {k: sum(1 for _, c in cen if c.kind is k) for k in Stability}
            full = tuple(range(1, n + 1))
            good = (
                len(cen) == 2**n - 1
                and counts[Stability.STABLE] == 1
                and counts[Stability.STRICTLY_SEMISTABLE] == 0
                and counts[Stability.UNSTABLE] == 2**n - 2
                and all((c.kind is Stability.STABLE) == (p == full) for p, c in cen)
            )
            d.append(
                f"n={n}: {len(cen)} patterns, stable={counts[Stability.STABLE]}, "
                f"strictly semistable={counts[Stability.STRICTLY_SEMISTABLE]}, "
                f"unstable={counts[Stability.UNSTABLE]}"
            )
            ok &= good
        return ok

    return _timed(5, "P(M_n) stability census", 2, body)


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for ns, expected in (([2, 2], 4), ([2, 3], 12)):
            r = ratio_product(ns).ratio
            d.append(f"ratio_product({ns}) = {r} (expected {expected})")
            ok &= r == expected
        return ok

    return _timed(6, "multiplicativity over products", 5, body)


def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for n in (2, 3, 4):
            sys = build_type_A(n)
            for par in all_parabolics(sys):
                good = verify_antiinvariant_identity(par)
                extra = "" if good else f" (push_pull(beta) = {identity_sign(par)} * sqrt_ctop_class)"
                d.append(f"{sys.label} parabolic {par.name}: {good}{extra}")
                ok &= good
        return ok

    return _timed(7, "localization identity for every parabolic of A1, A2, A3", 10, body)


def elimination_library() -> list[tuple[str, StateModel, RootSystem]]:
    """Hand-built models, each containing strictly semistable points."""
    a1, a2 = build_type_A(2), build_type_A(3)
    one = [(-1,), (0,), (1,)]
    p2_rank1 = StateModel.build(
        1,
        [
            ("".join("+0-"[1 - w[0]] for w in sub) or "?", sub)
            for sub in (
                [one[1]],
                [one[2]],
                [one[0]],
                [one[1], one[2]],
                [one[1], one[0]],
                [one[2], one[0]],
                one,
            )
        ],
    )
    fixed_point_rank1 = StateModel.build(1, [("origin", [(0,)]), ("edge", [(0,), (3,)])])
    segment_rank2 = StateModel.build(
        2,
        [
            ("segment", [(1, 0), (-1, 0)]),
            ("origin", [(0, 0)]),
            ("half-disc", [(1, 0), (-1, 0), (0, 1)]),
            ("simplex", [(1, 0), (0, 1), (-1, -1)]),
        ],
    )
    mixed_rank2 = StateModel.build(
        2,
        [
            ("diag", [(1, 1), (-1, -1)]),
            ("diag+", [(1, 1), (-1, -1), (2, -1)]),
            ("wedge", [(0, 0), (1, 2), (2, 1)]),
            ("unstable", [(1, 0), (2, 3)]),
            ("stable", [(1, 0), (0, 1), (-1, -1), (2, 2)]),
        ],
    )
    root_rank2 = StateModel.build(
        2,
        [
            ("root-pair", [tuple(a2.positive_roots[0].coords), tuple(a2.negative_roots[0].coords)]),
            ("roots+0", [(0, 0)] + [tuple(a.coords) for a in a2.positive_roots]),
            ("all-roots", [tuple(a.coords) for a in a2.roots]),
        ],
    )
    return [
        ("P(k-1 + k0 + k1) over A1", p2_rank1, a1),
        ("fixed point and edge over A1", fixed_point_rank1, a1),
        ("segment / origin / half-disc over A2", segment_rank2, a2),
        ("mixed rank-2 states over A2", mixed_rank2, a2),
        ("root-lattice states over A2", root_rank2, a2),
    ]


def random_semistable_model(rng: random.Random, rank: int, points: int = 3) -> StateModel:
    """A random model guaranteed to contain a strictly semistable point."""
    pts = []
    # a strictly semistable seed: weights on a hyperplane through 0, balanced
    while True:
        normal = [rng.randint(-2, 2) for _ in range(rank)]
        if any(normal):
            break
    if rank == 1:
        ss = [(0,), (rng.randint(1, 3),)]
    else:
        v = (-normal[1], normal[0])
        k = rng.randint(1, 2)
        ss = [v, tuple(-k * x for x in v)]
        if rng.random() < 0.5:
            ss.append(tuple(normal))
    pts.append(("ss", ss))
    for i in range(points - 1):
        size = rng.randint(1, 4)
        pts.append((f"r{i}", [tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(size)]))
    return StateModel.build(rank, pts)


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        rng = random.Random(seed)
        cases = elimination_library()
        for i in range(4):
            rank = 1 + i % 2
            cases.append((f"random model #{i}", random_semistable_model(rng, rank), build_type_A(rank + 1)))
        for name, model, sys in cases:
            if not strictly_semistable_points(model):
                d.append(f"{name}: library model has no strictly semistable point")
                ok = False
                continue
            out, steps = eliminate_strictly_semistable(model, sys)
            remaining = len(strictly_semistable_points(out))
            drops = all(s.max_rank_after < s.max_rank_before for s in steps)
            chain = all(
                steps[j + 1].max_rank_before == steps[j].max_rank_after for j in range(len(steps) - 1)
            )
            good = remaining == 0 and len(steps) <= sys.rank and drops and chain
            ranks = " -> ".join([str(steps[0].max_rank_before)] + [str(s.max_rank_after) for s in steps])
            d.append(
                f"{name}: {len(steps)} round(s) (rank {sys.rank}), stabilizer ranks {ranks}, "
                f"{len(out)} points, strictly semistable left: {remaining}"
            )
            ok &= good
        return ok

    return _timed(8, "elimination of strictly semistable points", 10, body)


def random_state_set(rng: random.Random) -> StateSet:
    """Rank 1 or 2, 1..6 weights, coordinates in [-5, 5].

    Half the draws are uniform; the other half plant a balanced pair on a
    line through 0 so that boundary cases are well represented.
    """
    rank = rng.choice((1, 2))
    size = rng.randint(1, 6)
    ws = [tuple(rng.randint(-5, 5) for _ in range(rank)) for _ in range(size)]
    if rng.random() < 0.5 and size >= 2:
        v = ws[0]
        ws[1] = tuple(-x for x in v)
        if rng.random() < 0.3:
            ws[0] = (0,) * rank
    return StateSet(rank, ws)


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        rng = random.Random(seed)
        disagreements = 0
        tally = {k: 0 for k in Stability}
        for _ in range(500):
            s = random_state_set(rng)
            got = classify(s).kind
            want = brute_force_classify(s)
            tally[want] += 1
            if got is not want:
                disagreements += 1
                if disagreements <= 5:
                    d.append(f"disagreement on {s}: classify={got.value}, oracle={want.value}")
        d.append(
            "500 sets: " + ", ".join(f"{k.value}={v}" for k, v in tally.items())
            + f"; disagreements={disagreements}"
        )
        return disagreements == 0

    return _timed(9, "classifier agrees with brute-force oracle (500 seeded sets)", 30, body)


def _root_product(sys: RootSystem, w, roots) -> Polynomial:
    out = Polynomial.one(sys.rank)
    for a in roots:
        out = out * sys.as_polynomial(act(w, a, sys))
    return out


def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    def body(d):
        ok = True
        for n in (2, 3, 4, 5):
            sys = build_type_A(n)
            s, c = sqrt_ctop(sys), ctop(sys)
            anti = inv = neg = True
            for w in sys.weyl_group:
                anti &= act_polynomial(w, s, sys) == s.scale(det(w))
                inv &= act_polynomial(w, c, sys) == c
                neg &= _root_product(sys, w, sys.negative_roots) == s.scale(det(w))
            d.append(f"{sys.label}: sqrt(c_top) anti-invariant: {anti}")
            d.append(f"{sys.label}: c_top invariant: {inv}")
            d.append(f"{sys.label}: prod_(Phi^-) w.alpha == det(w) sqrt(c_top) for all w: {neg}")
            ok &= anti and inv and neg
        rng = random.Random(seed)
        scale_ok = weyl_ok = True
        for n in (3, 4):
            sys = build_type_A(n)
            for _ in range(40):
                size = rng.randint(1, 5)
                ws = [
                    Weight(rng.randint(-3, 3) for _ in range(sys.rank)) for _ in range(size)
                ]
                if rng.random() < 0.4:
                    ws = [rng.choice(sys.roots) for _ in range(size)] + [Weight((0,) * sys.rank)] * rng.randint(0, 1)
                st = StateSet(sys.rank, ws)
                base = classify(st).kind
                k = rng.randint(2, 5)
                scale_ok &= classify(st.scaled(k)).kind is base
                w = rng.choice(sys.weyl_group)
                weyl_ok &= classify(StateSet(sys.rank, [act(w, x, sys) for x in ws])).kind is base
        d.append(f"classify invariant under positive scaling: {scale_ok}")
        d.append(f"classify invariant under the Weyl group: {weyl_ok}")
        return ok and scale_ok and weyl_ok

    return _timed(10, "Weyl-group and scaling property suites", 10, body)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_all(seed: int = DEFAULT_SEED, threads: int | None = None) -> list[CriterionResult]:
    threads = thread_count() if threads is None else threads
    if threads <= 1:
        return [c(seed) for c in CRITERIA]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: c(seed), CRITERIA))
