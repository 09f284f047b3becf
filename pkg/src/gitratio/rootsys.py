"""Type-A root systems (and products of them) in trace-zero coordinates.

A factor ``A_{n-1}`` lives in the rank ``n-1`` character lattice of the
diagonal torus of SL(n) with basis ``chi_1..chi_{n-1}``; the redundant
symbol ``chi_n`` is ``-(chi_1 + ... + chi_{n-1})``. A weight written with
``n`` symbols ``sum a_i chi_i`` therefore has coordinates ``a_i - a_n``.
Weyl group elements are permutations of ``1..n``, one per factor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Iterable, Sequence

from .lattice import RankMismatch, Weight
from .poly import Polynomial


class UnsupportedGroup(ValueError):
    """Group descriptor that does not parse, or names a type with no constructor."""


@dataclass(frozen=True)
class WeylElement:
    """One permutation (tuple of images of ``1..n``) per type-A factor."""

    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for p in self.perms:
            if sorted(p) != list(range(1, len(p) + 1)):
                raise ValueError(f"{p} is not a permutation of 1..{len(p)}")

    @classmethod
    def identity(cls, factors: Sequence[int]) -> "WeylElement":
        return cls(tuple(tuple(range(1, n + 1)) for n in factors))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Composition ``self o other``."""
        return WeylElement(
            tuple(tuple(p[q[i] - 1] for i in range(len(q))) for p, q in zip(self.perms, other.perms))
        )

    def inverse(self) -> "WeylElement":
        out = []
        for p in self.perms:
            inv = [0] * len(p)
            for i, pi in enumerate(p, start=1):
                inv[pi - 1] = i
            out.append(tuple(inv))
        return WeylElement(tuple(out))

    def length(self) -> int:
        return sum(
            1 for p in self.perms for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
        )

    def is_identity(self) -> bool:
        return all(p == tuple(range(1, len(p) + 1)) for p in self.perms)

    def __str__(self) -> str:
        return "x".join("[" + ",".join(map(str, p)) + "]" for p in self.perms)


def det(w: WeylElement) -> int:
    """Sign of ``w`` acting on the character lattice: product of permutation signs."""
    return -1 if w.length() % 2 else 1


@dataclass(frozen=True)
class RootSystem:
    """Product of type-A factors, optionally times a central torus of rank ``torus_rank``.

    ``factors`` holds the number of letters ``n`` of each ``A_{n-1}`` factor.
    """

    factors: tuple[int, ...]
    torus_rank: int = 0
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if any(n < 2 for n in self.factors):
            raise ValueError(f"type-A factors need n >= 2, got {self.factors}")
        if not self.label:
            parts = [f"A{n - 1}" for n in self.factors]
            if self.torus_rank:
                parts.append(f"T{self.torus_rank}")
            object.__setattr__(self, "label", "x".join(parts) or "T0")

    @classmethod
    def torus(cls, rank: int) -> "RootSystem":
        return cls((), rank)

    @property
    def rank(self) -> int:
        return sum(n - 1 for n in self.factors) + self.torus_rank

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, k = [], 0
        for n in self.factors:
            out.append(k)
            k += n - 1
        return tuple(out)

    def check(self, chi: Weight) -> None:
        if chi.rank != self.rank:
            raise RankMismatch(f"weight of rank {chi.rank} in a rank-{self.rank} system {self.label}")

    # Conversion between lattice coordinates and n-symbol form.

    def expand(self, chi: Weight) -> tuple[tuple[int, ...], ...]:
        """Per factor, the symbols ``(a_1..a_n)`` with ``a_n = 0``."""
        self.check(chi)
        return tuple(
            tuple(chi[off + i] for i in range(n - 1)) + (0,)
            for off, n in zip(self.offsets, self.factors)
        )

    def central(self, chi: Weight) -> tuple[int, ...]:
        return tuple(chi.coords[self.rank - self.torus_rank :])

    def contract(self, blocks: Sequence[Sequence[int]], central: Sequence[int] = ()) -> Weight:
        coords: list[int] = []
        for a in blocks:
            coords.extend(a[i] - a[-1] for i in range(len(a) - 1))
        coords.extend(central or (0,) * self.torus_rank)
        return Weight(coords)

    def character(self, factor: int, i: int, j: int) -> Weight:
        """``chi_i - chi_j`` in factor ``factor`` (0-based factor, 1-based letters)."""
        blocks = [[0] * n for n in self.factors]
        blocks[factor][i - 1] += 1
        blocks[factor][j - 1] -= 1
        return self.contract(blocks)

    def basis_weight(self, k: int) -> Weight:
        return Weight(int(i == k) for i in range(self.rank))

    # Roots.

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        return tuple(
            self.character(f, i, j)
            for f, n in enumerate(self.factors)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        )

    @cached_property
    def negative_roots(self) -> tuple[Weight, ...]:
        return tuple(-a for a in self.positive_roots)

    @cached_property
    def roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + self.negative_roots

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(
            self.character(f, i, i + 1) for f, n in enumerate(self.factors) for i in range(1, n)
        )

    def simple_root_index(self, k: int) -> tuple[int, int]:
        """Global 1-based simple-root index -> (factor, local index)."""
        for f, n in enumerate(self.factors):
            if k <= n - 1:
                return f, k
            k -= n - 1
        raise IndexError("simple-root index out of range")

    # Weyl group.

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        per_factor = [list(permutations(range(1, n + 1))) for n in self.factors]
        return tuple(WeylElement(tuple(ps)) for ps in product(*per_factor))

    @property
    def weyl_order(self) -> int:
        return prod(factorial(n) for n in self.factors)

    def identity(self) -> WeylElement:
        return WeylElement.identity(self.factors)

    def variables(self) -> list[Polynomial]:
        return [Polynomial.var(self.rank, k) for k in range(self.rank)]

    def as_polynomial(self, chi: Weight) -> Polynomial:
        """A character as a linear form in Sym(X*(T)) = Q[x_1..x_r]."""
        self.check(chi)
        return Polynomial.linear(list(chi.coords))

    def __str__(self) -> str:
        return self.label


def build_type_A(n: int, convention: str = "pgl-trace-zero") -> RootSystem:
    """``A_{n-1}`` root system of PGL(n)/SL(n) in the rank ``n-1`` lattice."""
    if convention != "pgl-trace-zero":
        raise ValueError(f"unknown lattice convention {convention!r}")
    if n < 2:
        raise ValueError(f"need n >= 2 for type A_(n-1), got {n}")
    return RootSystem((n,))


_RESERVED = set("BCDEFG")


def parse_group(descriptor: str) -> RootSystem:
    """Parse ``"A3"``, ``"A2xA1"`` (products of type-A factors)."""
    text = descriptor.strip().replace("×", "x").replace("*", "x")
    if not text:
        raise UnsupportedGroup("empty group descriptor")
    factors = []
    for part in re.split(r"\s*[xX]\s*", text):
        m = re.fullmatch(r"([A-Za-z])(\d+)", part)
        if not m:
            raise UnsupportedGroup(f"cannot parse group factor {part!r} in {descriptor!r}")
        letter, rank = m.group(1).upper(), int(m.group(2))
        if letter in _RESERVED:
            raise UnsupportedGroup(f"type {letter}{rank} is reserved but has no constructor")
        if letter != "A":
            raise UnsupportedGroup(f"unknown Dynkin type {letter!r}")
        if rank < 1:
            raise UnsupportedGroup(f"A{rank} is not a simple root system")
        factors.append(rank + 1)
    return RootSystem(tuple(factors))


def act(w: WeylElement, chi: Weight, sys: RootSystem) -> Weight:
    """Weyl action ``w . chi_i = chi_{w(i)}`` on each factor."""
    blocks = sys.expand(chi)
    if len(w.perms) != len(blocks):
        raise RankMismatch(f"Weyl element with {len(w.perms)} factors on {sys.label}")
    out = []
    for perm, a in zip(w.perms, blocks):
        if len(perm) != len(a):
            raise RankMismatch(f"permutation of {len(perm)} letters on an A{len(a) - 1} factor")
        b = [0] * len(a)
        for i, ai in enumerate(a):
            b[perm[i] - 1] = ai
        out.append(b)
    return sys.contract(out, sys.central(chi))


def _substitute_action(w: WeylElement, p: Polynomial, sys: RootSystem) -> Polynomial:
    images = [sys.as_polynomial(act(w, sys.basis_weight(k), sys)) for k in range(sys.rank)]
    return p.substitute(images)


@lru_cache(maxsize=256)
def _transposition_action(t: WeylElement, p: Polynomial, sys: RootSystem) -> Polynomial:
    return _substitute_action(t, p, sys)


def _split_at_last_letter(w: WeylElement) -> tuple[WeylElement, WeylElement]:
    """``w = u o t`` with ``t`` a transposition ``(j n)`` (or 1) and ``u`` fixing ``n``."""
    us, ts = [], []
    for perm in w.perms:
        n = len(perm)
        j = perm.index(n) + 1
        t = list(range(1, n + 1))
        t[j - 1], t[n - 1] = n, j
        ts.append(tuple(t))
        us.append(tuple(perm[t[i] - 1] for i in range(n)))
    return WeylElement(tuple(us)), WeylElement(tuple(ts))


def act_polynomial(w: WeylElement, p: Polynomial, sys: RootSystem) -> Polynomial:
    """Induced action on Sym(X*(T)): substitute each basis character by its image.

    Elements fixing the last letter permute the variables ``x_i = chi_i``
    outright; only the transposition part needs a genuine substitution
    (``chi_n = -(x_1 + ... + x_{n-1})``), and there are few of those, so
    their results are cached.
    """
    if p.nvars != sys.rank:
        raise RankMismatch(f"polynomial in {p.nvars} variables on {sys.label}")
    if len(w.perms) != len(sys.factors):
        raise RankMismatch(f"Weyl element with {len(w.perms)} factors on {sys.label}")
    u, t = _split_at_last_letter(w)
    q = p if t.is_identity() else _transposition_action(t, p, sys)
    target = list(range(sys.rank))
    for off, perm in zip(sys.offsets, u.perms):
        for i in range(len(perm) - 1):
            target[off + i] = off + perm[i] - 1
    out = {}
    for e, c in q.items():
        moved = [0] * sys.rank
        for j, k in enumerate(e):
            moved[target[j]] = k
        out[tuple(moved)] = c
    return Polynomial(sys.rank, out)


def longest_element(sys: RootSystem) -> WeylElement:
    return WeylElement(tuple(tuple(range(n, 0, -1)) for n in sys.factors))


def sqrt_ctop(sys: RootSystem) -> Polynomial:
    """Product of the positive roots."""
    out = Polynomial.one(sys.rank)
    for a in sys.positive_roots:
        out = out * sys.as_polynomial(a)
    return out


def ctop(sys: RootSystem) -> Polynomial:
    """Product of all roots."""
    out = Polynomial.one(sys.rank)
    for a in sys.roots:
        out = out * sys.as_polynomial(a)
    return out


def is_strictly_dominant(chi: Weight, sys: RootSystem) -> bool:
    """Positive pairing with every simple coroot: ``a_1 > a_2 > ... > a_n`` per factor."""
    return all(a[i] > a[i + 1] for a in sys.expand(chi) for i in range(len(a) - 1))


def fundamental_coordinates(chi: Weight, sys: RootSystem) -> tuple[int, ...]:
    """Coefficients of ``chi`` on the fundamental weights (the simple-coroot pairings)."""
    return tuple(a[i] - a[i + 1] for a in sys.expand(chi) for i in range(len(a) - 1))


def from_fundamental(coeffs: Sequence[int], sys: RootSystem) -> Weight:
    """Inverse of :func:`fundamental_coordinates` on the semisimple part."""
    blocks, k = [], 0
    for n in sys.factors:
        c = coeffs[k : k + n - 1]
        k += n - 1
        # a_n = 0, a_i = a_{i+1} + c_i
        a = [0] * n
        for i in range(n - 2, -1, -1):
            a[i] = a[i + 1] + c[i]
        blocks.append(a)
    return sys.contract(blocks)


@dataclass(frozen=True)
class ParabolicData:
    """A standard parabolic ``P`` (containing the Borel of the positive roots).

    ``subset`` holds the global 1-based simple-root indices of the Levi;
    ``coset_reps`` are minimal-length representatives of ``W/W_P``;
    ``tangent_weights`` are the weights of ``T`` on ``T_{eP}(G/P)``.
    """

    system: RootSystem
    subset: frozenset[int]
    coset_reps: tuple[WeylElement, ...]
    tangent_weights: tuple[Weight, ...]
    levi_negative_roots: tuple[Weight, ...]
    levi_weyl_group: tuple[WeylElement, ...]

    @property
    def name(self) -> str:
        if not self.subset:
            return "borel"
        if len(self.subset) == len(self.system.simple_roots):
            return "full"
        return ",".join(map(str, sorted(self.subset)))


def _blocks(n: int, local: Iterable[int]) -> list[int]:
    """Block label of each letter 1..n when s_k (k in local) glue k and k+1."""
    local = set(local)
    label, out = 0, [0]
    for k in range(1, n):
        if k not in local:
            label += 1
        out.append(label)
    return out


def parabolic(sys: RootSystem, subset: Iterable[int]) -> ParabolicData:
    subset = frozenset(int(k) for k in subset)
    nsimple = len(sys.simple_roots)
    for k in subset:
        if not 1 <= k <= nsimple:
            raise IndexError(f"simple-root index {k} out of range 1..{nsimple} for {sys.label}")
    local: list[list[int]] = [[] for _ in sys.factors]
    for k in subset:
        f, i = sys.simple_root_index(k)
        local[f].append(i)
    blocks = [_blocks(n, loc) for n, loc in zip(sys.factors, local)]

    def minimal(w: WeylElement) -> bool:
        # increasing on every block
        return all(
            p[i] < p[i + 1]
            for p, lab in zip(w.perms, blocks)
            for i in range(len(p) - 1)
            if lab[i] == lab[i + 1]
        )

    def in_levi_weyl(w: WeylElement) -> bool:
        return all(lab[p[i] - 1] == lab[i] for p, lab in zip(w.perms, blocks) for i in range(len(p)))

    tangent, levi_neg = [], []
    for f, n in enumerate(sys.factors):
        lab = blocks[f]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                neg = sys.character(f, j, i)
                (levi_neg if lab[i - 1] == lab[j - 1] else tangent).append(neg)
    return ParabolicData(
        system=sys,
        subset=subset,
        coset_reps=tuple(w for w in sys.weyl_group if minimal(w)),
        tangent_weights=tuple(tangent),
        levi_negative_roots=tuple(levi_neg),
        levi_weyl_group=tuple(w for w in sys.weyl_group if in_levi_weyl(w)),
    )


def borel(sys: RootSystem) -> ParabolicData:
    return parabolic(sys, ())


def all_parabolics(sys: RootSystem) -> list[ParabolicData]:
    idx = range(1, len(sys.simple_roots) + 1)
    out = []
    for mask in range(1 << len(idx)):
        out.append(parabolic(sys, [k for b, k in enumerate(idx) if mask >> b & 1]))
    return out
