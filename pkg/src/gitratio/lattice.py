"""Integer character and cocharacter lattices.

Weights (characters) and cocharacters (one-parameter subgroups) of a split
torus of rank ``r`` are plain integer vectors in a fixed coordinate basis,
paired by the dot product.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class RankMismatch(ValueError):
    """Two lattice vectors (or a vector and a lattice) have different ranks."""


@dataclass(frozen=True, slots=True)
class _IntVector:
    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        values = tuple(coords)
        for c in values:
            if isinstance(c, bool) or int(c) != c:
                raise TypeError(f"lattice coordinates must be integers, got {c!r}")
        object.__setattr__(self, "coords", tuple(int(c) for c in values))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "_IntVector") -> None:
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._check(other)
        return type(self)(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._check(other)
        return type(self)(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return type(self)(-a for a in self.coords)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return type(self)(k * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __lt__(self, other):
        # Lexicographic order, used only to make output deterministic.
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self.coords}"


class Weight(_IntVector):
    """A character of the torus."""

    __slots__ = ()


class Cocharacter(_IntVector):
    """A one-parameter subgroup of the torus."""

    __slots__ = ()


def pair(lam: Cocharacter | Sequence[int], chi: Weight | Sequence[int]) -> int:
    """Canonical pairing <lam, chi> between cocharacters and characters."""
    if len(lam) != len(chi):
        raise RankMismatch(f"cannot pair rank {len(lam)} with rank {len(chi)}")
    return sum(a * b for a, b in zip(lam, chi))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (keeps the sign)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            a = m[i][col]
            for j in range(col, ncols):
                # Bareiss step: exact division by the previous pivot.
                m[i][j] = (p * m[i][j] - a * m[rank][j]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive, entries above each pivot are reduced into
    ``[0, pivot)``, and zero rows are dropped.
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    out_row = 0
    for col in range(ncols):
        # Euclid on the column below out_row until one nonzero entry remains.
        while True:
            nz = [i for i in range(out_row, len(m)) if m[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(m[i][col]))
            m[out_row], m[i_min] = m[i_min], m[out_row]
            done = True
            for i in range(out_row + 1, len(m)):
                if m[i][col]:
                    q = m[i][col] // m[out_row][col]
                    m[i] = [a - q * b for a, b in zip(m[i], m[out_row])]
                    if m[i][col]:
                        done = False
            if done:
                break
        if out_row < len(m) and m[out_row][col] != 0:
            if m[out_row][col] < 0:
                m[out_row] = [-a for a in m[out_row]]
            p = m[out_row][col]
            for i in range(out_row):
                q = m[i][col] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[out_row])]
            out_row += 1
            if out_row == len(m):
                break
    return [tuple(r) for r in m[:out_row]]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x in Z^ncols : rows . x = 0}`` in Hermite form.

    Works by unimodular column operations on ``rows`` (tracked in ``U``);
    the columns of ``U`` sent to zero span the saturated integer kernel.
    """
    a = [list(map(int, r)) for r in rows]
    for r in a:
        if len(r) != ncols:
            raise RankMismatch(f"row of length {len(r)} in a rank-{ncols} system")
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of U

    def colop(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src, in both A and U
        for r in a:
            r[dst] -= q * r[src]
        for r in u:
            r[dst] -= q * r[src]

    def colswap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    pivot_col = 0
    for r in a:
        if pivot_col == ncols:
            break
        while True:
            nz = [j for j in range(pivot_col, ncols) if r[j] != 0]
            if not nz:
                break
            j_min = min(nz, key=lambda j: abs(r[j]))
            colswap(pivot_col, j_min)
            for j in range(pivot_col + 1, ncols):
                if r[j]:
                    colop(j, pivot_col, r[j] // r[pivot_col])
            if all(r[j] == 0 for j in range(pivot_col + 1, ncols)):
                break
        if r[pivot_col] != 0:
            pivot_col += 1
    basis = [tuple(u[i][j] for i in range(ncols)) for j in range(pivot_col, ncols)]
    return hermite_rows(basis)


def constant_cocharacter_lattice(states: Iterable[Weight]) -> list[Cocharacter]:
    """Basis of the cocharacters that pair constantly with every weight in ``states``.

    This is the cocharacter lattice of the identity component of the
    stabilizer of a point whose state is ``states``.
    """
    weights = list(states)
    if not weights:
        raise ValueError("empty state set")
    r = weights[0].rank
    for w in weights:
        if w.rank != r:
            raise RankMismatch(f"mixed ranks {r} and {w.rank} in state set")
    base = weights[0]
    diffs = [(w - base).coords for w in weights[1:]]
    diffs = [d for d in diffs if any(d)]
    return [Cocharacter(v) for v in integer_kernel(diffs, r)]


def annihilator(weights: Iterable[Weight], rank: int) -> list[Cocharacter]:
    """Basis of the cocharacters pairing to zero with every given weight."""
    rows = [w.coords for w in weights]
    return [Cocharacter(v) for v in integer_kernel(rows, rank)]
