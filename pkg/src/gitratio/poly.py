"""Sparse multivariate polynomials over Q and truncated quotient rings.

A ``QuotientRing`` with caps ``(d_1, ..., d_m)`` is
``Q[t_1..t_m] / (t_1^d_1, ..., t_m^d_m)``, the rational Chow ring of
``P^{d_1-1} x ... x P^{d_m-1}``. Integration is extraction of the
coefficient of the point class ``prod t_i^(d_i - 1)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class ArityMismatch(ValueError):
    pass


def _as_fraction(c) -> int | Fraction:
    """Exact rational coefficient; integral values are kept as ``int`` for speed."""
    if isinstance(c, bool):
        raise TypeError("coefficient must be int or Fraction, got bool")
    if isinstance(c, int):
        return c
    if isinstance(c, str):
        c = Fraction(c)
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients.

    Terms are stored as ``{exponent tuple: nonzero Fraction}``, so equality of
    canonical forms is plain dict equality.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise ArityMismatch(f"exponent {exp} in a {nvars}-variable ring")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = _as_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Polynomial":
        # Trusted constructor: terms already canonical.
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        return cls._raw(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Polynomial":
        """``sum coeffs[i] * x_i + const``."""
        n = len(coeffs)
        terms = {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)}
        if const:
            terms[(0,) * n] = const
        return cls(n, terms)

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self._terms.items())

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return Fraction(self._terms.get(tuple(exponent), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Polynomial", caps: Sequence[int] | None = None) -> "Polynomial":
        """Product, optionally dropping every term with an exponent >= its cap."""
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        n = self.nvars
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(e1[i] + e2[i] for i in range(n))
                if caps is not None and any(e[i] >= caps[i] for i in range(n)):
                    continue
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(n, out)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate the ring homomorphism sending variable i to ``images[i]``."""
        if len(images) != self.nvars:
            raise ArityMismatch(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        m = images[0].nvars
        for im in images:
            if im.nvars != m:
                raise ArityMismatch("substitution images live in different rings")
        def horner(terms: dict, i: int) -> Polynomial:
            # terms: exponent suffixes (from variable i on) -> coefficient
            if i == self.nvars:
                return Polynomial.constant(m, terms[()])
            groups: dict[int, dict] = {}
            for e, c in terms.items():
                groups.setdefault(e[0], {})[e[1:]] = c
            acc = Polynomial.zero(m)
            for k in range(max(groups), -1, -1):
                acc = acc * ordered[i]
                if k in groups:
                    acc = acc + horner(groups[k], i + 1)
            return acc

        if not self._terms:
            return Polynomial.zero(m)
        # Largest images outermost: the inner levels then stay small.
        order = sorted(range(self.nvars), key=lambda i: -len(images[i]._terms))
        ordered = [images[i] for i in order]
        terms = {tuple(e[i] for i in order): c for e, c in self._terms.items()}
        return horner(terms, 0)

    def __call__(self, *values):
        """Numeric evaluation at a point (exact for int/Fraction inputs)."""
        if len(values) != self.nvars:
            raise ArityMismatch(f"{len(values)} values for {self.nvars} variables")
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(values, e):
                t *= v**k
            total += t
        return total

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(e), "numerator": c.numerator, "denominator": c.denominator}
            for e, c in self.items()
        ]

    @classmethod
    def from_json(cls, nvars: int, records: Iterable[Mapping]) -> "Polynomial":
        return cls(
            nvars,
            {tuple(r["exponents"]): _as_fraction(Fraction(r["numerator"], r["denominator"])) for r in records},
        )

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), [-x for x in kv[0]])):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                coeff = str(c)
            elif c == 1:
                coeff = ""
            elif c == -1:
                coeff = "-"
            else:
                coeff = f"{c}*" if c.denominator == 1 else f"({c})*"
            parts.append(coeff + mono)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"


def product(factors: Iterable[Polynomial], nvars: int, caps: Sequence[int] | None = None) -> Polynomial:
    out = Polynomial.one(nvars)
    if caps is not None:
        out = reduce(out, QuotientRing(caps))
    for f in factors:
        out = out.mul(f, caps)
    return out


class QuotientRing:
    """``Q[t_1..t_m]`` modulo the monomial-power ideal ``(t_i^caps[i])``."""

    def __init__(self, caps: Sequence[int]):
        caps = tuple(int(c) for c in caps)
        if any(c < 1 for c in caps):
            raise ValueError(f"caps must be positive, got {caps}")
        self.caps = caps

    @property
    def nvars(self) -> int:
        return len(self.caps)

    @property
    def point_exponent(self) -> Exponent:
        return tuple(c - 1 for c in self.caps)

    @property
    def dimension(self) -> int:
        return sum(self.point_exponent)

    def point_class(self) -> Polynomial:
        return Polynomial.monomial(self.point_exponent)

    def gens(self) -> list[Polynomial]:
        return [Polynomial.var(self.nvars, i) for i in range(self.nvars)]

    def __repr__(self) -> str:
        return f"QuotientRing(caps={self.caps})"

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.caps == other.caps

    def __hash__(self):
        return hash(self.caps)


def _check_ring(p: Polynomial, ring: QuotientRing) -> None:
    if p.nvars != ring.nvars:
        raise ArityMismatch(f"{p.nvars}-variable polynomial in a {ring.nvars}-variable ring")


def reduce(p: Polynomial, ring: QuotientRing) -> Polynomial:
    """Drop every term lying in the ideal."""
    _check_ring(p, ring)
    caps = ring.caps
    return Polynomial._raw(
        p.nvars,
        {e: c for e, c in p._terms.items() if all(e[i] < caps[i] for i in range(len(caps)))},
    )


def integrate(p: Polynomial, ring: QuotientRing) -> Fraction:
    """Degree of the zero-cycle part: the coefficient of the point class."""
    _check_ring(p, ring)
    return p.coefficient(ring.point_exponent)
