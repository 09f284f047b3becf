"""The GIT integration ratio for PGL(n) acting on P(M_n), and products.

``SL(n)`` acts on ``n x n`` matrices by left multiplication; ``e_ij`` has
weight ``chi_i``, so a point's state is ``{chi_i : row i is nonzero}``. The
torus quotient is ``(P^{n-1})^n`` with Chow ring ``Q[t]/(t_i^n)``, the root
``chi_i - chi_j`` pulls back to ``t_i - t_j``, and the group quotient is a
reduced point, so the ratio is the degree of ``c_top`` on ``(P^{n-1})^n``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial, prod
from typing import Sequence

from .lattice import Weight
from .poly import Polynomial, QuotientRing, integrate, reduce
from .rootsys import RootSystem, build_type_A, ctop, longest_element, parse_group
from .stability import Classification, StateSet, Stability, classify

MAX_N = 6
MAX_PAIRING_N = 5
MAX_PRODUCT_N = 5


@dataclass
class RatioReport:
    group: str
    weyl_order: int
    ratio: Fraction
    checks: dict[str, bool] = field(default_factory=dict)
    timing_ms: float = 0.0

    @property
    def ratio_equals_weyl_order(self) -> bool:
        return self.ratio == self.weyl_order

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "group": self.group,
            "weyl_order": self.weyl_order,
            "ratio": _number(self.ratio),
            "ratio_equals_weyl_order": self.ratio_equals_weyl_order,
            "checks": dict(sorted(self.checks.items())),
        }
        if timing:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


def _number(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _check_n(n: int, hi: int = MAX_N) -> None:
    if not isinstance(n, int) or not 2 <= n <= hi:
        raise ValueError(f"n must be an integer in 2..{hi}, got {n!r}")


def chi_weight(sys: RootSystem, i: int) -> Weight:
    """``chi_i`` of SL(n) in trace-zero coordinates (``chi_n = -sum``)."""
    (n,) = sys.factors
    a = [0] * n
    a[i - 1] = 1
    return sys.contract([a])


def pm_n_state_census(n: int, lattice: str = "sl") -> list[tuple[tuple[int, ...], Classification]]:
    """Classify every row-occupancy pattern of a point of ``P(M_n)``.

    ``lattice="sl"`` uses the states ``{chi_i : i in S}`` of ``O(1)``;
    ``lattice="pgl"`` uses the ``O(n)`` states (sums of ``n`` such weights),
    which are characters of the PGL(n) torus.
    """
    _check_n(n)
    if lattice not in ("sl", "pgl"):
        raise ValueError(f"lattice must be 'sl' or 'pgl', got {lattice!r}")
    sys = build_type_A(n)
    chis = {i: chi_weight(sys, i) for i in range(1, n + 1)}
    out = []
    for size in range(1, n + 1):
        for pattern in combinations(range(1, n + 1), size):
            ws = [chis[i] for i in pattern]
            if lattice == "pgl":
                ws = [sum(c, Weight((0,) * sys.rank)) for c in combinations_with_replacement(ws, n)]
            out.append((pattern, classify(StateSet(sys.rank, ws))))
    return out


def census_is_as_expected(n: int, census=None) -> bool:
    """Full occupancy is the only stable pattern; every other pattern is unstable."""
    census = pm_n_state_census(n) if census is None else census
    full = tuple(range(1, n + 1))
    return all(
        c.kind is (Stability.STABLE if pattern == full else Stability.UNSTABLE) for pattern, c in census
    )


def quotient_ring(n: int) -> QuotientRing:
    """``A^*((P^{n-1})^n)_Q``."""
    return QuotientRing((n,) * n)


def root_pullbacks(sys: RootSystem, n: int) -> list[Polynomial]:
    """Images of the basis characters in ``Q[t_1..t_n]``: ``chi_i -> t_i - (t_1+...+t_n)/n``.

    This sends every root ``chi_i - chi_j`` to ``t_i - t_j``.
    """
    mean = Fraction(1, n)
    return [
        Polynomial.linear([Fraction(int(j == i)) - mean for j in range(n)]) for i in range(n - 1)
    ]


def ctop_in_quotient(n: int) -> Polynomial:
    """``c_top`` pulled back to the torus quotient, reduced factor by factor."""
    _check_n(n)
    sys = build_type_A(n)
    ring = quotient_ring(n)
    images = root_pullbacks(sys, n)
    out = reduce(Polynomial.one(n), ring)
    for a in sys.roots:
        out = out.mul(sys.as_polynomial(a).substitute(images), ring.caps)
    return out


def difference_product(n: int, caps: Sequence[int] | None = None) -> Polynomial:
    """``prod_{i != j} (t_i - t_j)``, optionally truncated."""
    t = [Polynomial.var(n, i) for i in range(n)]
    out = Polynomial.one(n)
    for i in range(n):
        for j in range(n):
            if i != j:
                out = out.mul(t[i] - t[j], caps)
    return out


def sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def monomial_m(sigma: Sequence[int]) -> Polynomial:
    """``m_sigma = prod t_i^{sigma(i) - 1}``."""
    return Polynomial.monomial([s - 1 for s in sigma])


def vandermonde_det(n: int) -> Polynomial:
    """``det M_V = sum_sigma sgn(sigma) prod t_i^{sigma(i)-1}``."""
    out = Polynomial.zero(n)
    for sigma in permutations(range(1, n + 1)):
        out = out + monomial_m(sigma).scale(sign(sigma))
    return out


def vandermonde_check(n: int) -> bool:
    """``prod_{i != j}(t_i - t_j) = (-1)^{n(n-1)/2} (det M_V)^2`` as untruncated polynomials."""
    _check_n(n)
    lhs = difference_product(n)
    v = vandermonde_det(n)
    rhs = (v * v).scale((-1) ** (n * (n - 1) // 2))
    return lhs == rhs


def pairing_rule_check(n: int) -> bool:
    """In ``Q[t]/(t_i^n)``: ``m_s m_s' != 0`` iff ``s' = w0 o s``, the product is then the
    point class, and ``sgn(s) sgn(s') = (-1)^{n(n-1)/2}``."""
    _check_n(n, MAX_PAIRING_N)
    ring = quotient_ring(n)
    point = ring.point_class()
    (w0,) = longest_element(build_type_A(n)).perms
    expected_sign = (-1) ** (n * (n - 1) // 2)
    perms = list(permutations(range(1, n + 1)))
    for s in perms:
        partner = tuple(w0[s[j] - 1] for j in range(n))
        nonzero = []
        for s2 in perms:
            p = monomial_m(s).mul(monomial_m(s2), ring.caps)
            if p:
                if p != point:
                    return False
                nonzero.append(s2)
        if nonzero != [partner]:
            return False
        if sign(s) * sign(partner) != expected_sign:
            return False
    return True


def closed_form_check(n: int, c: Polynomial | None = None) -> bool:
    """Reduced ``c_top`` equals ``n! * prod t_i^{n-1}`` as a polynomial."""
    c = ctop_in_quotient(n) if c is None else c
    return c == quotient_ring(n).point_class().scale(factorial(n))


def ratio_pgl(n: int) -> RatioReport:
    _check_n(n)
    start = time.perf_counter()
    ring = quotient_ring(n)
    c = ctop_in_quotient(n)
    ratio = integrate(c, ring)
    census = pm_n_state_census(n)
    checks = {
        "closed_form": closed_form_check(n, c),
        "pullback_is_difference_product": c == difference_product(n, ring.caps),
        "stability_census": census_is_as_expected(n, census),
        "no_strictly_semistable": all(
            cl.kind is not Stability.STRICTLY_SEMISTABLE for _, cl in census
        ),
    }
    if n <= MAX_PAIRING_N:
        checks["vandermonde"] = vandermonde_check(n)
        checks["pairing_rule"] = pairing_rule_check(n)
    return RatioReport(
        group=f"A{n - 1}",
        weyl_order=factorial(n),
        ratio=ratio,
        checks=checks,
        timing_ms=(time.perf_counter() - start) * 1000,
    )


def ratio_product(ns: Sequence[int]) -> RatioReport:
    """Ratio for ``PGL(n_1) x ... x PGL(n_k)`` acting on ``prod P(M_{n_i})``.

    The quotient ring has one block of ``n_i`` variables per factor, and
    ``c_top`` of the product group is the product of the factors' ``c_top``.
    """
    ns = list(ns)
    if not 1 <= len(ns) <= 3:
        raise ValueError(f"between 1 and 3 factors are supported, got {len(ns)}")
    for n in ns:
        _check_n(n, MAX_PRODUCT_N)
    start = time.perf_counter()
    total = sum(ns)
    ring = QuotientRing([n for n in ns for _ in range(n)])
    c = reduce(Polynomial.one(total), ring)
    per_factor = []
    offset = 0
    for n in ns:
        block = ctop_in_quotient(n)
        per_factor.append(integrate(block, quotient_ring(n)))
        # embed the block's variables at positions offset..offset+n-1
        images = [Polynomial.var(total, offset + i) for i in range(n)]
        c = c.mul(block.substitute(images), ring.caps)
        offset += n
    ratio = integrate(c, ring)
    weyl = prod(factorial(n) for n in ns)
    return RatioReport(
        group="x".join(f"A{n - 1}" for n in ns),
        weyl_order=weyl,
        ratio=ratio,
        checks={"multiplicative": ratio == prod(per_factor)},
        timing_ms=(time.perf_counter() - start) * 1000,
    )


def ratio_for_group(descriptor: str) -> RatioReport:
    sys = parse_group(descriptor)
    if len(sys.factors) == 1:
        return ratio_pgl(sys.factors[0])
    return ratio_product(sys.factors)


def ctop_root_system_check(n: int) -> bool:
    """Pulling back ``c_top`` computed in Sym X*(T) agrees with the reduced product."""
    sys = build_type_A(n)
    full = ctop(sys).substitute(root_pullbacks(sys, n))
    return reduce(full, quotient_ring(n)) == ctop_in_quotient(n)
