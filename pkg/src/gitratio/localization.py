"""Fixed-point model of ``A_T((G/P)^T)`` and the push-pull operator.

``A_T(W/W_P)`` is the free ``S = Sym X*(T)`` module on the cosets
``[w W_P]``; a class is one polynomial per minimal coset representative.
Pushing forward from the fixed points and restricting back multiplies the
``w``-component by the product of ``w . alpha`` over the tangent weights at
``eP``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import Polynomial
from .rootsys import ParabolicData, WeylElement, act, det, sqrt_ctop


class WellDefinednessError(AssertionError):
    """Push-pull multiplier depends on the coset representative."""


@dataclass(frozen=True)
class FixedPointClass:
    parabolic: ParabolicData
    components: tuple[Polynomial, ...]  # aligned with parabolic.coset_reps

    def __post_init__(self):
        if len(self.components) != len(self.parabolic.coset_reps):
            raise ValueError("one component per coset representative is required")

    @classmethod
    def zero(cls, par: ParabolicData) -> "FixedPointClass":
        z = Polynomial.zero(par.system.rank)
        return cls(par, tuple(z for _ in par.coset_reps))

    @classmethod
    def point(cls, par: ParabolicData, w: WeylElement, coeff: Polynomial | None = None):
        """``coeff * [w W_P]`` (``coeff`` defaults to 1)."""
        rank = par.system.rank
        coeff = Polynomial.one(rank) if coeff is None else coeff
        comps = tuple(coeff if v == w else Polynomial.zero(rank) for v in par.coset_reps)
        if w not in par.coset_reps:
            raise ValueError(f"{w} is not a minimal coset representative")
        return cls(par, comps)

    def component(self, w: WeylElement) -> Polynomial:
        return self.components[self.parabolic.coset_reps.index(w)]

    def __add__(self, other: "FixedPointClass") -> "FixedPointClass":
        if other.parabolic != self.parabolic:
            raise ValueError("classes on different flag varieties")
        return FixedPointClass(
            self.parabolic, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def times(self, s: Polynomial) -> "FixedPointClass":
        """S-module action."""
        return FixedPointClass(self.parabolic, tuple(s * c for c in self.components))

    def __eq__(self, other):
        return (
            isinstance(other, FixedPointClass)
            and self.parabolic == other.parabolic
            and self.components == other.components
        )

    def __hash__(self):
        return hash(self.components)

    def table(self) -> list[tuple[str, str]]:
        return [(str(w), c.format()) for w, c in zip(self.parabolic.coset_reps, self.components)]


def _root_product(par: ParabolicData, w: WeylElement, weights) -> Polynomial:
    sys = par.system
    out = Polynomial.one(sys.rank)
    for a in weights:
        out = out * sys.as_polynomial(act(w, a, sys))
    return out


@lru_cache(maxsize=None)
def push_pull_multiplier(par: ParabolicData, w: WeylElement) -> Polynomial:
    """``prod_{alpha in Phi(g/p)} w.alpha``, checked against every representative of ``w W_P``."""
    m = _root_product(par, w, par.tangent_weights)
    for u in par.levi_weyl_group:
        if _root_product(par, w * u, par.tangent_weights) != m:
            raise WellDefinednessError(f"multiplier differs on {w} and {w * u}")
    return m


def push_pull(c: FixedPointClass) -> FixedPointClass:
    par = c.parabolic
    return FixedPointClass(
        par,
        tuple(push_pull_multiplier(par, w) * comp for w, comp in zip(par.coset_reps, c.components)),
    )


def sqrt_ctop_class(par: ParabolicData) -> FixedPointClass:
    """Restriction of ``sqrt(c_top)`` capped with the fundamental class to the fixed points."""
    s = sqrt_ctop(par.system)
    return FixedPointClass(par, tuple(s for _ in par.coset_reps))


def beta_class(par: ParabolicData) -> FixedPointClass:
    """Components ``det(w) * prod_{alpha in Phi^- minus Phi(g/p)} w.alpha``."""
    return FixedPointClass(
        par,
        tuple(
            _root_product(par, w, par.levi_negative_roots).scale(det(w)) for w in par.coset_reps
        ),
    )


def verify_antiinvariant_identity(par: ParabolicData) -> bool:
    """Does ``push_pull(beta_class(P))`` equal ``sqrt_ctop_class(P)`` exactly?

    Note the negative-root product satisfies
    ``prod_{Phi^-} w.alpha = (-1)^{|Phi^+|} det(w) sqrt(c_top)``, so this
    equality holds exactly when ``|Phi^+|`` is even; see
    :func:`identity_sign` and :func:`verify_image_membership`.
    """
    return push_pull(beta_class(par)) == sqrt_ctop_class(par)


def identity_sign(par: ParabolicData) -> Fraction | None:
    """The scalar ``s`` with ``push_pull(beta_class) = s * sqrt_ctop_class``, if one exists."""
    lhs = push_pull(beta_class(par))
    rhs = sqrt_ctop_class(par)
    s = None
    for a, b in zip(lhs.components, rhs.components):
        # sqrt(c_top) is never the zero polynomial
        (e, cb), *_ = b.items()
        ratio = a.coefficient(e) / cb
        if a != b.scale(ratio):
            return None
        if s is None:
            s = ratio
        elif s != ratio:
            return None
    return s


def signed_beta_class(par: ParabolicData) -> FixedPointClass:
    """``(-1)^{|Phi^+|}`` times :func:`beta_class`, the preimage that works for every rank."""
    sign = -1 if len(par.system.positive_roots) % 2 else 1
    b = beta_class(par)
    return FixedPointClass(par, tuple(c.scale(sign) for c in b.components))


def verify_image_membership(par: ParabolicData) -> bool:
    """``sqrt_ctop_class(P)`` lies in the image of push-pull, witnessed by :func:`signed_beta_class`."""
    return push_pull(signed_beta_class(par)) == sqrt_ctop_class(par)
