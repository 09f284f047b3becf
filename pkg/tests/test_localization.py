import pytest

from gitratio.localization import (
    FixedPointClass,
    beta_class,
    identity_sign,
    push_pull,
    push_pull_multiplier,
    signed_beta_class,
    sqrt_ctop_class,
    verify_antiinvariant_identity,
    verify_image_membership,
)
from gitratio.poly import Polynomial
from gitratio.rootsys import act, all_parabolics, borel, build_type_A, det, parabolic, sqrt_ctop

A1, A2 = build_type_A(2), build_type_A(3)


def x(i, n=1):
    return Polynomial.var(n, i)


def test_push_pull_examples():
    full = parabolic(A2, [1, 2])
    c = FixedPointClass(full, (x(0, 2) + 3,))
    assert push_pull(c) == c
    b = borel(A1)
    e = A1.identity()
    # the tangent weight at the base point is the negative root
    assert push_pull(FixedPointClass.point(b, e)).component(e) == x(0).scale(-2)
    assert push_pull(FixedPointClass.zero(b)) == FixedPointClass.zero(b)


def test_push_pull_is_linear_and_diagonal():
    par = parabolic(A2, [1])
    a = FixedPointClass(par, tuple(x(0, 2) * (k + 1) for k in range(3)))
    b = FixedPointClass(par, tuple(x(1, 2) - k for k in range(3)))
    s = x(0, 2) - x(1, 2)
    assert push_pull(a + b) == push_pull(a) + push_pull(b)
    assert push_pull(a.times(s)) == push_pull(a).times(s)
    for w in par.coset_reps:
        single = push_pull(FixedPointClass.point(par, w))
        assert all(c.is_zero() for v, c in zip(par.coset_reps, single.components) if v != w)


def test_sqrt_ctop_class_examples():
    b = borel(A1)
    assert sqrt_ctop_class(b).components == (x(0).scale(2), x(0).scale(2))
    full = parabolic(A2, [1, 2])
    assert sqrt_ctop_class(full).components == (sqrt_ctop(A2),)


def test_beta_class_examples():
    b = borel(A2)
    assert beta_class(b).components == tuple(Polynomial.constant(2, det(w)) for w in b.coset_reps)
    full = parabolic(A2, [1, 2])
    neg = Polynomial.one(2)
    for a in A2.negative_roots:
        neg = neg * A2.as_polynomial(a)
    assert beta_class(full).components == (neg,)
    maximal = parabolic(A2, [1])
    comps = beta_class(maximal).components
    assert len(comps) == 3
    roots = {A2.as_polynomial(a) for a in A2.roots}
    assert all(c in roots for c in comps)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_borel_multiplier_is_signed_sqrt_ctop(n):
    sys = build_type_A(n)
    b = borel(sys)
    s = sqrt_ctop(sys)
    sign = (-1) ** len(sys.positive_roots)
    for w in b.coset_reps:
        assert push_pull_multiplier(b, w) == s.scale(sign * det(w))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_identity_holds_exactly_up_to_the_positive_root_parity(n):
    sys = build_type_A(n)
    sign = (-1) ** len(sys.positive_roots)
    for par in all_parabolics(sys):
        assert identity_sign(par) == sign
        assert verify_antiinvariant_identity(par) is (sign == 1)
        assert verify_image_membership(par)
        assert push_pull(signed_beta_class(par)) == sqrt_ctop_class(par)


def test_well_definedness_uses_every_levi_representative():
    par = parabolic(build_type_A(4), [1, 3])
    for w in par.coset_reps:
        m = push_pull_multiplier(par, w)
        for u in par.levi_weyl_group:
            prod = Polynomial.one(par.system.rank)
            for a in par.tangent_weights:
                prod = prod * par.system.as_polynomial(act(w * u, a, par.system))
            assert prod == m


def test_class_table_and_validation():
    b = borel(A1)
    assert sqrt_ctop_class(b).table() == [("[1,2]", "2*x1"), ("[2,1]", "2*x1")]
    with pytest.raises(ValueError):
        FixedPointClass(b, (Polynomial.one(1),))
