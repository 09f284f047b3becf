from math import factorial

import pytest

from gitratio.poly import Polynomial
from gitratio.ratio import (
    census_is_as_expected,
    closed_form_check,
    ctop_in_quotient,
    ctop_root_system_check,
    monomial_m,
    pairing_rule_check,
    pm_n_state_census,
    quotient_ring,
    ratio_for_group,
    ratio_pgl,
    ratio_product,
    vandermonde_check,
    vandermonde_det,
)
from gitratio.rootsys import UnsupportedGroup
from gitratio.stability import Stability


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ratio_is_n_factorial(n):
    rep = ratio_pgl(n)
    assert rep.ratio == factorial(n) == rep.weyl_order
    assert rep.ratio_equals_weyl_order
    assert all(rep.checks.values()), rep.checks
    assert {"vandermonde", "pairing_rule", "stability_census"} <= set(rep.checks)


def test_ratio_out_of_range():
    for n in (1, 7):
        with pytest.raises(ValueError):
            ratio_pgl(n)


def test_product_examples():
    assert ratio_product([2]).ratio == 2
    assert ratio_product([2, 2]).ratio == 4
    assert ratio_product([2, 3]).ratio == 12
    assert ratio_product([2, 2, 3]).ratio == 24
    assert ratio_product([2, 3]).checks == {"multiplicative": True}
    with pytest.raises(ValueError):
        ratio_product([2, 6])


def test_ratio_for_group():
    assert ratio_for_group("A2").ratio == 6
    assert ratio_for_group("A1xA2").ratio == 12
    with pytest.raises(UnsupportedGroup):
        ratio_for_group("C2")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_closed_form(n):
    assert closed_form_check(n)
    c = ctop_in_quotient(n)
    assert c == quotient_ring(n).point_class().scale(factorial(n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pullback_of_root_system_ctop(n):
    assert ctop_root_system_check(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_vandermonde(n):
    assert vandermonde_check(n)


def test_vandermonde_n2_by_hand():
    t1, t2 = Polynomial.var(2, 0), Polynomial.var(2, 1)
    assert vandermonde_det(2) == t2 - t1
    assert (t1 - t2) * (t2 - t1) == -((t2 - t1) ** 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pairing_rule(n):
    assert pairing_rule_check(n)


def test_pairing_rule_n2_by_hand():
    ring = quotient_ring(2)
    m_id, m_swap = monomial_m((1, 2)), monomial_m((2, 1))
    assert m_id == Polynomial.var(2, 1) and m_swap == Polynomial.var(2, 0)
    assert m_id.mul(m_swap, ring.caps) == ring.point_class()
    assert m_id.mul(m_id, ring.caps).is_zero() and m_swap.mul(m_swap, ring.caps).is_zero()


def test_census_examples():
    cen = dict(pm_n_state_census(2))
    assert cen[(1,)].kind is Stability.UNSTABLE
    assert cen[(1, 2)].kind is Stability.STABLE
    cen4 = pm_n_state_census(4)
    assert len(cen4) == 15
    assert not [p for p, c in cen4 if c.kind is Stability.STRICTLY_SEMISTABLE]
    for n in (2, 3, 4, 5):
        assert census_is_as_expected(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pgl_lattice_census_matches(n):
    sl = [(p, c.kind) for p, c in pm_n_state_census(n, "sl")]
    pgl = [(p, c.kind) for p, c in pm_n_state_census(n, "pgl")]
    assert sl == pgl


def test_report_json_is_deterministic():
    a, b = ratio_pgl(3), ratio_pgl(3)
    assert a.to_json() == b.to_json()
    assert "timing_ms" not in a.to_json() and "timing_ms" in a.to_json(timing=True)
