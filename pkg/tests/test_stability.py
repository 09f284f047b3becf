import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from gitratio.lattice import Cocharacter, RankMismatch, Weight, pair
from gitratio.oracle import box_bound, brute_force_classify
from gitratio.stability import (
    Stability,
    StateSet,
    classify,
    contains_zero_hull,
    contains_zero_interior,
    hull_coefficients,
    interior_by_facet_enumeration,
    polystable_face,
    polystable_stabilizer,
    stabilizer_rank,
)

SIMPLEX = StateSet.of((1, 0), (0, 1), (-1, -1))


def test_stateset_semantics():
    s = StateSet.of((1, 0), (1, 0), (0, 1))
    assert len(s) == 2
    assert s == StateSet.of((0, 1), (1, 0))
    assert StateSet.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        StateSet(2, [])
    with pytest.raises(RankMismatch):
        StateSet(2, [(1, 0), (1, 0, 0)])


def test_hull_examples():
    assert contains_zero_hull(SIMPLEX) == (True, None)
    inside, cert = contains_zero_hull(StateSet.of((1, 0), (2, 0)))
    assert not inside and cert == Cocharacter((1, 0))
    assert contains_zero_hull(StateSet.of((1, 0), (-1, 0)))[0]


def test_interior_examples():
    assert contains_zero_interior(SIMPLEX) == (True, None)
    inside, cert = contains_zero_interior(StateSet.of((1, 0), (-1, 0)))
    assert not inside and cert == Cocharacter((0, 1))
    inside, cert = contains_zero_interior(StateSet.of((0, 0)))
    assert not inside and not cert.is_zero()


def test_classify_examples():
    assert classify(SIMPLEX).kind is Stability.STABLE
    assert classify(SIMPLEX).certificate is None
    assert classify(StateSet.of((1, 0), (2, 0))).kind is Stability.UNSTABLE
    assert classify(StateSet.of((1, 0), (-1, 0))).kind is Stability.STRICTLY_SEMISTABLE


def test_stabilizer_rank_examples():
    assert stabilizer_rank(SIMPLEX) == 0
    assert stabilizer_rank(StateSet.of((3, 1))) == 2
    assert stabilizer_rank(StateSet.of((1, 0), (-1, 0))) == 1


def test_polystable_face_of_non_closed_orbit():
    # semistable with trivial stabilizer, degenerating to the segment
    s = StateSet.of((1, 0), (-1, 0), (0, 1))
    assert classify(s).kind is Stability.STRICTLY_SEMISTABLE
    assert stabilizer_rank(s) == 0
    assert polystable_face(s) == StateSet.of((1, 0), (-1, 0))
    assert polystable_stabilizer(s) == [Cocharacter((0, 1))]
    assert polystable_face(StateSet.of((1, 0))) is None


def states(rank_max=3, size_max=6, coord=5):
    return st.integers(1, rank_max).flatmap(
        lambda r: st.lists(
            st.tuples(*[st.integers(-coord, coord)] * r), min_size=1, max_size=size_max
        ).map(lambda ws: StateSet(r, ws))
    )


def check_certificate(s: StateSet):
    cl = classify(s)
    vals = None if cl.certificate is None else [pair(cl.certificate, w) for w in s]
    if cl.kind is Stability.UNSTABLE:
        assert min(vals) > 0
    elif cl.kind is Stability.STRICTLY_SEMISTABLE:
        assert not cl.certificate.is_zero()
        assert min(vals) >= 0 and 0 in vals
    else:
        assert cl.certificate is None
    return cl


@settings(max_examples=300, deadline=None)
@given(states())
def test_certificates_satisfy_contract(s):
    check_certificate(s)


@settings(max_examples=300, deadline=None)
@given(states())
def test_hull_coefficients_are_a_convex_zero_combination(s):
    coeffs = hull_coefficients(s)
    inside = contains_zero_hull(s)[0]
    assert (coeffs is not None) == inside
    if coeffs:
        assert all(c >= 0 for c in coeffs.values()) and sum(coeffs.values()) == 1
        for k in range(s.rank):
            assert sum(c * w[k] for w, c in coeffs.items()) == 0


@settings(max_examples=300, deadline=None)
@given(states())
def test_lp_and_facet_enumeration_agree(s):
    assert contains_zero_interior(s)[0] == interior_by_facet_enumeration(s)


@settings(max_examples=300, deadline=None)
@given(states(rank_max=2))
def test_agrees_with_brute_force_oracle(s):
    assert classify(s).kind is brute_force_classify(s)


@settings(max_examples=200, deadline=None)
@given(states(), st.integers(1, 6))
def test_scaling_invariance(s, k):
    assert classify(s.scaled(k)).kind is classify(s).kind


@settings(max_examples=200, deadline=None)
@given(states())
def test_unimodular_change_of_basis(s):
    # shear (x, y, ...) -> (x + y, y, ...) preserves the classification
    assume(s.rank >= 2)
    sheared = StateSet(s.rank, [(w[0] + w[1],) + w.coords[1:] for w in s])
    assert classify(sheared).kind is classify(s).kind


@settings(max_examples=200, deadline=None)
@given(states())
def test_semistable_iff_polystable_face_exists(s):
    cl = classify(s)
    face = polystable_face(s)
    assert (face is None) == (cl.kind is Stability.UNSTABLE)
    if face is not None:
        rank = len(polystable_stabilizer(s))
        assert (rank > 0) == (cl.kind is Stability.STRICTLY_SEMISTABLE)


def test_oracle_box_and_rank_limit():
    assert box_bound(StateSet.of((0, 0))) == 1
    assert box_bound(StateSet.of((3, -1), (0, 2))) == 6
    with pytest.raises(ValueError):
        brute_force_classify(StateSet.of((1, 0, 0)))


def test_oracle_catches_a_steep_cone():
    # 5b < a < 6b: the smallest separating functional is (11, 2)
    s = StateSet.of((1, -5), (-1, 6))
    assert brute_force_classify(s) is classify(s).kind is Stability.UNSTABLE
    assert min(pair(classify(s).certificate, w) for w in s) > 0
