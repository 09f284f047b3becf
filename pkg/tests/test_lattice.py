import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gitratio.lattice import (
    Cocharacter,
    RankMismatch,
    Weight,
    annihilator,
    constant_cocharacter_lattice,
    hermite_rows,
    integer_kernel,
    integer_rank,
    pair,
    primitive,
)


@pytest.mark.parametrize(
    "lam, chi, expected",
    [((1, 0), (3, 5), 3), ((1, 1), (2, -2), 0), ((2, -1, 3), (1, 1, 1), 4)],
)
def test_pair_examples(lam, chi, expected):
    assert pair(Cocharacter(lam), Weight(chi)) == expected


def test_pair_rank_mismatch():
    with pytest.raises(RankMismatch):
        pair(Cocharacter((1, 0)), Weight((1, 2, 3)))


def test_vector_arithmetic_checks_rank():
    with pytest.raises(RankMismatch):
        Weight((1, 2)) + Weight((1, 2, 3))
    assert Weight((1, 2)) - Weight((1, 2)) == Weight((0, 0))
    assert (Weight((1, -2)) * 3).coords == (3, -6)
    assert (-Weight((1, -2))).coords == (-1, 2)


def test_weights_are_immutable():
    w = Weight((1, 2))
    with pytest.raises(AttributeError):
        w.coords = (0, 0)


def test_constant_lattice_examples():
    assert constant_cocharacter_lattice([Weight((1, 0)), Weight((0, 1)), Weight((-1, -1))]) == []
    assert len(constant_cocharacter_lattice([Weight((1, 0))])) == 2
    assert constant_cocharacter_lattice([Weight((1, 0)), Weight((-1, 0))]) == [Cocharacter((0, 1))]


def test_constant_lattice_empty_is_error():
    with pytest.raises(ValueError):
        constant_cocharacter_lattice([])


def test_primitive():
    assert primitive((4, -6, 0)) == (2, -3, 0)
    assert primitive((0, 0)) == (0, 0)


small = st.integers(-6, 6)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=4)))
def test_integer_rank_matches_sympy(rows):
    assert integer_rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=3)))
def test_integer_kernel_is_saturated_basis(rows):
    ncols = len(rows[0])
    basis = integer_kernel(rows, ncols)
    assert len(basis) == ncols - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    if basis:
        # saturated: the gcd of the maximal minors of the basis matrix is 1
        m = sympy.Matrix(basis)
        k = len(basis)
        from itertools import combinations

        minors = [m.extract(list(range(k)), list(cols)).det() for cols in combinations(range(ncols), k)]
        assert sympy.igcd(*[int(x) for x in minors] + [0]) == 1
    assert hermite_rows(basis) == basis


def test_annihilator():
    assert annihilator([Weight((1, 0))], 2) == [Cocharacter((0, 1))]
    assert len(annihilator([Weight((0, 0))], 2)) == 2
