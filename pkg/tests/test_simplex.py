from fractions import Fraction

from hypothesis import given, settings, strategies as st

from gitratio.simplex import solve_feasibility


def test_feasible_point_satisfies_system():
    res = solve_feasibility([[1, 1, 1], [1, -1, 0]], [3, 1])
    assert res.feasible
    assert all(x >= 0 for x in res.x)
    assert res.x[0] + res.x[1] + res.x[2] == 3 and res.x[0] - res.x[1] == 1


def test_farkas_certificate_on_infeasible():
    # x >= 0, x1 + x2 = -1 is impossible
    res = solve_feasibility([[1, 1]], [-1])
    assert not res.feasible
    y = res.farkas
    assert y[0] * 1 >= 0 and y[0] * -1 < 0


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda m: st.tuples(
            st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=m, max_size=m),
            st.lists(st.integers(-4, 4), min_size=m, max_size=m),
        )
    )
)
def test_result_is_always_certified(data):
    a, b = data
    res = solve_feasibility(a, b)
    if res.feasible:
        assert all(x >= 0 for x in res.x)
        for row, bi in zip(a, b):
            assert sum(Fraction(c) * x for c, x in zip(row, res.x)) == bi
    else:
        # y^T A >= 0 and y^T b < 0
        y = res.farkas
        for j in range(4):
            assert sum(y[i] * a[i][j] for i in range(len(a))) >= 0
        assert sum(y[i] * b[i] for i in range(len(a))) < 0
