from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank_arrange import lp
from rank_arrange.errors import BudgetExceeded


def test_maximize_textbook():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x, y >= 0  ->  12 at (4, 0)
    res = lp.maximize([3, 2], [[1, 1], [1, 3], [-1, 0], [0, -1]], [4, 6, 0, 0])
    assert res.status == "optimal" and res.value == 12 and res.x == [4, 0]


def test_maximize_unbounded():
    assert lp.maximize([1], [[-1]], [0]).status == "unbounded"


def test_strict_feasibility():
    # 0 < x < 1 is open but nonempty; x < 0 and x > 0 together is empty
    w = lp.strictly_feasible([([-1], 0), ([1], 1)])
    assert w is not None and 0 < w[0] < 1
    assert lp.strictly_feasible([([1], 0), ([-1], 0)]) is None
    # an equality slices the open square on the diagonal
    w = lp.strictly_feasible([([-1, 0], 0), ([0, -1], 0), ([1, 0], 1), ([0, 1], 1)],
                             equalities=[([1, -1], 0)])
    assert w[0] == w[1] and 0 < w[0] < 1


@settings(max_examples=50)
@given(st.lists(st.tuples(st.lists(st.integers(-5, 5), min_size=2, max_size=2), st.integers(-5, 5)),
                min_size=1, max_size=6))
def test_witness_is_strictly_inside(rows):
    w = lp.strictly_feasible(rows, dim=2)
    if w is not None:
        assert all(sum(Fraction(a) * x for a, x in zip(r, w)) < b for r, b in rows)


def test_cone_is_trivial():
    assert lp.cone_is_trivial([[1, 0], [0, 1], [-1, -1]], 2)
    assert not lp.cone_is_trivial([[1, 0], [0, 1]], 2)


def test_lp_limit():
    lp.set_lp_limit(1)
    try:
        lp.maximize([1], [[1]], [1])
        with pytest.raises(BudgetExceeded):
            lp.maximize([1], [[1]], [1])
    finally:
        lp.set_lp_limit(None)
