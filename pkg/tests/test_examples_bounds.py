from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linsets.errors import HypothesisViolated, SizeMismatch
from linsets.examples_bounds import (
    check_example_new, check_lemma_nw, check_size_bounds, example_new, lines_through,
    remark_example, theta_identity, trace_zero,
)
from linsets.field_tower import make_tower, tower_for
from linsets.fq_linalg import all_subspaces, random_subspace, span
from linsets.linset_core import linear_set, num_points


@pytest.mark.parametrize("q", [2, 3])
def test_trace_zero_size(q):
    T = tower_for(q, 6)
    assert len(trace_zero(T, 3)) == q**2
    assert len(trace_zero(T, 1)) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_remark_example(q):
    U = remark_example(q)
    L = linear_set(U)
    assert U.fq_dim == 5
    assert L.min_weight() == 2
    assert L.spectrum()[3] == 1
    assert len(L) == q**3 + 1


def test_example_new_q7():
    ex = example_new(7, 1, seed=0)
    res = check_example_new(ex)
    assert res.status == "pass", res.details
    assert res.details["size"] == 7**5 + 7**3 + 1 == 17151
    # the only secant sizes are q^2 + 1 and q^3 + 1
    assert res.details["secant_sizes"] == [50, 344]


def test_example_new_needs_large_q():
    with pytest.raises(HypothesisViolated):
        example_new(5, 1)


def test_lemma_nw():
    T = tower_for(4, 4)
    W = span(T, 2, [(1, 0), (0, 1)], 2)
    assert len(linear_set(W)) == 4**2 + 1
    res = check_lemma_nw(W, 2)
    assert res.status == "pass" and res.details["d"] == 2
    with pytest.raises(SizeMismatch):
        check_lemma_nw(W, 1)
    small = span(tower_for(2, 4), 2, [(1, 0), (0, 1)], 2)
    assert check_lemma_nw(small, 2).status == "hypothesis_unmet"


def test_lines_through_count(f4):
    P = (0, 1, 2)
    assert len(list(lines_through(f4, 3, P))) == num_points(f4, 2)


def test_size_bounds_lines(f4):
    stats, tight = Counter(), 0
    for U in all_subspaces(f4, 2, 2):
        res = check_size_bounds(U)
        stats[res.status] += 1
        tight += bool(res.details.get("tight"))
    # the 30 sublines have exactly q + 1 = 3 points; the 5 F_4-points have no weight-1 point
    assert stats == {"pass": 30, "hypothesis_unmet": 5}
    assert tight == 30


def test_size_bounds_planes(f4):
    stats = Counter()
    for m in (3, 4):
        for U in all_subspaces(f4, 3, m):
            res = check_size_bounds(U)
            stats[(m, res.status)] += 1
            if "identity" in res.details:
                assert res.details["identity"]
    assert stats == {(3, "pass"): 1080, (3, "hypothesis_unmet"): 315,
                     (4, "pass"): 630, (4, "hypothesis_unmet"): 21}


@st.composite
def pivoted(draw):
    pdn = draw(st.sampled_from([(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)]))
    T = make_tower(*pdn)
    m = draw(st.integers(1, 2 * T.n))
    U = random_subspace(T, 3, m, draw(st.integers(0, 2**20)))
    ones = [P for P, w in linear_set(U).weights.items() if w == 1]
    return U, ones


@given(pivoted())
def test_theta_identity_any_rank(Uo):
    U, ones = Uo
    for P in ones[:3]:
        lhs, rhs = theta_identity(U, P)
        assert lhs == rhs
