from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linsets.directions import (
    all_additive_tables, check_additive, check_dir_theorem, dir_set, direction_trichotomy,
    function_tower, line_profile, pairwise_directions,
)
from linsets.errors import HypothesisViolated, NotAdditive
from linsets.field_tower import make_tower
from linsets.fq_linalg import all_subspaces, random_subspace, scalar_span_over

SMALL = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)]


def _brute_ns(T, table):
    """N and s from the definitions: pairwise slopes, and line meeting sizes."""
    Q = T.order
    slopes = {T.div(T.sub(table[x], table[y]), T.sub(x, y))
              for x in range(Q) for y in range(Q) if x != y}
    sizes = Counter()
    for m in slopes:
        for b in range(Q):
            c = sum(1 for x in range(Q) if table[x] == T.add(T.mul(m, x), b))
            if c:
                sizes[c] += 1
    s = T.p
    while s <= Q and all(c % s == 0 for c in sizes):
        s *= T.p
    return len(slopes), s // T.p


@pytest.mark.parametrize("ph, expected", [
    ((2, 2), {("case2", 3): 12, ("case3", 1): 4}),
    ((2, 3), {("case2", 5): 392, ("case2", 7): 112, ("case3", 1): 8}),
    ((3, 2), {("case2", 4): 72, ("case3", 1): 9}),
])
def test_trichotomy_counts(ph, expected):
    T = function_tower(*ph)
    got = Counter()
    for table in all_additive_tables(T):
        res = direction_trichotomy(T, table)
        assert res.status == "pass"
        got[(res.case, res.N)] += 1
    assert got == expected


@pytest.mark.parametrize("ph", [(2, 2), (2, 3), (3, 2)])
def test_trichotomy_matches_definition(ph):
    T = function_tower(*ph)
    for table in all_additive_tables(T):
        res = direction_trichotomy(T, table)
        assert (res.N, res.s) == _brute_ns(T, table)


@pytest.mark.parametrize("ph", [(2, 2), (2, 3), (3, 2)])
def test_identity(ph):
    T = function_tower(*ph)
    res = direction_trichotomy(T, list(range(T.order)))
    assert (res.N, res.s) == (1, T.order)
    assert res.case == "case3"


def test_not_additive():
    T = function_tower(2, 2)
    with pytest.raises(NotAdditive):
        check_additive(T, [0, 1, 2, 2])
    with pytest.raises(NotAdditive):
        check_additive(T, [1, 0, 2, 3])
    # on F_4 every bijection fixing 0 is additive; on F_8 swapping 3 and 4 is not
    check_additive(T, [0, 2, 3, 1])
    with pytest.raises(NotAdditive):
        check_additive(function_tower(2, 3), [0, 1, 2, 4, 3, 5, 6, 7])


def test_dir_routes_agree_exhaustive(f4):
    for m in range(1, 4):
        for U in all_subspaces(f4, 2, m):
            assert dir_set(U).points == pairwise_directions(U)


def test_dir_theorem_exhaustive(f4, f9):
    stats = Counter()
    for T in (f4, f9):
        for U in all_subspaces(T, 2, 2):
            stats[check_dir_theorem(U, "a").status] += 1
            stats[check_dir_theorem(U, "b").status] += 1
    assert stats["fail"] == 0 and stats["pass"] > 0
    with pytest.raises(HypothesisViolated):
        check_dir_theorem(random_subspace(f4, 2, 1, seed=0), "a")
    with pytest.raises(HypothesisViolated):
        check_dir_theorem(random_subspace(make_tower(2, 1, 3), 2, 3, seed=0), "b")


def test_ideal_points(f4):
    D = dir_set(random_subspace(f4, 3, 2, seed=3))
    assert all(P[0] == 0 and len(P) == 4 for P in D.ideal_points)


@st.composite
def subspaces(draw):
    T = make_tower(*draw(st.sampled_from(SMALL)))
    r = draw(st.integers(2, 3))
    m = draw(st.integers(1, min(r * T.n, 6)))
    return random_subspace(T, r, m, draw(st.integers(0, 2**20)))


@given(subspaces())
def test_line_profile_counts_vectors(U):
    # each direction line through 0 carries q^w - 1 nonzero vectors of U
    q = U.tower.q
    prof = line_profile(U)
    assert sum(c * (q**w - 1) for w, c in prof.items()) == q**U.fq_dim - 1


@given(subspaces())
def test_directions_grow_under_span(U):
    for d in U.tower.divisors:
        assert dir_set(U).points <= dir_set(scalar_span_over(U, d)).points
