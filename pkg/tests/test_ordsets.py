import random

import pytest
from hypothesis import given, strategies as st

from narrowsys.ordinal import OMEGA, ZERO, finite, ordinal_grid, parse_ordinal as P
from narrowsys.ordsets import InfiniteSetError, OrdinalSet, Tail, order_type


def S(*pieces):
    return OrdinalSet(pieces)


def test_order_type_examples():
    assert order_type(OrdinalSet(), P("w*7")) == ZERO
    assert order_type(OrdinalSet.explicit([0, 1, 4]), 5) == finite(3)
    # {w*n : n < w} is 0 together with the fundamental sequence of w^2
    c = S(0, Tail(P("w^2")))
    assert order_type(c, P("w*3")) == finite(3)
    assert c.order_type() == OMEGA


def test_normalise_merges_and_splits():
    assert S(Tail(OMEGA, 3), Tail(OMEGA, 1)) == S(Tail(OMEGA, 1))
    assert S(1, Tail(OMEGA, 1)) == S(Tail(OMEGA, 0))      # 1 = w[0]
    both = S(Tail(P("w^2")), Tail(P("w*2")))
    assert str(both) == "{ w, w*2[0..], w^(2)[1..] }"
    assert both.order_type() == P("w*2")


def test_point_inside_tail_range():
    s = S(Tail(OMEGA, 0), 3)
    assert 3 in s and 1 in s and 0 not in s
    assert s == S(Tail(OMEGA, 0))


def test_restrict_and_between():
    c = S(0, Tail(OMEGA), OMEGA, Tail(P("w*2")))
    assert c.restrict(5) == OrdinalSet.explicit([0, 1, 2, 3, 4])
    assert c.restrict(OMEGA) == S(0, Tail(OMEGA))
    with pytest.raises(InfiniteSetError):
        c.elements_between(0, P("w+3"))
    assert c.elements_between(2, 5) == [finite(2), finite(3), finite(4)]
    assert c.elements_between(OMEGA, P("w+3")) == [OMEGA, P("w+1"), P("w+2")]
    assert c.order_type_between(OMEGA, P("w+3")) == finite(3)
    assert c.order_type_between(0, P("w*2")) == P("w*2")


def test_min_at_least_and_limits():
    c = S(0, Tail(OMEGA, 2), OMEGA, Tail(P("w*2")))
    assert c.min_at_least(1) == finite(3)
    assert c.min_at_least(OMEGA) == OMEGA
    assert c.min_at_least(P("w*2")) is None
    assert c.limit_points() == (OMEGA, P("w*2"))


def test_club_problems():
    assert S(0, Tail(OMEGA)).is_club_in(OMEGA)
    assert not S(0, Tail(OMEGA)).is_club_in(P("w*2"))
    missing_limit = S(Tail(OMEGA), Tail(P("w*2")))
    assert any("not closed" in p for p in missing_limit.club_problems(P("w*2")))
    assert S(P("w+4")).is_club_in(P("w+5"))
    assert not S(P("w+3")).is_club_in(P("w+5"))
    assert OrdinalSet.explicit([1, 3]).is_closed_bounded()
    assert not S(Tail(OMEGA)).is_closed_bounded()


def test_infinite_iteration_raises():
    with pytest.raises(InfiniteSetError):
        len(S(Tail(OMEGA)))


piece_lists = st.lists(
    st.one_of(
        st.sampled_from(ordinal_grid({1: 3, 0: 4})),
        st.builds(Tail, st.sampled_from([OMEGA, P("w*2"), P("w*3"), P("w^2")]), st.integers(0, 4)),
    ),
    max_size=6,
)


@given(piece_lists, st.randoms(use_true_random=False))
def test_normal_form_ignores_order(pieces, rnd):
    shuffled = list(pieces)
    rnd.shuffle(shuffled)
    assert OrdinalSet(pieces) == OrdinalSet(shuffled)


@given(piece_lists)
def test_membership_matches_pieces(pieces):
    s = OrdinalSet(pieces)
    for x in ordinal_grid({1: 3, 0: 8}):
        want = any(x == p if not isinstance(p, Tail) else p.index_of(x) is not None for p in pieces)
        assert (x in s) == want


@given(piece_lists)
def test_restrict_is_idempotent_and_subset(pieces):
    s = OrdinalSet(pieces)
    r = s.restrict(P("w*2+3"))
    assert r.restrict(P("w*2+3")) == r
    assert r.issubset(s)
    assert r.order_type() == s.order_type(P("w*2+3"))
