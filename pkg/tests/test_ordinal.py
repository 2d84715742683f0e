from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from narrowsys.ordinal import (
    OMEGA,
    ZERO,
    Kind,
    NonCanonicalError,
    Ordinal,
    OrdinalSyntaxError,
    add,
    classify,
    compare,
    divides,
    finite,
    fundamental_index,
    fundamental_sequence,
    multiply,
    omega_power,
    ordinal_grid,
    parse_ordinal as P,
    predecessor,
)


def below_w3(max_coef=3):
    """Every ordinal w^2*a + w*b + c with coefficients up to ``max_coef``."""
    return ordinal_grid({2: max_coef, 1: max_coef, 0: max_coef})


# Finite terms up to w^3 with small coefficients, plus a few towers.
small_ordinals = st.lists(
    st.tuples(st.integers(0, 3), st.integers(1, 4)), max_size=4, unique_by=lambda t: t[0]
).map(lambda ts: Ordinal(tuple((finite(e), c) for e, c in sorted(ts, reverse=True))))
towers = st.sampled_from([P("w^w"), P("w^(w+1)*2+w"), P("w^(w^2)")])
ordinals = st.one_of(small_ordinals, small_ordinals, towers)


class TestParse:
    def test_zero(self):
        assert P("0") == ZERO and P("0").is_zero

    def test_terms(self):
        a = P("w^(2)*3+w*1+5")
        assert [(str(e), c) for e, c in a.terms] == [("2", 3), ("1", 1), ("0", 5)]
        assert str(a) == "w^(2)*3+w+5"

    def test_noncanonical(self):
        with pytest.raises(NonCanonicalError):
            P("w*1+w^(2)*1")
        with pytest.raises(NonCanonicalError):
            P("w*0")

    @pytest.mark.parametrize("bad", ["", "w^", "x", "w*", "1+", "w^(2", "2w"])
    def test_syntax(self, bad):
        with pytest.raises(OrdinalSyntaxError):
            P(bad)

    def test_sugar(self):
        assert P("w^2") == P("w^(2)") and P("w^w") == omega_power(OMEGA)
        assert str(P("w*1")) == "w"

    def test_round_trip_exhaustive(self):
        for a in below_w3():
            assert P(str(a)) == a
            assert str(P(str(a))) == str(a)


class TestCompare:
    @pytest.mark.parametrize("a,b,want", [("w", "w+1", "less"), ("w^2", "w*5", "greater"),
                                          ("w+3", "w+3", "equal")])
    def test_examples(self, a, b, want):
        assert compare(P(a), P(b)) == want

    @given(ordinals, ordinals)
    def test_total(self, a, b):
        assert [a < b, a == b, a > b].count(True) == 1
        assert (compare(a, b) == "equal") == (a.terms == b.terms)


class TestArithmetic:
    def test_add_examples(self):
        assert add(1, OMEGA) == OMEGA
        assert str(add(OMEGA, 1)) == "w+1"
        assert add(P("w*2+3"), P("w*3")) == P("w*5")
        assert add(P("w+1"), OMEGA) == P("w*2")

    def test_mul_examples(self):
        a = P("w^2*2+w+7")
        assert multiply(a, 1) == a and multiply(a, 0) == ZERO
        assert multiply(P("w*2"), OMEGA) == P("w^2")
        assert multiply(2, OMEGA) == OMEGA
        assert multiply(OMEGA, 2) == P("w*2")

    def test_add_associative_exhaustive(self):
        pts = ordinal_grid({2: 2, 1: 2, 0: 2})
        for a, b, c in product(pts, repeat=3):
            assert add(add(a, b), c) == add(a, add(b, c))
        for a in pts:
            assert add(a, 0) == a == add(0, a)

    @given(ordinals, ordinals)
    def test_add_strictly_above(self, a, b):
        if not b.is_zero:
            assert compare(a, add(a, b)) == "less"
        assert add(a, b) >= b

    @given(ordinals, ordinals, ordinals)
    @settings(max_examples=150)
    def test_left_distributive(self, a, b, c):
        assert multiply(a, add(b, c)) == add(multiply(a, b), multiply(a, c))

    @given(ordinals, ordinals, ordinals)
    @settings(max_examples=100)
    def test_mul_associative(self, a, b, c):
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


class TestDivides:
    def test_examples(self):
        assert divides(OMEGA, 0)
        assert divides(OMEGA, P("w*3"))
        assert not divides(OMEGA, P("w+1"))
        with pytest.raises(ZeroDivisionError):
            divides(0, 5)

    def test_against_search(self):
        # b = k * g for some g <= b, checked by brute force below w^2*3
        pts = ordinal_grid({2: 2, 1: 4, 0: 4})
        for k in [finite(1), finite(2), finite(3), OMEGA, P("w+1"), P("w*2"), P("w^2")]:
            for b in pts:
                want = any(multiply(k, g) == b for g in pts if g <= b)
                assert divides(k, b) == want, (k, b)

    def test_omega_divides_iff_no_finite_term(self):
        for b in ordinal_grid({2: 2, 1: 5, 0: 5}):
            assert divides(OMEGA, b) == (b.is_zero or b.finite_part == 0)

    @given(ordinals, ordinals)
    def test_products_divisible(self, k, g):
        if not k.is_zero:
            assert divides(k, multiply(k, g))


class TestStructure:
    def test_classify(self):
        assert classify(0) is Kind.ZERO
        assert classify(P("w+5")) is Kind.SUCCESSOR
        assert classify(P("w^2+w")) is Kind.LIMIT

    def test_predecessor(self):
        assert predecessor(P("w+5")) == P("w+4")
        with pytest.raises(ValueError):
            predecessor(OMEGA)

    @pytest.mark.parametrize("a,n,want", [("w", 3, "4"), ("w^2", 1, "w*2"), ("w^2+w", 2, "w^(2)+3"),
                                          ("w^w", 2, "w^(3)"), ("w^(w+1)", 2, "w^(w)*3")])
    def test_fundamental_examples(self, a, n, want):
        assert str(fundamental_sequence(P(a), n)) == want

    def test_fundamental_not_limit(self):
        with pytest.raises(ValueError):
            fundamental_sequence(P("w+1"), 0)

    def test_fundamental_increasing(self):
        for a in below_w3():
            if classify(a) is not Kind.LIMIT:
                continue
            prev = ZERO
            for n in range(50):
                x = fundamental_sequence(a, n)
                assert prev <= x < a if n == 0 else prev < x < a
                prev = x

    @given(st.sampled_from([P("w"), P("w*3"), P("w^2"), P("w^2*2+w"), P("w^w")]), st.integers(0, 40))
    def test_fundamental_index_inverse(self, a, n):
        x = fundamental_sequence(a, n)
        assert fundamental_index(a, x) == (n, True)
        y = add(x, 1)
        assert fundamental_index(a, y) == (n + 1, fundamental_sequence(a, n + 1) == y)

    def test_grid_size(self):
        assert len(ordinal_grid({2: 2, 1: 5, 0: 5})) == 108
        assert len(ordinal_grid({1: 19, 0: 5})) == 120
