from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from narrowsys.csequence import CSequence, build_canonical
from narrowsys.oracles import naive_lambda, naive_rho
from narrowsys.ordinal import OMEGA, ZERO, finite, ordinal_grid, parse_ordinal as P
from narrowsys.ordsets import OrdinalSet, Tail
from narrowsys.walks import (
    SubadditiveFunction,
    WalkContext,
    WalkError,
    check_subadditivity,
    check_unbounded,
    lambda_kappa,
    rho_kappa,
    rho_table,
)

TOP = P("w^2*2")
GRID = ordinal_grid({2: 1, 1: 4, 0: 4})


@pytest.fixture(scope="module")
def ctx():
    return WalkContext.canonical(TOP, OMEGA)


def planted_ctx():
    """C_w starts late while C_(w*2) still contains every natural number."""
    base = build_canonical(P("w*3"))
    assign = {OMEGA: OrdinalSet([Tail(OMEGA, 10)]),
              P("w*2"): OrdinalSet([0, Tail(OMEGA), OMEGA, Tail(P("w*2"))])}
    return WalkContext(CSequence(P("w*3"), assign, rule=base.rule), OMEGA)


class TestLambda:
    def test_empty_max(self):
        C = CSequence(OMEGA, {OMEGA: OrdinalSet([Tail(OMEGA, 2)])})
        assert lambda_kappa(WalkContext(C, OMEGA), 2, OMEGA) == ZERO

    def test_successor(self, ctx):
        for a in GRID[:40]:
            assert lambda_kappa(ctx, a, a + 1) == a

    def test_canonical_omega(self, ctx):
        assert lambda_kappa(ctx, 5, OMEGA) == ZERO

    def test_order(self, ctx):
        with pytest.raises(WalkError):
            lambda_kappa(ctx, OMEGA, OMEGA)

    def test_finite_kappa_in_tail(self):
        with pytest.raises(WalkError):
            # no largest entry of C_(w*2) below w has order type divisible by 2
            C = CSequence(P("w*2"), {P("w*2"): OrdinalSet([Tail(OMEGA), Tail(P("w*2"), 3)])})
            lambda_kappa(WalkContext(C, 2), OMEGA, P("w*2"))

    def test_member_and_below(self, ctx):
        for a, b in combinations(GRID, 2):
            lam = lambda_kappa(ctx, a, b)
            assert lam <= a
            assert lam.is_zero or lam in ctx.C.club(b)
            assert lam == naive_lambda(a, b, OMEGA)


class TestRho:
    def test_examples(self, ctx):
        assert rho_kappa(ctx, OMEGA, OMEGA) == ZERO
        assert rho_kappa(ctx, P("w+3"), P("w+4")) == ZERO
        assert rho_kappa(ctx, 5, OMEGA) == finite(5)

    def test_order(self, ctx):
        with pytest.raises(WalkError):
            rho_kappa(ctx, OMEGA, 5)

    def test_matches_naive_and_is_finite(self, ctx):
        for a, b in combinations(GRID, 2):
            v = rho_kappa(ctx, a, b)
            assert v.is_finite
            assert v == naive_rho(a, b, OMEGA), (a, b)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(GRID), st.sampled_from(GRID))
    def test_fresh_cache_agrees(self, a, b):
        a, b = min(a, b), max(a, b)
        c1 = WalkContext.canonical(TOP, OMEGA)
        first = rho_kappa(c1, a, b)
        assert rho_kappa(c1.fresh(), a, b) == first == rho_kappa(c1, a, b)

    def test_larger_kappa(self):
        c = WalkContext.canonical(TOP, P("w^2"))
        for a, b in combinations(GRID[::3], 2):
            assert rho_kappa(c, a, b) == naive_rho(a, b, P("w^2"))


class TestSubadditivity:
    def test_single_point(self, ctx):
        assert check_subadditivity(ctx, [OMEGA]) == []

    def test_successor_block(self, ctx):
        assert check_subadditivity(ctx, [P(f"w+{i}") for i in range(1, 7)]) == []

    def test_canonical_clean(self, ctx):
        assert check_subadditivity(ctx, ordinal_grid({1: 5, 0: 4})) == []

    def test_planted_witness(self):
        c = planted_ctx()
        bad = check_subadditivity(c, [5, OMEGA, P("w*2")])
        assert [v.render() for v in bad] == ["violation prop1 5 w w*2 : 0 5 0"]
        a, b, g = bad[0].triple
        fresh = c.fresh()
        assert rho_kappa(fresh, a, g) > max(rho_kappa(fresh, a, b), rho_kappa(fresh, b, g))

    def test_from_walk_triangle(self):
        c = planted_ctx()
        d = SubadditiveFunction.from_walk(c, [3, 5, OMEGA, P("w*2")])
        assert {t for _, t in d.triangle_failures()} == {v.triple for v in check_subadditivity(c, d.domain)}


class TestUnbounded:
    def test_constant(self):
        pts = [1, 2, 3, 4]
        d = SubadditiveFunction(pts, OMEGA, {(a, b): 7 for a, b in combinations(pts, 2)})
        rep = check_unbounded(d)
        assert rep.sup_observed == finite(7) and len(rep.attained_pairs) == 6

    def test_pair(self):
        d = SubadditiveFunction([1, 2], OMEGA, {(2, 1): 4})
        assert check_unbounded(d).sup_observed == finite(4)
        with pytest.raises(ValueError):
            check_unbounded(d, [1])

    def test_walk_on_limits(self, ctx):
        pts = [P(f"w*{n + 1}") for n in range(10)]
        d = SubadditiveFunction.from_walk(ctx, pts)
        want = max(naive_rho(a, b, OMEGA) for a, b in combinations(pts, 2))
        assert check_unbounded(d).sup_observed == want
        assert d.problems() == []

    def test_problems(self):
        d = SubadditiveFunction([1, 2, 3], finite(3), {(1, 2): 5, (1, 3): 0})
        assert len(d.problems()) == 2


def test_table_order(ctx):
    lines = rho_table(ctx, [OMEGA, 3, 5]).splitlines()
    assert lines == ["rho 3 5 = 0", "rho 3 w = 3", "rho 5 w = 5"]
