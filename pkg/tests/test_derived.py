import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from narrowsys.derived import (
    FinitePoset,
    NameError_,
    SystemName,
    branch_transfer_check,
    derive_system,
    interpret,
    relation_label,
    validate_name,
)
from narrowsys.ordinal import finite
from narrowsys.systems import find_cofinal_branch, is_branch, iter_branches, validate_system

LEVELS = (0, 1, 2)


def n(a, b):
    return (finite(a), b)


def chain_edges(b=0, levels=LEVELS):
    return [(n(x, b), n(y, b)) for x, y in combinations(levels, 2)]


def name(decided, levels=LEVELS, width=1, tau=1):
    return SystemName(levels, {a: width for a in levels}, tau, decided)


def random_name(rng, P):
    slots = [(0, n(x, bx), n(y, by)) for x, y in combinations(LEVELS, 2) for bx in range(2) for by in range(2)]
    downs = P.downsets()
    return name({s: rng.choice(downs) for s in slots}, width=2)


class TestPoset:
    def test_chain_and_vee(self):
        P = FinitePoset.chain(3)
        assert P.maximum() == "1" and P.minimal() == ("p0",)
        assert P.problems() == []
        V = FinitePoset.vee()
        assert sorted(m for m, _ in V.maximal_filters()) == ["a", "b"]
        assert V.above("a") == {"a", "1"}

    def test_problems(self):
        P = FinitePoset(("a", "b"), frozenset())
        assert [v.clause for v in P.problems()] == ["poset.maximum"]
        Q = FinitePoset(("a", "b", "c"), frozenset({("a", "b"), ("b", "c")}))
        assert "poset.transitive" in {v.clause for v in Q.problems()}

    def test_downsets(self):
        assert len(FinitePoset.chain(3).downsets()) == 4
        assert len(FinitePoset.vee().downsets()) == 5


class TestValidateName:
    def test_trivial_poset_is_one_system_check(self):
        P = FinitePoset.chain(1)
        N = name({(0, u, v): {"1"} for u, v in chain_edges()})
        rep = validate_name(N, P)
        assert rep.ok
        assert validate_system(interpret(N, P, "1").system).ok

    def test_downward_closure(self):
        P = FinitePoset.chain(2)
        N = name({(0, u, v): {"1"} for u, v in chain_edges()})
        rep = validate_name(N, P)
        w = rep.by_clause("name.downward-closure")[0].witness
        assert w[-2:] == ("1", "p0")
        assert validate_name(N.close_downward(P), P).ok

    def test_top_filter_flagged(self):
        # clause 4 holds at the bottom condition only
        P = FinitePoset.chain(2)
        dec = {(0, u, v): {"p0"} for u, v in chain_edges()}
        dec[(0, n(0, 0), n(1, 0))] = {"p0", "1"}
        rep = validate_name(name(dec), P)
        assert rep.ok
        assert rep.facts["interpretation[p0]"] == "valid"
        assert rep.facts["interpretation[1]"].startswith("invalid 4.connect")

    def test_minimal_filter_failures_are_violations(self):
        P = FinitePoset.vee()
        dec = {(0, u, v): {"a"} for u, v in chain_edges()}
        rep = validate_name(name(dec), P)
        assert "filter[b].4.connect" in rep.clauses() and not any(c.startswith("filter[a]") for c in rep.clauses())

    def test_level_increasing(self):
        P = FinitePoset.chain(1)
        rep = validate_name(name({(0, n(1, 0), n(0, 0)): {"1"}}), P)
        assert "name.level-increasing" in rep.clauses()


class TestDerive:
    def test_trivial_poset(self):
        P = FinitePoset.chain(1)
        N = name({(0, u, v): {"1"} for u, v in chain_edges()})
        D = derive_system(N, P)
        assert D.relations[relation_label(0, "1")] == interpret(N, P, "1").system.relations["0"]

    def test_two_chain(self):
        P = FinitePoset.chain(2)
        N = name({(0, u, v): {"p0"} for u, v in chain_edges()})
        D = derive_system(N, P)
        assert D.relations["0@p0"] == frozenset(chain_edges())
        assert D.relations["0@1"] == frozenset()
        rep = branch_transfer_check(N, P)
        assert rep.ok and rep.checked == 3

    def test_rejects_invalid(self):
        P = FinitePoset.chain(2)
        with pytest.raises(NameError_):
            derive_system(name({(0, n(0, 0), n(1, 0)): {"1"}}), P)

    def test_branchless_transfers(self):
        P = FinitePoset.vee()
        dec = {(0, n(0, 0), n(1, 0)): {"a"}, (0, n(1, 0), n(2, 0)): {"b"}}
        rep = branch_transfer_check(name(dec), P)
        assert rep.interpretations_branchless and rep.derived_branchless and rep.ok

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10_000), st.sampled_from([1, 2, 3]), st.booleans())
    def test_random_transfer(self, seed, size, vee):
        P = FinitePoset.vee() if vee and size == 3 else FinitePoset.chain(size)
        N = random_name(random.Random(seed), P)
        rep = branch_transfer_check(N, P)
        assert rep.ok, rep.render()
        D = derive_system(N, P)
        assert D.edge_count() == sum(len(ps) for ps in N.decided.values())

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_read_back_over_trivial_poset(self, seed):
        P = FinitePoset.chain(2)
        N = random_name(random.Random(seed), P)
        D = derive_system(N, P)
        back = SystemName(D.levels, D.width_at, 1,
                          {(0, u, v): {"1"} for rel in D.relations for u, v in D.relations[rel]})
        assert not validate_name(back, FinitePoset.chain(1)).by_clause("name.downward-closure")

    def test_interpretation_branch_does_not_force_derived(self):
        # each filter sees the chain, but no single condition decides all of it
        P = FinitePoset.vee()
        dec = {(0, u, v): {"a", "b"} for u, v in chain_edges()}
        dec[(0, n(0, 0), n(2, 0))] = {"a"}
        dec[(0, n(0, 0), n(1, 0))] = {"b"}
        N = name(dec)
        assert all(find_cofinal_branch(interpret(N, P, m).system, 2 / 3).branch for m in "ab")
        assert branch_transfer_check(N, P).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_pair_check_matches_branch_enumeration(seed, vee):
    P = FinitePoset.vee() if vee else FinitePoset.chain(3)
    rng = random.Random(seed)
    N = random_name(rng, P)
    # break downward closure on purpose so that failures can occur
    for k in list(N.decided)[:3]:
        N.decided[k] = frozenset({"1"})
    D = derive_system(N, P, check=False)
    want = True
    for m, G in P.maximal_filters():
        S = interpret(N, P, m).system
        for p in G:
            want &= all(is_branch(S, "0", b) for b in iter_branches(D, relation_label(0, p)))
    got = branch_transfer_check(N, P, check=False)
    assert (not got.failures) == want
