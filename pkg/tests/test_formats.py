import random

import pytest
from hypothesis import given, settings, strategies as st

from narrowsys import formats
from narrowsys.csequence import build_canonical
from narrowsys.derived import FinitePoset, SystemName
from narrowsys.ordinal import finite, parse_ordinal as P
from narrowsys.suites import a5_instance, random_system
from narrowsys.systems import Branch, from_subadditive
from narrowsys.walks import SubadditiveFunction, WalkContext

from test_csequence import indexed_with_thread


def fixed_point(write, read, obj):
    text = write(obj)
    assert write(read(text)) == text
    return text


class TestSets:
    @pytest.mark.parametrize("text", ["{ }", "{ 0, 3 }", "{ w[0..] }", "{ 0, w, w*2[4..], w^(2)[1..] }"])
    def test_round_trip(self, text):
        assert str(formats.parse_set(text)) == text

    @pytest.mark.parametrize("bad", ["0, 3", "{ w[x..] }", "{ q }"])
    def test_errors(self, bad):
        with pytest.raises(formats.FormatError):
            formats.parse_set(bad)


class TestSequences:
    def test_canonical(self):
        text = fixed_point(formats.write_sequence, formats.read_sequence, build_canonical(P("w*4")))
        assert text.splitlines()[0] == "csequence bracket bound=w*4"

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.booleans())
    def test_random_collections(self, seed, planted):
        seq, _, _ = a5_instance(random.Random(seed), planted)
        fixed_point(formats.write_sequence, formats.read_sequence, seq)

    def test_indexed(self):
        seq, _ = indexed_with_thread()
        text = fixed_point(formats.write_sequence, formats.read_sequence, seq)
        assert "i(w*4)=1" in text

    def test_comments_and_errors(self):
        seq = formats.read_sequence("# header comment\ncsequence bracket bound=w lambda=2\nlevel w : { w[0..] }  # c\n")
        assert seq.lambda_bound == 2
        with pytest.raises(formats.FormatError, match="line 2"):
            formats.read_sequence("csequence bracket bound=w\nlevel w { w[0..] }\n")
        with pytest.raises(formats.FormatError):
            formats.read_sequence("csequence square bound=w\n")
        with pytest.raises(formats.FormatError):
            formats.read_sequence("")


class TestSystems:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random(self, seed):
        fixed_point(formats.write_system, formats.read_system, random_system(random.Random(seed)))

    def test_extras(self):
        S = random_system(random.Random(1))
        S.top = (finite(2),)
        S.intended = (1, 3)
        text = fixed_point(formats.write_system, formats.read_system, S)
        assert "top 2" in text and "intended width=1 height=3" in text

    def test_level_count_mismatch(self):
        with pytest.raises(formats.FormatError):
            formats.read_system("system levels=3\nlevel 0 width=1\nrelation R\n")

    def test_branches(self):
        B = [Branch(frozenset({(P("w+1"), 0), (P("w^2"), 1)}), "R"), Branch(frozenset({(finite(0), 0)}), "S")]
        text = fixed_point(formats.write_branches, formats.read_branches, B)
        assert formats.read_branches(text) == B


class TestNamesAndD:
    def test_name(self):
        P2 = FinitePoset.vee()
        N = SystemName((0, 1), {0: 2, 1: 2}, 2, {(1, (finite(0), 1), (finite(1), 0)): {"a", "b"},
                                                 (0, (finite(0), 0), (finite(1), 0)): {"a"}})
        text = formats.write_name(N, P2)
        N2, P3 = formats.read_name(text)
        assert formats.write_name(N2, P3) == text
        assert N2.decided == N.decided and P3.le == P2.le

    def test_dfunc(self):
        ctx = WalkContext.canonical(P("w*3"), P("w"))
        d = SubadditiveFunction.from_walk(ctx, [3, P("w"), P("w+2"), P("w*2")])
        fixed_point(formats.write_dfunc, formats.read_dfunc, d)
        S = from_subadditive(formats.read_dfunc(formats.write_dfunc(d)), 6)
        assert S.edge_count() == from_subadditive(d, 6).edge_count()

    def test_read_any(self):
        assert formats.read_any("# x\nsystem levels=1\nlevel 0 width=1\nrelation R\n")[0] == "system"
        with pytest.raises(formats.FormatError):
            formats.read_any("bogus\n")

    def test_suite_config(self):
        assert formats.read_suite_config("A1\n# skip\nA3\n") == ["A1", "A3"]
        with pytest.raises(formats.FormatError):
            formats.read_suite_config("A1 A2\n")
