import json
import subprocess
import sys

import pytest

from narrowsys import formats
from narrowsys.cli import run
from narrowsys.derived import FinitePoset, SystemName
from narrowsys.ordinal import finite
from narrowsys.systems import Branch, System


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def chain_file(tmp_path):
    S = System([0, 1, 2], {a: 1 for a in range(3)},
               {"R": {((0, 0), (1, 0)), ((0, 0), (2, 0)), ((1, 0), (2, 0))}})
    p = tmp_path / "chain.sys"
    p.write_text(formats.write_system(S))
    return p


class TestOrd:
    @pytest.mark.parametrize("argv,want", [
        (("add", "w+1", "w"), "w*2"),
        (("mul", "w", "2"), "w*2"),
        (("cmp", "w^2", "w*5"), "greater"),
        (("div", "w", "w*3"), "true"),
        (("fund", "w^2", "1"), "w*2"),
    ])
    def test_ops(self, capsys, argv, want):
        code, out, _ = call(capsys, "ord", *argv)
        assert code == 0 and out == want + "\n"

    def test_bad_ordinal(self, capsys):
        code, out, err = call(capsys, "ord", "add", "w+", "1")
        assert code == 2 and out == "" and err.startswith("error:")

    def test_unknown_flag(self, capsys):
        code, _, err = call(capsys, "ord", "add", "1", "2", "--bogus")
        assert code == 2 and "--bogus" in err


class TestWalk:
    def test_rho(self, capsys):
        assert call(capsys, "walk", "rho", "--c", "canonical", "--kappa", "w", "--alpha", "5", "--beta", "w")[1] == "5\n"

    def test_lambda(self, capsys):
        assert call(capsys, "walk", "lambda", "--alpha", "5", "--beta", "w")[1] == "0\n"

    def test_subadd(self, capsys):
        code, out, _ = call(capsys, "walk", "subadd", "--grid", "1:3,0:3")
        assert code == 0 and out.startswith("subadditivity triples=")

    def test_table_json(self, capsys):
        code, out, _ = call(capsys, "walk", "table", "--grid", "0:3", "--format", "json")
        doc = json.loads(out)
        assert doc["lines"][0] == "rho 0 1 = 0" and doc["exit"] == 0

    def test_explicit_file(self, capsys, tmp_path):
        f = tmp_path / "c.seq"
        f.write_text("csequence explicit bound=w\nlevel w : { 0, w[0..] }\n")
        assert call(capsys, "walk", "rho", "--c", str(f), "--alpha", "5", "--beta", "w")[1] == "5\n"


class TestCseq:
    def test_build_validate_thread(self, capsys, tmp_path):
        code, out, _ = call(capsys, "cseq", "build", "--bound", "w*3")
        f = tmp_path / "c.seq"
        f.write_text(out)
        assert call(capsys, "cseq", "validate", str(f))[0] == 0
        code, out, _ = call(capsys, "cseq", "thread", str(f))
        assert code == 0 and out.startswith("thread found")
        assert call(capsys, "cseq", "thread", str(f), "--cap", "0")[0] == 1

    def test_build_too_large(self, capsys):
        assert call(capsys, "cseq", "build", "--bound", "w^2*2")[0] == 2

    def test_validation_failure(self, capsys, tmp_path):
        f = tmp_path / "bad.seq"
        f.write_text("csequence bracket bound=w*2\nlevel w : { w[3..] }\n"
                     "level w*2 : { 0, w[0..], w, w*2[0..] }\n")
        code, out, _ = call(capsys, "cseq", "validate", str(f))
        assert code == 1 and "2.coherence" in out


class TestSystem:
    def test_missing_file(self, capsys):
        assert call(capsys, "system", "validate", "missing-file")[0] == 2

    def test_validate_branch_ramsey(self, capsys, chain_file):
        assert call(capsys, "system", "validate", str(chain_file), "--strong")[0] == 0
        code, out, _ = call(capsys, "system", "branch", str(chain_file))
        assert out.startswith("cofinal found")
        code, out, _ = call(capsys, "system", "ramsey", str(chain_file))
        assert code == 0 and "branch R (0,0) (1,0)" in out

    def test_full(self, capsys, chain_file, tmp_path):
        b = tmp_path / "b.txt"
        b.write_text(formats.write_branches([Branch(frozenset({(finite(0), 0)}), "R")]))
        code, out, _ = call(capsys, "system", "full", str(chain_file), str(b))
        assert code == 1 and out.startswith("full no level 1")

    def test_reduce_and_tree(self, capsys, chain_file):
        code, out, _ = call(capsys, "system", "reduce", str(chain_file), "--map")
        assert "map (0,0) = R (0,0)" in out
        code, out, _ = call(capsys, "system", "from-tree", str(chain_file))
        assert code == 0 and out.startswith("admits yes")

    def test_from_d(self, capsys, tmp_path):
        f = tmp_path / "d.txt"
        f.write_text("dfunc kappa=2\nd 0 1 = 1\nd 0 2 = 1\nd 1 2 = 1\n")
        code, out, _ = call(capsys, "system", "from-d", str(f))
        assert code == 0 and "edge R (0,1) -> (1,1)" in out


class TestDerive:
    def test_close_downward(self, capsys, tmp_path):
        N = SystemName((0, 1), {0: 1, 1: 1}, 1, {(0, (finite(0), 0), (finite(1), 0)): {"1"}})
        f = tmp_path / "n.txt"
        f.write_text(formats.write_name(N, FinitePoset.chain(2)))
        assert call(capsys, "derive", "validate", str(f))[0] == 1
        assert call(capsys, "derive", "validate", str(f), "--close-downward")[0] == 0
        code, out, _ = call(capsys, "derive", "transfer", str(f), "--close-downward")
        assert code == 0 and out.startswith("transfer pass")
        code, out, _ = call(capsys, "derive", "build", str(f))
        assert code == 1 and out.startswith("invalid name")


class TestSuite:
    def test_empty_and_unknown(self, capsys, tmp_path):
        f = tmp_path / "empty.cfg"
        f.write_text("# nothing\n")
        assert call(capsys, "suite", "run", str(f)) == (0, "", "")
        f.write_text("A42\n")
        assert call(capsys, "suite", "run", str(f))[0] == 2

    def test_a3(self, capsys, tmp_path):
        f = tmp_path / "a3.cfg"
        f.write_text("A3\n")
        code, out, err = call(capsys, "suite", "run", str(f))
        assert code == 0 and out == "A3 pass 221/221\n" and "A3" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "narrowsys.cli", "ord", "add", "w+1", "w"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "w*2\n"
