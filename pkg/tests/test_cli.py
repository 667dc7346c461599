from __future__ import annotations

import json
import subprocess
import sys

import pytest

from detsize.bounds import full_report, report_from_dict, report_to_dict
from detsize.cli import main
from detsize.fsa import accepts, parse_fsa, serialize_fsa
from detsize.generators import gen_meyer_fischer, gen_modified_moore, gen_moore, gen_universal


def write(tmp_path, name, automaton) -> str:
    path = tmp_path / name
    path.write_text(serialize_fsa(automaton))
    return str(path)


class TestGen:
    def test_moore4_file(self, tmp_path, capsys):
        out = tmp_path / "m4.fsa"
        assert main(["gen", "moore", "--n", "4", "--out", str(out)]) == 0
        a = parse_fsa(out.read_text())
        assert a == gen_moore(4)

    def test_random_is_deterministic(self, capsys):
        args = ["gen", "random", "--n", "5", "--sigma", "2", "--density", "0.3", "--seed", "7"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_mf_n1_is_usage_error(self, capsys):
        assert main(["gen", "mf", "--n", "1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_n_is_usage_error(self, capsys):
        assert main(["gen", "moore"]) == 2

    def test_gadgets_from_base_file(self, tmp_path, capsys):
        base = write(tmp_path, "u.fsa", gen_universal())
        assert main(["gen", "gadget-mf", "--base", base, "--t", "4"]) == 0
        a = parse_fsa(capsys.readouterr().out)
        assert "#" in a.alphabet

    def test_unknown_family_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["gen", "nope"])
        assert info.value.code == 2


class TestDeterminize:
    def test_moore3_gives_eight_states(self, tmp_path, capsys):
        path = write(tmp_path, "m3.fsa", gen_moore(3))
        assert main(["determinize", path]) == 0
        captured = capsys.readouterr()
        assert captured.err.strip() == "8"
        assert parse_fsa(captured.out).n == 8

    def test_dfa_input_same_count(self, tmp_path, capsys):
        path = write(tmp_path, "u.fsa", gen_universal())
        assert main(["determinize", path]) == 0
        assert parse_fsa(capsys.readouterr().out).n == 1

    def test_blow_up_exit_code(self, tmp_path, capsys):
        path = write(tmp_path, "m25.fsa", gen_moore(25))
        assert main(["determinize", path, "--max-states", "1000"]) == 3
        assert "1000 states" in capsys.readouterr().err

    def test_epsilon_removed_automatically(self, tmp_path, capsys):
        path = tmp_path / "eps.fsa"
        path.write_text("q0 <eps> q1\nq1 a q1\n@initial q0\n@final q1\n")
        assert main(["determinize", str(path)]) == 0

    def test_no_eps_removal_flag_errors(self, tmp_path, capsys):
        path = tmp_path / "eps.fsa"
        path.write_text("q0 <eps> q1\nq1 a q1\n@initial q0\n@final q1\n")
        assert main(["determinize", str(path), "--no-eps-removal"]) == 2
        assert "epsilon" in capsys.readouterr().err

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.fsa"
        path.write_text("q0 a\n")
        assert main(["determinize", str(path)]) == 2

    def test_missing_file(self, capsys):
        assert main(["determinize", "/nonexistent.fsa"]) == 2


class TestMinimize:
    def test_moore3(self, tmp_path, capsys):
        path = write(tmp_path, "m3.fsa", gen_moore(3))
        assert main(["minimize", path]) == 0
        captured = capsys.readouterr()
        assert parse_fsa(captured.out).n == 8
        assert captured.err.strip() == "8"


class TestStateComplexity:
    def test_meyer_fischer5(self, tmp_path, capsys):
        path = write(tmp_path, "mf5.fsa", gen_meyer_fischer(5))
        assert main(["state-complexity", path]) == 0
        assert capsys.readouterr().out.strip() == "32"

    def test_no_final_states(self, tmp_path, capsys):
        path = tmp_path / "nf.fsa"
        path.write_text("q0 a q1\nq1 a q0\n@initial q0\n")
        assert main(["state-complexity", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_universal(self, tmp_path, capsys):
        path = write(tmp_path, "u.fsa", gen_universal())
        assert main(["state-complexity", path]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_blow_up_exit(self, tmp_path, capsys):
        path = write(tmp_path, "m20.fsa", gen_moore(20))
        assert main(["state-complexity", path, "--max-states", "100"]) == 3


class TestBounds:
    def test_modified_moore5_text(self, tmp_path, capsys):
        path = write(tmp_path, "mm5.fsa", gen_modified_moore(5))
        assert main(["bounds", path]) == 0
        out = capsys.readouterr().out
        line = next(l for l in out.splitlines() if l.startswith("subset_complexity:"))
        assert int(line.split()[1]) <= 90
        assert "soundness" in out
        assert "FAIL" not in out

    def test_moore4_all_pass(self, tmp_path, capsys):
        path = write(tmp_path, "m4.fsa", gen_moore(4))
        assert main(["bounds", path]) == 0
        out = capsys.readouterr().out
        assert "subset_size: 16" in out
        assert out.count("PASS") == 4
        assert "FAIL" not in out

    def test_tree_format_round_trips(self, tmp_path, capsys):
        path = write(tmp_path, "u.fsa", gen_universal())
        assert main(["bounds", path, "--format", "tree"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert report_from_dict(data) == full_report(gen_universal())
        assert data == report_to_dict(full_report(gen_universal()))


class TestUniversalCmd:
    def test_universal_input(self, tmp_path, capsys):
        path = write(tmp_path, "u.fsa", gen_universal())
        assert main(["universal", path]) == 0
        assert capsys.readouterr().out.strip() == "universal"

    def test_all_final_total(self, tmp_path, capsys):
        path = tmp_path / "t.fsa"
        path.write_text("q0 a q1\nq0 b q0\nq1 a q0\nq1 b q1\n@initial q0\n@final q0\n@final q1\n")
        assert main(["universal", str(path)]) == 0

    def test_moore3_witness_is_rejected(self, tmp_path, capsys):
        path = write(tmp_path, "m3.fsa", gen_moore(3))
        assert main(["universal", path]) == 1
        out = capsys.readouterr().out.strip()
        assert out.startswith("not universal: ")
        witness = out.removeprefix("not universal: ")
        word = () if witness == "<eps>" else tuple(witness.split())
        assert not accepts(gen_moore(3), word)


class TestEquiv:
    def test_file_vs_itself(self, tmp_path, capsys):
        path = write(tmp_path, "m3.fsa", gen_moore(3))
        assert main(["equiv", path, path]) == 0

    def test_moore_vs_universal_witness(self, tmp_path, capsys):
        p1 = write(tmp_path, "m3.fsa", gen_moore(3))
        p2 = write(tmp_path, "u.fsa", gen_universal())
        assert main(["equiv", p1, p2]) == 1
        out = capsys.readouterr().out.strip()
        witness = out.removeprefix("not equivalent: ")
        word = () if witness == "<eps>" else tuple(witness.split())
        assert accepts(gen_moore(3), word) != accepts(gen_universal(), word)

    def test_epsilon_padded_variant_is_equivalent(self, tmp_path, capsys):
        p1 = write(tmp_path, "m3.fsa", gen_moore(3))
        # reroute one edge through an epsilon hop
        padded = (
            "q1 a qx\nqx <eps> q2\nq1 b q1\nq2 a q3\nq2 b q3\nq3 a q1\nq3 a q2\n"
            "@initial q1\n@final q3\n"
        )
        p2 = tmp_path / "pad.fsa"
        p2.write_text(padded)
        assert main(["equiv", p1, str(p2)]) == 0


class TestEntryPoint:
    def test_module_invocation(self):
        result = subprocess.run(
            [sys.executable, "-m", "detsize", "gen", "universal"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert result.stdout == "q a q\nq b q\n@initial q\n@final q\n"
