import json

import pytest

from cubic27.cli import main
from cubic27.perm import format_cycles, parse_cycles


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestLines:
    def test_structured_output_round_trips(self, capsys):
        code, out = run_cli(capsys, "--format", "structured", "lines")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert len(doc["catalog"]) == 27
        assert doc["strongly_regular"] == [27, 10, 1, 5]
        assert len(doc["incidence_matrix"]) == 27
        # cycle strings in the dump parse back to permutations
        for cycles in doc["coordinate_action"].values():
            assert format_cycles(parse_cycles(cycles)) == cycles
        orbits = doc["s4_orbits"]
        assert orbits == [list(range(1, 13)), list(range(13, 25)), [25, 26, 27]]

    def test_deterministic_bytes(self, capsys):
        _, out1 = run_cli(capsys, "--format", "structured", "lines")
        _, out2 = run_cli(capsys, "--format", "structured", "lines")
        assert out1 == out2


class TestSymcheck:
    def test_exit_zero_and_all_pass(self, capsys):
        code, out = run_cli(capsys, "--format", "structured", "symcheck")
        assert code == 0
        doc = json.loads(out)
        assert doc["all_passed"] is True
        assert {c["name"] for c in doc["checks"]} == {
            "tricuspidal_equivalence",
            "cayley_four_nodes",
            "tritangent_vanishing",
            "normalizer_matrix_family",
        }


class TestMonodromyCommand:
    def test_zero_loops_inconclusive_exit_1(self, capsys):
        code, out = run_cli(
            capsys, "monodromy", "--family", "symmetric", "--loops", "0"
        )
        assert code == 1
        assert "INCONCLUSIVE" in out

    def test_structured_deterministic(self, capsys):
        args = (
            "--format", "structured", "--seed", "3",
            "monodromy", "--family", "symmetric", "--loops", "2",
            "--strategy", "random",
        )
        code1, out1 = run_cli(capsys, *args)
        code2, out2 = run_cli(capsys, *args)
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["schema"] == 1
        assert doc["family"] == "symmetric"
        assert doc["seed"] == 3


class TestEnvironmentOverrides:
    def test_seed_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("CUBIC27_SEED", "777")
        code, out = run_cli(
            capsys, "--format", "structured",
            "monodromy", "--family", "symmetric", "--loops", "1", "--strategy", "random",
        )
        doc = json.loads(out)
        assert doc["seed"] == 777


class TestBadFlags:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_family_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["monodromy", "--family", "cubic"])
        assert exc.value.code == 2

    def test_missing_required_family_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["monodromy"])
        assert exc.value.code == 2


class TestGroup:
    def test_group_claims_pass(self, capsys):
        code, out = run_cli(capsys, "--format", "structured", "group")
        assert code == 0
        doc = json.loads(out)
        assert doc["all_passed"] is True
        assert doc["composition_convention"] == "compose(p, q) applies q first"
        ids = {c["id"] for c in doc["claims"]}
        assert "subgroup-ladder" in ids and "preferred-double-six" in ids


class TestVerifyAll:
    def test_exact_claims_only(self, capsys):
        code, out = run_cli(
            capsys, "--format", "structured", "verify-all", "--skip-monodromy"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["all_passed"] is True
        ids = {c["id"] for c in doc["claims"]}
        assert "weyl-reconstruction" in ids
        assert "exceptional-isomorphism" in ids
        assert "symmetric-monodromy" not in ids  # skipped


class TestIso:
    def test_iso_passes(self, capsys):
        code, out = run_cli(capsys, "--format", "structured", "iso")
        assert code == 0
        doc = json.loads(out)
        assert doc["claim"]["pass"] is True
        assert doc["claim"]["details"]["projective_image_order"] == 51840
        assert doc["claim"]["details"]["pre_projectivization_order"] == 103680
        # canonical representatives: first nonzero entry equals 1
        for name, matrix in doc["images"].items():
            flat = [x for row in matrix for x in row]
            assert next(x for x in flat if x) == 1
