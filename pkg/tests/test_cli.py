import json

import pytest

from angulator.cli import main

PENTAGON_FAN = json.dumps(
    {"type": "disk", "m": 1, "sides": 5, "diagonals": [[1, 3], [1, 4]]}
)
QUIVER_M2 = json.dumps(
    {
        "m": 2,
        "vertices": 2,
        "arrows": [
            {"from": 0, "to": 1, "color": 0, "mult": 1},
            {"from": 1, "to": 0, "color": 2, "mult": 1},
        ],
    }
)
ANNULUS_11 = json.dumps(
    {
        "type": "annulus",
        "m": 1,
        "p": 1,
        "q": 1,
        "arcs": [
            {"kind": "bridge", "outer": 1, "inner": 1, "winding": 0},
            {"kind": "bridge", "outer": 1, "inner": 1, "winding": 1},
        ],
    }
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMutate:
    def test_round_trip_shift(self, capsys):
        code, out, _ = run(capsys, "mutate", QUIVER_M2, "-k", "0")
        assert code == 0
        data = json.loads(out)
        assert {(a["from"], a["to"], a["color"]) for a in data["arrows"]} == {
            (0, 1, 2),
            (1, 0, 0),
        }

    def test_inverse_round_trip(self, capsys):
        code, out, _ = run(capsys, "mutate", QUIVER_M2, "-k", "0", "--inverse")
        assert code == 0
        code, out2, _ = run(capsys, "mutate", out, "-k", "0")
        assert code == 0
        assert json.loads(out2) == json.loads(QUIVER_M2)

    def test_procedural_matches(self, capsys):
        _, a, _ = run(capsys, "mutate", QUIVER_M2, "-k", "1")
        _, b, _ = run(capsys, "mutate", QUIVER_M2, "-k", "1", "--procedural")
        assert a == b

    def test_arrowless_unchanged(self, capsys):
        quiver = json.dumps({"m": 1, "vertices": 3, "arrows": []})
        code, out, _ = run(capsys, "mutate", quiver, "-k", "2")
        assert code == 0 and json.loads(out)["arrows"] == []

    def test_malformed_json_exit_2(self, capsys):
        code, _, err = run(capsys, "mutate", "{not json", "-k", "0")
        assert code == 2 and "error" in err

    def test_invalid_quiver_exit_3(self, capsys):
        bad = json.dumps(
            {"m": 1, "vertices": 2,
             "arrows": [{"from": 0, "to": 1, "color": 0, "mult": 1}]}
        )
        code, _, err = run(capsys, "mutate", bad, "-k", "0")
        assert code == 3 and "symmetry" in err

    def test_vertex_out_of_range_exit_4(self, capsys):
        code, _, _ = run(capsys, "mutate", QUIVER_M2, "-k", "7")
        assert code == 4

    def test_dot_output(self, capsys):
        code, out, _ = run(capsys, "mutate", QUIVER_M2, "-k", "0", "--format", "dot")
        assert code == 0 and out.startswith("digraph")


class TestFlip:
    def test_pentagon(self, capsys):
        code, out, _ = run(capsys, "flip", PENTAGON_FAN, "--arc", "0")
        assert code == 0
        assert json.loads(out)["diagonals"] == [[1, 4], [2, 4]]

    def test_double_flip_identity_m1(self, capsys):
        _, out, _ = run(capsys, "flip", PENTAGON_FAN, "--arc", "1")
        flipped = json.loads(out)
        original = json.loads(PENTAGON_FAN)["diagonals"]
        (new_arc,) = [d for d in flipped["diagonals"] if d not in original]
        new_index = flipped["diagonals"].index(new_arc)
        _, out2, _ = run(capsys, "flip", json.dumps(flipped), "--arc", str(new_index))
        assert json.loads(out2) == json.loads(PENTAGON_FAN)

    def test_annulus_winding_increment(self, capsys):
        code, out, _ = run(capsys, "flip", ANNULUS_11, "--arc", "0")
        assert code == 0
        windings = sorted(a["winding"] for a in json.loads(out)["arcs"])
        assert windings == [1, 2]

    def test_bad_index_exit_4(self, capsys):
        code, _, _ = run(capsys, "flip", PENTAGON_FAN, "--arc", "5")
        assert code == 4

    def test_invalid_angulation_exit_3(self, capsys):
        bad = json.dumps(
            {"type": "disk", "m": 1, "sides": 5, "diagonals": [[1, 3]]}
        )
        code, _, err = run(capsys, "flip", bad, "--arc", "0")
        assert code == 3 and "invalid" in err


class TestQuiverCmd:
    def test_pentagon_fan(self, capsys):
        code, out, _ = run(capsys, "quiver", PENTAGON_FAN)
        assert code == 0
        arrows = {(a["from"], a["to"]): a["color"] for a in json.loads(out)["arrows"]}
        assert arrows == {(0, 1): 1, (1, 0): 0}

    def test_annulus_kronecker(self, capsys):
        code, out, _ = run(capsys, "quiver", ANNULUS_11)
        assert code == 0
        arrows = json.loads(out)["arrows"]
        assert all(a["mult"] == 2 for a in arrows) and len(arrows) == 2

    def test_single_diagonal_disk(self, capsys):
        data = json.dumps(
            {"type": "disk", "m": 2, "sides": 6, "diagonals": [[1, 4]]}
        )
        code, out, _ = run(capsys, "quiver", data)
        assert code == 0 and json.loads(out)["arrows"] == []


class TestValidate:
    def test_valid(self, capsys):
        assert run(capsys, "validate", PENTAGON_FAN)[0] == 0
        assert run(capsys, "validate", QUIVER_M2)[0] == 0

    def test_invalid(self, capsys):
        bad = json.dumps(
            {"type": "disk", "m": 1, "sides": 5, "diagonals": [[1, 3], [2, 4]]}
        )
        assert run(capsys, "validate", bad)[0] == 3


class TestEnumerate:
    def test_counts(self, capsys):
        assert run(capsys, "enumerate", "--m", "1", "--sides", "5")[1] == "5\n"
        assert run(capsys, "enumerate", "--m", "2", "--sides", "8")[1] == "12\n"

    def test_guard_exit_5(self, capsys):
        code, _, _ = run(capsys, "enumerate", "--m", "1", "--sides", "40",
                         "--guard", "6")
        assert code == 5

    def test_dot_file(self, capsys, tmp_path):
        target = tmp_path / "graph.dot"
        code, out, _ = run(capsys, "enumerate", "--m", "1", "--sides", "5",
                           "--dot", str(target))
        assert code == 0 and out == "5\n"
        assert target.read_text().startswith("graph")

    def test_reads_env_guard(self, capsys, monkeypatch):
        monkeypatch.setenv("ANGULATOR_GUARD", "3")
        code, _, _ = run(capsys, "enumerate", "--m", "1", "--sides", "12")
        assert code == 5


class TestVerifyCmd:
    def test_unknown_suite_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2

    def test_cut_suite_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "cut", "--steps", "3")
        assert code == 0
        data = json.loads(out)
        assert data["suite"] == "cut"
        assert all(r["passed"] for r in data["reports"])
        assert all("elapsed" not in r for r in data["reports"])

    def test_byte_identical_given_seed(self, capsys):
        _, a, _ = run(capsys, "verify", "--suite", "cut", "--steps", "3", "--seed", "9")
        _, b, _ = run(capsys, "verify", "--suite", "cut", "--steps", "3", "--seed", "9")
        assert a == b


class TestFileInput(object):
    def test_path_input(self, capsys, tmp_path):
        path = tmp_path / "fan.json"
        path.write_text(PENTAGON_FAN)
        code, out, _ = run(capsys, "quiver", str(path))
        assert code == 0 and json.loads(out)["vertices"] == 2

    def test_missing_file_exit_2(self, capsys):
        assert run(capsys, "quiver", "no-such-file.json")[0] == 2
