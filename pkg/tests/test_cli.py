import json
import subprocess
import sys
from pathlib import Path

import pytest

from origami_veech import catalog
from origami_veech.cli import run
from origami_veech.origami import format_origami, parse_origami
from origami_veech.sl2 import Mat, eval_word

GOLDEN = Path(__file__).parent / "golden"

A1 = Mat(1, 3, 0, 1)
A6 = Mat(7, 2, -18, -5)


def _run(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["veech", "--name", "L23", "--json"], "veech_L23.json"),
        (["info", "4; (2 3 4); (1 2)", "--json"], "info_L23.json"),
        (["congruence", "--name", "D", "--witness", "--json"], "congruence_D_witness.json"),
        (["replay-proof"], "replay_proof.txt"),
        (["sequence", "build", "--base", "L23", "--n", "3", "--json"], "sequence_build_L23_3.json"),
    ],
)
def test_golden(capsys, argv, golden):
    code, out, _ = _run(capsys, argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_veech_report_values(capsys):
    _, out, _ = _run(capsys, ["veech", "--name", "L23", "--json"])
    data = json.loads(out)
    assert data["index"] == 9 and data["general_level"] == 12
    assert len(data["cusps"]) == 3 and data["curve"]["cusps"] == 3
    for g in data["generators"]:
        assert eval_word(g["word"]) == Mat(*g["matrix"][0], *g["matrix"][1])


def test_congruence_witness_is_the_mod60_one(capsys):
    _, out, _ = _run(capsys, ["congruence", "--name", "D", "--witness", "--json"])
    data = json.loads(out)
    assert data["verdict"] == "NonCongruence"
    w = data["witness"]
    g = Mat(*w["g"][0], *w["g"][1])
    assert g == A6 ** 20 @ A1 ** 7
    assert w["g_mod_N"] == [[1, 1], [0, 1]] and w["h_word"] == "T"


def test_congruence_trivial(capsys):
    code, out, _ = _run(capsys, ["congruence", "--name", "trivial", "--witness", "--json"])
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "Congruence" and data["level"] == 1 and data["witness"] is None


def test_congruence_l23_witness(capsys):
    _, out, _ = _run(capsys, ["congruence", "--name", "L23", "--witness", "--json"])
    data = json.loads(out)
    assert data["general_level"] == 12 and data["witness"]["modulus"] == 12


def test_info_plain(capsys):
    code, out, _ = _run(capsys, ["info", "4; (2 3 4); (1 2)"])
    assert code == 0
    assert "genus: 2" in out and "vertex_classes: 2" in out


def test_dot_outputs(capsys, tmp_path):
    for cmd in ("info", "veech", "subgroup"):
        path = tmp_path / f"{cmd}.dot"
        code, _, _ = _run(capsys, [cmd, "--name", "D", "--dot", str(path)])
        assert code == 0 and path.read_text().startswith("digraph")


def test_subgroup(capsys):
    code, out, _ = _run(capsys, ["subgroup", "--name", "L23", "--base", "2", "--n", "3", "--json"])
    data = json.loads(out)
    assert code == 0 and data["rank"] == 5 and data["power_kernel"]["index"] == 12
    code, _, err = _run(capsys, ["subgroup", "--name", "L23", "--base", "9"])
    assert code == 2 and "--base" in err


def test_sequence_verify(capsys):
    code, out, _ = _run(capsys, ["sequence", "verify", "--base", "L23", "--n", "2", "--json"])
    data = json.loads(out)
    assert code == 0
    assert data["rows"]["2"]["veech_index"] == 36
    assert data["inclusions"] == {"2->1": True}


def test_sequence_jobs(capsys):
    _, serial, _ = _run(capsys, ["sequence", "verify", "--base", "D", "--n", "2", "--json"])
    _, parallel, _ = _run(capsys, ["sequence", "verify", "--base", "D", "--n", "2", "--json", "--jobs", "2"])
    assert serial == parallel


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "4; (1 2"],
        ["info", "4; (1 2); ()"],
        ["info", "--name", "nope"],
        ["info"],
        ["info", "1; (); ()", "--name", "D"],
        ["sequence", "build", "--n", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = _run(capsys, argv)
    assert code == 2 and err.startswith("origami-veech: error:")


def test_non_transitive_diagnostic(capsys):
    _, _, err = _run(capsys, ["info", "4; (1 2); ()"])
    assert "{1,2} {3} {4}" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        run(["bogus"])
    assert info.value.code == 2


def test_cap_exit_1(capsys):
    code, _, err = _run(capsys, ["veech", "--name", "D", "--max-orbit", "5"])
    assert code == 1 and "cap" in err


def test_catalog_round_trip():
    entries = [catalog.TRIVIAL, catalog.L23, catalog.D, catalog.l_shape(3, 2), catalog.l_shape(1, 4)]
    entries += [catalog.lookup(n) for n in ("O3", "D2", "L(2,3)")]
    for o in entries:
        assert parse_origami(format_origami(o)) == o
    assert catalog.lookup("L(2,3)") == catalog.L23
    assert catalog.known_name(catalog.lookup("O1")) == "L23"


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "origami_veech.cli", "info", "--name", "trivial", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["genus"] == 1
