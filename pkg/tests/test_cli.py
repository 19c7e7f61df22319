"""Command line behavior: exit codes, determinism, file formats."""

import json

import pytest

from bbdetect.cli import main
from bbdetect.sat import to_dimacs

from conftest import TWO_CLAUSE


@pytest.fixture
def dimacs_path(tmp_path):
    path = tmp_path / "instance.cnf"
    path.write_text(to_dimacs(TWO_CLAUSE))
    return str(path)


@pytest.fixture
def small_system_path(tmp_path):
    # {x - 1, y - 2} as a system file
    obj = {
        "vars": ["x", "y"],
        "polys": [
            [[-1, 1, [0, 0]], [1, 1, [1, 0]]],
            [[-2, 1, [0, 0]], [1, 1, [0, 1]]],
        ],
    }
    path = tmp_path / "system.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_reduce_summary_and_exit(dimacs_path, tmp_path, capsys):
    out = tmp_path / "system.json"
    code = main(["reduce", dimacs_path, "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "n=3 m=2 N=11" in text
    assert "degree8=43758" in text
    payload = json.loads(out.read_text())
    assert payload["reduction"]["N"] == 11
    assert len(payload["polys"]) == 43758 + 24 + 5


def test_reduce_deterministic(dimacs_path, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["reduce", dimacs_path, "--out", str(a)]) == 0
    assert main(["reduce", dimacs_path, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_reduce_rejects_invalid(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 3 1\n1 2 3 0\n")
    code = main(["reduce", str(bad)])
    assert code == 3
    assert "invalid" in capsys.readouterr().err


def test_detect_verify_cycle(small_system_path, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code = main(["detect", small_system_path, "--out", str(cert)])
    assert code == 0
    obj = json.loads(cert.read_text())
    assert obj["selection"] == [[1, 0], [0, 1]]
    assert obj["order_ideal"] == [[0, 0]]
    capsys.readouterr()
    assert main(["verify", small_system_path, str(cert)]) == 0
    assert "accepted" in capsys.readouterr().out


def test_verify_rejects_tampered(small_system_path, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["detect", small_system_path, "--out", str(cert)]) == 0
    obj = json.loads(cert.read_text())
    obj["selection"][0] = [0, 0]  # swap a selected term for the constant
    cert.write_text(json.dumps(obj))
    code = main(["verify", small_system_path, str(cert)])
    assert code == 1
    assert "rejected" in capsys.readouterr().out


def test_verify_rejects_inconsistent_border_field(small_system_path, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["detect", small_system_path, "--out", str(cert)]) == 0
    obj = json.loads(cert.read_text())
    obj["border"] = obj["border"][:-1]  # drop a border entry
    cert.write_text(json.dumps(obj))
    assert main(["verify", small_system_path, str(cert)]) == 1


def test_detect_budget_exit(small_system_path):
    assert main(["--max-candidates", "0", "detect", small_system_path]) == 2
    assert main(["--budget", "0", "detect", small_system_path]) == 2


def test_detect_no(tmp_path):
    obj = {"vars": ["x", "y"], "polys": [[[1, 1, [2, 0]]], [[1, 1, [0, 1]]]]}
    path = tmp_path / "mono.json"
    path.write_text(json.dumps(obj))
    assert main(["detect", str(path)]) == 1


def test_border_yes(tmp_path, capsys):
    path = tmp_path / "terms.json"
    path.write_text(json.dumps([[1, 0], [0, 1]]))
    code = main(["border", str(path)])
    assert code == 0
    assert "is border of order ideal {1}" in capsys.readouterr().out


def test_border_no_with_witness(tmp_path, capsys):
    path = tmp_path / "terms.json"
    path.write_text(json.dumps({"vars": ["x", "y"], "terms": [[2, 0]]}))
    code = main(["border", str(path)])
    assert code == 1
    out = capsys.readouterr().out
    assert "not a border" in out
    assert "condition 1" in out


def test_border_json_format(tmp_path, capsys):
    path = tmp_path / "terms.json"
    path.write_text(json.dumps([[1, 0], [0, 1]]))
    assert main(["--format", "json", "border", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"is_border": True, "order_ideal": [[0, 0]]}


def test_sat_command(dimacs_path, capsys):
    assert main(["sat", dimacs_path]) == 0
    assert "SATISFIABLE" in capsys.readouterr().out


def test_sat_unsat(tmp_path, capsys):
    lines = ["p cnf 3 8"]
    for mask in range(8):
        lits = [(v if mask >> (v - 1) & 1 else -v) for v in (1, 2, 3)]
        lines.append(" ".join(map(str, lits)) + " 0")
    path = tmp_path / "unsat.cnf"
    path.write_text("\n".join(lines) + "\n")
    assert main(["sat", str(path)]) == 1
    assert "UNSAT" in capsys.readouterr().out


def test_roundtrip(dimacs_path, capsys):
    assert main(["roundtrip", dimacs_path]) == 0
    assert "agreement" in capsys.readouterr().out


def test_gen_deterministic_and_valid(tmp_path):
    a, b = tmp_path / "a.cnf", tmp_path / "b.cnf"
    assert main(["--seed", "9", "gen", "--n", "4", "--m", "3", "--out", str(a)]) == 0
    assert main(["--seed", "9", "gen", "--n", "4", "--m", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    from bbdetect.sat import parse_dimacs, validate_34

    assert validate_34(parse_dimacs(a.read_text())) == []


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 3
    assert main([]) == 3


def test_missing_file_exit_code(capsys):
    assert main(["sat", "/nonexistent/file.cnf"]) == 3


def test_detect_json_format(small_system_path, capsys):
    assert main(["--format", "json", "detect", small_system_path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "yes"
    assert payload["candidates_checked"] >= 1


def test_reduced_instance_detect_verify_cycle(dimacs_path, tmp_path):
    # the full wire format on an encoded instance: reduce, detect, verify
    system = tmp_path / "system.json"
    cert = tmp_path / "cert.json"
    assert main(["reduce", dimacs_path, "--out", str(system)]) == 0
    assert main(["detect", str(system), "--out", str(cert)]) == 0
    assert main(["verify", str(system), str(cert)]) == 0
    obj = json.loads(cert.read_text())
    obj["order_ideal"] = obj["order_ideal"][:-1]
    cert.write_text(json.dumps(obj))
    assert main(["verify", str(system), str(cert)]) == 1
