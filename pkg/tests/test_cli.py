import json
import subprocess
import sys

from psts.cli import main
from psts.core import parse_cfg


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def envelope(out):
    data = json.loads(out)
    assert set(data) == {"command", "version", "wall_time_s", "status", "payload"}
    return data


def test_construct_stp_and_round_trip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "construct", "stp", "--xi", "rho,rho,id")
    assert code == 0
    cfg = parse_cfg(out)
    assert len(cfg.points) == 15 and len(cfg.lines) == 20
    code, out2, _ = run_cli(capsys, "construct", "stp", "--xi", "rho,rho,id")
    assert out2 == out  # byte-identical reruns

    target = tmp_path / "out.cfg"
    code, _, _ = run_cli(capsys, "construct", "stp", "--xi", "rho,rho,id", "-o", str(target))
    assert code == 0 and target.read_text() == out


def test_construct_grassmannian_params(capsys):
    code, out, _ = run_cli(capsys, "construct", "grassmannian", "--n", "5", "--params")
    assert code == 0
    data = envelope(out)
    assert data["payload"] == {
        "v": 10,
        "r": 3,
        "b": 10,
        "k": 3,
        "uniform": True,
        "binomial": True,
    }


def test_construct_single_pair_stp(capsys):
    code, out, _ = run_cli(capsys, "construct", "stp", "--xi", "id")
    assert code == 0
    cfg = parse_cfg(out)
    assert len(cfg.points) == 10 and len(cfg.lines) == 10


def test_usage_errors_exit_2(capsys):
    code, _, err = run_cli(capsys, "construct", "stp", "--xi", "rho,bogus,id")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "construct", "stp")
    assert code == 2
    code, _, err = run_cli(capsys, "construct", "grassmannian", "--k", "3")
    assert code == 2


def test_iso_exit_codes_and_certificate(capsys, tmp_path):
    a = tmp_path / "a.cfg"
    b = tmp_path / "b.cfg"
    c = tmp_path / "c.cfg"
    run_cli(capsys, "construct", "stp", "--xi", "id,id,id", "-o", str(a))
    run_cli(capsys, "construct", "grassmannian", "--n", "6", "-o", str(b))
    run_cli(capsys, "construct", "stp", "--xi", "rho,rho,rho", "-o", str(c))

    code, out, _ = run_cli(capsys, "iso", str(a), str(b), "--certificate")
    assert code == 0
    data = envelope(out)
    assert data["payload"]["isomorphic"] is True
    assert len(data["payload"]["certificate"]) == 15

    code, out, _ = run_cli(capsys, "iso", str(a), str(c))
    assert code == 1 and envelope(out)["status"] == "mismatch"


def test_aut_command(capsys, tmp_path):
    path = tmp_path / "x.cfg"
    run_cli(capsys, "construct", "stp", "--xi", "rho,rho,rho-", "-o", str(path))
    code, out, _ = run_cli(capsys, "aut", str(path))
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["order"] == 18
    assert payload["structure"] == "C2⋉(C3⊕C3)"
    assert payload["generators"]


def test_canon_is_relabeling_invariant(capsys, tmp_path):
    a = tmp_path / "a.cfg"
    run_cli(capsys, "construct", "veronesian", "--x-count", "3", "--m", "4", "-o", str(a))
    b = tmp_path / "b.cfg"
    run_cli(capsys, "construct", "stp", "--xi", "sa,sc,sb", "-o", str(b))
    _, canon_a, _ = run_cli(capsys, "canon", str(a))
    _, canon_b, _ = run_cli(capsys, "canon", str(b))
    assert canon_a == canon_b


def test_census_command(capsys, tmp_path):
    path = tmp_path / "x.cfg"
    run_cli(capsys, "construct", "stp", "--xi", "sa,rho,id", "-o", str(path))
    code, out, _ = run_cli(capsys, "census", str(path))
    assert code == 0
    payload = envelope(out)["payload"]
    assert (payload["des"], payload["des_prime"], payload["des_dblprime"]) == (1, 1, 1)
    assert payload["cycle_lengths"] == [3, 6]

    grass = tmp_path / "g.cfg"
    run_cli(capsys, "construct", "grassmannian", "--n", "6", "-o", str(grass))
    code, out, _ = run_cli(capsys, "census", str(grass))
    assert code == 1 and envelope(out)["status"] == "error"


def test_verify_gates(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "verify", "--only", "n4")
    assert code == 0 and envelope(out)["status"] == "ok"

    golden = json.loads(
        subprocess.run(
            [sys.executable, "-c",
             "from importlib import resources;"
             "print(resources.files('psts.data').joinpath('expected_classes.json').read_text())"],
            capture_output=True, text=True, check=True,
        ).stdout
    )
    golden["classes"][0]["des_dblprime"] = 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(golden))
    code, out, _ = run_cli(capsys, "verify", "--only", "classes", "--expected", str(bad))
    assert code == 1
    data = envelope(out)
    assert data["status"] == "mismatch"
    detail = json.dumps(data["payload"])
    assert "des_dblprime: computed 3, expected 1" in detail


def test_classify_json_payload(capsys):
    code, out, _ = run_cli(capsys, "classify")
    assert code == 0
    payload = envelope(out)["payload"]
    assert len(payload) == 17
    assert payload[16]["xi"] == ["id", "id", "id"] and payload[16]["k5"] == 6


def test_console_script_entry_point():
    result = subprocess.run(
        ["psts", "--format", "table", "verify", "--only", "mvc"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "overall: ok" in result.stdout
