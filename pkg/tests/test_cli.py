import json

import pytest

from quadnet.cli import main
from quadnet.fixtures import wheel17
from quadnet.io import serialize_quadnet
from quadnet.mesh import generate_grid


@pytest.fixture()
def files(tmp_path):
    out = {}
    for name, t in [
        ("grid3", generate_grid(3, 3, "bl-tr")),
        ("grid7", generate_grid(7, 7, "alternating")),
        ("wheel", wheel17()),
    ]:
        p = tmp_path / f"{name}.quadnet"
        p.write_text(serialize_quadnet(t))
        out[name] = str(p)
    out["dir"] = str(tmp_path)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_validate_ok(files, capsys):
    code, out = run(capsys, "validate", files["grid7"])
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_validate_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.quadnet"
    p.write_text("quadnet 1\nvertex a\n")
    assert main(["validate", str(p)]) == 1


def test_missing_file_is_usage_error(capsys):
    assert main(["solve", "/nonexistent.quadnet"]) == 2


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_solve_exact_values(files, capsys):
    code, out = run(capsys, "solve", files["wheel"], "--mode", "exact")
    assert code == 0
    data = json.loads(out)
    assert data["values"]["X"] == "1/2"
    assert data["values"]["C3"] == "8/11"
    assert data["residual"] == "0"


def test_solve_g_override(files, capsys):
    code, out = run(capsys, "solve", files["grid7"], "--g", "3")
    assert code == 0
    values = json.loads(out)["values"]
    assert values["3,6"] == "3"


def test_metric_output(files, capsys):
    code, out = run(capsys, "metric", files["grid3"])
    assert code == 0
    data = json.loads(out)
    assert data["rhoSquared"]["1,1"] == "1"
    assert data["k"] == 6


def test_paths_no_path_exit_code(files, capsys):
    code, out = run(capsys, "paths", files["grid3"], "--orientation", "vertical")
    assert code == 3
    assert "absent" in json.loads(out)


def test_paths_with_oracle(files, capsys):
    code, out = run(
        capsys, "paths", files["wheel"], "--orientation", "horizontal", "--oracle"
    )
    assert code == 0
    data = json.loads(out)
    assert data["oracle"]["agrees"] is True
    assert data["oracle"]["feasibleCount"] >= 1


def test_paths_oracle_guard_is_usage_error(files, capsys):
    assert main(["paths", files["grid7"], "--orientation", "vertical", "--oracle"]) == 2


def test_verify_single_file(files, capsys):
    code, out = run(capsys, "verify", files["grid7"], "--chain")
    assert code == 0
    data = json.loads(out)
    assert all(data["verdicts"].values())
    assert data["proofChain"]


def test_verify_directory(files, capsys):
    code, out = run(capsys, "verify", files["dir"])
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 3
    assert {r["instance"] for r in reports} == {
        "grid3.quadnet", "grid7.quadnet", "wheel.quadnet"
    }


def test_verify_energy_of_worked_example(files, capsys):
    _, out = run(capsys, "verify", files["wheel"], "--mode", "exact")
    assert json.loads(out)["energy"] == "16/11"


def test_generate_then_verify(tmp_path, capsys):
    target = tmp_path / "gen.quadnet"
    assert main([
        "generate", "--rows", "6", "--cols", "6",
        "--diagonal", "alternating", "--seed", "12", "-o", str(target),
    ]) == 0
    capsys.readouterr()
    code, out = run(capsys, "verify", str(target), "--mode", "float")
    assert code == 0
    assert all(json.loads(out)["verdicts"].values())


def test_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a.quadnet", tmp_path / "b.quadnet"
    for target in (a, b):
        main(["generate", "--rows", "5", "--cols", "7",
              "--diagonal", "br-tl", "--seed", "4", "-o", str(target)])
    assert a.read_text() == b.read_text()


def test_svg_output(files, tmp_path, capsys):
    target = tmp_path / "wheel.svg"
    assert main(["svg", files["wheel"], "-o", str(target)]) == 0
    body = target.read_text()
    assert body.startswith("<svg")
    assert "</svg>" in body


def test_exact_and_float_cli_agree(files, capsys):
    _, exact = run(capsys, "verify", files["grid7"], "--mode", "exact")
    _, approx = run(capsys, "verify", files["grid7"], "--mode", "float")
    a, b = json.loads(exact), json.loads(approx)
    assert a["verdicts"] == b["verdicts"]
    assert a["vertical"]["path"] == b["vertical"]["path"]
