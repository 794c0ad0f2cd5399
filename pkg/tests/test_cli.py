import json
import subprocess
import sys

import pytest

from nestcorr.cli import dumps, parse_output, run
from nestcorr.qcore import QPoly


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_zq_json_example(capsys):
    code, out, _ = _run(capsys, "zq", "2", "2", "1", "--format", "json")
    assert code == 0
    assert out == '{"min_degree":0,"coeffs":["1","1","2","1","1"]}'
    value = parse_output(out)
    assert value == QPoly([1, 1, 2, 1, 1])
    assert json.dumps(value.to_json(), separators=(",", ":")) == out


def test_verify_example(capsys):
    code, out, _ = _run(capsys, "verify", "theorem3", "--N", "3", "--L", "2", "--M", "3")
    assert code == 0
    assert "EXACT-MATCH" in out


def test_verify_all_small(capsys):
    code, out, _ = _run(capsys, "verify", "all", "--small", "--format", "json")
    assert code == 0
    payload = parse_output(out)
    assert payload["ok"] and len(payload["results"]) >= 19


def test_verify_mismatch_exit_code(capsys):
    code, out, _ = _run(capsys, "verify", "random_turns", "--form", "literal", "--N", "2", "--M", "2", "--K", "3")
    assert code == 3
    assert "MISMATCH" in out


def test_draw_example(capsys, tmp_path):
    code, out, _ = _run(capsys, "draw", "watermelon", "--N", "2", "--Mcal", "1", "--all", "--out", str(tmp_path), "--format", "json")
    assert code == 0
    assert parse_output(out)["count"] == 6
    assert sorted(p.name for p in tmp_path.iterdir()) == [f"watermelon_{i}.svg" for i in range(1, 7)]


def test_draw_scene_from_json(capsys, tmp_path):
    from nestcorr.draw import SceneSpec, render_svg
    from nestcorr.paths import enumerate_stars

    scene = SceneSpec(next(iter(enumerate_stars((2, 1), 3))))
    spec_file = tmp_path / "scene.json"
    spec_file.write_text(scene.to_json())
    code, _, _ = _run(capsys, "draw", "scene", "--scene", str(spec_file), "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "scene_1.svg").read_text() == render_svg(scene)


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "2", "2", "2", "--brute"],
        ["schur", "2", "1", "--N", "3"],
        ["schur", "2", "1", "--x", "1", "2", "1/3"],
        ["watermelon", "--N", "2", "--Mcal", "1", "--list"],
        ["walks", "--l", "1,0", "--j", "2,0", "--K", "1", "--M", "4"],
        ["walks", "--l", "2", "--j", "2", "--K", "1", "--K2", "1", "--m", "1", "--M", "3"],
        ["amplitude", "--j", "2,0", "--l", "1,0", "--t", "0.5", "--M", "4"],
        ["amplitude", "--j", "1", "--l", "0", "--t", "0.2", "--t2", "0.2", "--m", "2", "--M", "3"],
        ["persistence", "--M", "6", "--N", "2", "--n", "1", "--t", "0.5"],
        ["autocorr", "--M", "4", "--N", "2", "--n", "0", "--m", "1", "--t1", "0.3", "--t2", "0.3"],
        ["asymptotics", "mehta", "--N", "4"],
    ],
)
def test_json_round_trip(capsys, argv):
    code, out, _ = _run(capsys, *argv, "--format", "json")
    assert code == 0
    parsed = parse_output(out)
    assert dumps(parsed) == out


def test_walks_values(capsys):
    _, out, _ = _run(capsys, "walks", "--l", "1,0", "--j", "2,0", "--K", "1", "--M", "4", "--format", "json")
    assert parse_output(out)["count"] == 1
    _, out, _ = _run(capsys, "walks", "--l", "2", "--j", "2", "--K", "1", "--K2", "1", "--m", "1", "--M", "3", "--format", "json")
    assert parse_output(out)["count"] == 2


def test_amplitude_payload(capsys):
    _, out, _ = _run(capsys, "amplitude", "--j", "0", "--l", "0", "--t", "0.7", "--M", "1", "--format", "json")
    payload = parse_output(out)
    assert set(payload) >= {"params", "value", "abs_err", "wall_time_ms"}
    assert payload["notes"] == ["degenerate-geometry"]


def test_asymptotics_report_files(capsys, tmp_path):
    code, out, _ = _run(capsys, "asymptotics", "amplitude", "--N", "1", "--M", "60", "--window", "20", "60", "--out", str(tmp_path), "--format", "json")
    assert code == 0
    payload = parse_output(out)
    assert 0.42 <= payload["report"]["fitted_exponent"] <= 0.58
    assert (tmp_path / "amplitude.tsv").read_text().startswith("kind\tt_min")
    assert (tmp_path / "amplitude.png").stat().st_size > 0


def test_exit_codes(capsys):
    assert _run(capsys, "walks", "--l", "1,1", "--j", "1,0", "--K", "1", "--M", "2")[0] == 2
    assert _run(capsys, "persistence", "--M", "3", "--N", "2", "--n", "3", "--t", "1")[0] == 2
    assert _run(capsys, "verify", "nosuchcheck")[0] == 2
    assert _run(capsys, "persistence", "--M", "30", "--N", "6", "--t", "1", "--budget", "10")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["zq", "1", "2"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nestcorr", "count", "2", "2", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "6"
