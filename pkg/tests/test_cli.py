import json
import subprocess
import sys

import pytest

from shortstar.cli import ConfigError, main, parse_matrix, parse_rational, thread_count


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_moyal_default(capsys):
    code, out = run(["moyal"], capsys)
    assert code == 0
    assert "x*y: [xy] + [-1/2]" in out


def test_json_schema(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _ = run(["moyal", "--B", "1,0,0,-1", "--cap", "4", "--json", str(path)], capsys)
    report = json.loads(path.read_text())
    assert code == 0
    assert set(report) == {"command", "params", "checks", "elapsed_ms"}
    assert report["command"] == "moyal"
    even = next(c for c in report["checks"] if c["name"] == "even")
    assert even["value"] == "false"
    for c in report["checks"]:
        assert set(c) == {"name", "status", "witness", "value"}
        assert c["status"] in {"pass", "fail", "error"}


def test_sl2_traces_numeric(capsys):
    code, out = run(["sl2-traces", "--lambda", "1/3", "--w", "1/5", "--cap", "6"], capsys)
    assert code == 0
    assert "T(h^2) = 7/27" in out


def test_bridge_weyl(capsys):
    code, out = run(["bridge", "--cone", "weyl", "--q", "1/3", "--cap", "4"], capsys)
    assert code == 0
    assert "pass   check_short" in out


def test_bridge_negative_lambda(capsys):
    code, out = run(["bridge", "--trace", "verma", "--lambda", "-1/2", "--w", "1/5", "--cap", "4"], capsys)
    assert code == 0
    assert "even = false" in out


def test_characters(capsys):
    code, out = run(["characters", "--cap", "4"], capsys)
    assert code == 0
    assert "Ch(1) = -1/(w*t^2-1)" in out


def test_unitarity_split_reports_failure(capsys):
    code, out = run(["unitarity", "--form", "split", "--lambda", "-1/2", "--cap", "4"], capsys)
    assert code == 1
    assert "positive-definite = false" in out


def test_unitarity_compact_positive(capsys):
    code, out = run(["unitarity", "--form", "compact", "--lambda", "-1/2", "--cap", "4"], capsys)
    assert code == 0
    assert "degree 2 minors = 1/8, 1/32, 1/256" in out


@pytest.mark.parametrize("argv", [
    ["moyal", "--cap", "3"],
    ["sl2-traces", "--lambda", "0.5"],
    ["moyal", "--B", "1,2,3"],
    ["unitarity", "--form", "split", "--lambda", "symbolic"],
    ["characters", "--field", "rational"],
])
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_io_error_exit_3(capsys):
    assert main(["moyal", "--json", "/nonexistent/dir/r.json"]) == 3


def test_parsers():
    assert str(parse_rational("-3/4", "x")) == "-3/4"
    with pytest.raises(ConfigError):
        parse_rational("1/0", "x")
    assert parse_matrix("0", 2) == [[0, 0], [0, 0]]


def test_thread_env(monkeypatch):
    monkeypatch.setenv("SHORTSTAR_THREADS", "3")
    assert thread_count(None) == 3
    assert thread_count(2) == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "shortstar.cli", "moyal", "--cap", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and "x*y" in out.stdout
