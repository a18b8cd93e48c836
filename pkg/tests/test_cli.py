import io
import json
import subprocess
import sys

import pytest

from matlis import presets
from matlis.cli import main

TENSOR = ("ring R = quotient(rationals, [x,y], ideal(x*y, y^2)); "
          "artinian E = dual(free(R,1)); compute tensor(E, E);")


def lines(capsys):
    return [json.loads(l) for l in capsys.readouterr().out.splitlines() if l.strip()]


def test_run_file(tmp_path, capsys):
    f = tmp_path / "t.matlis"
    f.write_text(TENSOR)
    assert main(["run", str(f)]) == 0
    (o,) = lines(capsys)
    assert o["result"]["length"] == 1


def test_run_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(TENSOR))
    assert main(["run", "-"]) == 0
    assert lines(capsys)[0]["op"] == "tensor"


def test_empty_script_is_ok(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    assert main(["run"]) == 0
    assert capsys.readouterr().out == ""


def test_output_file_and_table(tmp_path):
    f = tmp_path / "t.matlis"
    f.write_text(TENSOR)
    dest = tmp_path / "out.txt"
    assert main(["run", str(f), "--table", "-o", str(dest)]) == 0
    text = dest.read_text()
    assert "length" in text and "compute tensor(E, E)" in text


def test_suite_subcommand(capsys):
    assert main(["suite", "--seed", "3", "--cases", "1", "--field", "p:32003"]) == 0
    (o,) = lines(capsys)
    assert o["op"] == "verify" and o["result"]["summary"]["fail"] == 0


def test_suite_table(capsys):
    assert main(["suite", "--seed", "3", "--cases", "1", "--table"]) == 0
    assert "pass" in capsys.readouterr().out.lower()


def test_preset_subcommand(capsys):
    assert main(["preset", "example-6-5"]) == 0
    assert lines(capsys)[0]["pass"] is True


def test_failed_check_exits_one(monkeypatch, capsys):
    def fake(name, field):
        return [presets._line("forced", "t", 1, 2)]
    monkeypatch.setattr(presets, "run_preset", fake)
    assert main(["preset", "example-6-5"]) == 1
    assert lines(capsys)[0]["pass"] is False


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["run", "--field", "p:4"], ["suite", "--cases", "0"],
    ["suite", "--s-max", "0"], ["run", "/nonexistent/script"], ["preset", "example-9-9"],
    ["preset", "example-6-5-general(1,2,2)"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_dsl_error_reports_position(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("ring R = quotient([x]);\ncompute hom(M, M);"))
    assert main(["run"]) == 2
    err = capsys.readouterr().err
    assert "E_UNKNOWN_NAME" in err and "line 2" in err


def test_outputs_before_error_are_emitted(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(
        "ring R = quotient([x]); compute depth(free(R,1)); compute hom(M, M);"))
    assert main(["run"]) == 2
    assert lines(capsys)[0]["result"] == 1


def test_default_field_env(monkeypatch, capsys):
    monkeypatch.setenv("MATLIS_DEFAULT_FIELD", "p:5")
    monkeypatch.setattr(sys, "stdin", io.StringIO("ring R = quotient([x], ideal(5*x));"))
    # 5 = 0 in F_5, so the relation vanishes and R is the polynomial ring
    assert main(["run"]) == 0
    monkeypatch.setenv("MATLIS_DEFAULT_FIELD", "nonsense")
    assert main(["run"]) == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "matlis", "preset", "example-6-5", "--table"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and "PASS" in r.stdout
