"""End-to-end command tests through main(), no subprocesses."""

import io
import json

import pytest

from mvspectra.cli import main

L4 = '{"kind":"lukasiewicz","n":4}'
PROD = '{"kind":"product","factors":[{"kind":"lukasiewicz","n":2},{"kind":"lukasiewicz","n":3}]}'
CHANG = '{"kind":"chang"}'
BROKEN = json.dumps(
    {
        "kind": "tables",
        "neg": [2, 2, 0],
        "oplus": [[0, 1, 2], [1, 2, 2], [2, 2, 2]],
    }
)


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_check_ok():
    code, text = run(["check", "--input", L4])
    assert code == 0
    assert text == "ok\n"


def test_check_violation_witness():
    code, text = run(["check", "--input", BROKEN])
    assert code == 1
    assert "violation" in text and "involution" in text
    code, text = run(["check", "--input", BROKEN, "--format", "json"])
    assert code == 1
    data = json.loads(text)
    assert data["ok"] is False
    assert data["violation"]["law"] == "involution"
    assert data["violation"]["witness"]


def test_check_chang_bounded():
    code, text = run(["check", "--input", CHANG, "--chang-bound", "6"])
    assert code == 0 and text == "ok\n"


def test_parse_error_with_position(capsys):
    code, _ = run(["check", "--input", '{"kind": lukas}'])
    assert code == 2
    err = capsys.readouterr().err
    assert "parse error at line 1 column" in err


def test_missing_input_and_missing_file(capsys):
    assert run(["check"])[0] == 2
    assert run(["check", "--input", "/nonexistent/algebra.json"])[0] == 2


def test_input_from_file(tmp_path):
    path = tmp_path / "alg.json"
    path.write_text(PROD, encoding="utf-8")
    code, text = run(["spectrum", "--input", str(path), "--format", "json"])
    assert code == 0
    data = json.loads(text)
    assert data["schema"] == "mv-spectra/1"
    assert len(data["points"]) == 5


def test_spectrum_formats():
    code, text = run(["spectrum", "--input", L4])
    assert code == 0 and text.startswith("points: ")
    code, dot = run(["spectrum", "--input", L4, "--format", "dot"])
    assert code == 0 and dot.startswith("digraph")
    code, text = run(["spectrum", "--input", CHANG])
    assert code == 0 and "symbolic chain space" in text


def test_spectrum_carrier_cap(capsys):
    code, _ = run(["spectrum", "--input", PROD, "--cap", "5"])
    assert code == 1
    assert "exceeds the cap" in capsys.readouterr().err


def test_verify_pass_lines():
    code, text = run(["verify", "--input", '{"kind":"lukasiewicz","n":3}'])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines and all(line.startswith("[PASS]") for line in lines)


def test_verify_suite_flags():
    code, text = run(["verify", "--input", PROD, "--suite", "sheaf-prime"])
    assert code == 0 and "eta-prime-isomorphism" in text
    code, _ = run(["verify", "--input", L4, "--suite", "kaplansky"])
    assert code == 0


def test_verify_requires_valid_algebra():
    # verify's precondition is a lawful algebra, so bad tables are usage
    code, _ = run(["verify", "--input", BROKEN])
    assert code == 2


def test_verify_failure_exit_code(monkeypatch):
    from mvspectra import cli
    from mvspectra.verify import CheckResult

    monkeypatch.setattr(
        cli, "run_suite", lambda *a, **k: [CheckResult("law", "fail", "broken")]
    )
    code, text = run(["verify", "--input", L4])
    assert code == 1
    assert "[FAIL] law" in text


def test_verify_chang_skips_are_not_failures():
    code, text = run(["verify", "--input", CHANG, "--chang-bound", "6"])
    assert code == 0
    assert "[SKIP]" in text and "[FAIL]" not in text


def test_verify_whole_suite_skip_on_cap():
    code, text = run(["verify", "--input", PROD, "--cap", "5"])
    assert code == 0
    assert text.startswith("[SKIP] whole suite")


def test_verify_json_deterministic():
    argv = ["verify", "--input", PROD, "--suite", "k", "--format", "json", "--seed", "3"]
    assert run(argv) == run(argv)
    code, text = run(argv)
    data = json.loads(text)
    assert data["suite"] == "k"
    assert all(r["status"] == "pass" for r in data["results"])


def test_dot_rejected_where_meaningless(capsys):
    assert run(["check", "--input", L4, "--format", "dot"])[0] == 2
    assert run(["verify", "--input", L4, "--format", "dot"])[0] == 2


def test_threads_env_validation(monkeypatch, capsys):
    monkeypatch.setenv("MV_SPECTRA_THREADS", "4")
    assert run(["check", "--input", L4])[0] == 0
    monkeypatch.setenv("MV_SPECTRA_THREADS", "0")
    assert run(["check", "--input", L4])[0] == 2
    monkeypatch.setenv("MV_SPECTRA_THREADS", "many")
    assert run(["check", "--input", L4])[0] == 2


def test_usage_errors_from_argparse():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--input", L4, "--suite", "bogus"], out=io.StringIO())
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["unknown-command"], out=io.StringIO())
    assert exc.value.code == 2
