import io
import json

import pytest

from iterfield.cli import EXIT_FAILURE, EXIT_PASS, EXIT_USAGE, build_parser, run_command


def _map_file(tmp_path, literal, name="map.json"):
    path = tmp_path / name
    path.write_text(json.dumps(literal))
    return str(path)


def _run(capsys, argv):
    code = run_command(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.mark.cli
def test_parser_lists_subcommands():
    parser = build_parser()
    args = parser.parse_args(["chebyshev", "--d", "2", "--base", "3", "--n", "1", "--precision", "20"])
    assert (args.command, args.d, args.precision, args.tolerance) == ("chebyshev", 2, 20, 1.0), "Test failed."


@pytest.mark.cli
def test_analyze(tmp_path, capsys, map_literal_xsq_minus_1):
    code, payload = _run(capsys, ["analyze", "--map", _map_file(tmp_path, map_literal_xsq_minus_1)])
    assert code == EXIT_PASS and payload["passed"], "Test failed."
    report = payload["report"]
    assert report["degree"] == 2 and report["bicritical"], "Test failed."
    assert report["pcf"]["verdict"] == "PCF", "Test failed."
    periods = {o["point"]: o["period"] for o in report["pcf"]["orbits"]}
    assert periods == {"inf": 1, "0": 2}, "Test failed."


@pytest.mark.cli
def test_analyze_not_pcf_still_exits_zero(tmp_path, capsys):
    code, payload = _run(
        capsys, ["analyze", "--map", _map_file(tmp_path, {"num": ["1", "0", "1"]}), "--bound-n", "8"]
    )
    assert code == EXIT_PASS, "Test failed."
    assert payload["report"]["pcf"]["verdict"] == "NotPCFWithin(8)", "Test failed."
    assert payload["report"]["pcf"]["semi_decidable"], "Test failed."


@pytest.mark.cli
def test_analyze_from_stdin(capsys, monkeypatch, map_literal_xsq_minus_1):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(map_literal_xsq_minus_1)))
    code, payload = _run(capsys, ["analyze", "--map", "-"])
    assert code == EXIT_PASS and payload["command"] == "analyze", "Test failed."


@pytest.mark.cli
def test_verify_roots(tmp_path, capsys):
    path = _map_file(tmp_path, {"num": ["0", "0", "1"], "den": ["1"]})
    code, payload = _run(capsys, ["verify-roots", "--map", path, "--base", "2", "--m", "2", "--j", "1"])
    assert code == EXIT_PASS and payload["passed"], "Test failed."
    report = payload["report"]
    assert report["period_lcm"] == 1, "Test failed."
    (witness,) = report["witnesses"]
    assert witness["value"] == pytest.approx([-1.0, 0.0], abs=1e-8), "Test failed."


@pytest.mark.cli
def test_verify_roots_hypothesis_failure(tmp_path, capsys):
    path = _map_file(tmp_path, {"num": ["1", "0", "1"], "den": ["1"]})
    code, payload = _run(capsys, ["verify-roots", "--map", path, "--base", "2", "--m", "2", "--j", "1"])
    assert code == EXIT_FAILURE and not payload["passed"], "Test failed."
    assert payload["error"]["type"] == "HypothesisFailure", "Test failed."
    assert "report" not in payload, "Test failed."


@pytest.mark.cli
def test_chebyshev(capsys):
    code, payload = _run(capsys, ["chebyshev", "--d", "2", "--base", "3", "--n", "2"])
    assert code == EXIT_PASS, "Test failed."
    assert payload["report"]["v_identity"] and payload["report"]["passed"], "Test failed."


@pytest.mark.cli
def test_lattes(capsys):
    code, payload = _run(capsys, ["lattes", "--a", "0", "--b", "1", "--d", "2", "--x0", "2", "--n", "1"])
    assert code == EXIT_PASS, "Test failed."
    assert payload["report"]["degree"] == 4, "Test failed."


@pytest.mark.cli
def test_ramification_cyclotomic(capsys):
    code, payload = _run(capsys, ["ramification", "--cyclotomic", "2", "2"])
    assert code == EXIT_PASS, "Test failed."
    assert (payload["report"]["p"], payload["report"]["n"]) == (2, 2), "Test failed."


@pytest.mark.cli
def test_ramification_poly(capsys):
    code, payload = _run(capsys, ["ramification", "--poly", "[2, 0, 1]", "--p", "2"])
    assert code == EXIT_PASS, "Test failed."
    breaks = payload["report"]["breaks"]
    assert breaks["degree"] == 2, "Test failed."
    assert breaks["lower_breaks"] == [{"break": "2", "count": 1}], "Test failed."


@pytest.mark.cli
def test_ramification_poly_from_file(tmp_path, capsys):
    path = tmp_path / "poly.json"
    path.write_text("[-2, 0, 1]")
    code, payload = _run(capsys, ["ramification", "--poly", str(path), "--p", "2"])
    assert code == EXIT_PASS and payload["report"]["breaks"]["degree"] == 2, "Test failed."


@pytest.mark.cli
def test_ramification_not_eisenstein(capsys):
    code, payload = _run(capsys, ["ramification", "--poly", "[-1, 0, 1]", "--p", "2"])
    assert code == EXIT_FAILURE, "Test failed."
    assert payload["error"]["type"] == "NotEisenstein", "Test failed."


@pytest.mark.cli
@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        [],
        ["chebyshev", "--d", "2", "--base", "3", "--n", "1", "--tolerance", "2"],
        ["chebyshev", "--d", "2", "--base", "3", "--n", "1", "--precision", "0"],
        ["chebyshev", "--d", "2", "--base", "three", "--n", "1"],
        ["ramification", "--poly", "[2, 0, 1]"],
        ["ramification", "--poly", "[2, 0, 1]", "--cyclotomic", "2", "1", "--p", "2"],
        ["analyze", "--map", "does-not-exist.json"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run_command(argv) == EXIT_USAGE, "Test failed."
    assert capsys.readouterr().out == "", "Test failed."


@pytest.mark.cli
def test_invalid_map_literal(tmp_path, capsys):
    path = _map_file(tmp_path, {"numerator": [1]})
    assert run_command(["analyze", "--map", path]) == EXIT_USAGE, "Test failed."


@pytest.mark.cli
def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = run_command(["chebyshev", "--d", "3", "--base", "3", "--n", "1", "--output", str(target)])
    assert code == EXIT_PASS and capsys.readouterr().out == "", "Test failed."
    text = target.read_text()
    payload = json.loads(text)
    assert list(payload) == sorted(payload), "Test failed."
    assert {"command", "config", "passed", "report", "timestamp"} <= set(payload), "Test failed."
    assert payload["config"]["precision"] == 60, "Test failed."


@pytest.mark.cli
@pytest.mark.slow
def test_apf(tmp_path, capsys):
    path = _map_file(tmp_path, {"num": ["2", "0", "1"]})
    code, payload = _run(capsys, ["apf", "--map", path, "--p", "2", "--depth", "2"])
    assert code == EXIT_PASS, "Test failed."
    assert payload["passed"] and payload["report"]["verdict"] == "pass", "Test failed."
    assert len(payload["report"]["levels"]) == 2, "Test failed."


@pytest.mark.cli
@pytest.mark.parametrize(
    "data,expected",
    [
        (["--precision", "30", "--depth", "2", "apf", "--map", "m.json", "--p", "2"], (30, 2, 1.0)),
        (["apf", "--map", "m.json", "--p", "2", "--precision", "30", "--depth", "2"], (30, 2, 1.0)),
        (["--precision", "30", "apf", "--map", "m.json", "--p", "2", "--precision", "25"], (25, None, 1.0)),
        (["--tolerance", "0.5", "chebyshev", "--d", "2", "--base", "3", "--n", "1"], (60, None, 0.5)),
        (["chebyshev", "--d", "2", "--base", "3", "--n", "1"], (60, None, 1.0)),
    ],
)
def test_global_flags_either_side_of_subcommand(data, expected):
    args = build_parser().parse_args(data)
    assert (args.precision, args.depth, args.tolerance) == expected, "Test failed."


@pytest.mark.cli
@pytest.mark.slow
def test_apf_global_flags_before_subcommand(tmp_path, capsys):
    path = _map_file(tmp_path, {"num": ["2", "0", "1"]})
    code, payload = _run(capsys, ["--precision", "30", "--depth", "2", "apf", "--map", path, "--p", "2"])
    assert code == EXIT_PASS, "Test failed."
    assert (payload["config"]["precision"], payload["config"]["depth"]) == (30, 2), "Test failed."
    assert len(payload["report"]["levels"]) == 2, "Test failed."
