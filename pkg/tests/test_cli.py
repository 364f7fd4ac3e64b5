import json

import pytest

from cli import main


def test_det_fixed_axis_text(capsys):
    assert main(["det", "--n", "2", "--m", "3", "--fixed-axis", "3"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "a[1,1,1].a[2,2,2] - q*a[1,2,1].a[2,1,2] - q*a[2,1,1].a[1,2,2] + q^2*a[2,2,1].a[1,1,2]"


def test_pf_blocks_text(capsys):
    assert main(["pf", "--k", "2", "--m", "1", "--blocks", "2"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "b[1,2].b[3,4] - q*b[1,3].b[2,4] + q^2*b[1,4].b[2,3]"


def test_det_json_reparses(capsys):
    assert main(["det", "--n", "2", "--m", "2", "--format", "json"]) == 0
    terms = json.loads(capsys.readouterr().out)
    assert len(terms) == 2


def test_minor_with_sets(capsys):
    assert main(["minor", "--n", "3", "--m", "2", "--sets", "1,2", "2,3"]) == 0
    assert capsys.readouterr().out.strip() == "a[1,2].a[2,3] - q*a[1,3].a[2,2]"


def test_relations_count_goes_to_stderr(capsys):
    assert main(["relations", "matq", "--n", "2"]) == 0
    captured = capsys.readouterr()
    assert "6 relations" in captured.err
    assert len(captured.out.strip().splitlines()) == 6


def test_list_json(capsys):
    assert main(["list", "--format", "json"]) == 0
    checks = json.loads(capsys.readouterr().out)
    assert checks[0]["id"] == "trel-equivalence"
    assert all({"id", "anchor", "description"} <= set(c) for c in checks)


def test_verify_exit_status_follows_verdict(capsys):
    assert main(["verify", "hyperdet-example-2cubed", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "exact_zero"


def test_verify_text_report(capsys):
    assert main(["verify", "detq-row-eq-col", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("detq-row-eq-col: exact_zero")
    assert "params: n=2" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["verify", "no-such-check"],
    ["det", "--n", "2", "--m", "3", "--fixed-axis", "4"],
    ["det", "--n", "2"],
    ["det", "--n", "0", "--m", "2"],
    ["minor", "--n", "2", "--m", "2", "--sets", "1,x", "2"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 64


def test_domain_errors_are_usage_errors(capsys):
    assert main(["minor", "--n", "2", "--m", "2", "--sets", "1,2", "1"]) == 64
    assert "ERROR" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["det", "--n", "2", "--m", "3"],
    ["det", "--n", "2", "--m", "3", "--format", "latex"],
    ["pf", "--k", "2", "--m", "1", "--blocks", "2", "--format", "json"],
    ["relations", "hyper", "--n", "2", "--m", "2"],
    ["list"],
])
def test_repeated_invocations_print_identical_bytes(argv, capsys):
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def _without_timings(report: dict) -> dict:
    report.pop("millis")
    for part in report["parts"].values():
        part.pop("millis")
    return report


def test_verify_json_is_stable_apart_from_timings(capsys):
    argv = ["verify", "cayley-odd-vanish", "--trials", "10", "--seed", "11", "--format", "json"]
    main(argv)
    first = _without_timings(json.loads(capsys.readouterr().out))
    main(argv)
    assert _without_timings(json.loads(capsys.readouterr().out)) == first
    assert first["seed"] == 11
