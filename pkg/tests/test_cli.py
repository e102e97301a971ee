import csv
import json

import pytest

from hochpir.cli import main, rep_selector
from hochpir.errors import ParseError


def run(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    out, err = capsys.readouterr()
    return exc.value.code, out, err


def report(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 0, err
    return json.loads(out)


BROKEN = {
    "lie": {"generators": [{"name": "xi", "degree": 1, "color": [1]}]},
    "coalgebra": {
        "basis": [{"name": "1", "degree": 0, "color": [0]}, {"name": "x", "degree": 2, "color": [1]}],
        "coproduct": {"x": [["x", "1", 1], ["1", "x", 2]]},
    },
    "pi": {"x": {"xi": 1}},
}


def test_homology_of_first_representation(capsys):
    r = report(["homology", "--coeffs", "dual_numbers", "--n", "3", "--degree", "3", "--color", "3"], capsys)
    assert r["command"] == "homology"
    (s,) = r["slices"]
    assert s["homology"]["dim"] == 7
    assert len(s["homology"]["representatives"]) == 7
    assert r["conventions"]["sign_rule"].startswith("Koszul")


def test_factor_test_not_factoring(capsys):
    r = report(["factor-test", "--pair", "E12,E1b2b", "--rep", "UI3"], capsys)
    (p,) = r["verdicts"][0]["pairs"]
    assert p["verdict"] == "NOT_FACTORING"
    assert p["difference_coordinates"] == ["0", "0", "0", "0", "2", "0", "0"]


def test_action_reports_pair(capsys):
    r = report(["action", "--pair", "E12,E1b2b", "--rep", "UI3"], capsys)
    assert r["slices"][0]["pairs"][0]["verdict"] == "NOT_FACTORING"


def test_output_is_deterministic_and_job_independent(capsys, tmp_path):
    argv = ["homology", "--coeffs", "bead:N=2", "--n", "2", "--degree", "2..5", "--color", "1,1"]
    a = run(argv, capsys)
    b = run(argv, capsys)
    c = run(argv + ["--jobs", "2"], capsys)
    assert a[0] == 0 and a[1] == b[1]
    r1, r2 = json.loads(a[1]), json.loads(c[1])
    r1["scenario"].pop("jobs", None)
    r2["scenario"].pop("jobs", None)
    assert r1["slices"] == r2["slices"]
    out = tmp_path / "r.json"
    assert run(argv + ["--out", str(out)], capsys)[0] == 0
    assert out.read_text() == a[1]


def test_homology_csv(capsys, tmp_path):
    path = tmp_path / "dims.csv"
    run(["homology", "--coeffs", "dual_numbers", "--n", "1", "--degree", "0..3", "--color", "2",
         "--csv", str(path)], capsys)
    rows = list(csv.DictReader(path.open()))
    assert [r["degree"] for r in rows] == ["0", "1", "2", "3"]
    assert all(int(r["homology_dim"]) <= int(r["chain_dim"]) for r in rows)


@pytest.mark.parametrize("argv", [
    ["homology", "--coeffs", "nope", "--n", "1", "--degree", "1"],
    ["homology", "--coeffs", "dual_numbers", "--n", "1", "--color", "2"],
    ["homology", "--coeffs", "bead:N", "--n", "1", "--degree", "1"],
    ["factor-test", "--rep", "UI3"],
    ["action", "--rep", "U3"],
    ["bead", "--n", "2"],
    ["euler-projectors", "--m-max", "3"],
    ["induced-map", "--map", "twist(", "--degree", "2", "--color", "2"],
    ["homology", "--bogus"],
])
def test_configuration_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_scenario_unknown_field_exit_2(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"version": 1, "n": 1, "colour": [2]}))
    code, _, err = run(["homology", "--scenario", str(p)], capsys)
    assert code == 2 and "colour" in err
    p.write_text(json.dumps({"version": 2}))
    assert run(["homology", "--scenario", str(p)], capsys)[0] == 2


def test_scenario_file_runs(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"version": 1, "coefficients": {"builder": "dual_numbers"}, "n": 3,
                             "selectors": [{"degree": 3, "color": [3]}]}))
    r = report(["homology", "--scenario", str(p)], capsys)
    assert r["slices"][0]["homology"]["dim"] == 7


def test_validate_coeffs_exit_codes(capsys, tmp_path):
    r = report(["validate-coeffs", "--coeffs", "bead:N=2"], capsys)
    assert r["validation"]["passed"]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(BROKEN))
    code, out, err = run(["validate-coeffs", "--coeffs", str(p)], capsys)
    assert code == 3
    assert not json.loads(out)["validation"]["passed"]


def test_euler_projectors(capsys):
    r = report(["euler-projectors", "--m-max", "4"] + [a for c in range(0, 5) for a in ("--color", str(c))],
               capsys)
    assert r["idempotent"] and r["orthogonal"] and r["complete"]
    assert r["ranks"] == r["pbw_hodge_dims"]


def test_bead_table_and_csv(capsys, tmp_path):
    path = tmp_path / "bead.csv"
    r = report(["bead", "--partition", "2,1", "--n", "2", "--csv", str(path)], capsys)
    (t,) = r["tables"]
    assert t["flag"] == "CONJECTURAL" and t["partition"] == [2, 1]
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == len(t["rows"])


def test_induced_map_compare_star(capsys):
    r = report(["induced-map", "--map", "pinch", "--coeffs", "dual_numbers", "--degree", "1..3", "--color", "2",
                "--compare", "star"], capsys)
    assert r["map"]["name"] == "pinch(4)"
    for s in r["slices"]:
        assert s["chain_map"]["commutes"]
        assert s["compare_star"]["verdict"] == "AGREE"


def test_induced_map_custom_text(capsys):
    r = report(["induced-map", "--map", "Z = x:1; Y = y:2; y -> 1/2*[x,x]", "--complex", "suspension",
                "--degree", "2", "--color", "2"], capsys)
    assert r["map"]["rho"]["y"]["terms"]
    assert r["slices"][0]["chain_map"]["commutes"]


def test_rep_selector():
    assert rep_selector("UI3") == {"degree": 3, "color": [3]}
    assert rep_selector("UII2") == {"degree": 4, "color": [3]}
    with pytest.raises(ParseError):
        rep_selector("UIII2")
