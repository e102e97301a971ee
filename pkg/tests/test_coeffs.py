import json

import pytest

from support import SYSTEMS, system

from hochpir import coeffs
from hochpir.errors import ConfigurationError, CutoffError, DegreeParityError


@pytest.mark.parametrize("name", SYSTEMS)
def test_builtin_systems_validate(name):
    rep = coeffs.validate(system(name))
    assert rep.passed, rep.failure
    assert all(ok for _, ok in rep.checks)


def test_parity_and_range_errors():
    with pytest.raises(DegreeParityError):
        coeffs.dual_numbers(3)
    with pytest.raises(ConfigurationError):
        coeffs.dual_numbers(0)
    with pytest.raises(DegreeParityError):
        coeffs.bead_coalgebra(2, [2, 3])
    with pytest.raises(ConfigurationError):
        coeffs.bead_coalgebra(2, [2])
    with pytest.raises(ConfigurationError):
        coeffs.bead_coalgebra(0)


def test_dual_numbers_table():
    cs = coeffs.dual_numbers()
    t = coeffs.describe_table(cs)
    assert [b["name"] for b in t["basis"]] == ["1", "x"]
    assert sorted(map(tuple, t["coproduct"]["x"])) == [("1", "x", "1"), ("x", "1", "1")]
    assert cs.lie.generators == [("xi", 1, (1,))]


def _inline(coproduct=None, pi=None):
    return {
        "name": "inline",
        "lie": {"generators": [{"name": "xi", "degree": 1, "color": [1]}]},
        "coalgebra": {
            "basis": [{"name": "1", "degree": 0, "color": [0]}, {"name": "x", "degree": 2, "color": [1]}],
            "coproduct": coproduct or {},
        },
        "pi": pi if pi is not None else {"x": {"xi": 1}},
    }


def test_inline_default_coproduct_is_primitive():
    cs = coeffs.from_json(_inline())
    assert coeffs.validate(cs).passed
    ref = coeffs.dual_numbers()
    assert cs.coalgebra.coproduct == ref.coalgebra.coproduct


def test_inline_broken_coproduct_fails_validation():
    cs = coeffs.from_json(_inline(coproduct={"x": [["x", "1", 1], ["1", "x", 2]]}))
    rep = coeffs.validate(cs)
    assert not rep.passed
    assert rep.failure.startswith("coassociativity")


def test_inline_bad_twisting_fails_validation():
    cs = coeffs.from_json(_inline(pi={"x": {"xi": 1}, "1": {"xi": 1}}))
    assert not coeffs.validate(cs).passed


def test_json_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        coeffs.from_json({"builder": "nope"})
    with pytest.raises(ConfigurationError):
        coeffs.from_json({"lie": {}})
    with pytest.raises(ConfigurationError):
        coeffs.load(tmp_path / "missing.json")
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"builder": "bead", "params": {"N": 2, "degrees": [2, 4]}}))
    cs = coeffs.load(p)
    assert cs.coalgebra.degrees == (0, 2, 4)


def test_chevalley_from_json():
    obj = {"builder": "chevalley", "params": {"weight_cutoff": 3},
           "lie": {"generators": [{"name": "a", "degree": 1, "color": [1, 0]},
                                  {"name": "b", "degree": 2, "color": [0, 1]}]}}
    cs = coeffs.from_json(obj)
    assert coeffs.validate(cs).passed
    assert cs.coalgebra.dim == system("chev_ab").coalgebra.dim
    assert any(cs.coalgebra.d(i) for i in range(cs.coalgebra.dim))
    with pytest.raises(ConfigurationError):
        coeffs.chevalley_system(cs.lie, 0)


def test_cutoff_enforced():
    cs = system("chev_ab")
    with pytest.raises(CutoffError):
        cs.check_cutoff((3, 1))
