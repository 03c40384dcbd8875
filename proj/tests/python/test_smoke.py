import json
import pathlib

import pytest

import orbiclan

ROOT = pathlib.Path(__file__).resolve().parents[2]
CORPUS = ROOT / "data" / "corpus"
MUTATED = ROOT / "tests" / "data" / "mutated" / "typeI_dropped.json"


def fixture(name):
    return (CORPUS / f"{name}.json").read_text()


def test_validate_and_census():
    r = orbiclan.validate(fixture("typeII"))
    assert r["ok"]
    assert "census" in r


def test_validate_reports_violations():
    doc = {"arcs": [{"label": "a", "pending": True}], "boundary": ["b"], "triangles": [["a", "a", "b"]]}
    r = orbiclan.validate(doc)
    assert not r["ok"]
    assert r["violations"]


def test_cocycle_counts():
    assert len(orbiclan.cocycles(fixture("typeII"))) == 4
    assert len(orbiclan.cocycles(fixture("pentagon_fan"))) == 2


def test_run_type_ii_consistent():
    report, code = orbiclan.run(fixture("typeII"), degree_cap=10, cocycle_cap=16)
    assert code == 0
    assert report["schema"] == "orbiclan/1"
    assert len(report["cases"]) == 8
    assert {c["status"] for c in report["cases"]} == {"consistent"}


def test_run_mutated_is_inconsistent():
    report, code = orbiclan.run(MUTATED.read_text(), flavor="c")
    assert code == 1
    assert all(c["status"] == "inconsistent" for c in report["cases"])


def test_sweep(tmp_path):
    summary, code = orbiclan.sweep(CORPUS)
    assert code == 0
    assert len(summary["rows"]) == 32
    empty, code = orbiclan.sweep(tmp_path)
    assert code == 0
    assert empty["rows"] == []


def test_export_species():
    ex = orbiclan.export(fixture("typeIII"), cocycle=0, flavor="b")
    assert ex["species"]["potential"]["convention"] == "second-twisted"
    assert len(ex["species"]["potential"]["terms"]) == 1


def test_morita_of_reference_algebras():
    r = orbiclan.morita_profile(orbiclan.reference_algebra("R"))
    m2 = orbiclan.morita_profile(orbiclan.reference_algebra("M2"))
    c = orbiclan.morita_profile(orbiclan.reference_algebra("C"))
    assert orbiclan.compare_morita(r, m2)["verdict"] == "consistent"
    assert orbiclan.compare_morita(r, c)["verdict"] == "inconsistent"


def test_errors_are_python_exceptions():
    with pytest.raises(orbiclan.OrbiclanError):
        orbiclan.validate("{ not json")
    with pytest.raises(orbiclan.OrbiclanError):
        orbiclan.run(fixture("typeI"), flavor="x")
    with pytest.raises(orbiclan.RefusalError):
        orbiclan.cocycles(fixture("typeII"), cap=2)
    assert issubclass(orbiclan.RefusalError, orbiclan.OrbiclanError)


def test_dict_and_text_inputs_agree():
    text = fixture("typeI")
    assert orbiclan.validate(text) == orbiclan.validate(json.loads(text))
