import json

import pytest

from att.groupoid import check_pseudofunctor
from att.models import Model, ModelError, load_model, shipped_models
from att.verify import (counterexample_record, functor_family, model_motives, normal_collapse,
                        verify_model, verify_pseudofunctor)

SIG = ("type A\ntype C (x : A, y : A, p : Id(A, x, y))\n"
       "const c (x : A) : C(x, x, r(x))\nconst a : A\n")


def minimal(**over):
    data = {"name": "m", "signature": SIG, "groupoids": {"1": "trivial"},
            "types": {"A": {"fibers": "1"}, "C": {"fibers": "1"}},
            "constants": {"c": {"objects": "*"}, "a": {"objects": "*"}}}
    data.update(over)
    return data


def test_shipped_models_load():
    names = {m.name for m in shipped_models()}
    assert {"strict", "nonnormal", "counterexample", "twisted"} <= names


def test_shipped_models_are_small(models):
    for m in models.values():
        for name, A in m.pseudofunctors():
            assert all(F.n_mor <= 64 for F in A.fibers)
            assert check_pseudofunctor(A).ok, (m.name, name)


def test_minimal_model():
    m = Model(minimal())
    assert m.type_pf("A").fibers[0].n_obj == 1
    assert m.const_section("a").check().ok
    assert model_motives(m) == [("A", "C", "c")]


def test_unknown_groupoid():
    with pytest.raises(ModelError, match="unknown groupoid"):
        Model(minimal(families={"X": {"base": "nope", "fibers": "1"}}))


def test_missing_type_interpretation():
    m = Model(minimal(types={"A": {"fibers": "1"}}))
    with pytest.raises(ModelError, match="does not interpret type 'C'"):
        m.type_pf("C")


def test_bad_component():
    data = minimal(groupoids={"1": "trivial", "Z2": {"cyclic": 2}},
                   types={"A": {"fibers": "Z2", "psi": "q"}, "C": {"fibers": "1"}})
    with pytest.raises(ModelError, match="no element 'q'"):
        Model(data).type_pf("A")


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(ModelError, match="invalid JSON"):
        load_model(p)


def test_explicit_groupoid_table():
    data = minimal(groupoids={"1": "trivial", "Z2": {
        "objects": ["*"], "morphisms": [["e", "*", "*"], ["s", "*", "*"]],
        "compose": {"e,e": "e", "e,s": "s", "s,e": "s", "s,s": "e"},
        "identities": {"*": "e"}}})
    m = Model(data)
    assert m.groupoid("Z2").n_mor == 2


@pytest.mark.parametrize("name", ["strict", "nonnormal", "counterexample", "twisted"])
def test_verify_model(models, name):
    r = verify_model(models[name])
    assert r.ok, r.all_failures()[:5]
    assert r.total_checks() > 1000


def test_verifier_catches_incoherent_family():
    data = minimal(groupoids={"1": "trivial", "Z2": {"cyclic": 2}},
                   families={"bad": {"base": "1", "fibers": "Z2", "phi": "e", "psi": "s"}})
    r = verify_model(Model(data))
    assert not r.ok
    assert any("unit law" in f for f in r.all_failures())


def test_functor_family_shape(models):
    B = models["strict"].groupoid("Z2")
    names = [F.name for F in functor_family(B)]
    assert names[0] == "1" and "pt→*" in names and "e0" in names


def test_normal_collapse_only_on_strict(models):
    assert normal_collapse(models["strict"]).ok
    assert normal_collapse(models["twisted"]).ok
    assert not normal_collapse(models["nonnormal"]).ok


def test_counterexample_record(models):
    rec = counterexample_record(models["counterexample"])
    assert rec["judgmental"] is False
    assert rec["H_section"] and rec["H_checks"] and rec["coherent"]
    assert any(row["J[r]"] != row["c"] for row in rec["table"])
    json.dumps(rec)


def test_counterexample_record_on_strict(models):
    assert counterexample_record(models["strict"])["judgmental"] is True


def test_single_pseudofunctor_report(models):
    A = models["nonnormal"].families["N"]
    r = verify_pseudofunctor(A, "N")
    assert r.ok and r.total_checks() > 50
