import json

import pytest

from poissondef.catalog import instantiate, sl2_bracket
from poissondef.cli import main
from poissondef.serialization import (
    SchemaError, algebra_from_json, algebra_to_json, bracket_from_json, map_from_json, map_to_json,
    pair_from_json, pair_to_json,
)
from poissondef.algebra import combine
from poissondef.multilinear import MultilinearMap


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    sl2 = tmp_path / "sl2.json"
    sl2.write_text(json.dumps(map_to_json(sl2_bracket())))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "bullet": [{"i": 1, "j": 1, "k": 1, "val": "1"}],
                               "bracket": [{"i": 1, "j": 2, "k": 2, "val": "1"},
                                           {"i": 2, "j": 1, "k": 2, "val": "-1"}]}))
    return tmp_path, sl2, bad


def test_serialization_round_trips():
    p = instantiate("P_10^3", a="1/2", b=-1)
    assert pair_from_json(pair_to_json(p)) == p
    a = combine(p)
    assert algebra_from_json(algebra_to_json(a)) == a
    m = MultilinearMap.random(3, 2)
    assert map_from_json(map_to_json(m)) == m
    assert bracket_from_json(pair_to_json(p)) == p.bracket
    assert algebra_to_json(a)["product"][0] == {"i": 1, "j": 1, "k": 2, "val": "1"}


@pytest.mark.parametrize("obj,field", [
    ({"arity": 2, "entries": []}, "dim"),
    ({"dim": 2, "arity": 2, "entries": [{"in": [1, 3], "out": 1, "val": "1"}]}, "entries[0].in[1]"),
    ({"dim": 2, "arity": 2, "entries": [{"in": [1, 1], "out": 1, "val": 0.5}]}, "entries[0].val"),
    ({"dim": 2, "arity": 2, "entries": [{"in": [1], "out": 1, "val": "1"}]}, "entries[0].in"),
])
def test_schema_errors_name_field(obj, field):
    with pytest.raises(SchemaError, match=field.replace("[", r"\[").replace("]", r"\]")):
        map_from_json(obj)


def test_verify_catalog(capsys):
    code, out, _ = run(capsys, "verify", "--catalog", "P_1^2")
    assert code == 0
    assert json.loads(out)["poisson"] is True


def test_verify_bad(capsys, files):
    _, _, bad = files
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 2
    w = {x["axiom"]: x for x in json.loads(out)["witnesses"]}
    assert w["leibniz"]["triple"] == [1, 1, 2]
    assert w["markl_remm"]["residual"] == ["0", "-4"]


def test_rigidity(capsys, files):
    _, sl2, _ = files
    code, out, _ = run(capsys, "rigidity", "--catalog", "P_12^3", "--bracket", str(sl2))
    assert code == 0
    assert json.loads(out)["assoc_rigid_order1"] is True


def test_split_combine_round_trip(capsys, tmp_path):
    code, alg, _ = run(capsys, "catalog-show", "P_10^3", "--params", "a=1,b=-1/2", "--combined")
    assert code == 0
    (tmp_path / "a.json").write_text(alg)
    _, pair, _ = run(capsys, "split", str(tmp_path / "a.json"))
    (tmp_path / "p.json").write_text(pair)
    _, back, _ = run(capsys, "combine", str(tmp_path / "p.json"))
    assert back == alg


def test_deterministic_output(capsys):
    first = run(capsys, "cocycles", "--catalog", "P_4^2", "--kind", "P2")
    second = run(capsys, "cocycles", "--catalog", "P_4^2", "--kind", "P2")
    assert first == second and first[0] == 0
    assert json.loads(first[1])["dim"] == 4


def test_spaces_and_text(capsys):
    code, out, _ = run(capsys, "--format", "text", "biderivations", "--catalog", "P_5^2", "--params", "a=1")
    assert code == 0 and out.startswith("ambient_dim: 8")
    code, out, _ = run(capsys, "ph-space", "--catalog", "P_1^2", "--k", "2")
    assert code == 0 and json.loads(out)["symmetry"] == "signed-sum"
    code, out, _ = run(capsys, "catalog-list")
    assert len(json.loads(out)["entries"]) == 17


def test_deform(capsys, tmp_path):
    _, alg, _ = run(capsys, "catalog-show", "P_2^2", "--combined")
    jet = tmp_path / "jet.json"
    jet.write_text(json.dumps({"base": json.loads(alg), "terms": []}))
    code, out, _ = run(capsys, "deform-extend", str(jet))
    payload = json.loads(out)
    assert code == 0 and payload["status"] == "solutions" and payload["kernel"]["dim"] == 4
    mu1 = payload["kernel"]["basis"][0]
    jet.write_text(json.dumps({"base": json.loads(alg), "terms": [mu1]}))
    code, out, _ = run(capsys, "deform-verify", str(jet))
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "deform-verify", str(jet), "--kind", "Lie")
    if not json.loads(out)["ok"]:
        assert code == 2 and json.loads(out)["stage"] == "symmetry"


def test_deform_obstructed(capsys, tmp_path):
    jet = tmp_path / "jet.json"
    jet.write_text(json.dumps({"base": {"dim": 2, "product": []},
                               "terms": [{"arity": 2, "dim": 2,
                                          "entries": [{"in": [1, 2], "out": 1, "val": "1"}]}]}))
    code, out, _ = run(capsys, "deform-extend", str(jet))
    assert code == 2 and json.loads(out)["status"] == "obstructed"


@pytest.mark.parametrize("argv", [
    ["verify", "--catalog", "P_99"],
    ["verify", "--catalog", "P_5^2", "--params", "a=3"],
    ["verify", "--catalog", "P_10^3", "--params", "a"],
    ["verify", "/nonexistent.json"],
    ["verify"],
    ["cocycles", "--catalog", "P_1^2", "--kind", "Q7"],
])
def test_malformed_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_malformed_json(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "verify", str(f))
    assert code == 1 and "invalid JSON" in err
    f.write_text(json.dumps({"dim": 2, "product": [{"i": 1, "j": 5, "k": 1, "val": "1"}]}))
    code, _, err = run(capsys, "verify", str(f))
    assert code == 1 and "product[0].j" in err
