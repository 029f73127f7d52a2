import json

import pytest

from tiltkit.cli import main
from tiltkit.schema import complex_from_json, fraction_from_json
from tiltkit.errors import ParseError


@pytest.fixture(scope="module")
def exported(tmp_path_factory):
    out = tmp_path_factory.mktemp("d2n")
    assert main(["d2n", "export", "--n", "4", "--out", str(out), "--quiet"]) == 0
    return out


def run(args, tmp_path):
    path = tmp_path / "report.json"
    code = main(args + ["--quiet", "--json", str(path)])
    return code, json.loads(path.read_text())


def test_algebra_build(exported, tmp_path):
    code, rep = run(["algebra", "build", str(exported / "a1_4.json")], tmp_path)
    assert code == 0 and rep["dim"] == 56
    assert rep["radical_layer_dims"] == [48, 40, 32, 24, 16, 8, 0]
    assert rep["self_injectivity"]["self_injective"]
    assert rep["symmetry"]["verdict"] == "not symmetric"


def test_malformed_and_unstable(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["algebra", "build", str(bad)], tmp_path)[0] == 2
    loop = tmp_path / "loop.json"
    loop.write_text(json.dumps({"vertices": ["1"], "arrows": [{"id": "x", "src": "1", "tgt": "1"}]}))
    code, rep = run(["algebra", "build", str(loop)], tmp_path)
    assert code == 3 and rep["error"] == "not stabilized"
    assert run(["algebra", "build", str(tmp_path / "missing.json")], tmp_path)[0] == 2


def test_complex_check_and_endo(exported, tmp_path):
    code, rep = run(["complex", "check", str(exported / "p1_4.json")], tmp_path)
    assert code == 0 and rep["tilting"]
    code, rep = run(["complex", "endo", str(exported / "p1_4.json")], tmp_path)
    assert code == 0 and rep["dim"] == 32
    # the emitted presentation is itself a valid algebra file of the same dimension
    endo = tmp_path / "endo.json"
    endo.write_text(json.dumps(rep))
    code, rep2 = run(["algebra", "build", str(endo)], tmp_path)
    assert code == 0 and rep2["dim"] == 32


def test_single_summand_fails(exported, tmp_path):
    d = json.loads((exported / "p1_4.json").read_text())
    c1 = next(s for s in d["summands"] if s["name"] == "C1")
    row = c1["rows_by_degree"]["0"][0]
    single = {
        "algebra": "a1_4.json",
        "degrees": {"0": [d["degrees"]["0"][row]]},
        "differential": [],
        "summands": [{"name": "C1", "rows_by_degree": {"0": [0]}}],
    }
    p = exported / "c1.json"
    p.write_text(json.dumps(single))
    code, rep = run(["complex", "check", str(p)], tmp_path)
    assert code == 1 and not rep["summand_count_ok"]


def test_d2n_demo(tmp_path):
    code, rep = run(["d2n", "demo", "--n", "4"], tmp_path)
    assert code == 0 and rep["verdict"] == "derived-equivalence certified" and rep["end_dim"] == 32
    assert run(["d2n", "demo", "--n", "3"], tmp_path)[0] == 2


def test_postnikov(exported, fixtures_dir, tmp_path):
    code, rep = run(["postnikov", "check", str(fixtures_dir / "gr36_symmetric.json")], tmp_path)
    assert code == 0 and rep["symmetric"] and rep["self_injectivity"]["self_injective"]
    code, rep = run(["postnikov", "compare", str(exported / "a1_4.json"), str(exported / "a2_4.json")], tmp_path)
    assert code == 0 and rep["consistent"]
    code, rep = run(["postnikov", "compare", str(exported / "a1_4.json"), str(fixtures_dir / "triangle.json")], tmp_path)
    assert code == 1 and not rep["consistent"]


def test_verify_iso(exported, tmp_path):
    a = json.loads((exported / "a1_4.json").read_text())
    assign = {
        "vertices": {v: v for v in a["vertices"]},
        "arrows": {x["id"]: [{"coeff": "1", "path": [x["id"]]}] for x in a["arrows"]},
    }
    p = tmp_path / "id.json"
    p.write_text(json.dumps(assign))
    assert run(["algebra", "verify-iso", str(exported / "a1_4.json"), str(exported / "a1_4.json"), str(p)], tmp_path)[0] == 0
    assert run(["algebra", "verify-iso", str(exported / "a1_4.json"), str(exported / "a2_4.json"), str(p)], tmp_path)[0] == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["algebra"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["d2n", "demo", "--n", "4", "--max-len", "1"])
    assert exc.value.code == 2


def test_schema_roundtrip(exported):
    x = complex_from_json(exported / "p1_4.json")
    assert len(x.summands) == 8
    assert fraction_from_json("-3/6") == fraction_from_json(-1) / 2
    with pytest.raises(ParseError):
        fraction_from_json(0.5)
