import json
import subprocess
import sys

import pytest

from lambdamn.cli import run
from lambdamn.ktmod import LabeledMatrix, labeled_to_triple
from lambdamn.strata import staircase

from oracles import brute_h


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_classify_csv(capsys):
    code, out, _ = invoke(capsys, "classify", "5", "5", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 88 and lines[0].startswith("shape,parameters,p,q")


def test_classify_json_certified_and_dedup(capsys):
    code, out, _ = invoke(capsys, "classify", "3", "3", "--certify", "--dedup")
    js = json.loads(out)
    assert code == 0
    assert js["totalWithOrientation"] == js["formulaValue"] == js["dedupCount"] == 15
    assert js["certified"] and all(e["certified"] for e in js["entries"])


def test_classify_tex(capsys):
    code, out, _ = invoke(capsys, "classify", "3", "3", "--format", "tex")
    assert code == 0 and out.startswith(r"\begin{tabular}")


@pytest.mark.parametrize("argv", [
    ["classify", "0", "3"],
    ["classify", "3", "3", "--format", "xml"],
    ["classify", "three", "3"],
    ["stratum", "--m", "2", "--n", "2", "--p", "3", "--q", "1"],
    ["stratum", "--m", "5", "--n", "4", "--p", "1,3", "--q", "4"],
    ["normal-form", "--m", "5", "--n", "5", "--p", "2,2", "--q", "2"],
    ["endo", "--input", "/nonexistent/file.json"],
    ["local", "--loops", "1"],
    ["frobnicate"],
    [],
])
def test_invalid_input_exits_1(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 1 and out == "" and err


def test_stratum(capsys):
    code, out, _ = invoke(capsys, "stratum", "--m", "5", "--n", "4", "--p", "4,3,1", "--q", "4,2")
    js = json.loads(out)
    assert code == 0
    assert (js["h"], js["candidate"]) == (brute_h((4, 3, 1), (4, 2)), False)
    code, out, _ = invoke(capsys, "stratum", "--m", "3", "--n", "2", "--p", "3,1", "--q", "2")
    assert json.loads(out)["dim"] == 15 and json.loads(out)["candidate"]


def test_normal_form(capsys):
    code, out, _ = invoke(capsys, "normal-form", "--m", "4", "--n", "3", "--p", "4,1", "--q", "3")
    M = LabeledMatrix.from_json(json.loads(out))
    assert code == 0 and M == staircase((4, 1), (3,))


def test_local(capsys):
    code, out, _ = invoke(capsys, "local", "--loops", "2")
    js = json.loads(out)
    assert code == 0
    assert {k: js[k] for k in ("tangent", "orbit", "quotient", "componentDim", "denseOrbit")} == \
        {"tangent": 3, "orbit": 2, "quotient": 1, "componentDim": 3, "denseOrbit": False}
    code, out, _ = invoke(capsys, "local", "--loops", "3", "--lambda", "2,1/3")
    assert json.loads(out)["lambda"] == ["2", "1/3"]


def test_sample_then_reduce(capsys, tmp_path):
    argv = ["sample", "--m", "4", "--n", "3", "--p", "4,1", "--q", "3,2",
            "--field", "fp:10007", "--seed", "5", "--count", "3"]
    code, out, _ = invoke(capsys, *argv)
    js = json.loads(out)
    assert code == 0 and js["seed"] == 5 and len(js["samples"]) == 3
    assert invoke(capsys, *argv)[1] == out
    path = write(tmp_path, "s.json", js["samples"][0])
    code, out, _ = invoke(capsys, "reduce", "--input", path, "--seed", "9")
    tr = json.loads(out)
    assert code == 0 and tr["replayed"] and tr["isomorphic"] and tr["seed"] == 9
    field = LabeledMatrix.from_json(js["samples"][0]).field
    assert LabeledMatrix.from_json(tr["result"]) == staircase((4, 1), (3, 2), field)


def test_reduce_accepts_triples_and_field_override(capsys, tmp_path):
    R = labeled_to_triple(staircase((3, 1), (2,)), 3, 2)
    obj = R.to_json()
    del obj["field"]
    path = write(tmp_path, "r.json", obj)
    code, out, _ = invoke(capsys, "reduce", "--input", path, "--field", "fp:7")
    assert code == 0 and json.loads(out)["result"]["field"] == {"kind": "Fp", "p": 7}


def test_reduce_not_general_exits_2(capsys, tmp_path):
    Z = LabeledMatrix.zeros((3, 2), (4, 1))
    path = write(tmp_path, "z.json", dict(Z.to_json(), m=4, n=3))
    code, out, _ = invoke(capsys, "reduce", "--input", path)
    assert code == 2 and json.loads(out)["not_general"]


def test_endo_and_indec(capsys, tmp_path):
    R = labeled_to_triple(staircase((3, 1), (3, 2)), 3, 3)
    path = write(tmp_path, "r.json", R.to_json())
    code, out, _ = invoke(capsys, "endo", "--input", path)
    js = json.loads(out)
    assert code == 0 and js["is_local"] and len(js["basis"]) == js["dim"]
    code, out, _ = invoke(capsys, "indec", "--input", path)
    assert code == 0 and json.loads(out)["indecomposable"]
    S = labeled_to_triple(staircase((1,), (1,)).block_sum(staircase((1,), (1,))), 1, 1)
    path2 = write(tmp_path, "s.json", S.to_json())
    assert not json.loads(invoke(capsys, "indec", "--input", path2)[1])["indecomposable"]


def test_indec_over_prime_field_exits_1(capsys, tmp_path):
    R = labeled_to_triple(staircase((1,), (1,)), 1, 1)
    obj = dict(R.to_json(), field={"kind": "Fp", "p": 7})
    code, _, err = invoke(capsys, "indec", "--input", write(tmp_path, "r.json", obj))
    assert code == 1 and "Q" in err


def test_degen(capsys, tmp_path):
    M = labeled_to_triple(staircase((4,), (1,)), 4, 2)
    N = labeled_to_triple(staircase((3, 1), (1,)), 4, 2)
    a, b = write(tmp_path, "m.json", M.to_json()), write(tmp_path, "n.json", N.to_json())
    code, out, _ = invoke(capsys, "degen", "--from", a, "--to", b)
    assert code == 0 and json.loads(out)["passes"]
    code, out, _ = invoke(capsys, "degen", "--from", b, "--to", a, "--max-word-len", "3")
    assert code == 2 and not json.loads(out)["conditions"]["endo_dim"]


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = invoke(capsys, "local", "--loops", "2", "--out", str(target))
    assert code == 0 and out == "" and json.loads(target.read_text())["tangent"] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lambdamn", "classify", "3", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["totalWithOrientation"] == 15
