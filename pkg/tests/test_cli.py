import json
import subprocess
import sys

import pytest

from unitforms.cli import format_poly, run

A3_JSON = json.dumps({"vertices": 4, "arrows": [[1, 2], [2, 3], [3, 4]]})
STAR_JSON = json.dumps({"vertices": 4, "arrows": [[1, 2], [1, 3], [1, 4]]})


def _run(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _json(capsys, argv):
    code, out, _ = _run(capsys, argv)
    return code, json.loads(out)


def test_form(capsys):
    code, doc = _json(capsys, ["form", "[[1, -1], [0, 1]]"])
    assert code == 0
    assert doc["symmetric_gram"] == [[2, -1], [-1, 2]]
    assert doc["positive"] and not doc["principal"] and doc["rank"] == 2


def test_quiver(capsys):
    code, doc = _json(capsys, ["quiver", "--arrows", "1->2"])
    assert code == 0 and doc["tri_gram"] == [[1]] and doc["tree"]
    code, doc = _json(capsys, ["quiver", A3_JSON])
    assert doc["incidence"] == [[1, 0, 0], [-1, 1, 0], [0, -1, 1], [0, 0, -1]]
    assert doc["corank"] == 0


def test_file_input(capsys, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(A3_JSON)
    code, doc = _json(capsys, ["quiver", str(path)])
    assert code == 0 and doc["quiver"]["vertices"] == 4


def test_transform(capsys):
    log = json.dumps([{"op": "flation", "i": 1, "j": 2, "eps": -1}])
    code, doc = _json(capsys, ["transform", "[[1, -1], [0, 1]]", log])
    assert code == 0
    assert doc["b"] == [[1, 0], [1, 1]]
    assert doc["result"]["tri_gram"] == [[1, 1], [0, 1]]


def test_reduce(capsys):
    code, doc = _json(capsys, ["reduce", A3_JSON, "--canonical"])
    assert code == 0 and doc["verified"] is True
    assert all(1 in a for a in doc["output"]["arrows"])
    code, doc = _json(capsys, ["reduce", "--arrows", "1->2, 2->3, 3->1"])
    assert code == 0 and doc["shape"] is not None and doc["verified"]


def test_inverse(capsys):
    code, doc = _json(capsys, ["inverse", "--arrows", "1->2, 2->3"])
    assert code == 0 and doc["agree"]
    assert doc["walk"]["arrows"] == [[1, 2], [1, 3]]


def test_coxeter(capsys):
    code, doc = _json(capsys, ["coxeter", "--arrows", "1->2, 2->3"])
    assert doc["phi"] == [[-1, -1], [1, 0]] and doc["coxeter_number"] == 3
    code, doc = _json(capsys, ["coxeter", "--one-star", "4,1,5"])
    assert doc["agree"] and doc["closed_form"] == [1, -1, 0, 0, -1, 1]
    code, doc = _json(capsys, ["coxeter", "--cap", "2", "[[1, -1], [0, 1]]"])
    assert doc["coxeter_number"] == "infinite" and doc["cap_based"]


def test_realize(capsys):
    code, doc = _json(capsys, ["realize", "[[1, 1], [0, 1]]"])
    assert code == 0 and doc["dynkin"] == "A2" and doc["corank"] == 0


def test_classify_exit_codes(capsys):
    code, doc = _json(capsys, ["classify", A3_JSON, STAR_JSON])
    assert code == 0 and doc["congruent"] and doc["verified"]
    code, _ = _json(capsys, ["classify", A3_JSON, "[[1, -1], [0, 1]]"])
    assert code == 1
    corank2 = json.dumps({"vertices": 2, "arrows": [[1, 2], [2, 1], [1, 2]]})
    other = json.dumps({"vertices": 2, "arrows": [[1, 2], [1, 2], [2, 1]]})
    code, doc = _json(capsys, ["classify", corank2, other])
    assert code == 2 and doc["status"] == "unsupported_corank"


def test_classify_many_with_jobs(capsys):
    code, doc = _json(capsys, ["classify", "--jobs", "2", A3_JSON, STAR_JSON, "[[1, 0, 1], [0, 1, -1], [0, 0, 1]]"])
    assert isinstance(doc, list) and len(doc) == 3
    assert [(d["i"], d["j"]) for d in doc] == [(1, 2), (1, 3), (2, 3)]


def test_errors(capsys):
    gamma = json.dumps({"symmetric": [[2, -5, -2, -2], [-5, 2, 0, 0], [-2, 0, 2, -3], [-2, 0, -3, 2]]})
    code, out, err = _run(capsys, ["realize", gamma])
    assert code == 3 and "NotNonNegative" in err and out == ""
    code, _, err = _run(capsys, ["form", "not json"])
    assert code == 3
    code, _, err = _run(capsys, ["reduce", "--arrows", "1->2, 2->1, 1->2"])
    assert code == 3


def test_pretty_and_repeatable(capsys):
    argv = ["coxeter", "--format", "pretty", "--arrows", "1->2, 2->3"]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert first == second
    assert "charpoly: 1 + x + x^2" in first
    _, a, _ = _run(capsys, ["classify", A3_JSON, STAR_JSON])
    _, b, _ = _run(capsys, ["classify", A3_JSON, STAR_JSON])
    assert a == b


@pytest.mark.parametrize(
    "coeffs, text",
    [([1, 1, 1], "1 + x + x^2"), ([1, -2, 1], "1 - 2x + x^2"), ([0, -1], "-x"), ([0], "0")],
)
def test_format_poly(coeffs, text):
    assert format_poly(coeffs) == text


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "unitforms", "quiver", "--arrows", "1->2"], capture_output=True, text=True
    )
    assert res.returncode == 0 and json.loads(res.stdout)["tri_gram"] == [[1]]
