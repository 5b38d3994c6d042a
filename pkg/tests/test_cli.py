import io
import json
from pathlib import Path

import pytest

from mixedhstar.cli import JobSpec, main, run, run_corpus
from mixedhstar.io import polys_from_json
from mixedhstar.laurent import parse

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def write(tmp_path, obj, name="case.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def call(spec):
    out = io.StringIO()
    code = run(spec, out=out)
    return code, out.getvalue()


def test_hstar_of_unit_simplex(tmp_path):
    path = write(tmp_path, {"vertices": [[0, 0], [1, 0], [0, 1]]})
    assert call(JobSpec("hstar", path)) == (0, "1\n")


def test_local_hstar_nonunimodal_with_oracle():
    code, out = call(JobSpec("local-hstar", str(CORPUS / "nonunimodal_simplex.json"), oracle=True))
    assert code == 0 and out == "t^2 + t^4\n"


def test_check_barycentric_b4():
    code, out = call(JobSpec("check", str(CORPUS / "bary_b4.json")))
    assert code == 0
    assert "FAIL" not in out
    assert "h: 1 + 11*t + 11*t^2 + t^3" in out


def test_json_round_trip_and_determinism():
    spec = JobSpec("limit-mixed", str(CORPUS / "cube_split.json"), output_format="json")
    code, out = call(spec)
    assert code == 0
    again = call(spec)[1]
    assert out == again
    polys = polys_from_json(json.loads(out)["polynomials"])
    assert polys["limit_mixed"] == parse("1 + 4*u*v + u^2*v^2")


@pytest.mark.parametrize("fmt", ["text", "json", "svg"])
def test_diamond_output_is_deterministic(fmt):
    spec = JobSpec("diamond", str(CORPUS / "random_d3_02.json"), output_format=fmt)
    first = call(spec)
    assert first[0] == 0 and first == call(spec)


def test_empty_polytope_diamond():
    assert call(JobSpec("diamond", str(CORPUS / "empty.json"))) == (0, "1\n")


def test_exit_codes(tmp_path):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{not json")
    assert call(JobSpec("hstar", str(bad_json)))[0] == 2
    assert call(JobSpec("hstar", str(tmp_path / "missing.json")))[0] == 2
    assert call(JobSpec("hstar", write(tmp_path, {"boolean": 3})))[0] == 2
    overlap = str(CORPUS / "bad_overlap.json")
    assert call(JobSpec("refined", overlap))[0] == 3
    wrong = write(tmp_path, {"vertices": [[0], [2]], "expected": {"hstar": "1 + 2*t"}})
    assert call(JobSpec("hstar", wrong))[0] == 4


def test_bary_command():
    code, out = call(JobSpec("bary", boolean=3))
    assert code == 0
    assert "h: 1 + 4*t + t^2" in out and "local_h: t + t^2" in out


def test_main_entry(capsys):
    assert main(["gpoly", str(CORPUS / "square_boundary.json")]) == 0
    assert capsys.readouterr().out.strip() == "1 + t"


def test_bundled_corpus_passes():
    out = io.StringIO()
    assert run_corpus(str(CORPUS), out=out) == 0
    assert "FAIL" not in out.getvalue()


def test_corpus_with_negated_coefficient(tmp_path):
    obj = json.loads((CORPUS / "bary_b4.json").read_text())
    obj["expected"]["h"] = "1 + 11*t - 11*t^2 + t^3"
    write(tmp_path, obj)
    out = io.StringIO()
    assert run_corpus(str(tmp_path), out=out) == 4


def test_empty_corpus_directory(tmp_path, capsys):
    out = io.StringIO()
    assert run_corpus(str(tmp_path), out=out) == 0
    assert "no cases" in capsys.readouterr().err


def test_random_corpus_prints_seed():
    out = io.StringIO()
    assert run_corpus(None, n_random=3, seed=11, out=out) == 0
    assert "seed 11" in out.getvalue()
