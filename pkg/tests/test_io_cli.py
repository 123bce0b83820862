import json
from pathlib import Path

import pytest

from ncalc import io
from ncalc.algebra import quantum_plane, validate_algebra
from ncalc.calculus import kaehler_calculus, universal_kernel_calculus, validate_fodc
from ncalc.cli import main
from ncalc.duality import cartan_from_fodc, validate_cartan_pair
from ncalc.linalg import Field, QQ

from conftest import CORPUS

DATA = Path(__file__).resolve().parents[1] / "data"


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


# ---- parsers

def test_builtin_round_trip(algebra):
    doc = json.loads(json.dumps(io.algebra_to_json(algebra)))
    back = io.parse_algebra(doc)
    assert back.same_structure(algebra)
    assert back.labels == algebra.labels


def test_prime_field_round_trip():
    a = quantum_plane(2, 2, Field(5))
    assert io.parse_algebra(io.algebra_to_json(a)).same_structure(a)


def test_dual_numbers_file():
    a = io.read_algebra(DATA / "dualnumbers.alg")
    assert a.dim == 2 and validate_algebra(a).ok


def test_builtin_reference():
    a = io.parse_algebra({"builtin": "quantum_plane", "q": "-1", "N": 2})
    assert a.dim == 4
    assert a.same_structure(quantum_plane(-1, 2))


def test_duplicate_triple_is_named():
    with pytest.raises(io.ParseError) as exc:
        io.read_algebra(DATA / "corrupted.alg")
    assert "(0, 1, 1)" in str(exc.value)
    assert exc.value.where == "mul[3]"


@pytest.mark.parametrize("doc, where", [
    ({"dim": 1, "unit": [1], "mul": [[0, 0, 0, 0.5]]}, "mul[0][3]"),
    ({"dim": 1, "unit": [1], "mul": [[0, 0, 1, 1]]}, "mul[0][2]"),
    ({"dim": 2, "unit": [1], "mul": []}, "unit"),
    ({"dim": 1, "mul": []}, "unit"),
    ({"dim": 1, "unit": [1], "mul": [], "field": "R"}, "field"),
    ({"builtin": "quantum_plane", "q": "-1"}, "N"),
    ({"builtin": "free_algebra"}, "builtin"),
    ({"dim": 1, "unit": ["1/0"], "mul": []}, "unit[0]"),
])
def test_schema_errors_carry_location(doc, where):
    with pytest.raises(io.ParseError) as exc:
        io.parse_algebra(doc)
    assert exc.value.where == where


def test_malformed_json_reports_line(tmp_path):
    p = write(tmp_path, "bad.alg", '{\n "dim": 2,\n "unit": [1, 0\n}')
    with pytest.raises(io.ParseError) as exc:
        io.read_algebra(p)
    assert "line" in exc.value.where


def test_generators_must_lie_in_kernel(dual_numbers):
    with pytest.raises(io.ParseError):
        io.parse_generators({"ambient": "ker_mu", "gens": [[1, 0, 0, 0]]}, dual_numbers)
    assert len(io.read_generators(DATA / "dualnumbers_dx_dx.gens", dual_numbers)) == 1


def test_fodc_round_trip(algebra):
    f = universal_kernel_calculus(algebra)
    g = io.parse_fodc(json.loads(json.dumps(io.fodc_to_json(f))), algebra)
    assert g.d == f.d
    assert g.omega.left == f.omega.left and g.omega.right == f.omega.right


def test_fodc_for_other_algebra_is_rejected(dual_numbers):
    doc = io.fodc_to_json(universal_kernel_calculus(dual_numbers))
    doc["algebra"] = io.algebra_to_json(quantum_plane(-1, 2))
    with pytest.raises(io.ParseError):
        io.parse_fodc(doc, dual_numbers)


def test_broken_fodc_parses_but_fails(dual_numbers):
    f = io.read_fodc(DATA / "broken.fodc", dual_numbers)
    assert not validate_fodc(f).ok


def test_cartan_round_trip(dual_numbers):
    cp = cartan_from_fodc(kaehler_calculus(dual_numbers))
    back = io.parse_cartan(io.cartan_to_json(cp), dual_numbers)
    assert back.action == cp.action
    assert validate_cartan_pair(back).ok


def test_braiding_round_trip(dual_numbers):
    from ncalc.bimodule import flip_braiding
    b = flip_braiding(dual_numbers, 2, "alpha")
    back = io.parse_braiding(io.braiding_to_json(b), dual_numbers)
    assert back.matrix == b.matrix and back.kind == "alpha"


# ---- command line

def run(capsys, *args):
    code = main([str(a) for a in args])
    return code, capsys.readouterr()


def test_cli_universal(capsys):
    code, out = run(capsys, "universal", DATA / "dualnumbers.alg")
    assert code == 0
    assert "pass dim ker(mu) = n^2 - n" in out.out
    assert "pass braiding pair (gamma, chi): beta o alpha = id" in out.out


def test_cli_validate_broken_algebra(capsys):
    code, out = run(capsys, "validate", DATA / "broken.alg")
    assert code == 1
    assert "('x', 'x', 'x')" in out.out


def test_cli_corrupted_algebra(capsys):
    code, out = run(capsys, "report", DATA / "corrupted.alg")
    assert code == 2
    assert "duplicate structure triple" in out.err


def test_cli_non_associative_input_is_an_input_error(capsys):
    assert run(capsys, "universal", DATA / "broken.alg")[0] == 2


def test_cli_cartan(capsys):
    code, out = run(capsys, "cartan", DATA / "dualnumbers.alg", "--fodc", "universal")
    assert code == 0
    assert "dim = 2" in out.out


def test_cli_broken_fodc(capsys):
    assert run(capsys, "cartan", DATA / "dualnumbers.alg", "--fodc", DATA / "broken.fodc")[0] == 1
    assert run(capsys, "validate", DATA / "dualnumbers.alg", "--fodc", DATA / "broken.fodc")[0] == 1


def test_cli_kaehler_needs_commutative(capsys):
    assert run(capsys, "kaehler", "builtin:matrix_algebra:k=2")[0] == 2
    assert run(capsys, "kaehler", "builtin:truncated_polynomial:m=3")[0] == 0


def test_cli_usage_errors(capsys):
    assert run(capsys, "frobnicate", "x")[0] == 2
    assert run(capsys, "report", "builtin:nothing")[0] == 2
    assert run(capsys, "--field", "Fp:6", "report", "builtin:truncated_polynomial:m=2")[0] == 2
    assert run(capsys, "report", "builtin:truncated_polynomial:m=2", "--criteria", "1,99")[0] == 2


def test_cli_fodc_emit_then_cartan(tmp_path, capsys):
    out = tmp_path / "q.fodc"
    assert run(capsys, "fodc", DATA / "m2.alg", "--ideal", DATA / "m2_offdiag.gens", "--emit", out)[0] == 0
    code, res = run(capsys, "reconstruct", DATA / "m2.alg", "--fodc", out)
    assert code == 0
    assert "double dual map o d = reconstructed d" in res.out


def test_cli_cartan_emit_then_reconstruct(tmp_path, capsys):
    out = tmp_path / "pair.json"
    assert run(capsys, "cartan", DATA / "dualnumbers.alg", "--fodc", "kaehler", "--emit", out)[0] == 0
    assert run(capsys, "reconstruct", DATA / "dualnumbers.alg", "--cartan", out)[0] == 0
    assert run(capsys, "validate", DATA / "dualnumbers.alg", "--cartan", out)[0] == 0


def test_cli_json_is_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["report", "builtin:truncated_polynomial:m=3", "--format", "json", "--seed", "5"]
    assert run(capsys, *args, "--out", a)[0] == 0
    assert run(capsys, *args, "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["exit_code"] == 0 and len(doc["reports"]) == 10


def test_cli_flags_before_and_after_verb(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run(capsys, "--format", "json", "universal", DATA / "dualnumbers.alg", "--out", out)[0] == 0
    assert json.loads(out.read_text())["reports"][0]["ok"]


def test_cli_field_override_is_logged(capsys, caplog):
    code, out = run(capsys, "--field", "Fp:3", "validate", DATA / "dualnumbers.alg")
    assert code == 0
    assert any("field override" in r.getMessage() for r in caplog.records)


def test_cli_report_all_corpus(capsys):
    for name in ("truncated_polynomial:m=2", "quantum_plane:q=-1,N=2"):
        code, out = run(capsys, "report", "builtin:" + name, "--criteria", "1,5,7")
        assert code == 0
        assert out.out.count("[PASS]") == 3


def test_cli_other_verbs(capsys):
    for verb in ("end-structures", "splitting", "dual"):
        assert run(capsys, verb, DATA / "quantum_plane.alg")[0] == 0
    assert run(capsys, "dual", DATA / "dualnumbers.alg", "--side", "left", "--fodc", "kaehler")[0] == 0
