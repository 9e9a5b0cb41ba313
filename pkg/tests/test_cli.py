import json

import pytest

from sdtring.cli import main
from sdtring.parser import GRAMMAR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "Z4", "--json")
    assert code == 0 and json.loads(out)["flags"]["sdt"] is True


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "T3(Z2)")
    assert code == 0 and "sdt: true" in out


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "classify", "Zx")
    assert code == 2 and "byte 1" in err


def test_build_error_exit(capsys):
    code, _, _ = run(capsys, "classify", "T3(Z9)", "--max-order", "1000")
    assert code == 3


def test_corner_flags(capsys):
    assert run(capsys, "classify", "T2(Z2)", "--corner", "2")[0] == 4
    assert run(capsys, "classify", "T2(Z2)", "--corner", "99")[0] == 4
    code, out, _ = run(capsys, "classify", "T2(Z2)", "--corner", "1", "--json")
    assert code == 0 and json.loads(out)["order"] == 2


@pytest.mark.parametrize("expr, name, expected", [
    ("Z8", "delta", [0, 2, 4, 6]), ("Z6", "jacobson", [0]), ("Z1", "units", [0]),
])
def test_sets(capsys, expr, name, expected):
    code, out, _ = run(capsys, "sets", expr, "--set", name)
    assert code == 0 and json.loads(out) == expected


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "Z9", "--suite", "lemma5", "--json")
    assert code == 0 and json.loads(out)["checks"] == [{"id": "lemma5", "status": "pass"}]
    code, out, _ = run(capsys, "verify", "Z5", "--suite", "lemma3")
    assert code == 0 and "skipped" in out
    assert run(capsys, "verify", "Z5", "--suite", "nope")[0] == 4


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "Z12", "--json")
    data = json.loads(out)
    assert code == 0 and data["r1"]["order"] == 2 and data["r2"]["order"] == 3 and data["verdict"]
    code, out, _ = run(capsys, "--json", "decompose", "T2(Z2)")
    data = json.loads(out)
    assert data["r1"] == {"order": 4, "boolean": True, "tables": data["r1"]["tables"]}
    assert data["r2"]["order"] == 1
    assert run(capsys, "decompose", "GF4")[0] == 4


def test_export_and_reimport(capsys, tmp_path):
    path = tmp_path / "r.json"
    assert run(capsys, "export", "Z4", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "verify", "--table", str(path), "--suite", "lemma3")
    assert code == 0 and "pass" in out
    assert run(capsys, "export", "T2(Z2 x Z27)")[0] == 4
    code, out, _ = run(capsys, "export", "T2(Z3)", "--what", "encoding")
    assert json.loads(out)["structure"] == "upper_triangular"


def test_bad_table_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"order": 2}')
    assert run(capsys, "verify", "--table", str(path))[0] == 3


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--problem", "c-delta", "--max-order", "8")
    data = json.loads(out)
    assert code == 0 and all(r["c_delta"] for r in data["rings"] if r["ring"].startswith("Z"))


def test_deterministic_output(capsys):
    a = run(capsys, "classify", "T2(Z3)", "--json", "--witnesses")[1]
    b = run(capsys, "classify", "T2(Z3)", "--json", "--witnesses")[1]
    assert a == b


def test_help_contains_grammar(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    assert GRAMMAR in capsys.readouterr().out
