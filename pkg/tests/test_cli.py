import csv
import io
import json
from fractions import Fraction

import pytest

from sl3mtc.cli import main
from sl3mtc.cyclo import Cyclo
from sl3mtc.modular import modular_data


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_alcove(capsys):
    code, out = run(capsys, "alcove", "--level", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["count"] == 10 and len(doc["weights"]) == 10
    assert [0, 3] in doc["root_lattice"] and [1, 0] not in doc["root_lattice"]


def test_fusion_csv(capsys):
    code, out = run(capsys, "fusion", "--level", "1", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["a1", "a2", "b1", "b2", "c1", "c2", "n"]
    assert ["1", "0", "1", "0", "0", "1", "1"] in rows[1:]


def test_modular_exact_round_trip(capsys):
    code, out = run(capsys, "modular", "--level", "2", "--exact")
    doc = json.loads(out)
    md = modular_data(2)
    assert code == 0
    assert all("float" not in v for v in doc["twists"])
    assert [Cyclo.from_json(v["exact"]) for v in doc["twists"]] == md.twists
    assert Cyclo.from_json(doc["s_tilde"][1][2]["exact"]) == md.smatrix[1][2]
    assert Fraction(doc["charge"]["fraction_of_2pi"]) == Fraction(2, 5)


def test_modular_float_precision(capsys):
    _, out = run(capsys, "modular", "--level", "1", "--float", "--precision", "4")
    doc = json.loads(out)
    assert "exact" not in doc["dims"][0]
    assert doc["twists"][1]["float"] == [-0.5, 0.866]


def test_modular_csv_header(capsys):
    _, out = run(capsys, "modular", "--level", "1", "--csv")
    assert out.startswith("# convention:")
    assert out.splitlines()[1] == "a1,a2,b1,b2,S_re,S_im"


def test_condense_resolved(capsys):
    code, out = run(capsys, "condense", "--level", "6", "--resolved")
    doc = json.loads(out)
    assert code == 0
    assert doc["resolved_fusion"]["X1*X2"] == {"Y2": 1, "X3": 1}
    assert doc["reference_comparison"]["s_match"]


def test_condense_wrong_level_is_json_error(capsys):
    code, out = run(capsys, "condense", "--level", "4")
    assert code == 1
    assert json.loads(out)["message"] == "no Type-D algebra at this level"


@pytest.mark.parametrize(("m", "verdict"), [(1, "not simple"), (2, "simple"), (3, "certified simple")])
def test_certify_exit_codes(capsys, m, verdict):
    code, out = run(capsys, "certify", "--m", str(m))
    assert code == 0
    assert json.loads(out)["verdict"] == verdict


def test_invariant(capsys):
    code, out = run(capsys, "invariant", "--level", "3")
    doc = json.loads(out)
    assert code == 0 and doc["Z"][0][0] == 1


def test_witt_check_all(capsys):
    code, out = run(capsys, "witt", "--check-all", "--json")
    rows = json.loads(out)
    assert code == 0
    assert sorted(r["residue"] for r in rows if r["verdict"] == "FLAGGED") == ["1", "1/2"]


def test_witt_table_text(capsys):
    code, out = run(capsys, "witt")
    assert code == 0
    assert out.splitlines()[0].split() == ["m", "lambda1", "lambda2", "lambda3"]


@pytest.mark.parametrize(
    "argv",
    [[], ["alcove"], ["alcove", "--level", "0"], ["modular", "--level", "2", "--exact", "--float"], ["certify", "--m", "x"]],
)
def test_usage_errors_exit_two(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "alcove.json"
    code, out = run(capsys, "alcove", "--level", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["count"] == 6


def test_verify_all_small(capsys):
    code, out = run(capsys, "verify-all", "--max-level", "4", "--max-m", "3")
    lines = out.splitlines()
    assert code == 0
    assert sum(line.startswith("criterion") for line in lines) == 13
    assert lines[-1] == "overall: PASS"
