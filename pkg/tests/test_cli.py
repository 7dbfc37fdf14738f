import io
import json

import pytest

from genus2lf import catalog
from genus2lf.cli import run
from genus2lf.factorization import load_document, parse_document


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def test_invariants_report():
    code, out = call("invariants", "--type", "10,10")
    assert code == 0
    assert out == "type: (10,10)\ne: 16\nsigma: -8\nchi_h: 2\nc1sq: 8\nm: 3\nslope: 11/2\nok: yes\n"


def test_invariants_rejects_bad_type():
    code, out = call("invariants", "--type", "5,1")
    assert code == 1 and "not admissible" in out


def test_plan_report():
    code, out = call("plan", "--chi", "3", "--c1sq", "0")
    assert code == 0
    assert "recipe: (1234554321)^4\n" in out
    assert "type: (40,0)\n" in out


def test_plan_rejection_names_bound():
    code, out = call("plan", "--chi", "3", "--c1sq", "-1")
    assert code == 1 and "rejected: nonnegative" in out
    code, out = call("plan", "--chi", "4", "--c1sq", "20")
    assert code == 1 and "rejected: constructive" in out


def test_plan_materialize(tmp_path):
    out_file = tmp_path / "p.txt"
    code, out = call("plan", "--chi", "2", "--c1sq", "1", "--materialize", "--out", str(out_file))
    assert code == 0, out
    assert "identity: yes" in out
    assert call("verify", str(out_file), "planned")[0] == 0
    code, out = call("plan", "--chi", "4", "--c1sq", "13", "--materialize")
    assert code == 1 and "stub leaf" in out


def test_verify_corrupted_word(tmp_path):
    text = catalog.catalog_text().replace("fact W = alpha D sigma E gamma F G", "fact W = alpha D sigma E gamma F")
    p = tmp_path / "bad.txt"
    p.write_text(text)
    code, out = call("verify", str(p), "W")
    assert code == 1
    assert "not inner" in out


def test_verify_json_is_order_stable():
    code, out = call("verify", "catalog", "W", "--json")
    assert code == 0
    obj = json.loads(out)
    assert list(obj) == ["name", "length", "identity", "type", "mcg_word_length", "witness_length", "h1", "ok"]
    assert obj["type"] == "(4,3)" and obj["h1"] == "Z^2"
    assert call("verify", "catalog", "W", "--json") == (code, out)


def test_rewrite_script(tmp_path):
    script = tmp_path / "moves.txt"
    script.write_text("# rotate and conjugate\nhurwitz 0 +1\nrotate 2\nconjugate \"1 4'\"\nsimplify 0\n")
    out_file = tmp_path / "out.txt"
    code, out = call("rewrite", "catalog", "W", "--script", str(script), "--out", str(out_file), "--out-name", "W2")
    assert code == 0, out
    text = out_file.read_text()
    assert parse_document(text).render() == text
    assert call("verify", str(out_file), "W2")[0] == 0


def test_rewrite_lantern_script(tmp_path):
    # X' -> X by the lantern move
    log = catalog.BuildLog()
    catalog.build_X(log)
    doc = parse_document(catalog.catalog_text())
    doc.add_factorization("Xp", log.intermediates["X'"])
    src = tmp_path / "xp.txt"
    src.write_text(doc.render())
    script = tmp_path / "m.txt"
    script.write_text("hurwitz 3\nsimplify 3 c4\nlantern 0,1,2,3 B theta H\n")
    code, out = call("rewrite", str(src), "Xp", "--script", str(script))
    assert code == 0, out
    assert "type: (10,10)" in out and "h1: 0" in out


def test_rewrite_bad_script(tmp_path):
    script = tmp_path / "m.txt"
    script.write_text("twirl 3\n")
    code, out = call("rewrite", "catalog", "W", "--script", str(script))
    assert code == 1 and "unknown move" in out


def test_fibersum():
    code, out = call("fibersum", "W", "catalog:W", "--twist", "1 4'")
    assert code == 0, out
    assert "type: (8,6)" in out


def test_build_round_trip(tmp_path):
    p = tmp_path / "x.txt"
    code, out = call("build", "X", "--out", str(p))
    assert code == 0
    assert "step0: W (4,3)" in out and "point: (2,8)" in out
    text = p.read_text()
    assert parse_document(text).render() == text
    assert len(load_document(p).factorization("X")) == 20
    assert call("verify", str(p), "X")[0] == 0


def test_build_needs_t():
    with pytest.raises(SystemExit):
        call("build", "Xt")


def test_region(tmp_path):
    svg, tsv = tmp_path / "r.svg", tmp_path / "r.tsv"
    code, out = call("region", "--xmax", "4", "--svg", str(svg), "--tsv", str(tsv))
    assert code == 0
    assert "on-BK: 4" in out
    assert svg.read_text().startswith("<svg")
    assert tsv.read_text().count("\n") > 10


def test_relcheck():
    code, out = call("relcheck")
    assert code == 0
    assert out.count(": holds") == 16


def test_tietze_on_built_file(tmp_path):
    p = tmp_path / "x.txt"
    call("build", "X", "--out", str(p))
    code, out = call("tietze", str(p), "X", "--require-trivial")
    assert code == 0 and "generators: 0" in out
    code, out = call("tietze", "catalog", "W", "--require-trivial")
    assert code == 1


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        call("relcheck", "--frobnicate")
    assert exc.value.code == 2
