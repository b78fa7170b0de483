import json

import pytest

from relhopf import codec
from relhopf.cli import main
from relhopf.generators import cyclic_group, pair_double, trivial_double
from relhopf.hopfoid import build_hopfoid
from relhopf.relcat import Relation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_codec_round_trip(dcorpus, hcorpus, gcorpus):
    for g in gcorpus.values():
        assert codec.loads(codec.dumps(g)) == g
    for name, d in dcorpus.items():
        assert codec.loads(codec.dumps(d)) == d, name
        h = hcorpus[name]
        back = codec.loads(codec.dumps(h))
        assert back.carrier == h.carrier and back.base == h.base
        for rel in ("delta", "epsilon", "star", "t", "s", "e", "m", "i"):
            assert getattr(back, rel) == getattr(h, rel), (name, rel)


def test_encoding_is_canonical(z3_pair):
    assert codec.dumps(z3_pair) == codec.dumps(codec.loads(codec.dumps(z3_pair)))
    doc = json.loads(codec.dumps(build_hopfoid(z3_pair)))
    assert doc["kind"] == "hopfoid" and doc["version"] == "1"
    assert all(isinstance(p, list) and len(p) == 2 for p in doc["payload"]["relations"]["t"])


def test_gen_then_roundtrip(tmp_path, capsys):
    f = tmp_path / "z3.json"
    assert run(capsys, "gen", "pair", "Z3", "--out", str(f))[0] == 0
    code, out, _ = run(capsys, "roundtrip", str(f))
    assert code == 0 and json.loads(out)["passed"]


def test_core_of_trivial_z2(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text(codec.dumps(trivial_double(cyclic_group(2))))
    code, out, _ = run(capsys, "core", str(f))
    assert code == 0 and json.loads(out)["core_size"] == 1


def test_check_names_inverse_clause(tmp_path, capsys):
    h = build_hopfoid(pair_double(cyclic_group(3)))
    bad = h.replace(i=Relation(h.carrier, h.carrier, [(a, a) for a in h.carrier]))
    f = tmp_path / "h.json"
    f.write_text(codec.dumps(bad))
    code, out, _ = run(capsys, "check", str(f))
    assert code == 1
    failed = [e for e in json.loads(out)["reports"][0]["entries"] if not e["passed"]]
    assert any(e["name"].startswith("(vii)") for e in failed)
    assert all("witness" in e for e in failed)


def test_hopfoid_double_commands(tmp_path, capsys):
    src, hf, back = tmp_path / "d.json", tmp_path / "h.json", tmp_path / "b.json"
    run(capsys, "gen", "trivial", "S3", "--out", str(src))
    assert run(capsys, "hopfoid", str(src), "--out", str(hf))[0] == 0
    assert run(capsys, "double", str(hf), "--out", str(back))[0] == 0
    assert run(capsys, "validate", str(back))[0] == 0
    assert run(capsys, "check", str(src))[0] == 0
    assert run(capsys, "roundtrip", str(hf))[0] == 0


def test_reports_are_deterministic(tmp_path, capsys):
    f = tmp_path / "d.json"
    run(capsys, "gen", "pair", "Z2", "--out", str(f))
    a = run(capsys, "check", str(f))[1]
    b = run(capsys, "check", str(f))[1]
    assert a == b


def test_text_format(tmp_path, capsys):
    f = tmp_path / "d.json"
    run(capsys, "gen", "group", "Z3", "--out", str(f))
    code, out, _ = run(capsys, "--format", "text", "validate", str(f))
    assert code == 0 and "PASS" in out and out.rstrip().endswith("OK")


def test_parse_and_kind_errors(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2 and "line 1" in err
    f.write_text(json.dumps({"kind": "groupoid", "version": "1", "payload": {"objects": {"name": "o", "elements": [1]}}}))
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2 and "payload.objects.elements[0]" in err
    g = tmp_path / "g.json"
    run(capsys, "gen", "group", "Z2", "--out", str(g))
    assert run(capsys, "check", str(g))[0] == 2
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2


def test_invalid_structure_exit_1(tmp_path, capsys):
    doc = json.loads(codec.dumps(cyclic_group(3)))
    doc["payload"]["inv"] = [["0", "0"], ["1", "1"], ["2", "2"]]
    f = tmp_path / "g.json"
    f.write_text(json.dumps(doc))
    assert run(capsys, "validate", str(f))[0] == 1


def test_gen_corpus(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "corpus", "--out", str(tmp_path / "c"), "--max-size", "4", "--seed", "1")
    assert code == 0
    files = json.loads(out)["files"]
    assert files and all((tmp_path / "c" / f).exists() for f in files)
    assert run(capsys, "validate", str(tmp_path / "c" / files[0]))[0] == 0
