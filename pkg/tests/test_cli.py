import io
import json

import pytest

from wordavoid.cli import main
from wordavoid.templates import read_jsonl
from wordavoid.words import G_MORPHISM, apply, format_morphism, word_str

WORD_39 = "001101011011001001101100100110110101100"
F_SPEC = "0->001 1->012 2->212"


def run(capsys, *argv):
    code = main(["--no-timestamp" if a == "@nots" else a for a in argv])
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("# ")
    return code, json.loads(out[0][2:]), out[1:]


def test_expand(capsys):
    for iters, expected in (("1", "001"), ("0", "0"), ("2", "001001012")):
        code, header, body = run(capsys, "expand", "--morphism", F_SPEC, "--seed", "0", "--iters", iters)
        assert code == 0 and body == [expected]
        assert header["subcommand"] == "expand" and header["options"]["iters"] == int(iters)
    code, _, body = run(capsys, "expand", "--length", "5")
    assert body == ["00100"]
    code, _, body = run(capsys, "expand", "--iters", "1", "--outer", "g")
    assert body == [word_str(apply(G_MORPHISM, "001"))]


def test_detect_exit_codes(capsys):
    code, _, body = run(capsys, "detect", WORD_39, "--kind", "abelian", "-k", "4")
    assert code == 0 and body == ["clean"]
    code, _, body = run(capsys, "detect", "0000", "--kind", "ordinary", "-k", "4")
    assert code == 1 and body[0].startswith("witness")
    code, _, body = run(capsys, "detect", "0000", "--kind", "ordinary", "-k", "4", "--format", "json")
    assert json.loads(body[0])["witness_word"] == "0000"
    code, _, _ = run(capsys, "detect", "0a1")
    assert code == 2


def test_expand_pipes_into_detect(capsys, monkeypatch, tmp_path):
    path = tmp_path / "w.txt"
    g_spec = format_morphism(G_MORPHISM)
    assert main(["expand", "--iters", "7", "--outer", g_spec, "-o", str(path)]) == 0
    text = path.read_text()
    assert len(text.splitlines()[1]) == 48114
    code, _, body = run(capsys, "detect", "--file", str(path), "-k", "4")
    assert code == 0 and body == ["clean"]
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, _, body = run(capsys, "detect", "--pipe", "-k", "4")
    assert code == 0


def test_decide_and_ancestor_files(capsys, tmp_path):
    code, header, body = run(capsys, "decide", "-k", "4", "--out-dir", str(tmp_path), "@nots")
    assert code == 0
    lines = dict(line.split("\t") for line in body)
    assert lines["verdict"] == "AVOIDS"
    assert lines["generation_log"] == "17056 -> +48 -> +0"
    assert lines["ancestors"] == "17104"
    templates = read_jsonl(tmp_path / "ancestors.jsonl")
    assert len(templates) == 17104
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["generation_log"] == [48, 0]


def test_decide_witness_and_hypothesis(capsys):
    code, _, body = run(capsys, "decide", "-k", "2")
    assert code == 1 and "witness\t00" in body
    code, _, body = run(capsys, "decide", "--g", "0->0 1->01 2->011")
    assert code == 2 and json.loads(body[0])["verdict"] == "HYPOTHESIS_VIOLATED"


def test_ancestors_subcommand(capsys, tmp_path):
    out = tmp_path / "anc.jsonl"
    code, _, body = run(capsys, "ancestors", "-k", "2", "--out", str(out))
    assert code == 0
    lines = dict(line.split("\t") for line in body)
    assert int(lines["ancestors"]) == len(read_jsonl(out))


def test_splits(capsys):
    code, _, body = run(capsys, "splits", "--letter", "0")
    assert code == 0 and len(body) == 7
    code, _, body = run(capsys, "splits", "--letter", "0", "--middle", "0")
    assert body == ["e\t0\t01", "0\t0\t1"]


def test_growth(capsys):
    code, _, body = run(capsys, "growth", "--k", "1-10")
    assert code == 0 and body[0].split("\t")[:2] == ["k", "x"]
    rows = [line.split("\t") for line in body[1:]]
    assert [r[1] for r in rows][:4] == ["1", "01", "101", "1101"]
    assert rows[7][6] == "1.17228469"
    code, _, body = run(capsys, "growth", "--k", "1", "--bases", "0")
    assert code == 0 and len(body) == 2 and body[1].split("\t")[1] == "0"
    code, _, body = run(capsys, "growth", "--k", "2", "--eps", "0.7")
    assert code == 2 and json.loads(body[0])["error"] == "WordError"


def test_longest(capsys):
    code, _, body = run(capsys, "longest", "--abelian", "4", "--ordinary", "3")
    data = json.loads(body[0])
    assert code == 0 and data["max_length"] == 39 and data["count"] == 2
    code, _, body = run(capsys, "longest", "--abelian", "2", "--ordinary", "2")
    assert json.loads(body[0])["words"] == ["010", "101"]
    code, _, body = run(capsys, "longest", "--abelian", "4", "--ordinary", "4", "--node-cap", "2000")
    assert code == 2 and json.loads(body[0])["status"] == "budget_exceeded"


def test_freq(capsys):
    code, _, body = run(capsys, "freq", "--empirical-iters", "10")
    data = json.loads(body[0])
    assert abs(data["frequency"] - 0.6180339887) < 1e-10 and data["difference"] < 1e-3


def test_bad_morphism_file(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("0->00 1->0 2->000\n")
    code, _, body = run(capsys, "expand", "--morphism-file", str(path))
    assert code == 2 and json.loads(body[0])["error"] == "NotLinear"


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["growth", "--bogus"])
    assert err.value.code == 2


@pytest.mark.parametrize("argv", [
    ["expand", "--iters", "4"],
    ["growth", "--k", "1-6", "--threads", "3"],
    ["longest", "--abelian", "3", "--ordinary", "3"],
    ["splits", "--letter", "2"],
])
def test_deterministic_output(capsys, argv):
    main(argv + ["--no-timestamp"])
    first = capsys.readouterr().out
    main(argv + ["--no-timestamp"])
    assert capsys.readouterr().out == first
    assert '"timestamp": null' in first.splitlines()[0]
