import csv
import io
import json
from pathlib import Path

import pytest

from phi3forms.cli import main
from phi3forms.threats import search_quadruple_threats

GOLDEN = Path(__file__).parent / "golden" / "enumerate_1e6.csv"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_enumerate_small():
    code, out, _ = run("enumerate", "--x-max", "100")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["X", "N", "ARGS", "LABELS"]
    assert [line.split()[0] for line in lines[1:]] == ["4", "9", "16", "18", "22", "25",
                                                       "36", "67", "79", "81"]


def test_enumerate_include_prime():
    code, out, _ = run("enumerate", "--x-max", "10", "--include-prime", "--format", "jsonl")
    rows = [json.loads(line) for line in out.splitlines()]
    assert [(r["x"], r["n"]) for r in rows] == [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1),
                                                (6, 1), (8, 1), (9, 2)]
    assert rows[0]["labels"] == ["prime"]


@pytest.mark.parametrize("fmt,expected", [("csv", "x,n,args,labels\n"),
                                          ("human", "X  N  ARGS  LABELS\n"),
                                          ("jsonl", "")])
def test_enumerate_empty_range(fmt, expected):
    code, out, _ = run("enumerate", "--x-max", "1", "--format", fmt)
    assert code == 0 and out == expected


@pytest.mark.slow
@pytest.mark.parametrize("extra", [[], ["--workers", "3"]])
def test_enumerate_golden(extra):
    code, out, _ = run("enumerate", "--x-max", "1000000", "--format", "csv", *extra)
    assert code == 0
    assert out == GOLDEN.read_text()


def test_golden_file_is_sorted_and_parseable():
    rows = list(csv.DictReader(GOLDEN.open()))
    xs = [int(r["x"]) for r in rows]
    assert xs == sorted(xs) and len(set(xs)) == len(xs)
    assert all(int(r["n"]) == len(r["args"].split(",")) for r in rows)
    assert all(r["labels"] for r in rows if int(r["n"]) in (2, 3, 4))


def test_check():
    code, out, _ = run("check", "--x-max", "10000")
    assert code == 0
    assert "mismatches=0" in out and "n=4: 20" in out


def test_classify():
    code, out, _ = run("classify", "16")
    assert code == 0 and "family-3" in out
    code, out, _ = run("classify", "191")
    assert "family-4.3" in out and "family-4.4" in out and "threat: yes" in out
    code, out, _ = run("classify", "7")
    assert code == 0 and "not a same-form factorization" in out
    code, out, _ = run("classify", "16", "--format", "jsonl")
    assert json.loads(out)["labels"] == ["family-3"]


def test_verify_reference():
    code, out, _ = run("verify-paper")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def test_verify_reference_skip_bignum():
    code, out, _ = run("verify-paper", "--skip-bignum")
    assert code == 0
    assert any(line.startswith("SKIP") for line in out.splitlines())


def test_verify_reference_bad_fixture(tmp_path):
    from phi3forms.threats import load_fixture
    x, args = load_fixture()
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(str(v) for v in (x + 2, *args)) + "\n")
    code, out, _ = run("verify-paper", "--fixture", str(bad))
    assert code == 1 and "FAIL" in out
    code, _, err = run("verify-paper", "--fixture", str(tmp_path / "nope.txt"))
    assert code == 3 and err


def test_search_quad():
    code, out, err = run("search-threats", "--quad", "--entry-bound", "100")
    assert code == 0
    assert out.startswith("threat x=191 args=(2,3,3,5)")
    code, out, _ = run("search-threats", "--quad", "--entry-bound", "100", "--format", "jsonl")
    rec = json.loads(out)
    assert rec["x"] == 191 and rec["args"] == [2, 3, 3, 5]


def test_search_odd_and_min():
    code, out, _ = run("search-threats", "--odd-quad", "--a-max", "300")
    assert code == 0 and out == "no certificates found\n"
    code, out, _ = run("search-threats", "--min-factor", "--q-bound", "10000")
    assert code == 0


def test_search_resumes_from_checkpoint(tmp_path):
    ck = tmp_path / "quad.json"
    calls = []

    def stop(anchor, count, certs):
        calls.append(anchor)
        if len(calls) == 2:
            raise KeyboardInterrupt

    with pytest.raises(KeyboardInterrupt):
        search_quadruple_threats(80, checkpoint=ck, progress=stop)
    code, resumed, _ = run("search-threats", "--quad", "--entry-bound", "80",
                           "--checkpoint", str(ck))
    _, fresh, _ = run("search-threats", "--quad", "--entry-bound", "80")
    assert code == 0 and resumed == fresh


def test_checkpoint_version_mismatch(tmp_path):
    ck = tmp_path / "ck.json"
    assert run("search-threats", "--odd-quad", "--a-max", "20", "--checkpoint", str(ck))[0] == 0
    state = json.loads(ck.read_text())
    state["version"] = 2
    ck.write_text(json.dumps(state))
    code, _, err = run("search-threats", "--odd-quad", "--a-max", "20", "--checkpoint", str(ck))
    assert code == 5 and "checkpoint" in err


def test_config_errors(tmp_path):
    assert run("enumerate", "--x-max", "0")[0] == 2
    assert run("enumerate", "--workers", "-1")[0] == 2
    assert run("bogus")[0] == 2
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"x_max": "many"}')
    assert run("enumerate", "--config", str(cfg))[0] == 2
    cfg.write_text('{"colour": 1}')
    assert run("enumerate", "--config", str(cfg))[0] == 2
    cfg.write_text("{not json")
    assert run("enumerate", "--config", str(cfg))[0] == 2


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"x_max": 30, "format": "csv"}')
    code, out, _ = run("enumerate", "--config", str(cfg))
    assert code == 0 and out.splitlines()[-1].startswith("25,")
    code, out, _ = run("enumerate", "--config", str(cfg), "--x-max", "10")
    assert out.splitlines()[-1].startswith("9,")


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("PHI3FORMS_WORKERS", "2")
    code, out, _ = run("enumerate", "--x-max", "1000", "--format", "csv")
    monkeypatch.delenv("PHI3FORMS_WORKERS")
    assert code == 0 and out == run("enumerate", "--x-max", "1000", "--format", "csv")[1]
    monkeypatch.setenv("PHI3FORMS_WORKERS", "zero")
    assert run("enumerate", "--x-max", "10")[0] == 2


def test_scale_error():
    code, _, err = run("enumerate", "--x-max", str(10**9 + 1))
    assert code == 4 and "scale" in err


def test_expand_and_catalog():
    code, out, _ = run("expand", "direct", "twisted", "direct")
    assert code == 0 and "z6" in out
    assert run("expand", "sideways")[0] == 2
    code, out, _ = run("catalog")
    ids = [json.loads(line)["id"] for line in out.splitlines()]
    assert "family-2" in ids and "family-4.4" in ids
