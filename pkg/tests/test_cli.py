import json

import pytest

from ca_forge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_agree(capsys):
    code, out, _ = run(capsys, "verify", "11", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["agree"] and rec["computed_answer"] and rec["method"] == "oracle"


def test_verify_9(capsys):
    code, out, _ = run(capsys, "verify", "9", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["agree"] and not rec["computed_answer"]


def test_verify_method_choice(capsys):
    code, out, _ = run(capsys, "verify", "13", "--json", "--method", "maximal-class")
    assert json.loads(out)["method"] == "maximal-class"
    code, out, _ = run(capsys, "verify", "17", "--json")
    assert json.loads(out)["method"] == "maximal-class"


def test_verify_errors(capsys):
    code, _, err = run(capsys, "verify", "6")
    assert code == 2 and "prime power" in err
    code, _, _ = run(capsys, "verify", "3")
    assert code == 2
    code, _, err = run(capsys, "verify", "11", "--method", "oracle", "--oracle-bound", "100")
    assert code == 3


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_sweep_small(capsys):
    code, out, err = run(capsys, "sweep", "4", "13", "--json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["q"] for r in recs] == [4, 5, 7, 8, 9, 11, 13]
    assert all(r["agree"] for r in recs)
    assert "7 agree" in err


def test_sweep_medium_methods(capsys):
    code, out, _ = run(capsys, "sweep", "14", "30", "--json", "--jobs", "2")
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["q"] for r in recs] == [16, 17, 19, 23, 25, 27, 29]
    assert {r["method"] for r in recs} == {"maximal-class"}
    assert code == 0


def test_sweep_empty(capsys):
    code, _, err = run(capsys, "sweep", "13", "4")
    assert code == 2 and "empty" in err


def test_deterministic(capsys):
    _, a, _ = run(capsys, "sweep", "4", "9", "--json")
    _, b, _ = run(capsys, "sweep", "4", "9", "--json", "--jobs", "3")
    assert a == b


def test_cache_roundtrip(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    _, first, _ = run(capsys, "verify", "13", "--json", "--cache", str(path))
    monkeypatch.setenv("CA_FORGE_CACHE", str(path))
    _, second, _ = run(capsys, "verify", "13", "--json")
    a, b = json.loads(first), json.loads(second)
    assert a.pop("cache_hit") is False and b.pop("cache_hit") is True
    assert a == b
    stored = json.loads(path.read_text().splitlines()[0])["record"]
    assert json.dumps(stored) == json.dumps(a)


def test_cache_corrupt_line(capsys, tmp_path, caplog):
    path = tmp_path / "cache.jsonl"
    path.write_text("not json\n")
    code, out, _ = run(capsys, "verify", "7", "--json", "--cache", str(path))
    assert code == 0 and json.loads(out)["q"] == 7
    assert any("corrupt" in r.message for r in caplog.records)


def test_no_timing_by_default(capsys):
    _, out, _ = run(capsys, "verify", "5", "--json")
    assert "wall_time_ms" not in json.loads(out)
    _, out, _ = run(capsys, "verify", "5", "--json", "--timings")
    assert "wall_time_ms" in json.loads(out)


def test_inspect_7(capsys):
    code, out, _ = run(capsys, "inspect", "7")
    rows = [line.split() for line in out.splitlines()[2:]]
    assert [r[0] for r in rows] == ["1", "5"]
    assert rows[0][3] == "21" and rows[0][-2] == "yes"
    assert rows[1][3] == "24" and rows[1][-2:] == ["no", "NotCA"]


def test_inspect_11_and_27(capsys):
    _, out, _ = run(capsys, "inspect", "11")
    rows = [line.split() for line in out.splitlines()[2:]]
    assert [r[0] for r in rows] == ["1", "3", "4"]
    assert all(r[-2] == "yes" for r in rows)
    _, out, _ = run(capsys, "inspect", "27")
    row8 = next(line.split() for line in out.splitlines() if line.startswith("8 "))
    assert row8[1] == "PSL(2,3)" and row8[3] == "12" and row8[-2] == "yes"


def test_inspect_suzuki(capsys):
    code, out, _ = run(capsys, "inspect", "7", "--suzuki", "1")
    assert code == 0 and "|N|=448" in out and "degree=65" in out
    assert out.count("[PASS]") == 4


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out
