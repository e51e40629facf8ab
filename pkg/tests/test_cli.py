import json
import shutil

import pytest

from freeext.cli import corpus_run, default_corpus, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_file_ok(capsys):
    code, out, _ = run(capsys, "run", str(default_corpus() / "example-i.fx"))
    assert code == 0 and "expectations:" in out


def test_run_json_roundtrip(capsys):
    code, out, _ = run(capsys, "run", "--json", str(default_corpus() / "example-i.fx"))
    data = json.loads(out)
    assert code == 0 and all(e["ok"] for e in data["expectations"])


def test_run_failing_file(tmp_path, capsys):
    src = (default_corpus() / "example-i.fx").read_text()
    f = tmp_path / "bad.fx"
    f.write_text(src.replace("hilbert C = 1,3,3,1", "hilbert C = 1,3,3,2"))
    code, _, _ = run(capsys, "run", str(f))
    assert code == 1


def test_input_errors_exit_2(tmp_path, capsys):
    f = tmp_path / "broken.fx"
    f.write_text("ring x\ndual F = X +\ntask ann form=F\n")
    code, _, err = run(capsys, "run", str(f))
    assert code == 2 and "broken.fx:2:" in err
    code, _, err = run(capsys, "ann", "--dual", "X^[2] + ")
    assert code == 2 and "--dual" in err
    code, _, _ = run(capsys, "run", str(tmp_path / "missing.fx"))
    assert code == 2
    code, _, _ = run(capsys, "freeext", "--n", "2", "--fb", "X*Y", "--g1", "X^[2]")
    assert code == 2


def test_direct_commands(capsys):
    code, out, _ = run(capsys, "hilbert", "--dual", "X^[2] + Y^[2]", "--json")
    assert code == 0 and json.loads(out)["hilbert"] == [1, 2, 1]
    code, out, _ = run(capsys, "hilbert", "--ideal", "x^2, y^2", "--json")
    assert json.loads(out)["hilbert"] == [1, 2, 1]
    code, out, _ = run(capsys, "jordan", "--dual", "X^[2] + Y^[2]", "--ell", "x + y", "--json")
    assert json.loads(out)["jordan_type"] == [3, 1]
    code, out, _ = run(capsys, "freeext", "--n", "2", "--fb", "X*Y", "--g1", "X^[3]", "--json")
    assert json.loads(out)["free"] is True
    code, out, _ = run(capsys, "admissible-g", "--fb", "X*Y", "--json")
    assert code == 0 and "4" in out


def test_table_and_json_agree(capsys):
    _, table, _ = run(capsys, "hilbert", "--dual", "X*Y*Z")
    _, js, _ = run(capsys, "hilbert", "--dual", "X*Y*Z", "--json")
    data = json.loads(js)
    assert "1, 3, 3, 1" in table or "1,3,3,1" in table.replace(" ", "")
    assert data["hilbert"] == [1, 3, 3, 1]


def test_empty_corpus_warns(tmp_path, capsys):
    code, out, err = run(capsys, "corpus", str(tmp_path))
    assert code == 0 and "0 entries" in err and "0/0" in out


def test_missing_corpus_dir(tmp_path, capsys):
    code, _, _ = run(capsys, "corpus", str(tmp_path / "nope"))
    assert code == 2


def test_corrupted_corpus_shows_diff(tmp_path, capsys):
    shutil.copy(default_corpus() / "two-squares.fx", tmp_path)
    bad = (default_corpus() / "example-i.fx").read_text().replace("hilbert B = 1,2,1", "hilbert B = 1,1,1")
    (tmp_path / "example-i.fx").write_text(bad)
    code, out, _ = run(capsys, "corpus", str(tmp_path), "--jobs", "2")
    assert code == 1
    assert "- expect hilbert B = 1,1,1" in out and "+ got" in out
    assert "1/2 entries pass" in out


@pytest.fixture(scope="module")
def corpus_summary():
    return corpus_run(default_corpus(), jobs=2)


def test_corpus_all_pass(corpus_summary):
    assert len(corpus_summary) >= 20
    assert [s["path"] for s in corpus_summary if s["status"] != "pass"] == []
