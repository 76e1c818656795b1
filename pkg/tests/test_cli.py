import pytest

from tfpmarkov import cli, markov


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_model_and_kernel(tmp_path, capsys):
    code, out = run(capsys, "model", "--model", "three-star", "--out", str(tmp_path))
    assert code == 0 and "rank" in out.out
    assert (tmp_path / "threestar.mat").exists()
    code, out = run(capsys, "kernel", "--model", "three-star", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "threestar.lat").exists()


def test_markov_formats(tmp_path, capsys):
    code, out = run(capsys, "markov", "--model", "three-star", "--out", str(tmp_path))
    assert code == 0 and "18 moves" in out.out
    assert len(markov.read_moves(tmp_path / "threestar.mar")) == 18
    code, _ = run(capsys, "markov", "--model", "three-star", "--format", "tableau", "--out", str(tmp_path))
    assert code == 0
    assert len((tmp_path / "threestar.tableau").read_text().splitlines()) == 18


def test_file_model(tmp_path, capsys):
    f = tmp_path / "chain.txt"
    f.write_text("# a path on three nodes\n1 2\n2 3\n")
    code, out = run(capsys, "markov", "--model", f"file:{f}", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "chain.mar").exists()


def test_assemble_then_verify(tmp_path, capsys):
    code, out = run(capsys, "assemble", "1", "--out", str(tmp_path))
    assert code == 0 and "18 moves" in out.out
    code, out = run(capsys, "verify", "1", "--maxdeg", "6", "--out", str(tmp_path))
    assert code == 0 and out.out.startswith("connected")


def test_verify_reports_disconnection(tmp_path, capsys):
    run(capsys, "assemble", "1", "--out", str(tmp_path))
    path = tmp_path / "k3n1.mar"
    ms = markov.read_moves(path)
    markov.write_moves(path, markov.MoveSet(ms.array()[1:]))
    code, out = run(capsys, "verify", "1", "--out", str(tmp_path))
    assert code == 1 and "DISCONNECTED at degree 2" in out.out


def test_degrees(tmp_path, capsys):
    code, out = run(capsys, "degrees", "1", "--maxdeg", "6", "--out", str(tmp_path))
    assert code == 0 and out.out.strip() == "2"


def test_lift(tmp_path, capsys):
    code, out = run(capsys, "lift", "[000; 110] - [010; 100]", "--out", str(tmp_path))
    assert code == 0 and out.out.startswith("10 lifts")


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "model", "--model", "nonsense", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "model", "--model", "file:/nonexistent", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "assemble", "0", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "degrees", "3", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "lift", "1 2 3", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "verify", "1", "--maxdeg", "0", "--out", str(tmp_path))[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_cap_exceeded(tmp_path, capsys):
    code, out = run(capsys, "verify", "1", "--maxdeg", "3", "--cap", "2", "--out", str(tmp_path))
    assert code == 1 and "tfpm:" in out.err
