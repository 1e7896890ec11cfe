import subprocess
import sys

import pytest

from tribayes import model_io
from tribayes.cli import EXIT_EMPTY_SET, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from tribayes.corpus import format_confusion_sets, format_tagged_corpus


@pytest.fixture(scope="module")
def files(tmp_path_factory, synthetic):
    corpus, sets, train, test = synthetic
    d = tmp_path_factory.mktemp("cli")
    (d / "corpus.txt").write_text(format_tagged_corpus(corpus), encoding="utf-8")
    (d / "train.txt").write_text(format_tagged_corpus(train), encoding="utf-8")
    (d / "test.txt").write_text(format_tagged_corpus(test), encoding="utf-8")
    (d / "sets.txt").write_text("# sets\n" + format_confusion_sets(sets), encoding="utf-8")
    assert main(["train", str(d / "train.txt"), "--sets", str(d / "sets.txt"), "-o", str(d / "model.txt")]) == 0
    return d


def test_train_prints_counts(files, tmp_path, capsys):
    out = tmp_path / "m.txt"
    assert main(["train", str(files / "train.txt"), "--sets", str(files / "sets.txt"), "-o", str(out)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "set\ttrain"
    assert any(line.startswith("peace, piece\t") for line in lines)
    assert out.read_bytes() == (files / "model.txt").read_bytes()


def test_train_with_split(files, tmp_path):
    args = ["train", str(files / "corpus.txt"), "--sets", str(files / "sets.txt"), "--split",
            "--seed", "42", "--test-output", str(tmp_path / "held.txt"), "-o", str(tmp_path / "m.txt")]
    assert main(args) == EXIT_OK
    assert (tmp_path / "held.txt").read_text() == (files / "test.txt").read_text()
    system = model_io.load(tmp_path / "m.txt")
    assert system.provenance["split"] == "fraction=0.8 seed=42"
    assert system.config.seed == 42


def test_three_member_set_registered(tmp_path, capsys):
    (tmp_path / "c.txt").write_text("their/PP$ dog/NN\nthere/EX is/BEZ\nthey're/PPS+BER here/RB\n")
    (tmp_path / "s.txt").write_text("their,there,they're\n")
    assert main(["train", str(tmp_path / "c.txt"), "--sets", str(tmp_path / "s.txt"), "-o", str(tmp_path / "m")]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "their, there, they're\t3"
    sets = model_io.load(tmp_path / "m").confusion_sets
    assert len(sets) == 1 and len(sets[0]) == 3


def test_train_errors(files, tmp_path, capsys):
    (tmp_path / "empty.txt").write_text("# nothing\n")
    assert main(["train", str(files / "train.txt"), "--sets", str(tmp_path / "empty.txt"), "-o", str(tmp_path / "m")]) == EXIT_USAGE
    (tmp_path / "bad.txt").write_text("ok/X\nbroken\n")
    assert main(["train", str(tmp_path / "bad.txt"), "--sets", str(files / "sets.txt"), "-o", str(tmp_path / "m")]) == EXIT_IO
    assert "line 2" in capsys.readouterr().err


def test_evaluate_all_methods(files, tmp_path, capsys):
    tsv = tmp_path / "r.tsv"
    assert main(["evaluate", str(files / "model.txt"), str(files / "test.txt"), "--method", "all", "-o", str(tsv)]) == 0
    header = tsv.read_text().splitlines()[0].split("\t")
    assert header[:7] == ["set", "train", "test", "Base", "T", "B", "TB"]
    table = capsys.readouterr().out
    assert "TB" in table and "correct" not in table


def test_evaluate_corrupted_thresholded(files, tmp_path, capsys):
    tsv = tmp_path / "r.tsv"
    args = ["evaluate", str(files / "model.txt"), str(files / "test.txt"), "--corrupted", "--thresholded", "-o", str(tsv)]
    assert main(args) == 0
    rows = [line.split("\t") for line in tsv.read_text().splitlines()]
    assert rows[0][-2:] == ["correct", "corrupted"]
    assert all(r[-1] and r[-2] for r in rows[1:])
    assert "corrupted" in capsys.readouterr().out


def test_evaluate_errors(files, tmp_path, capsys):
    assert main(["evaluate", str(tmp_path / "missing"), str(files / "test.txt")]) == EXIT_IO
    assert "missing" in capsys.readouterr().err
    (tmp_path / "none.txt").write_text("nothing/NN here/RB\n")
    assert main(["evaluate", str(files / "model.txt"), str(tmp_path / "none.txt")]) == EXIT_EMPTY_SET
    assert main(["evaluate", str(files / "model.txt"), str(files / "test.txt"), "--method", "nope"]) == EXIT_USAGE


def test_correct_rewrites_and_keeps_layout(files, tmp_path, capsys):
    text = "Can I have a peace of cake ?\n\n  Nothing  to   see here .\nPeace of cake !\n"
    (tmp_path / "in.txt").write_text(text)
    assert main(["correct", str(files / "model.txt"), str(tmp_path / "in.txt"), "--no-threshold"]) == 0
    out = capsys.readouterr().out
    lines = out.split("\n")
    assert lines[0] == "Can I have a piece of cake ?"
    assert lines[1] == "" and lines[2] == "  Nothing  to   see here ."
    assert lines[3] == "Piece of cake !"


def test_correct_suggest_only(files, tmp_path, capsys):
    (tmp_path / "in.txt").write_text("Can I have a peace of cake ?\n")
    assert main(["correct", str(files / "model.txt"), str(tmp_path / "in.txt"), "--suggest-only", "--no-threshold"]) == 0
    fields = capsys.readouterr().out.strip().split("\t")
    assert fields[:4] == ["1", "4", "peace", "piece"]
    assert float(fields[4]) > 1.0 and fields[5] == "bayes"


def test_correct_show_suppressed(files, tmp_path, capsys):
    (tmp_path / "in.txt").write_text("Can I have a peace of cake ?\n")
    base = ["correct", str(files / "model.txt"), str(tmp_path / "in.txt"), "--suggest-only", "--threshold-override", "1e308"]
    assert main(base) == 0
    assert capsys.readouterr().out == ""
    assert main(base + ["--show-suppressed"]) == 0
    assert capsys.readouterr().out.strip().split("\t")[-1] == "suppressed"


def test_correct_infinite_threshold_is_identity(files, capsys):
    text = (files / "test.txt").read_text()
    plain = "\n".join(" ".join(tok.rsplit("/", 1)[0] for tok in line.split()) for line in text.splitlines()) + "\n"
    (files / "plain.txt").write_text(plain)
    assert main(["correct", str(files / "model.txt"), str(files / "plain.txt"), "--threshold-override", "inf"]) == 0
    assert capsys.readouterr().out == plain


def test_correct_rejects_bad_utf8(files, tmp_path, capsys):
    (tmp_path / "bad.txt").write_bytes(b"a peace \xff of cake\n")
    assert main(["correct", str(files / "model.txt"), str(tmp_path / "bad.txt")]) == EXIT_IO
    assert "UTF-8" in capsys.readouterr().err


def test_corrupt_counts(files, tmp_path):
    (tmp_path / "peace.txt").write_text("peace,piece\n")
    (tmp_path / "sight.txt").write_text("cite,sight,site\n")
    corpus = "".join(f"a/AT {'peace' if i % 2 else 'piece'}/NN ./.\n" for i in range(50))
    corpus += "".join(f"the/AT {('cite', 'sight', 'site')[i % 3]}/NN\n" for i in range(34))
    (tmp_path / "c.txt").write_text(corpus)
    out = tmp_path / "out.txt"
    assert main(["corrupt", str(tmp_path / "peace.txt"), str(tmp_path / "c.txt"), "-o", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 50
    assert main(["corrupt", str(tmp_path / "sight.txt"), str(tmp_path / "c.txt"), "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 68
    sentence, position, intended, planted = lines[0].split("\t")
    assert sentence.split()[int(position)] == planted and intended != planted
    (tmp_path / "empty.txt").write_text("")
    assert main(["corrupt", str(tmp_path / "peace.txt"), str(tmp_path / "empty.txt"), "-o", str(out)]) == 0
    assert out.read_text() == ""


def test_corrupt_accepts_model_file(files, tmp_path):
    out = tmp_path / "out.txt"
    assert main(["corrupt", str(files / "model.txt"), str(files / "test.txt"), "-o", str(out)]) == 0
    assert out.read_text()


def test_tune(files, tmp_path, capsys):
    low, high, same = tmp_path / "low", tmp_path / "high", tmp_path / "same"
    model = str(files / "model.txt")
    assert main(["tune", model, "--steepness", "0.2", "-o", str(low)]) == 0
    assert main(["tune", model, "--steepness", "0.8", "-o", str(high)]) == 0
    assert main(["tune", model, "--steepness", "0.5", "-o", str(same)]) == 0
    capsys.readouterr()
    a, b = model_io.load(low).thresholds, model_io.load(high).thresholds
    assert all(a.thresholds[k] <= b.thresholds[k] for k in a.thresholds)
    assert model_io.load(low).config.steepness == 0.2
    assert same.read_bytes() == (files / "model.txt").read_bytes()
    assert main(["tune", model, "--steepness", "1.5", "-o", str(low)]) == EXIT_USAGE


def test_config_file(files, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nk = 3\nsteepness=0.25\nlambda=0.6,0.3,0.1\n")
    out = tmp_path / "m"
    assert main(["train", str(files / "train.txt"), "--sets", str(files / "sets.txt"), "--config", str(cfg), "-o", str(out)]) == 0
    config = model_io.load(out).config
    assert (config.window, config.steepness, config.lambdas) == (3, 0.25, (0.6, 0.3, 0.1))
    cfg.write_text("bogus=1\n")
    assert main(["train", str(files / "train.txt"), "--sets", str(files / "sets.txt"), "--config", str(cfg), "-o", str(out)]) == EXIT_USAGE


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as err:
        main(["tune", "m", "--steepness", "nan"])
    assert err.value.code == EXIT_USAGE


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "tribayes", "correct", str(files / "model.txt"), "-", "--no-threshold"],
        input="He ate a peace of cake .\n", capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == "He ate a piece of cake .\n"
