import pytest

from tribayes import model_io
from tribayes.corpus import ConfusionSet, parse_tagged_corpus
from tribayes.exceptions import ModelFormatError
from tribayes.system import RunConfig, train_system


def test_round_trip_is_byte_identical(synthetic_system):
    text = model_io.dumps(synthetic_system)
    loaded = model_io.loads(text)
    assert model_io.dumps(loaded) == text
    assert loaded.trigram == synthetic_system.trigram
    assert loaded.bayes == synthetic_system.bayes
    assert loaded.tribayes.bayes == synthetic_system.tribayes.bayes
    assert loaded.thresholds == synthetic_system.thresholds
    assert loaded.config == synthetic_system.config
    assert loaded.baseline == synthetic_system.baseline


def test_loaded_model_predicts_identically(synthetic, synthetic_system):
    _, sets, _, test = synthetic
    loaded = model_io.loads(model_io.dumps(synthetic_system))
    for i in range(len(test)):
        words = test.words(i)
        assert loaded.correct(words) == synthetic_system.correct(words)


def test_save_and_load(tmp_path, synthetic_system):
    path = tmp_path / "model.txt"
    model_io.save(synthetic_system, path)
    assert model_io.dumps(model_io.load(path)) == path.read_text(encoding="utf-8")


def test_file_layout(synthetic_system):
    text = model_io.dumps(synthetic_system)
    lines = text.splitlines()
    assert lines[0] == f"{model_io.MAGIC}\t{model_io.VERSION}"
    headers = [line for line in lines if line.startswith("[")]
    assert headers == [f"[{s}]" for s in model_io.SECTIONS]
    assert any(line.startswith("THRESH\tpeace,piece\t") for line in lines)
    assert any(line.startswith("FEAT\tfull\tpeace,piece\t") and "\tCOLLOC\t" in line for line in lines)
    start = lines.index("[trigram]") + 1
    block = lines[start:lines.index("[bayes]")]
    assert block == sorted(block)


def test_version_mismatch_rejected(synthetic_system):
    text = model_io.dumps(synthetic_system).replace(f"{model_io.MAGIC}\t1", f"{model_io.MAGIC}\t2", 1)
    with pytest.raises(ModelFormatError, match="version 2"):
        model_io.loads(text)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "hello\n",
        f"{model_io.MAGIC}\tone\n",
        f"{model_io.MAGIC}\t1\n[provenance]\n",
        f"{model_io.MAGIC}\t1\nstray record\n",
        f"{model_io.MAGIC}\t1\n[nonsense]\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises(ModelFormatError):
        model_io.loads(text)


def test_corrupt_record_rejected(synthetic_system):
    text = model_io.dumps(synthetic_system).replace("\nTRI\t", "\nTRX\t", 1)
    with pytest.raises(ModelFormatError):
        model_io.loads(text)


def test_training_twice_gives_identical_files(micro_corpus):
    sets = [ConfusionSet(("b", "c"))]
    a = model_io.dumps(train_system(micro_corpus, sets, RunConfig(seed=1)))
    b = model_io.dumps(train_system(parse_tagged_corpus("a/D b/N\na/D c/N\n"), sets, RunConfig(seed=1)))
    assert a == b
