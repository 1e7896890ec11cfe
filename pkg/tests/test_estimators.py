import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from tribayes.corpus import ConfusionSet, format_tagged_corpus, iter_occurrences
from tribayes.estimators import (
    BaselineCorrector,
    BayesCorrector,
    TribayesCorrector,
    TrigramCorrector,
    check_confusion_sets,
    check_instances,
    check_tagged_corpus,
)
from tribayes.evaluation import MASK
from tribayes.exceptions import ConfigError
from tribayes.system import train_system

SET_IDS = ["their,there", "than,then", "peace,piece", "lead,led", "country,county"]


def _instances(test, sets):
    X, y = [], []
    for cs in sets:
        for i, pos, gold in iter_occurrences(test, cs):
            words = list(test.words(i))
            words[pos] = MASK
            X.append((words, pos, cs))
            y.append(gold)
    return X, np.array(y, dtype=object)


@pytest.mark.parametrize("cls", [BaselineCorrector, TrigramCorrector, BayesCorrector, TribayesCorrector])
def test_get_params_and_clone(cls):
    est = cls(confusion_sets=SET_IDS)
    params = est.get_params()
    assert params["confusion_sets"] == SET_IDS
    copy = clone(est)
    assert copy.get_params() == params and copy is not est


@pytest.mark.parametrize("cls", [BaselineCorrector, TrigramCorrector, BayesCorrector, TribayesCorrector])
def test_fit_predict_score(cls, synthetic):
    _, sets, train, test = synthetic
    est = cls(confusion_sets=SET_IDS).fit(train)
    X, y = _instances(test, sets)
    pred = est.predict(X)
    assert pred.dtype == object and pred.shape == y.shape
    assert 0.0 <= est.score(X, y) <= 1.0


def test_tribayes_estimator_matches_system(synthetic, synthetic_system):
    _, sets, train, test = synthetic
    est = TribayesCorrector(confusion_sets=SET_IDS, seed=3).fit(train)
    X, _ = _instances(test, sets)
    predictor = synthetic_system.predictor("tribayes")
    assert list(est.predict(X)) == [predictor(*x) for x in X]


def test_not_fitted():
    with pytest.raises(NotFittedError):
        TribayesCorrector(confusion_sets=SET_IDS).predict([(["peace"], 0)])


def test_set_params_changes_config():
    est = TribayesCorrector(confusion_sets=SET_IDS).set_params(window=4, steepness=0.9)
    config = est.run_config()
    assert config.window == 4 and config.steepness == 0.9


def test_estimator_round_trip(tmp_path, synthetic, synthetic_system):
    est = TribayesCorrector.from_system(synthetic_system)
    assert est.get_params()["seed"] == 3
    est.save(tmp_path / "m.txt")
    again = TribayesCorrector.load(tmp_path / "m.txt")
    assert again.get_params() == est.get_params()
    sent = "He ate a peace of cake .".split()
    assert again.transform([sent], thresholded=False) == [tuple("He ate a piece of cake .".split())]


def test_suggest_and_transform(synthetic_system):
    est = TribayesCorrector.from_system(synthetic_system)
    out = est.suggest([("He ate a peace of cake .", 3), ("He ate a piece of cake .", 3)], thresholded=False)
    assert out[0].suggested == "piece" and out[1] is None
    blocked = est.suggest([("He ate a peace of cake .", 3)], threshold_override=float("inf"))
    assert blocked[0].suppressed
    assert est.transform(["nothing to see here"]) == [("nothing", "to", "see", "here")]


def test_evaluate_report(synthetic, synthetic_system):
    _, _, _, test = synthetic
    report = TribayesCorrector.from_system(synthetic_system).evaluate(test, methods=("base", "tribayes"))
    assert len(report.rows) == len(SET_IDS)
    assert set(report.rows[0].accuracy) == {"base", "tribayes"}


def test_check_confusion_sets():
    sets = check_confusion_sets(["a,b", ("c", "d"), ConfusionSet(("e", "f"))])
    assert [cs.id for cs in sets] == ["a,b", "c,d", "e,f"]
    with pytest.raises(ConfigError):
        check_confusion_sets([])
    with pytest.raises(ConfigError):
        check_confusion_sets(None)


def test_check_tagged_corpus_forms(micro_corpus):
    text = format_tagged_corpus(micro_corpus)
    assert check_tagged_corpus(text).sentences == micro_corpus.sentences
    assert check_tagged_corpus(text.splitlines()).sentences == micro_corpus.sentences
    pairs = [[("a", "D"), ("b", "N")], [("a", "D"), ("c", "N")]]
    assert check_tagged_corpus(pairs).sentences == micro_corpus.sentences
    with pytest.raises(ValueError):
        check_tagged_corpus([])
    with pytest.raises(ValueError):
        check_tagged_corpus([[("a", "D", "x")]])


def test_check_instances():
    sets = check_confusion_sets(["peace,piece", "their,there"])
    out = check_instances([("a peace", 1), (["There", "x"], 0), ("a b", 1, "peace,piece")], sets)
    assert [cs.id for _, _, cs in out] == ["peace,piece", "their,there", "peace,piece"]
    with pytest.raises(ValueError, match="no fitted"):
        check_instances([("a b", 1)], sets)
    with pytest.raises(ValueError, match="outside"):
        check_instances([("a b", 5, "peace,piece")], sets)
    with pytest.raises(ValueError, match="not fitted"):
        check_instances([("a b", 1, "x,y")], sets)
    with pytest.raises(ValueError):
        check_instances([("a",)], sets)


def test_trigram_same_tag_flags(synthetic):
    _, sets, train, _ = synthetic
    est = TrigramCorrector(confusion_sets=SET_IDS).fit(train)
    flags = est.same_tag([("He ate a peace of cake .", 3, "peace,piece"), ("They went there .", 2, "their,there")])
    assert list(flags) == [True, False]


def test_train_system_matches_estimator_config(synthetic):
    _, sets, train, _ = synthetic
    est = TribayesCorrector(confusion_sets=SET_IDS, steepness=0.3).fit(train)
    assert est.system_.config == train_system(train, sets, est.run_config()).config
