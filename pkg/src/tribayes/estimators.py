"""scikit-learn style estimators over the four correction methods.

``fit`` takes tagged training text.  ``predict`` takes target instances,
each ``(tokens, position)`` or ``(tokens, position, confusion_set)``, and
returns the predicted member for each as an object array.  ``score``
(from ``ClassifierMixin``) is plain accuracy against gold members.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from . import model_io
from .bayes import BayesConfig, predict_bayes, train_bayes
from .corpus import ConfusionSet, TaggedCorpus, TaggedToken, parse_tagged_corpus
from .evaluation import METHODS, BaselinePriors, predict_baseline
from .exceptions import ConfigError
from .system import RunConfig, SpellingSystem, run_evaluation, train_system
from .trigram import (
    DEFAULT_LAMBDAS,
    DEFAULT_OPEN_CLASS_MIN_TYPES,
    DEFAULT_SELF_TAGGED,
    DEFAULT_UNKNOWN_MASS,
    predict_trigrams,
    train_trigram,
)


def check_confusion_sets(sets) -> tuple:
    """Accept ConfusionSets, ``"a,b"`` strings or word sequences."""
    if sets is None or len(sets) == 0:
        raise ConfigError("confusion_sets must name at least one confusion set")
    out = []
    for s in sets:
        if isinstance(s, ConfusionSet):
            out.append(s)
        elif isinstance(s, str):
            out.append(ConfusionSet(tuple(s.split(","))))
        else:
            out.append(ConfusionSet(tuple(s)))
    return tuple(out)


def check_tagged_corpus(X) -> TaggedCorpus:
    """Accept a TaggedCorpus, ``word/TAG`` text, or sentences of (word, tag) pairs."""
    if isinstance(X, TaggedCorpus):
        corpus = X
    elif isinstance(X, str):
        corpus = parse_tagged_corpus(X)
    else:
        sentences = []
        for sent in X:
            if isinstance(sent, str):
                sentences.extend(parse_tagged_corpus(sent).sentences)
                continue
            toks = []
            for tok in sent:
                if len(tok) != 2:
                    raise ValueError(f"expected (word, tag) pairs, got {tok!r}")
                toks.append(TaggedToken(str(tok[0]), str(tok[1])))
            if toks:
                sentences.append(tuple(toks))
        corpus = TaggedCorpus(tuple(sentences))
    if not corpus.sentences:
        raise ValueError("training corpus is empty")
    return corpus


def check_instances(X, sets) -> list:
    """Normalize target instances to ``(tokens, position, ConfusionSet)`` triples.

    Without an explicit set, the token at ``position`` picks the first set
    containing it.
    """
    by_id = {cs.id: cs for cs in sets}
    out = []
    for item in X:
        if len(item) not in (2, 3):
            raise ValueError(f"instance must be (tokens, position[, set]), got {item!r}")
        tokens = tuple(item[0].split()) if isinstance(item[0], str) else tuple(item[0])
        position = int(item[1])
        if not 0 <= position < len(tokens):
            raise ValueError(f"position {position} outside sentence of length {len(tokens)}")
        if len(item) == 3:
            cset = item[2]
            if not isinstance(cset, ConfusionSet):
                cset = check_confusion_sets([cset])[0]
            if cset.id not in by_id:
                raise ValueError(f"confusion set {cset} was not fitted")
        else:
            matches = [cs for cs in sets if tokens[position] in cs]
            if not matches:
                raise ValueError(
                    f"token {tokens[position]!r} is in no fitted confusion set; pass the set explicitly"
                )
            cset = matches[0]
        out.append((tokens, position, cset))
    return out


class _Corrector(ClassifierMixin, BaseEstimator):
    def _predict_one(self, tokens, position, cset):
        raise NotImplementedError

    def predict(self, X):
        check_is_fitted(self, "confusion_sets_")
        instances = check_instances(X, self.confusion_sets_)
        return np.array([self._predict_one(*inst) for inst in instances], dtype=object)


class BaselineCorrector(_Corrector):
    """Always answer the member seen most often in training."""

    def __init__(self, confusion_sets=None):
        self.confusion_sets = confusion_sets

    def fit(self, X, y=None):
        corpus = check_tagged_corpus(X)
        self.confusion_sets_ = check_confusion_sets(self.confusion_sets)
        self.priors_ = BaselinePriors.fit(corpus, self.confusion_sets_)
        return self

    def _predict_one(self, tokens, position, cset):
        return predict_baseline(self.priors_, cset)


class TrigramCorrector(_Corrector):
    """Pick the member giving the most probable sentence under a tag-trigram model."""

    def __init__(
        self,
        confusion_sets=None,
        lambdas=DEFAULT_LAMBDAS,
        unknown_mass=DEFAULT_UNKNOWN_MASS,
        open_class_min_types=DEFAULT_OPEN_CLASS_MIN_TYPES,
        self_tagged=DEFAULT_SELF_TAGGED,
    ):
        self.confusion_sets = confusion_sets
        self.lambdas = lambdas
        self.unknown_mass = unknown_mass
        self.open_class_min_types = open_class_min_types
        self.self_tagged = self_tagged

    def fit(self, X, y=None):
        corpus = check_tagged_corpus(X)
        self.confusion_sets_ = check_confusion_sets(self.confusion_sets)
        self.model_ = train_trigram(
            corpus, self.lambdas, self.unknown_mass, self.open_class_min_types, self.self_tagged
        )
        return self

    def _predict_one(self, tokens, position, cset):
        return predict_trigrams(self.model_, tokens, position, cset).word

    def same_tag(self, X):
        """Whether every member would get the same tag at each instance's target."""
        check_is_fitted(self, "model_")
        instances = check_instances(X, self.confusion_sets_)
        return np.array([predict_trigrams(self.model_, *inst).same_tag for inst in instances])


class BayesCorrector(_Corrector):
    """Context-word and collocation classifier, one model per confusion set."""

    def __init__(
        self,
        confusion_sets=None,
        window=10,
        max_colloc_len=2,
        min_support=2,
        smoothing=10.0,
        min_discrimination=0.05,
        use_context_words=True,
    ):
        self.confusion_sets = confusion_sets
        self.window = window
        self.max_colloc_len = max_colloc_len
        self.min_support = min_support
        self.smoothing = smoothing
        self.min_discrimination = min_discrimination
        self.use_context_words = use_context_words

    def fit(self, X, y=None):
        corpus = check_tagged_corpus(X)
        self.confusion_sets_ = check_confusion_sets(self.confusion_sets)
        config = BayesConfig(
            self.window, self.max_colloc_len, self.min_support, self.smoothing,
            self.min_discrimination, self.use_context_words,
        )
        self.models_ = {cs.id: train_bayes(corpus, cs, config) for cs in self.confusion_sets_}
        return self

    def _predict_one(self, tokens, position, cset):
        return predict_bayes(self.models_[cset.id], tokens, position)


class TribayesCorrector(_Corrector):
    """Trigrams where members differ in part of speech, Bayes where they agree.

    Besides ``predict`` it offers ``suggest`` (thresholded suggestions per
    instance) and ``transform`` (rewrite plain sentences).
    """

    def __init__(
        self,
        confusion_sets=None,
        window=10,
        max_colloc_len=2,
        lambdas=DEFAULT_LAMBDAS,
        smoothing=10.0,
        unknown_mass=DEFAULT_UNKNOWN_MASS,
        open_class_min_types=DEFAULT_OPEN_CLASS_MIN_TYPES,
        min_support=2,
        min_discrimination=0.05,
        steepness=0.5,
        seed=0,
        self_tagged=DEFAULT_SELF_TAGGED,
        use_context_words=True,
    ):
        self.confusion_sets = confusion_sets
        self.window = window
        self.max_colloc_len = max_colloc_len
        self.lambdas = lambdas
        self.smoothing = smoothing
        self.unknown_mass = unknown_mass
        self.open_class_min_types = open_class_min_types
        self.min_support = min_support
        self.min_discrimination = min_discrimination
        self.steepness = steepness
        self.seed = seed
        self.self_tagged = self_tagged
        self.use_context_words = use_context_words

    def run_config(self) -> RunConfig:
        params = self.get_params()
        params.pop("confusion_sets")
        return RunConfig(**params)

    def fit(self, X, y=None):
        corpus = check_tagged_corpus(X)
        sets = check_confusion_sets(self.confusion_sets)
        self._set_system(train_system(corpus, sets, self.run_config()))
        return self

    def _set_system(self, system: SpellingSystem):
        self.system_ = system
        self.confusion_sets_ = system.confusion_sets

    @classmethod
    def from_system(cls, system: SpellingSystem) -> "TribayesCorrector":
        params = dict(system.config.items())
        est = cls(confusion_sets=[cs.id for cs in system.confusion_sets])
        est.set_params(**{k: getattr(system.config, k) for k in params if k != "train_fraction"})
        est._set_system(system)
        return est

    @classmethod
    def load(cls, path) -> "TribayesCorrector":
        return cls.from_system(model_io.load(path))

    def save(self, path):
        check_is_fitted(self, "system_")
        model_io.save(self.system_, path)

    def _predict_one(self, tokens, position, cset):
        return self.system_.predictor("tribayes")(tokens, position, cset)

    def suggest(self, X, thresholded=True, threshold_override=None) -> list:
        """One ``Suggestion`` (possibly suppressed) or None per instance."""
        check_is_fitted(self, "system_")
        run = self.system_.suggester(thresholded, threshold_override)
        return [run(*inst) for inst in check_instances(X, self.confusion_sets_)]

    def transform(self, X, thresholded=True, threshold_override=None) -> list:
        """Rewrite each sentence (token sequence or whitespace-separated string)."""
        check_is_fitted(self, "system_")
        out = []
        for sent in X:
            tokens = sent.split() if isinstance(sent, str) else sent
            out.append(self.system_.correct(tokens, thresholded, threshold_override)[0])
        return out

    def evaluate(self, X, methods=METHODS, corrupted=False, thresholded=True):
        """Per-set report on tagged test text."""
        check_is_fitted(self, "system_")
        return run_evaluation(self.system_, check_tagged_corpus(X), methods, corrupted, thresholded)
