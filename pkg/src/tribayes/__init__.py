"""Context-sensitive spelling correction with part-of-speech trigrams,
a feature-based Bayesian classifier, and their hybrid."""

from .bayes import BayesConfig, BayesModel, Feature, match_features, predict_bayes, train_bayes
from .corpus import (
    ConfusionSet,
    SplitSpec,
    TaggedCorpus,
    TaggedToken,
    find_targets,
    generate_corrupted,
    parse_tagged_corpus,
    read_confusion_sets,
    split_corpus,
    tokenize_plain,
)
from .estimators import BaselineCorrector, BayesCorrector, TribayesCorrector, TrigramCorrector
from .evaluation import BaselinePriors, EvaluationReport, predict_baseline
from .hybrid import ThresholdModel, TribayesModel, fit_thresholds, predict_tribayes, train_tribayes
from .system import RunConfig, SpellingSystem, run_evaluation, train_system
from .trigram import TrigramModel, predict_trigrams, score_substitutions, train_trigram

__version__ = "0.1.0"

__all__ = [
    "BaselineCorrector",
    "BaselinePriors",
    "BayesConfig",
    "BayesCorrector",
    "BayesModel",
    "ConfusionSet",
    "EvaluationReport",
    "Feature",
    "RunConfig",
    "SpellingSystem",
    "SplitSpec",
    "TaggedCorpus",
    "TaggedToken",
    "ThresholdModel",
    "TribayesCorrector",
    "TribayesModel",
    "TrigramCorrector",
    "TrigramModel",
    "find_targets",
    "fit_thresholds",
    "generate_corrupted",
    "match_features",
    "parse_tagged_corpus",
    "predict_baseline",
    "predict_bayes",
    "predict_tribayes",
    "predict_trigrams",
    "read_confusion_sets",
    "run_evaluation",
    "score_substitutions",
    "split_corpus",
    "tokenize_plain",
    "train_bayes",
    "train_system",
    "train_tribayes",
    "train_trigram",
]
