"""Tribayes: trigram dispatch to a same-tag-trained Bayes model, plus thresholds."""
from __future__ import annotations

import dataclasses
import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .bayes import BayesConfig, BayesModel, best_member, score_bayes, train_bayes
from .corpus import ConfusionSet, TaggedCorpus, iter_occurrences
from .exceptions import ConfigError
from .trigram import TrigramModel, predict_trigrams

TRIGRAMS = "trigrams"
BAYES = "bayes"

DEFAULT_STEEPNESS = 0.5
SAMPLE_CAP = 10_000


@dataclass
class TribayesModel:
    trigram: TrigramModel
    bayes: dict  # set id -> BayesModel trained on same-tag occurrences
    confusion_sets: tuple = ()

    def bayes_for(self, cset: ConfusionSet) -> BayesModel:
        return self.bayes[cset.id]


@dataclass(frozen=True)
class TribayesPrediction:
    word: str
    method: str
    same_tag: bool
    p_suggested: float
    p_original: float | None

    @property
    def ratio(self) -> float | None:
        """Suggested-to-original probability ratio; None without an original."""
        if self.p_original is None:
            return None
        if self.p_original == 0.0:
            return math.inf if self.p_suggested > 0 else 1.0
        return self.p_suggested / self.p_original


def same_tag_occurrences(trigram: TrigramModel, train: TaggedCorpus, cset: ConfusionSet) -> set:
    """(sentence index, position) of training occurrences in the same-tag condition."""
    found = set()
    for i, pos, _ in iter_occurrences(train, cset):
        if predict_trigrams(trigram, train.words(i), pos, cset).same_tag:
            found.add((i, pos))
    return found


def train_tribayes(
    train: TaggedCorpus,
    sets: Sequence[ConfusionSet],
    trigram: TrigramModel,
    config: BayesConfig | None = None,
) -> TribayesModel:
    """Train each set's Bayes component on its same-tag occurrences only."""
    config = config or BayesConfig()
    bayes = {}
    for cset in sets:
        subset = same_tag_occurrences(trigram, train, cset)
        bayes[cset.id] = train_bayes(
            train, cset, config,
            restrict=lambda i, pos, subset=subset: (i, pos) in subset,
            tag_dictionary=trigram.tag_dictionary,
        )
    return TribayesModel(trigram, bayes, tuple(sets))


def predict_tribayes(
    model: TribayesModel, sentence: Sequence[str], position: int, cset: ConfusionSet
) -> TribayesPrediction:
    tri = predict_trigrams(model.trigram, sentence, position, cset)
    original = sentence[position].lower()
    has_original = original in cset.words
    if not tri.same_tag:
        p_sugg = math.exp(tri.score_of(tri.word))
        p_orig = math.exp(tri.score_of(original)) if has_original else None
        return TribayesPrediction(tri.word, TRIGRAMS, False, p_sugg, p_orig)
    posterior = score_bayes(model.bayes_for(cset), sentence, position)
    word = best_member(posterior.scores, original if has_original else None)
    probs = posterior.probabilities()
    p_orig = probs[original] if has_original else None
    return TribayesPrediction(word, BAYES, True, probs[word], p_orig)


def _quantile(sorted_values: Sequence[float], q: float) -> float:
    h = (len(sorted_values) - 1) * q
    lo = math.floor(h)
    hi = min(lo + 1, len(sorted_values) - 1)
    a, b = sorted_values[lo], sorted_values[hi]
    if h == lo or a == b:
        return a
    return a + (b - a) * (h - lo)


def check_steepness(steepness: float) -> float:
    steepness = float(steepness)
    if not 0.0 <= steepness <= 1.0:
        raise ConfigError(f"steepness must lie in [0, 1], got {steepness}")
    return steepness


@dataclass(frozen=True)
class ThresholdModel:
    """Per-set suppression thresholds fitted from training disagreement ratios."""

    thresholds: Mapping
    steepness: float = DEFAULT_STEEPNESS
    samples: Mapping = field(default_factory=dict)
    fixed: float | None = None  # overrides every per-set threshold when set

    def threshold(self, cset_or_id) -> float:
        if self.fixed is not None:
            return self.fixed
        key = cset_or_id.id if isinstance(cset_or_id, ConfusionSet) else cset_or_id
        return self.thresholds.get(key, 1.0)

    def refit(self, steepness: float) -> "ThresholdModel":
        steepness = check_steepness(steepness)
        return ThresholdModel(
            thresholds_from_samples(self.samples, steepness), steepness, self.samples
        )

    def override(self, value: float) -> "ThresholdModel":
        return dataclasses.replace(self, fixed=float(value))


def thresholds_from_samples(samples: Mapping, steepness: float) -> dict:
    return {
        key: _quantile(values, steepness) if values else 1.0
        for key, values in sorted(samples.items())
    }


def fit_thresholds(
    model: TribayesModel,
    train: TaggedCorpus,
    sets: Sequence[ConfusionSet],
    steepness: float = DEFAULT_STEEPNESS,
    seed: int = 0,
    cap: int = SAMPLE_CAP,
) -> ThresholdModel:
    """Threshold = steepness-quantile of ratios where Tribayes would change correct text."""
    steepness = check_steepness(steepness)
    samples = {}
    for cset in sets:
        rng = random.Random(f"{seed}:{cset.id}")
        reservoir = []
        seen = 0
        for i, pos, member in iter_occurrences(train, cset):
            pred = predict_tribayes(model, train.words(i), pos, cset)
            if pred.word == member:
                continue
            seen += 1
            if len(reservoir) < cap:
                reservoir.append(pred.ratio)
            else:
                j = rng.randrange(seen)
                if j < cap:
                    reservoir[j] = pred.ratio
        samples[cset.id] = tuple(sorted(reservoir))
    return ThresholdModel(thresholds_from_samples(samples, steepness), steepness, samples)


@dataclass(frozen=True)
class Suggestion:
    position: int
    original: str
    suggested: str
    ratio: float
    method: str
    set_id: str
    suppressed: bool = False


def apply_threshold(thresholds: ThresholdModel, suggestion: Suggestion) -> Suggestion:
    """Suppress a suggestion whose ratio does not exceed its set's threshold."""
    limit = thresholds.threshold(suggestion.set_id)
    return dataclasses.replace(suggestion, suppressed=not suggestion.ratio > limit)


def suggest(
    model: TribayesModel,
    thresholds: ThresholdModel | None,
    sentence: Sequence[str],
    position: int,
    cset: ConfusionSet,
) -> Suggestion | None:
    """Tribayes suggestion for one target, thresholded; None when it agrees."""
    pred = predict_tribayes(model, sentence, position, cset)
    original = sentence[position]
    if pred.word == original.lower():
        return None
    s = Suggestion(position, original, pred.word, pred.ratio, pred.method, cset.id)
    return apply_threshold(thresholds, s) if thresholds is not None else s
