"""Feature-based Bayesian hybrid classifier for one confusion set.

Two feature kinds are learned from correct text: context words (a word
anywhere within +-k tokens of the target) and collocations (up to l
contiguous words and/or tags adjacent to the target).  At prediction time the
matched features are reduced to a relatively independent subset and combined
with Bayes' rule, using P(f|w) smoothed toward P(f).
"""
from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

from .corpus import ConfusionSet, TaggedCorpus, iter_occurrences
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

CTXWORD = "CTXWORD"
COLLOC = "COLLOC"
TARGET = "_"


@dataclass(frozen=True)
class BayesConfig:
    window: int = 10
    max_colloc_len: int = 2
    min_support: int = 2
    smoothing: float = 10.0
    min_discrimination: float = 0.05
    use_context_words: bool = True

    def __post_init__(self):
        if self.window < 0:
            raise ConfigError("window must be >= 0")
        if self.max_colloc_len < 0:
            raise ConfigError("max_colloc_len must be >= 0")
        if self.min_support < 1:
            raise ConfigError("min_support must be >= 1")
        if not self.smoothing > 0:
            raise ConfigError("smoothing constant must be > 0")
        if self.min_discrimination < 0:
            raise ConfigError("min_discrimination must be >= 0")


@dataclass(frozen=True, order=True)
class Feature:
    """A context word ``(word,)`` or a collocation pattern.

    Collocation patterns hold ``w:<word>`` / ``t:<tag>`` elements with the
    target marked by ``_``, e.g. ``("w:in", "t:PP$", "_")``.
    """

    kind: str
    pattern: tuple

    @classmethod
    def context_word(cls, word: str) -> "Feature":
        return cls(CTXWORD, (word,))

    @classmethod
    def collocation(cls, *elements: str) -> "Feature":
        if elements.count(TARGET) != 1:
            raise ValueError("collocation needs exactly one target marker")
        return cls(COLLOC, tuple(elements))

    @property
    def is_collocation(self) -> bool:
        return self.kind == COLLOC

    @property
    def length(self) -> int:
        return len(self.pattern) - 1 if self.is_collocation else 1

    @property
    def placement(self) -> str | None:
        if not self.is_collocation:
            return None
        at = self.pattern.index(TARGET)
        if at == len(self.pattern) - 1:
            return "left"
        if at == 0:
            return "right"
        return "straddle"

    def offsets(self) -> list:
        """(offset from target, element) pairs for a collocation."""
        at = self.pattern.index(TARGET)
        return [(i - at, e) for i, e in enumerate(self.pattern) if i != at]

    def span(self) -> frozenset:
        return frozenset(o for o, _ in self.offsets())

    def literals(self) -> set:
        return {e[2:] for _, e in self.offsets() if e.startswith("w:")}

    def key(self) -> str:
        if self.is_collocation:
            return "\t".join((COLLOC, self.placement) + self.pattern)
        return f"{CTXWORD}\t{self.pattern[0]}"

    def __str__(self):
        if self.is_collocation:
            return " ".join(e if e == TARGET else e[2:] for e in self.pattern)
        return f"{self.pattern[0]} within window"


@dataclass
class FeatureStats:
    counts: dict
    strength: float = 0.0

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass
class BayesModel:
    confusion_set: ConfusionSet
    occurrence_counts: dict
    features: dict
    config: BayesConfig = field(default_factory=BayesConfig)
    tag_dictionary: Mapping = field(default_factory=dict, repr=False)
    prior_only: bool = False

    def __post_init__(self):
        for stats in self.features.values():
            stats.strength = 0.0
        for f, stats in self.features.items():
            stats.strength = feature_strength(self, f)

    @property
    def total_occurrences(self) -> int:
        return sum(self.occurrence_counts.values())

    @property
    def priors(self) -> dict:
        total = self.total_occurrences
        words = self.confusion_set.words
        if total == 0:
            return {w: 1.0 / len(words) for w in words}
        return {w: self.occurrence_counts.get(w, 0) / total for w in words}

    def without_features(self) -> "BayesModel":
        return BayesModel(
            self.confusion_set, dict(self.occurrence_counts), {}, self.config,
            self.tag_dictionary, self.prior_only,
        )

    def __eq__(self, other):
        if not isinstance(other, BayesModel):
            return NotImplemented
        return (
            self.confusion_set == other.confusion_set
            and self.occurrence_counts == other.occurrence_counts
            and {f: s.counts for f, s in self.features.items()}
            == {f: s.counts for f, s in other.features.items()}
            and self.config == other.config
            and self.prior_only == other.prior_only
        )


@dataclass(frozen=True)
class Posterior:
    scores: dict  # member -> log score, up to the shared P(F) term
    features: tuple

    def probabilities(self) -> dict:
        top = max(self.scores.values())
        if top == float("-inf"):
            return {w: 1.0 / len(self.scores) for w in self.scores}
        exp = {w: math.exp(s - top) for w, s in self.scores.items()}
        z = sum(exp.values())
        return {w: v / z for w, v in exp.items()}


def lowercase_tag_dictionary(corpus: TaggedCorpus) -> dict:
    tagdict = defaultdict(set)
    for sent in corpus.sentences:
        for word, tag in sent:
            tagdict[word.lower()].add(tag)
    return {w: tuple(sorted(ts)) for w, ts in sorted(tagdict.items())}


def match_features(
    sentence: Sequence[str], position: int, config: BayesConfig, tag_dictionary: Mapping
) -> set:
    """Every context word and collocation proposed by the target's context.

    A tag element matches a token when the tag is among the token's possible
    tags, as recorded in ``tag_dictionary``.
    """
    n = len(sentence)
    if not 0 <= position < n:
        raise IndexError(f"position {position} outside sentence of length {n}")
    low = [w.lower() for w in sentence]
    found = set()
    if config.use_context_words:
        lo = max(0, position - config.window)
        hi = min(n, position + config.window + 1)
        for i in range(lo, hi):
            if i != position:
                found.add(Feature.context_word(low[i]))

    def choices(i):
        return ["w:" + low[i]] + ["t:" + t for t in tag_dictionary.get(low[i], ())]

    for length in range(1, config.max_colloc_len + 1):
        for n_left in range(length, -1, -1):
            n_right = length - n_left
            if position - n_left < 0 or position + n_right >= n:
                continue
            offsets = list(range(-n_left, 0)) + list(range(1, n_right + 1))
            for combo in product(*(choices(position + o) for o in offsets)):
                found.add(Feature(COLLOC, combo[:n_left] + (TARGET,) + combo[n_left:]))
    return found


def smoothed_cond_prob(model: BayesModel, feature: Feature, word: str) -> float:
    """alpha * MLE(f|w) + (1 - alpha) * MLE(f), alpha = N_w / (N_w + c)."""
    stats = model.features[feature]
    return _smoothed(stats, model.occurrence_counts, word, model.config.smoothing)


def _smoothed(stats, occurrence_counts, word, c):
    n_word = occurrence_counts.get(word, 0)
    n_total = sum(occurrence_counts.values())
    p_f = stats.total / n_total if n_total else 0.0
    if n_word == 0:
        return p_f
    alpha = n_word / (n_word + c)
    return alpha * stats.counts.get(word, 0) / n_word + (1.0 - alpha) * p_f


def feature_strength(model: BayesModel, feature: Feature) -> float:
    """Reliability of a feature: max over members of the smoothed P(w|f)."""
    priors = model.priors
    joint = {w: smoothed_cond_prob(model, feature, w) * priors[w] for w in priors}
    z = sum(joint.values())
    return max(joint.values()) / z if z > 0 else 0.0


def _keep(feature, counts, n_total, priors, config) -> bool:
    total = sum(counts.values())
    if not feature.is_collocation:
        return total >= 2 and n_total - total >= 2
    if total < config.min_support:
        return False
    spread = max(abs(counts.get(w, 0) / total - p) for w, p in priors.items())
    return spread >= config.min_discrimination


def train_bayes(
    train: TaggedCorpus,
    cset: ConfusionSet,
    config: BayesConfig | None = None,
    restrict: Callable[[int, int], bool] | None = None,
    tag_dictionary: Mapping | None = None,
) -> BayesModel:
    """Learn and prune features from every (restricted) member occurrence.

    ``restrict(sentence_index, position)`` selects the occurrences to learn
    from.  When it leaves none, the result is a prior-only model whose priors
    come from all occurrences.
    """
    config = config or BayesConfig()
    if tag_dictionary is None:
        tag_dictionary = lowercase_tag_dictionary(train)
    all_occ = list(iter_occurrences(train, cset))
    occ = [o for o in all_occ if restrict is None or restrict(o[0], o[1])]
    if not occ:
        logger.info("no training occurrences for %s after restriction; using priors only", cset)
        counts = Counter(m for _, _, m in all_occ)
        return BayesModel(
            cset, {w: counts.get(w, 0) for w in cset.words}, {}, config, tag_dictionary, True
        )

    occurrence_counts = Counter()
    matches = defaultdict(Counter)
    for i, pos, member in occ:
        occurrence_counts[member] += 1
        for f in match_features(train.words(i), pos, config, tag_dictionary):
            matches[f][member] += 1
    occurrence_counts = {w: occurrence_counts.get(w, 0) for w in cset.words}
    n_total = sum(occurrence_counts.values())
    priors = {w: n / n_total for w, n in occurrence_counts.items()}
    features = {}
    for f in sorted(matches):
        counts = matches[f]
        if _keep(f, counts, n_total, priors, config):
            features[f] = FeatureStats({w: counts[w] for w in cset.words if counts[w]})
    return BayesModel(cset, occurrence_counts, features, config, tag_dictionary)


def resolve_dependencies(matched, model: BayesModel) -> tuple:
    """Drop features that strongly depend on a retained one.

    Among collocations whose spans contain one another only the strongest
    survives (ties: longer, then key order).  A context word that appears as a
    literal in a surviving collocation is dropped.
    """
    colls = [f for f in matched if f.is_collocation]
    words = [f for f in matched if not f.is_collocation]

    def rank(f):
        return (-model.features[f].strength, -f.length, f.key())

    kept = []
    for f in sorted(colls, key=rank):
        span = f.span()
        if any(span <= g.span() or g.span() <= span for g in kept):
            continue
        kept.append(f)
    covered = set()
    for g in kept:
        covered |= g.literals()
    kept.extend(f for f in words if f.pattern[0] not in covered)
    return tuple(sorted(kept))


def score_bayes(model: BayesModel, sentence: Sequence[str], position: int) -> Posterior:
    """Log P(w) + sum of log P(f|w) over the reduced matched features."""
    matched = [
        f
        for f in match_features(sentence, position, model.config, model.tag_dictionary)
        if f in model.features
    ]
    used = resolve_dependencies(matched, model)
    scores = {}
    for w, p in model.priors.items():
        s = math.log(p) if p > 0 else float("-inf")
        for f in used:
            q = smoothed_cond_prob(model, f, w)
            s += math.log(q) if q > 0 else float("-inf")
        scores[w] = s
    return Posterior(scores, used)


def best_member(scores: Mapping, original: str | None) -> str:
    """Argmax with ties resolved toward ``original``, then alphabetically."""
    return min(scores, key=lambda w: (-scores[w], w != original, w))


def predict_bayes(model: BayesModel, sentence: Sequence[str], position: int) -> str:
    posterior = score_bayes(model, sentence, position)
    original = sentence[position].lower()
    return best_member(posterior.scores, original)
