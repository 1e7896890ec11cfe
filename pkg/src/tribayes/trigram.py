"""Part-of-speech trigram model: sentence probability and substitution scoring.

P(W) is the sum over every tagging T of prod P(w_i|t_i) P(t_i|t_{i-2} t_{i-1}),
computed exactly by the forward algorithm in log space.  Each sentence is
padded with two start tags and closed by one end tag whose transition is part
of P(T).
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import ConfusionSet, TaggedCorpus, substitute
from .exceptions import ConfigError, TrainingError, ZeroProbabilityError

BOS = "<s>"
EOS = "</s>"
NEG_INF = float("-inf")

DEFAULT_SELF_TAGGED = ("except", "than", "then", "to", "too", "whether")
DEFAULT_LAMBDAS = (0.7, 0.2, 0.1)
DEFAULT_UNKNOWN_MASS = 1e-6
DEFAULT_OPEN_CLASS_MIN_TYPES = 20

_CACHE_LIMIT = 200_000


def logsumexp(values: Iterable[float]) -> float:
    values = [v for v in values if v != NEG_INF]
    if not values:
        return NEG_INF
    top = max(values)
    if len(values) == 1:
        return top
    return top + math.log(sum(math.exp(v - top) for v in values))


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else NEG_INF


def check_lambdas(lambdas) -> tuple:
    lambdas = tuple(float(x) for x in lambdas)
    if len(lambdas) != 3 or any(x < 0 for x in lambdas) or abs(sum(lambdas) - 1.0) > 1e-9:
        raise ConfigError(f"interpolation weights must be three non-negative numbers summing to 1, got {lambdas}")
    return lambdas


class TrigramModel:
    """Tag-trigram transition and word-given-tag emission model.

    Only the tag-trigram counts and the (word, tag) emission counts are
    primary; bigram, unigram and tag totals are derived from them.  Words are
    case-folded.  Instances are treated as immutable after construction.
    """

    def __init__(
        self,
        trigram_counts: Mapping,
        emission_counts: Mapping,
        lambdas=DEFAULT_LAMBDAS,
        unknown_mass: float = DEFAULT_UNKNOWN_MASS,
        open_class_min_types: int = DEFAULT_OPEN_CLASS_MIN_TYPES,
        self_tagged: Iterable[str] = DEFAULT_SELF_TAGGED,
    ):
        self.lambdas = check_lambdas(lambdas)
        if unknown_mass < 0 or unknown_mass >= 1:
            raise ConfigError(f"unknown_mass must lie in [0, 1), got {unknown_mass}")
        self.unknown_mass = float(unknown_mass)
        self.open_class_min_types = int(open_class_min_types)
        self.self_tagged = frozenset(w.lower() for w in self_tagged)
        self.trigram_counts = dict(trigram_counts)
        self.emission_counts = dict(emission_counts)

        self.bigram_counts = Counter()
        self.unigram_counts = Counter()
        self.trigram_context_counts = Counter()
        self.bigram_context_counts = Counter()
        for (a, b, c), n in self.trigram_counts.items():
            self.bigram_counts[b, c] += n
            self.unigram_counts[c] += n
            self.trigram_context_counts[a, b] += n
        for (b, c), n in self.bigram_counts.items():
            self.bigram_context_counts[b] += n
        self.total_tags = sum(self.unigram_counts.values())

        self.tag_counts = Counter()
        tagdict = defaultdict(set)
        for (w, t), n in self.emission_counts.items():
            self.tag_counts[t] += n
            tagdict[w].add(t)
        self.tag_dictionary = {w: tuple(sorted(ts)) for w, ts in sorted(tagdict.items())}
        self.tag_inventory = tuple(sorted(self.tag_counts))

        types_per_tag = Counter(t for (_, t) in self.emission_counts)
        ordinary = [t for t in self.tag_inventory if t not in self.self_tagged]
        open_class = [t for t in ordinary if types_per_tag[t] >= self.open_class_min_types]
        # tiny corpora have no tag reaching the threshold; fall back to every ordinary tag
        self.open_class_tags = tuple(open_class or ordinary)

        self._log_trans_cache = {}
        self._score_cache = {}

    def __eq__(self, other):
        if not isinstance(other, TrigramModel):
            return NotImplemented
        return (
            self.trigram_counts == other.trigram_counts
            and self.emission_counts == other.emission_counts
            and self.lambdas == other.lambdas
            and self.unknown_mass == other.unknown_mass
            and self.open_class_min_types == other.open_class_min_types
            and self.self_tagged == other.self_tagged
        )

    __hash__ = object.__hash__

    @property
    def prediction_inventory(self) -> tuple:
        """Every tag a transition may produce, the end tag included."""
        return self.tag_inventory + (EOS,)

    def transition_prob(self, t_prev2: str, t_prev1: str, t: str) -> float:
        """Interpolated P(t | t_prev2, t_prev1).

        A higher-order estimate whose context was never observed passes its
        weight down to the next lower order, so the mixture always sums to 1.
        """
        w3, w2, w1 = self.lambdas
        carry = 0.0
        p = 0.0
        ctx3 = self.trigram_context_counts.get((t_prev2, t_prev1), 0)
        if ctx3:
            p += w3 * self.trigram_counts.get((t_prev2, t_prev1, t), 0) / ctx3
        else:
            carry = w3
        ctx2 = self.bigram_context_counts.get(t_prev1, 0)
        if ctx2:
            p += (w2 + carry) * self.bigram_counts.get((t_prev1, t), 0) / ctx2
            carry = 0.0
        else:
            carry += w2
        if self.total_tags:
            p += (w1 + carry) * self.unigram_counts.get(t, 0) / self.total_tags
        return p

    def emission_prob(self, word: str, t: str) -> float:
        word = word.lower()
        tags = self.tag_dictionary.get(word)
        if tags is None:
            return self.unknown_mass if t in self.open_class_tags else 0.0
        n = self.emission_counts.get((word, t), 0)
        return n / self.tag_counts[t] if n else 0.0

    def candidate_tags(self, word: str) -> tuple:
        return self.tag_dictionary.get(word.lower(), self.open_class_tags)

    def _log_trans(self, a, b, t):
        key = (a, b, t)
        v = self._log_trans_cache.get(key)
        if v is None:
            v = _log(self.transition_prob(a, b, t))
            self._log_trans_cache[key] = v
        return v

    def _lattice_columns(self, sentence):
        for word in sentence:
            cands = self.candidate_tags(word)
            yield [(t, _log(self.emission_prob(word, t))) for t in cands]

    def sentence_log_prob(self, sentence: Sequence[str]) -> float:
        """log P(W), summed over all taggings; ``-inf`` flags probability zero."""
        if not sentence:
            raise ValueError("sentence must be non-empty")
        alpha = {(BOS, BOS): 0.0}
        for column in self._lattice_columns(sentence):
            by_prev = defaultdict(list)
            for (a, b), score in alpha.items():
                by_prev[b].append((a, score))
            nxt = {}
            for b, prevs in by_prev.items():
                for t, log_e in column:
                    if log_e == NEG_INF:
                        continue
                    total = logsumexp([s + self._log_trans(a, b, t) for a, s in prevs])
                    if total != NEG_INF:
                        nxt[b, t] = total + log_e
            alpha = nxt
            if not alpha:
                return NEG_INF
        return logsumexp([s + self._log_trans(a, b, EOS) for (a, b), s in alpha.items()])

    def viterbi_tag(self, sentence: Sequence[str]) -> tuple:
        """Most probable tag sequence; exact ties go to the lexicographically smallest."""
        if not sentence:
            raise ValueError("sentence must be non-empty")
        best = {(BOS, BOS): (0.0, ())}
        for pos, column in enumerate(self._lattice_columns(sentence)):
            nxt = {}
            for (a, b), (score, path) in best.items():
                for t, log_e in column:
                    if log_e == NEG_INF:
                        continue
                    cand = score + self._log_trans(a, b, t) + log_e
                    if cand == NEG_INF:
                        continue
                    key = (b, t)
                    cur = nxt.get(key)
                    new_path = path + (t,)
                    if cur is None or cand > cur[0] or (cand == cur[0] and new_path < cur[1]):
                        nxt[key] = (cand, new_path)
            if not nxt:
                raise ZeroProbabilityError(pos)
            best = nxt
        final = None
        for (a, b), (score, path) in best.items():
            cand = score + self._log_trans(a, b, EOS)
            if cand == NEG_INF:
                continue
            if final is None or cand > final[0] or (cand == final[0] and path < final[1]):
                final = (cand, path)
        if final is None:
            raise ZeroProbabilityError(len(sentence) - 1)
        return final[1]


def train_trigram(
    corpus: TaggedCorpus,
    lambdas=DEFAULT_LAMBDAS,
    unknown_mass: float = DEFAULT_UNKNOWN_MASS,
    open_class_min_types: int = DEFAULT_OPEN_CLASS_MIN_TYPES,
    self_tagged: Iterable[str] = DEFAULT_SELF_TAGGED,
) -> TrigramModel:
    """Count tag trigrams and emissions over the whole corpus.

    Words listed in ``self_tagged`` are retagged with the word itself before
    counting.
    """
    if not corpus.sentences:
        raise TrainingError("cannot train a trigram model on an empty corpus")
    self_tagged = frozenset(w.lower() for w in self_tagged)
    trigrams = Counter()
    emissions = Counter()
    for sent in corpus.sentences:
        tags = [BOS, BOS]
        for word, tag in sent:
            word = word.lower()
            if word in self_tagged:
                tag = word
            emissions[word, tag] += 1
            tags.append(tag)
        tags.append(EOS)
        for i in range(2, len(tags)):
            trigrams[tags[i - 2], tags[i - 1], tags[i]] += 1
    return TrigramModel(
        trigrams, emissions, lambdas, unknown_mass, open_class_min_types, self_tagged
    )


@dataclass(frozen=True)
class ScoredCandidate:
    candidate: str
    log_prob_per_word: float
    viterbi_tag_at_target: str | None
    is_original: bool = False

    @property
    def zero_prob(self) -> bool:
        return self.log_prob_per_word == NEG_INF


@dataclass(frozen=True)
class TrigramPrediction:
    word: str
    same_tag: bool
    candidates: tuple

    def score_of(self, word: str) -> float:
        for c in self.candidates:
            if c.candidate == word:
                return c.log_prob_per_word
        raise KeyError(word)


def _rank_key(c: ScoredCandidate):
    return (-c.log_prob_per_word, not c.is_original, c.candidate)


def score_substitutions(
    model: TrigramModel, sentence: Sequence[str], position: int, cset: ConfusionSet
) -> list:
    """Substitute each member at ``position`` and rank by per-word geometric mean.

    Ties go to the word already in the sentence, then alphabetically; zero
    probability candidates sort last.
    """
    if not 0 <= position < len(sentence):
        raise IndexError(f"position {position} outside sentence of length {len(sentence)}")
    key = (tuple(sentence), position, cset.words)
    cached = model._score_cache.get(key)
    if cached is not None:
        return list(cached)
    original = sentence[position].lower()
    scored = []
    for member in cset.words:
        variant = substitute(sentence, position, member)
        width = len(variant) - len(sentence) + 1
        log_p = model.sentence_log_prob(variant)
        if log_p == NEG_INF:
            scored.append(ScoredCandidate(member, NEG_INF, None, member == original))
            continue
        tags = model.viterbi_tag(variant)
        tag = "+".join(tags[position:position + width])
        scored.append(ScoredCandidate(member, log_p / len(variant), tag, member == original))
    scored.sort(key=_rank_key)
    if len(model._score_cache) >= _CACHE_LIMIT:
        model._score_cache.clear()
    model._score_cache[key] = tuple(scored)
    return scored


def predict_trigrams(
    model: TrigramModel, sentence: Sequence[str], position: int, cset: ConfusionSet
) -> TrigramPrediction:
    scored = score_substitutions(model, sentence, position, cset)
    tags = {c.viterbi_tag_at_target for c in scored}
    same_tag = len(tags) == 1 and None not in tags
    return TrigramPrediction(scored[0].candidate, same_tag, tuple(scored))
