"""Run configuration and the bundle of fitted models used by the CLI and estimators."""
from __future__ import annotations

import dataclasses
import hashlib
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .bayes import BayesConfig, predict_bayes, train_bayes
from .corpus import ConfusionSet, TaggedCorpus, find_targets, format_tagged_corpus, substitute
from .evaluation import (
    METHODS,
    BaselinePriors,
    EvaluationReport,
    SetReport,
    collect_instances,
    evaluate_two_conditions,
    predict_baseline,
    score_instances,
)
from .exceptions import ConfigError
from .hybrid import (
    DEFAULT_STEEPNESS,
    ThresholdModel,
    TribayesModel,
    check_steepness,
    fit_thresholds,
    predict_tribayes,
    suggest,
    train_tribayes,
)
from .trigram import (
    DEFAULT_LAMBDAS,
    DEFAULT_OPEN_CLASS_MIN_TYPES,
    DEFAULT_SELF_TAGGED,
    DEFAULT_UNKNOWN_MASS,
    TrigramModel,
    check_lambdas,
    predict_trigrams,
    train_trigram,
)

logger = logging.getLogger(__name__)

_ALIASES = {
    "k": "window",
    "l": "max_colloc_len",
    "ell": "max_colloc_len",
    "c": "smoothing",
    "lambda": "lambdas",
    "context_words": "use_context_words",
    "fraction": "train_fraction",
}


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


@dataclass(frozen=True)
class RunConfig:
    """Every tunable setting, with its default."""

    window: int = 10
    max_colloc_len: int = 2
    lambdas: tuple = DEFAULT_LAMBDAS
    smoothing: float = 10.0
    unknown_mass: float = DEFAULT_UNKNOWN_MASS
    open_class_min_types: int = DEFAULT_OPEN_CLASS_MIN_TYPES
    min_support: int = 2
    min_discrimination: float = 0.05
    steepness: float = DEFAULT_STEEPNESS
    seed: int = 0
    train_fraction: float = 0.8
    self_tagged: tuple = DEFAULT_SELF_TAGGED
    use_context_words: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lambdas", check_lambdas(self.lambdas))
        object.__setattr__(self, "self_tagged", tuple(sorted({w.lower() for w in self.self_tagged})))
        check_steepness(self.steepness)
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction must lie in (0, 1), got {self.train_fraction}")
        self.bayes_config()

    def bayes_config(self) -> BayesConfig:
        return BayesConfig(
            window=self.window,
            max_colloc_len=self.max_colloc_len,
            min_support=self.min_support,
            smoothing=self.smoothing,
            min_discrimination=self.min_discrimination,
            use_context_words=self.use_context_words,
        )

    def trigram_kwargs(self) -> dict:
        return dict(
            lambdas=self.lambdas,
            unknown_mass=self.unknown_mass,
            open_class_min_types=self.open_class_min_types,
            self_tagged=self.self_tagged,
        )

    def items(self) -> list:
        """(key, text value) pairs in field order, locale independent."""
        out = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                text = ",".join(repr(x) if isinstance(x, float) else str(x) for x in v)
            elif isinstance(v, bool):
                text = "true" if v else "false"
            elif isinstance(v, float):
                text = repr(v)
            else:
                text = str(v)
            out.append((f.name, text))
        return out

    @classmethod
    def from_items(cls, pairs, base: "RunConfig | None" = None) -> "RunConfig":
        base = base or cls()
        kinds = {f.name: f for f in dataclasses.fields(cls)}
        updates = {}
        for key, text in pairs:
            name = _ALIASES.get(key.strip(), key.strip())
            if name not in kinds:
                raise ConfigError(f"unknown configuration key {key!r}")
            default = getattr(base, name)
            text = text.strip()
            try:
                if name == "lambdas":
                    value = tuple(float(x) for x in text.split(","))
                elif name == "self_tagged":
                    value = tuple(w for w in text.split(",") if w)
                elif isinstance(default, bool):
                    value = _parse_bool(text)
                elif isinstance(default, int):
                    value = int(text)
                else:
                    value = float(text)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {text!r}") from exc
            updates[name] = value
        return dataclasses.replace(base, **updates)

    @classmethod
    def from_file(cls, path, base: "RunConfig | None" = None) -> "RunConfig":
        """Read ``key=value`` lines; ``#`` comments and blank lines ignored."""
        pairs = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                if "=" not in text:
                    raise ConfigError(f"{path}: line {lineno}: expected key=value")
                key, value = text.split("=", 1)
                pairs.append((key, value))
        return cls.from_items(pairs, base)


def corpus_digest(corpus: TaggedCorpus) -> str:
    return hashlib.sha256(format_tagged_corpus(corpus).encode("utf-8")).hexdigest()


@dataclass
class SpellingSystem:
    """Everything fitted from one training corpus.

    ``bayes`` holds stand-alone models trained on every occurrence; the
    Tribayes component keeps its own same-tag models.
    """

    confusion_sets: tuple
    config: RunConfig
    baseline: BaselinePriors
    trigram: TrigramModel
    bayes: dict
    tribayes: TribayesModel
    thresholds: ThresholdModel
    provenance: dict = field(default_factory=dict)

    def set_by_id(self, set_id: str) -> ConfusionSet:
        for cs in self.confusion_sets:
            if cs.id == set_id:
                return cs
        raise KeyError(set_id)

    def predictor(self, method: str):
        if method == "base":
            return lambda sentence, position, cset: predict_baseline(self.baseline, cset)
        if method == "trigrams":
            return lambda sentence, position, cset: predict_trigrams(
                self.trigram, sentence, position, cset
            ).word
        if method == "bayes":
            return lambda sentence, position, cset: predict_bayes(
                self.bayes[cset.id], sentence, position
            )
        if method == "tribayes":
            return lambda sentence, position, cset: predict_tribayes(
                self.tribayes, sentence, position, cset
            ).word
        raise ConfigError(f"unknown method {method!r}")

    def same_tag(self, sentence, position, cset) -> bool:
        return predict_trigrams(self.trigram, sentence, position, cset).same_tag

    def suggester(self, thresholded: bool = True, threshold_override: float | None = None):
        thresholds = self.thresholds
        if threshold_override is not None:
            thresholds = thresholds.override(threshold_override)
        elif not thresholded:
            thresholds = None
        return lambda sentence, position, cset: suggest(
            self.tribayes, thresholds, sentence, position, cset
        )

    def correct(self, sentence, thresholded: bool = True, threshold_override: float | None = None):
        """Suggestions for every target in ``sentence`` and the rewritten tokens.

        Unsuppressed suggestions are applied with the original capitalization;
        when a token belongs to several sets the highest ratio wins.
        """
        sentence = tuple(sentence)
        run = self.suggester(thresholded, threshold_override)
        found = []
        for position, cset in find_targets(sentence, self.confusion_sets):
            s = run(sentence, position, cset)
            if s is not None:
                found.append(s)
        best = applied_suggestions(found)
        corrected = sentence
        for position in sorted(best, reverse=True):
            corrected = substitute(corrected, position, best[position].suggested)
        return corrected, found

    def retune(self, steepness: float) -> None:
        self.thresholds = self.thresholds.refit(steepness)
        self.config = dataclasses.replace(self.config, steepness=self.thresholds.steepness)


def applied_suggestions(found) -> dict:
    """position -> the unsuppressed suggestion with the highest ratio there."""
    best = {}
    for s in found:
        if not s.suppressed and (s.position not in best or s.ratio > best[s.position].ratio):
            best[s.position] = s
    return best


def train_system(
    train: TaggedCorpus, sets: Sequence[ConfusionSet], config: RunConfig | None = None
) -> SpellingSystem:
    """Train trigram (once), baseline, Bayes, Tribayes and thresholds."""
    config = config or RunConfig()
    sets = tuple(sets)
    if not sets:
        raise ConfigError("no confusion sets given")
    trigram = train_trigram(train, **config.trigram_kwargs())
    bayes_config = config.bayes_config()
    baseline = BaselinePriors.fit(train, sets)
    bayes = {
        cs.id: train_bayes(train, cs, bayes_config, tag_dictionary=trigram.tag_dictionary)
        for cs in sets
    }
    tribayes = train_tribayes(train, sets, trigram, bayes_config)
    thresholds = fit_thresholds(tribayes, train, sets, config.steepness, config.seed)
    provenance = {"corpus_sha256": corpus_digest(train), "sentences": str(len(train))}
    return SpellingSystem(sets, config, baseline, trigram, bayes, tribayes, thresholds, provenance)


def run_evaluation(
    system: SpellingSystem,
    test: TaggedCorpus,
    methods: Sequence[str] = METHODS,
    corrupted: bool = False,
    thresholded: bool = True,
    threshold_override: float | None = None,
) -> EvaluationReport:
    report = EvaluationReport()
    for cset in system.confusion_sets:
        instances = collect_instances(test, cset, system.same_tag)
        row = SetReport(cset.id, system.baseline.train_occurrences(cset), len(instances))
        for m in METHODS:
            if m in methods:
                row.accuracy[m] = score_instances(system.predictor(m), instances, cset)
        if corrupted:
            row.conditions = evaluate_two_conditions(
                system.suggester(thresholded, threshold_override), test, cset
            )
        if not instances:
            logger.warning("confusion set %s has no occurrences in the test corpus", cset)
        report.rows.append(row)
    return report
