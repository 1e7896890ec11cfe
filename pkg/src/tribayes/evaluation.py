"""Baseline, accuracy scoring with same-tag breakdowns, and the correct/corrupted protocol."""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .corpus import ConfusionSet, TaggedCorpus, generate_corrupted, iter_occurrences, member_counts

# Stands in for the target token so predictors never see the gold word.
MASK = "<target>"

METHODS = ("base", "trigrams", "bayes", "tribayes")
COLUMN_LABELS = {"base": "Base", "trigrams": "T", "bayes": "B", "tribayes": "TB"}


@dataclass(frozen=True)
class BaselinePriors:
    """Training counts of each member, per confusion set id."""

    counts: Mapping

    @classmethod
    def fit(cls, train: TaggedCorpus, sets: Iterable[ConfusionSet]) -> "BaselinePriors":
        return cls({cs.id: member_counts(train, cs) for cs in sets})

    def most_frequent(self, cset: ConfusionSet) -> str:
        counts = self.counts.get(cset.id, {})
        return min(cset.words, key=lambda w: (-counts.get(w, 0), w))

    def train_occurrences(self, cset: ConfusionSet) -> int:
        return sum(self.counts.get(cset.id, {}).values())


def predict_baseline(priors: BaselinePriors, cset: ConfusionSet) -> str:
    return priors.most_frequent(cset)


class EvalInstance(NamedTuple):
    sentence: tuple  # target replaced by MASK
    position: int
    gold: str
    same_tag: bool | None


def collect_instances(
    test: TaggedCorpus, cset: ConfusionSet, same_tag: Callable | None = None
) -> list:
    """Masked test occurrences of ``cset``, each with its same-tag flag."""
    out = []
    for i, pos, gold in iter_occurrences(test, cset):
        words = test.words(i)
        masked = words[:pos] + (MASK,) + words[pos + 1:]
        flag = same_tag(masked, pos, cset) if same_tag is not None else None
        out.append(EvalInstance(masked, pos, gold, flag))
    return out


def _pct(num: int, den: int) -> float | None:
    return 100.0 * num / den if den else None


@dataclass(frozen=True)
class AccuracyResult:
    n: int
    correct: int
    bins: Mapping = field(default_factory=dict)  # same_tag flag -> (n, correct)

    @property
    def accuracy(self) -> float | None:
        return _pct(self.correct, self.n)

    def bin_accuracy(self, same_tag: bool) -> float | None:
        n, c = self.bins.get(same_tag, (0, 0))
        return _pct(c, n)

    def breakdown(self, same_tag: bool) -> float | None:
        return _pct(self.bins.get(same_tag, (0, 0))[0], self.n)


def score_instances(predict: Callable, instances: Sequence[EvalInstance], cset: ConfusionSet) -> AccuracyResult:
    correct = 0
    bins = {}
    for inst in instances:
        ok = predict(inst.sentence, inst.position, cset) == inst.gold
        correct += ok
        if inst.same_tag is not None:
            n, c = bins.get(inst.same_tag, (0, 0))
            bins[inst.same_tag] = (n + 1, c + ok)
    return AccuracyResult(len(instances), correct, bins)


def evaluate_accuracy(
    predict: Callable, test: TaggedCorpus, cset: ConfusionSet, same_tag: Callable | None = None
) -> AccuracyResult:
    """Score ``predict(sentence, position, cset)`` on every test occurrence.

    The target token is masked and its gold tag dropped.  ``same_tag``, when
    given, bins each occurrence for the condition breakdown.
    """
    return score_instances(predict, collect_instances(test, cset, same_tag), cset)


@dataclass(frozen=True)
class ConditionScores:
    n_correct: int
    correct_ok: int
    n_corrupted: int
    corrupted_ok: int

    @property
    def correct(self) -> float | None:
        return _pct(self.correct_ok, self.n_correct)

    @property
    def corrupted(self) -> float | None:
        return _pct(self.corrupted_ok, self.n_corrupted)


def evaluate_two_conditions(suggest: Callable, test: TaggedCorpus, cset: ConfusionSet) -> ConditionScores:
    """Score on correct text and on text with planted errors.

    ``suggest(sentence, position, cset)`` returns None or an object with
    ``suggested`` and ``suppressed`` attributes.  A correct instance passes
    when nothing unsuppressed is suggested; a corrupted one passes when an
    unsuppressed suggestion restores the intended word.
    """
    n_ok = 0
    n = 0
    for i, pos, _ in iter_occurrences(test, cset):
        s = suggest(test.words(i), pos, cset)
        n += 1
        n_ok += s is None or s.suppressed
    c = 0
    c_ok = 0
    for inst in generate_corrupted(test, cset):
        s = suggest(inst.sentence, inst.position, cset)
        c += 1
        c_ok += s is not None and not s.suppressed and s.suggested == inst.intended
    return ConditionScores(n, n_ok, c, c_ok)


@dataclass
class SetReport:
    set_id: str
    train: int
    test: int
    accuracy: dict = field(default_factory=dict)  # method -> AccuracyResult
    conditions: ConditionScores | None = None


@dataclass
class EvaluationReport:
    rows: list = field(default_factory=list)

    def row(self, set_id: str) -> SetReport:
        for r in self.rows:
            if r.set_id == set_id:
                return r
        raise KeyError(set_id)

    @property
    def empty_sets(self) -> list:
        return [r.set_id for r in self.rows if r.test == 0]


TSV_COLUMNS = (
    ["set", "train", "test"]
    + [COLUMN_LABELS[m] for m in METHODS]
    + ["diff_breakdown"] + [f"diff_{COLUMN_LABELS[m]}" for m in METHODS]
    + ["same_breakdown"] + [f"same_{COLUMN_LABELS[m]}" for m in METHODS]
    + ["correct", "corrupted"]
)


def _fmt(x) -> str | None:
    return None if x is None else f"{x:.1f}"


def _row_values(row: SetReport) -> list:
    acc = row.accuracy
    any_result = next(iter(acc.values()), None)
    vals = [row.set_id.replace(",", ", "), str(row.train), str(row.test)]
    vals += [_fmt(acc[m].accuracy) if m in acc else None for m in METHODS]
    for flag in (False, True):
        vals.append(_fmt(any_result.breakdown(flag)) if any_result else None)
        vals += [_fmt(acc[m].bin_accuracy(flag)) if m in acc else None for m in METHODS]
    cond = row.conditions
    vals += [_fmt(cond.correct), _fmt(cond.corrupted)] if cond else [None, None]
    return vals


def format_tsv(report: EvaluationReport) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for row in report.rows:
        lines.append("\t".join(v if v is not None else "" for v in _row_values(row)))
    return "\n".join(lines) + "\n"


def format_table(report: EvaluationReport) -> str:
    """Aligned plain-text table; columns with no values are left out."""
    rows = [[v if v is not None else "-" for v in _row_values(r)] for r in report.rows]
    requested = {COLUMN_LABELS[m] for r in report.rows for m in r.accuracy}
    present = [
        j for j in range(len(TSV_COLUMNS))
        if j < 3 or TSV_COLUMNS[j] in requested
        or any(_row_values(r)[j] is not None for r in report.rows)
    ]
    header = [TSV_COLUMNS[j] for j in present]
    body = [[r[j] for j in present] for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    out = io.StringIO()
    for cells in [header] + body:
        parts = [
            c.ljust(w) if j == 0 else c.rjust(w) for j, (c, w) in enumerate(zip(cells, widths))
        ]
        out.write("  ".join(parts).rstrip() + "\n")
    return out.getvalue()


def emit_report(report: EvaluationReport, tsv_path=None, stream=None) -> str:
    """Write the TSV to ``tsv_path`` and the aligned table to ``stream``."""
    tsv = format_tsv(report)
    if tsv_path is not None:
        with open(tsv_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(tsv)
    if stream is not None:
        stream.write(format_table(report))
    return tsv
