"""Plain-text, versioned, deterministic model files.

Layout: a header line, then ``[section]`` blocks of tab-separated records.
Records inside each block are sorted, and floats use ``repr``, so the same
inputs always produce the same bytes and load/save round-trips exactly.
"""
from __future__ import annotations

import io
from collections import defaultdict

from .bayes import BayesModel, FeatureStats, Feature, CTXWORD, COLLOC
from .corpus import ConfusionSet
from .evaluation import BaselinePriors
from .exceptions import ModelFormatError
from .hybrid import ThresholdModel, TribayesModel
from .system import RunConfig, SpellingSystem
from .trigram import TrigramModel

MAGIC = "tribayes-model"
VERSION = 1
SECTIONS = ("provenance", "config", "sets", "baseline", "trigram", "bayes", "thresholds")
FULL = "full"
SAME_TAG = "same-tag"


def _num(x: float) -> str:
    return repr(float(x))


def _bayes_lines(kind: str, model: BayesModel) -> list:
    cs = model.confusion_set
    lines = [f"MODEL\t{kind}\t{cs.id}\t{int(model.prior_only)}"]
    for w in cs.words:
        lines.append(f"OCC\t{kind}\t{cs.id}\t{w}\t{model.occurrence_counts.get(w, 0)}")
    for f, stats in model.features.items():
        counts = " ".join(str(stats.counts.get(w, 0)) for w in cs.words)
        lines.append(f"FEAT\t{kind}\t{cs.id}\t{counts}\t{f.key()}")
    return lines


def dumps(system: SpellingSystem) -> str:
    sections = {name: [] for name in SECTIONS}
    sections["provenance"] = [f"{k}\t{v}" for k, v in sorted(system.provenance.items())]
    sections["config"] = [f"{k}\t{v}" for k, v in system.config.items()]
    sections["sets"] = [f"SET\t{cs.id}" for cs in system.confusion_sets]
    for cs in system.confusion_sets:
        for w, n in sorted(system.baseline.counts.get(cs.id, {}).items()):
            sections["baseline"].append(f"COUNT\t{cs.id}\t{w}\t{n}")
    tri = system.trigram
    sections["trigram"] = sorted(
        [f"TRI\t{a}\t{b}\t{c}\t{n}" for (a, b, c), n in tri.trigram_counts.items()]
        + [f"EMIT\t{w}\t{t}\t{n}" for (w, t), n in tri.emission_counts.items()]
    )
    bayes = []
    for cs in system.confusion_sets:
        bayes += _bayes_lines(FULL, system.bayes[cs.id])
        bayes += _bayes_lines(SAME_TAG, system.tribayes.bayes[cs.id])
    sections["bayes"] = sorted(bayes)
    th = system.thresholds
    lines = [f"STEEPNESS\t{_num(th.steepness)}"]
    for key in sorted(th.thresholds):
        lines.append(f"THRESH\t{key}\t{_num(th.thresholds[key])}")
    for key in sorted(th.samples):
        lines.append(f"SAMPLES\t{key}\t" + " ".join(_num(r) for r in th.samples[key]))
    sections["thresholds"] = lines

    out = io.StringIO()
    out.write(f"{MAGIC}\t{VERSION}\n")
    for name in SECTIONS:
        out.write(f"[{name}]\n")
        for line in sections[name]:
            out.write(line + "\n")
    return out.getvalue()


def save(system: SpellingSystem, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(system))


def _split_sections(text: str) -> dict:
    lines = text.split("\n")
    if not lines or not lines[0].startswith(MAGIC + "\t"):
        raise ModelFormatError("not a model file (missing header)")
    try:
        version = int(lines[0].split("\t")[1])
    except (IndexError, ValueError):
        raise ModelFormatError("unreadable model version") from None
    if version != VERSION:
        raise ModelFormatError(f"unsupported model version {version} (expected {VERSION})")
    sections = {}
    current = None
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            if current not in SECTIONS:
                raise ModelFormatError(f"line {lineno}: unknown section {current!r}")
            sections[current] = []
            continue
        if current is None:
            raise ModelFormatError(f"line {lineno}: record outside any section")
        sections[current].append((lineno, line.split("\t")))
    missing = [s for s in SECTIONS if s not in sections]
    if missing:
        raise ModelFormatError(f"missing sections: {', '.join(missing)}")
    return sections


def _feature_from_key(fields) -> Feature:
    if fields[0] == CTXWORD and len(fields) == 2:
        return Feature.context_word(fields[1])
    if fields[0] == COLLOC and len(fields) >= 3:
        f = Feature.collocation(*fields[2:])
        if f.placement != fields[1]:
            raise ModelFormatError(f"collocation placement mismatch in {fields!r}")
        return f
    raise ModelFormatError(f"bad feature record {fields!r}")


def loads(text: str) -> SpellingSystem:
    sections = _split_sections(text)
    try:
        return _build(sections)
    except ModelFormatError:
        raise
    except (ValueError, KeyError, IndexError) as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from exc


def _build(sections) -> SpellingSystem:
    provenance = {f[0]: "\t".join(f[1:]) for _, f in sections["provenance"]}
    config = RunConfig.from_items((f[0], f[1] if len(f) > 1 else "") for _, f in sections["config"])
    sets = tuple(ConfusionSet(tuple(f[1].split(","))) for _, f in sections["sets"])
    by_id = {cs.id: cs for cs in sets}

    counts = defaultdict(dict)
    for _, f in sections["baseline"]:
        counts[f[1]][f[2]] = int(f[3])
    baseline = BaselinePriors({cs.id: dict(sorted(counts[cs.id].items())) for cs in sets})

    tri, emit = {}, {}
    for lineno, f in sections["trigram"]:
        if f[0] == "TRI":
            tri[f[1], f[2], f[3]] = int(f[4])
        elif f[0] == "EMIT":
            emit[f[1], f[2]] = int(f[3])
        else:
            raise ModelFormatError(f"line {lineno}: unknown trigram record {f[0]!r}")
    trigram = TrigramModel(tri, emit, **config.trigram_kwargs())

    prior_only, occ, feats = {}, defaultdict(dict), defaultdict(dict)
    for lineno, f in sections["bayes"]:
        key = (f[1], f[2])
        if f[0] == "MODEL":
            prior_only[key] = f[3] == "1"
        elif f[0] == "OCC":
            occ[key][f[3]] = int(f[4])
        elif f[0] == "FEAT":
            cs = by_id[f[2]]
            values = [int(x) for x in f[3].split()]
            if len(values) != len(cs.words):
                raise ModelFormatError(f"line {lineno}: count arity mismatch")
            feats[key][_feature_from_key(f[4:])] = {w: n for w, n in zip(cs.words, values) if n}
        else:
            raise ModelFormatError(f"line {lineno}: unknown bayes record {f[0]!r}")

    bayes_config = config.bayes_config()

    def model(kind, cs):
        key = (kind, cs.id)
        if key not in prior_only:
            raise ModelFormatError(f"missing {kind} Bayes model for {cs.id}")
        features = {f: FeatureStats(c) for f, c in sorted(feats[key].items())}
        occurrence = {w: occ[key].get(w, 0) for w in cs.words}
        return BayesModel(cs, occurrence, features, bayes_config, trigram.tag_dictionary, prior_only[key])

    bayes = {cs.id: model(FULL, cs) for cs in sets}
    tribayes = TribayesModel(trigram, {cs.id: model(SAME_TAG, cs) for cs in sets}, sets)

    steepness = config.steepness
    thresholds, samples = {}, {}
    for lineno, f in sections["thresholds"]:
        if f[0] == "STEEPNESS":
            steepness = float(f[1])
        elif f[0] == "THRESH":
            thresholds[f[1]] = float(f[2])
        elif f[0] == "SAMPLES":
            samples[f[1]] = tuple(float(x) for x in f[2].split()) if len(f) > 2 else ()
        else:
            raise ModelFormatError(f"line {lineno}: unknown threshold record {f[0]!r}")
    th = ThresholdModel(thresholds, steepness, samples)
    return SpellingSystem(sets, config, baseline, trigram, bayes, tribayes, th, provenance)


def load(path) -> SpellingSystem:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
