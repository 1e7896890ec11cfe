"""Tagged corpora, plain-text tokenization, splits, targets and corruption.

Sentences are plain tuples: ``tuple[str, ...]`` for untagged text and
``tuple[TaggedToken, ...]`` for training data.  Everything here is immutable
once built.
"""
from __future__ import annotations

import io
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, TextIO

from .exceptions import ConfigError, CorpusParseError


class TaggedToken(NamedTuple):
    word: str
    tag: str


@dataclass(frozen=True)
class TaggedCorpus:
    """Tagged sentences plus the tag inventory and word -> tags dictionary."""

    sentences: tuple
    line_numbers: tuple = ()
    tag_inventory: frozenset = field(init=False)
    tag_dictionary: Mapping[str, frozenset] = field(init=False)

    def __post_init__(self):
        sentences = tuple(tuple(TaggedToken(*tok) for tok in s) for s in self.sentences)
        object.__setattr__(self, "sentences", sentences)
        if not self.line_numbers:
            object.__setattr__(self, "line_numbers", tuple(range(1, len(sentences) + 1)))
        inventory = set()
        tagdict: dict[str, set] = {}
        for sent in sentences:
            for word, tag in sent:
                inventory.add(tag)
                tagdict.setdefault(word, set()).add(tag)
        object.__setattr__(self, "tag_inventory", frozenset(inventory))
        object.__setattr__(
            self, "tag_dictionary", {w: frozenset(t) for w, t in sorted(tagdict.items())}
        )

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def words(self, index: int) -> tuple:
        """Surface forms of sentence ``index`` with tags dropped."""
        return tuple(tok.word for tok in self.sentences[index])

    def plain_sentences(self) -> list:
        return [tuple(tok.word for tok in s) for s in self.sentences]


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction must lie in (0, 1), got {self.train_fraction}")


@dataclass(frozen=True)
class ConfusionSet:
    """A set of words any of which may be typed for another.

    Members are stored lowercase and sorted; ``"x" in cset`` is case-insensitive.
    """

    words: tuple

    def __post_init__(self):
        words = tuple(w.strip().lower() for w in self.words)
        if any(not w for w in words):
            raise ConfigError("confusion set contains an empty word")
        if len(set(words)) != len(words):
            raise ConfigError(f"confusion set has duplicate members: {', '.join(words)}")
        if len(words) < 2:
            raise ConfigError(f"confusion set needs at least two words: {', '.join(words)}")
        object.__setattr__(self, "words", tuple(sorted(words)))

    @property
    def id(self) -> str:
        return ",".join(self.words)

    def __contains__(self, word) -> bool:
        return isinstance(word, str) and word.lower() in self.words

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __str__(self):
        return ", ".join(self.words)


class Target(NamedTuple):
    position: int
    confusion_set: ConfusionSet


class CorruptedInstance(NamedTuple):
    sentence: tuple
    position: int
    intended: str
    planted: str


def parse_tagged_corpus(stream: TextIO | str | Iterable[str], source=None) -> TaggedCorpus:
    """Read ``word/TAG`` tokens, one sentence per line.

    The last ``/`` in a token separates word from tag, so ``1/2/CD`` is the
    word ``1/2`` with tag ``CD``.  Blank lines are skipped.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    sentences = []
    line_numbers = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        sent = []
        col = 0
        for raw in line.split():
            col = line.index(raw, col)
            slash = raw.rfind("/")
            if slash < 0:
                raise CorpusParseError(f"token {raw!r} has no '/TAG' suffix", lineno, col + 1, source)
            word, tag = raw[:slash], raw[slash + 1:]
            if not tag:
                raise CorpusParseError(f"token {raw!r} has an empty tag", lineno, col + 1, source)
            if not word:
                raise CorpusParseError(f"token {raw!r} has an empty word", lineno, col + 1, source)
            sent.append(TaggedToken(word, tag))
            col += len(raw)
        sentences.append(tuple(sent))
        line_numbers.append(lineno)
    return TaggedCorpus(tuple(sentences), tuple(line_numbers))


def format_tagged_corpus(corpus: TaggedCorpus | Iterable) -> str:
    sentences = corpus.sentences if isinstance(corpus, TaggedCorpus) else corpus
    return "".join(" ".join(f"{w}/{t}" for w, t in s) + "\n" for s in sentences)


def split_corpus(corpus: TaggedCorpus, spec: SplitSpec | None = None):
    """Seeded sentence-level partition into (train, test)."""
    spec = spec or SplitSpec()
    n = len(corpus.sentences)
    if n == 0:
        raise ConfigError("cannot split an empty corpus")
    n_train = int(round(spec.train_fraction * n))
    chosen = set(random.Random(spec.seed).sample(range(n), n_train))
    train = [i for i in range(n) if i in chosen]
    test = [i for i in range(n) if i not in chosen]

    def subset(idx):
        return TaggedCorpus(
            tuple(corpus.sentences[i] for i in idx),
            tuple(corpus.line_numbers[i] for i in idx),
        )

    return subset(train), subset(test)


def tokenize_plain(text: str) -> list:
    """Whitespace tokenization, one sentence per non-blank line."""
    return [tuple(line.split()) for line in text.splitlines() if line.split()]


def read_confusion_sets(stream: TextIO | str | Iterable[str], source=None) -> list:
    """One comma-separated set per line; ``#`` lines and blank lines ignored."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    sets = []
    seen = set()
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            cset = ConfusionSet(tuple(w for w in text.split(",")))
        except ConfigError as exc:
            where = f"{source}: " if source is not None else ""
            raise ConfigError(f"{where}line {lineno}: {exc}") from None
        if cset.id in seen:
            continue
        seen.add(cset.id)
        sets.append(cset)
    return sets


def format_confusion_sets(sets: Iterable[ConfusionSet]) -> str:
    return "".join(cs.id + "\n" for cs in sets)


def find_targets(sentence: Sequence[str], sets: Sequence[ConfusionSet]) -> list:
    """Positions whose case-folded surface belongs to a set, once per set."""
    found = []
    for pos, word in enumerate(sentence):
        if isinstance(word, tuple):
            word = word[0]
        for cset in sets:
            if word in cset:
                found.append(Target(pos, cset))
    return found


def iter_occurrences(corpus: TaggedCorpus, cset: ConfusionSet) -> Iterator:
    """Yield ``(sentence_index, position, member)`` for every member occurrence."""
    for i, sent in enumerate(corpus.sentences):
        for pos, tok in enumerate(sent):
            low = tok.word.lower()
            if low in cset.words:
                yield i, pos, low


def member_counts(corpus: TaggedCorpus, cset: ConfusionSet) -> dict:
    counts = Counter(member for _, _, member in iter_occurrences(corpus, cset))
    return {w: counts.get(w, 0) for w in cset.words}


def match_case(original: str, word: str) -> str:
    """Give ``word`` the capitalization pattern of ``original``."""
    if len(original) > 1 and original.isupper():
        return word.upper()
    if original[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def substitute(sentence: Sequence[str], position: int, word: str) -> tuple:
    """Replace the token at ``position``; multi-word members expand in place."""
    original = sentence[position]
    replacement = match_case(original, word).split()
    return tuple(sentence[:position]) + tuple(replacement) + tuple(sentence[position + 1:])


def generate_corrupted(test: TaggedCorpus, cset: ConfusionSet) -> list:
    """Plant each other member in turn at every correct occurrence."""
    out = []
    for i, pos, member in iter_occurrences(test, cset):
        words = test.words(i)
        for other in cset.words:
            if other == member:
                continue
            out.append(CorruptedInstance(substitute(words, pos, other), pos, member, other))
    return out
