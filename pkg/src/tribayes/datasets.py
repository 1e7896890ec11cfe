"""Synthetic tagged corpora with confusable words, for demos and tests."""
from __future__ import annotations

import random

from .corpus import ConfusionSet, TaggedCorpus, TaggedToken

_LEXICON = {
    "NN": (
        "dog cat house car tree road city river table chair book letter garden "
        "window door farmer teacher doctor village market bridge church school "
        "kitchen horse wall field"
    ).split(),
    "NNS": "dogs cats houses cars trees books letters farmers teachers horses".split(),
    "VB": (
        "see find take make carry paint clean build visit watch open close move "
        "sell buy bring keep leave fix follow"
    ).split(),
    "VBD": (
        "saw found took made carried painted cleaned built visited watched opened "
        "closed moved sold bought brought kept left fixed followed"
    ).split(),
    "JJ": (
        "old new big small red green quiet happy long short dark bright cold warm "
        "empty full heavy light strange simple"
    ).split(),
    "JJR": "older newer bigger smaller longer shorter darker brighter colder warmer".split(),
    "PPS": "he she it".split(),
    "PPSS": "we they i you".split(),
    "AT": "the a".split(),
    "PP$": "his her our my".split(),
}

# Word/TAG tokens; {SLOT} draws a random word of that tag.
_TEMPLATES = {
    "their,there": [
        ("their", "{PPSS}/PPSS want/VB to/TO {VB}/VB their/PP$ {NN}/NN ./."),
        ("their", "{PPS}/PPS {VBD}/VBD their/PP$ {JJ}/JJ {NN}/NN ./."),
        ("their", "their/PP$ {NN}/NN was/BEDZ {JJ}/JJ ./."),
        ("there", "there/EX was/BEDZ {AT}/AT {NN}/NN in/IN the/AT {NN}/NN ./."),
        ("there", "{PPSS}/PPSS {VBD}/VBD the/AT {NN}/NN there/RB ./."),
        ("there", "there/EX is/BEZ {AT}/AT {JJ}/JJ {NN}/NN ./."),
    ],
    "than,then": [
        ("than", "the/AT {NN}/NN is/BEZ {JJR}/JJR than/CS the/AT {NN}/NN ./."),
        ("than", "{PPS}/PPS was/BEDZ {JJR}/JJR than/CS {PP$}/PP$ {NN}/NN ./."),
        ("then", "{PPS}/PPS {VBD}/VBD the/AT {NN}/NN and/CC then/RB {VBD}/VBD ./."),
        ("then", "then/RB the/AT {NN}/NN {VBD}/VBD {AT}/AT {NN}/NN ./."),
        ("then", "{PPSS}/PPSS {VBD}/VBD it/PPO then/RB ./."),
    ],
    "peace,piece": [
        ("peace", "the/AT war/NN ended/VBD and/CC peace/NN returned/VBD to/TO the/AT {NN}/NN ./."),
        ("peace", "{PPSS}/PPSS signed/VBD {AT}/AT peace/NN treaty/NN with/IN the/AT {NN}/NN ./."),
        ("peace", "the/AT {NN}/NN wanted/VBD peace/NN and/CC quiet/NN ./."),
        ("peace", "{PPS}/PPS {VBD}/VBD for/IN peace/NN after/IN the/AT war/NN ./."),
        ("piece", "{PPS}/PPS ate/VBD {AT}/AT piece/NN of/IN cake/NN ./."),
        ("piece", "{PPSS}/PPSS {VBD}/VBD {AT}/AT piece/NN of/IN {PP$}/PP$ pie/NN ./."),
        ("piece", "{AT}/AT piece/NN of/IN wood/NN fell/VBD on/IN the/AT {NN}/NN ./."),
        ("piece", "the/AT {JJ}/JJ piece/NN was/BEDZ on/IN the/AT {NN}/NN ./."),
    ],
    "lead,led": [
        ("lead", "{PPSS}/PPSS will/MD lead/VB the/AT {NNS}/NNS to/IN the/AT {NN}/NN ./."),
        ("lead", "the/AT lead/NN pipe/NN {VBD}/VBD ./."),
        ("led", "{PPS}/PPS led/VBD the/AT {NNS}/NNS to/IN the/AT {NN}/NN ./."),
        ("led", "the/AT {NN}/NN led/VBD to/IN {AT}/AT {JJ}/JJ {NN}/NN ./."),
    ],
    "country,county": [
        ("country", "{PPSS}/PPSS love/VB this/DT country/NN and/CC its/PP$ people/NNS ./."),
        ("country", "the/AT {NN}/NN travelled/VBD across/IN the/AT country/NN ./."),
        ("country", "the/AT country/NN went/VBD to/IN war/NN ./."),
        ("county", "the/AT county/NN sheriff/NN {VBD}/VBD the/AT {NN}/NN ./."),
        ("county", "{PPS}/PPS {VBD}/VBD the/AT county/NN court/NN ./."),
        ("county", "the/AT county/NN clerk/NN {VBD}/VBD {AT}/AT {NN}/NN ./."),
    ],
}

# Neutral contexts where either member is plausible.
_NOISE = {
    "their,there": "{PPSS}/PPSS {VB}/VB {W}/{T} ./.",
    "than,then": "{PPS}/PPS {VBD}/VBD it/PPO {W}/{T} ./.",
    "peace,piece": "the/AT {W}/NN was/BEDZ {JJ}/JJ ./.",
    "lead,led": "{PPS}/PPS {W}/{T} ./.",
    "country,county": "the/AT {W}/NN was/BEDZ {JJ}/JJ ./.",
}
_NOISE_TAGS = {
    "their": "PP$", "there": "RB", "than": "CS", "then": "RB",
    "lead": "VB", "led": "VBD",
}

_FILLERS = [
    "{PPS}/PPS {VBD}/VBD the/AT {JJ}/JJ {NN}/NN ./.",
    "the/AT {NNS}/NNS {VBD}/VBD {AT}/AT {NN}/NN ./.",
    "{PPSS}/PPSS can/MD {VB}/VB {PP$}/PP$ {NN}/NN ./.",
    "{AT}/AT {JJ}/JJ {NN}/NN {VBD}/VBD in/IN the/AT {NN}/NN ./.",
]


def _realize(template: str, rng: random.Random, fill=None) -> tuple:
    fill = fill or {}
    tokens = []
    for raw in template.split():
        word, tag = raw.rsplit("/", 1)
        for key, value in fill.items():
            word = word.replace("{" + key + "}", value)
            tag = tag.replace("{" + key + "}", value)
        if word.startswith("{") and word.endswith("}"):
            word = rng.choice(_LEXICON[word[1:-1]])
        tokens.append(TaggedToken(word, tag))
    if tokens[0].word[0].isalpha():
        tokens[0] = TaggedToken(tokens[0].word.capitalize(), tokens[0].tag)
    return tuple(tokens)


def confusable_sets() -> list:
    return [ConfusionSet(tuple(key.split(","))) for key in _TEMPLATES]


def make_confusable_corpus(n_sentences: int = 600, noise: float = 0.1, seed: int = 0):
    """Return ``(corpus, confusion_sets)`` built from fixed templates.

    Five sets are covered: {their, there}, {than, then} and {lead, led}
    differ in part of speech; {peace, piece} and {country, county} share one
    and are told apart by context words and collocations.  About a quarter
    of the sentences are fillers without any confusable word, and ``noise``
    is the share of target sentences drawn from context-neutral templates.
    """
    rng = random.Random(seed)
    keys = sorted(_TEMPLATES)
    sentences = []
    for _ in range(n_sentences):
        if rng.random() < 0.25:
            sentences.append(_realize(rng.choice(_FILLERS), rng))
            continue
        key = rng.choice(keys)
        if rng.random() < noise:
            word = rng.choice(key.split(","))
            fill = {"W": word, "T": _NOISE_TAGS.get(word, "NN")}
            sentences.append(_realize(_NOISE[key], rng, fill))
        else:
            _, template = rng.choice(_TEMPLATES[key])
            sentences.append(_realize(template, rng))
    return TaggedCorpus(tuple(sentences)), confusable_sets()
