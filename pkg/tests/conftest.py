import os

import pytest

from tribayes.corpus import SplitSpec, parse_tagged_corpus, split_corpus
from tribayes.datasets import make_confusable_corpus
from tribayes.system import RunConfig, train_system

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERIA.setdefault(mark.args[0], [mark.args[1], []])


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for number, (title, outcomes) in _CRITERIA.items():
        if report.nodeid.endswith(f"::test_criterion_{number:02d}") or f"::test_criterion_{number:02d}_" in report.nodeid:
            outcomes.append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcomes = _CRITERIA[number]
        if not outcomes:
            status = "NOT RUN"
        elif "failed" in outcomes:
            status = "FAIL"
        elif all(o == "skipped" for o in outcomes):
            status = "SKIP"
        else:
            status = "PASS"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")


# the two-sentence micro corpus used throughout the trigram examples
MICRO = "a/D b/N\na/D c/N\n"


@pytest.fixture
def micro_corpus():
    return parse_tagged_corpus(MICRO)


@pytest.fixture(scope="session")
def synthetic():
    corpus, sets = make_confusable_corpus(800, seed=7)
    train, test = split_corpus(corpus, SplitSpec(0.8, 42))
    return corpus, sets, train, test


@pytest.fixture(scope="session")
def synthetic_system(synthetic):
    _, sets, train, _ = synthetic
    return train_system(train, sets, RunConfig(seed=3))


@pytest.fixture(scope="session")
def brown_corpus():
    path = os.environ.get("TRIBAYES_BROWN_CORPUS")
    if not path:
        pytest.skip("set TRIBAYES_BROWN_CORPUS to a word/TAG Brown corpus file to run")
    with open(path, encoding="utf-8") as fh:
        return parse_tagged_corpus(fh, source=path)
