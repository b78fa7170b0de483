import functools

import pytest

from relhopf.generators import base_groupoids, cyclic_group, groupoid_corpus, pair_double, small_corpus, symmetric_group, trivial_double
from relhopf.hopfoid import build_hopfoid


@functools.lru_cache(maxsize=None)
def corpus():
    return small_corpus()


@functools.lru_cache(maxsize=None)
def hopfoids():
    return {k: build_hopfoid(d) for k, d in corpus().items()}


@pytest.fixture(scope="session")
def dcorpus():
    return corpus()


@pytest.fixture(scope="session")
def hcorpus():
    return hopfoids()


@pytest.fixture(scope="session")
def gcorpus():
    return groupoid_corpus()


@pytest.fixture(scope="session")
def groups():
    return base_groupoids()


@pytest.fixture(scope="session")
def z3_pair():
    return pair_double(cyclic_group(3))


@pytest.fixture(scope="session")
def s3_pair():
    return pair_double(symmetric_group(3))


@pytest.fixture(scope="session")
def z2_trivial():
    return trivial_double(cyclic_group(2))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
