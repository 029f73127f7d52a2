import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tiltkit import d2n  # noqa: E402
from tiltkit.homotopy import endomorphism_algebra  # noqa: E402
from tiltkit.tiltbench import build_two_term  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

_cache = {}


def cached(key, make):
    if key not in _cache:
        _cache[key] = make()
    return _cache[key]


def get_a1(n):
    return cached(("a1", n), lambda: d2n.a1(n))


def get_a2(n):
    return cached(("a2", n), lambda: d2n.a2(n))


def get_p1(n):
    return cached(("p1", n), lambda: build_two_term(d2n.p1_datum(n, get_a1(n))))


def get_end(n):
    return cached(("end", n), lambda: endomorphism_algebra(get_p1(n)))


@pytest.fixture(scope="session")
def a1_4():
    return get_a1(4)


@pytest.fixture(scope="session")
def a2_4():
    return get_a2(4)


@pytest.fixture(scope="session")
def p1_4():
    return get_p1(4)


@pytest.fixture(scope="session")
def end_4():
    return get_end(4)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
