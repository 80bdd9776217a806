import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from deltacolor.corpus import connected_multigraphs, connected_simple_graphs
from deltacolor.exact import chromatic_index, max_delta_subgraph
from deltacolor.verify import family_instances


@functools.lru_cache(maxsize=None)
def simple_corpus():
    return tuple(connected_simple_graphs())


@functools.lru_cache(maxsize=None)
def multi_corpus():
    return tuple(connected_multigraphs())


_certs = {}
_chis = {}


def certificate(name, g):
    if name not in _certs:
        _certs[name] = max_delta_subgraph(g)
    return _certs[name]


def chi(name, g):
    if name not in _chis:
        _chis[name] = chromatic_index(g)
    return _chis[name]


@pytest.fixture(scope="session")
def simple_graphs():
    return simple_corpus()


@pytest.fixture(scope="session")
def multigraphs():
    return multi_corpus()


@pytest.fixture(scope="session")
def families():
    return tuple(family_instances())


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
