import itertools

import pytest

from models.graph_model import from_edges
from strategies import complete_graph, cycle_graph


@pytest.fixture
def k5():
    return complete_graph(5)


@pytest.fixture
def k6():
    return complete_graph(6)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def k6_minus_matching():
    missing = {(0, 1), (2, 3), (4, 5)}
    return from_edges(6, [pair for pair in itertools.combinations(range(6), 2) if pair not in missing])


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
