import json

import numpy as np
import pytest

from config import settings
from decorations.main import default_family, indicator
from graphs.main import complete_graph, from_simple_graph, simple_space, triangle
from graphs.schemas import graph_to_schema, pattern_to_schema
from models.decoration_models import DecorationSpace


@pytest.fixture(autouse=True)
def restore_settings():
    """Commands write onto the shared settings; put them back after every test."""
    saved = settings.model_dump()
    yield
    for key, value in saved.items():
        setattr(settings, key, value)


@pytest.fixture
def simple():
    return simple_space()


@pytest.fixture
def colors():
    return DecorationSpace.finite(["red", "green", "blue"], zero=0)


@pytest.fixture
def unit_interval():
    return DecorationSpace.interval(0.0, 1.0, zero=0.0)


@pytest.fixture
def bits3():
    return DecorationSpace.product(3, zero=0)


@pytest.fixture
def edge_function(simple):
    """f_1: the indicator of an edge."""
    return indicator(simple, 1)


@pytest.fixture
def indicators(simple):
    return default_family(simple)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def one_edge():
    return from_simple_graph([[0, 1, 0], [1, 0, 0], [0, 0, 0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def write_json(tmp_path):
    """Write a payload (dict or pydantic model) to a file in tmp_path and return its path."""

    def _write(name, payload):
        if hasattr(payload, "model_dump"):
            payload = payload.model_dump(mode="json")
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return _write


@pytest.fixture
def k3_file(write_json, k3):
    return write_json("k3.json", graph_to_schema(k3))


@pytest.fixture
def triangle_file(write_json, edge_function):
    return write_json("tri.json", pattern_to_schema(triangle(edge_function)))
