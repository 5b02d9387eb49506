# graphs/schemas.py
from typing import Any, Dict, List, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from common import ValidationError, parse_payload
from decorations.schemas import (
    FunctionSchema,
    SpaceSchema,
    function_from_schema,
    function_to_schema,
    space_from_schema,
    space_to_schema,
)
from models.graph_models import DecoratedGraph, PatternGraph


class GraphSchema(BaseModel):
    space: SpaceSchema
    n: int = Field(..., ge=0)
    entries: List[Union[int, float]]  # row-major upper triangle, diagonal included
    loopless: bool = False
    metadata: Dict[str, Any] = {}


class PatternSchema(BaseModel):
    space: SpaceSchema
    k: int = Field(..., ge=0)
    edges: List[Tuple[int, int, FunctionSchema]] = []


def graph_from_schema(schema: GraphSchema) -> DecoratedGraph:
    space = space_from_schema(schema.space)
    n = schema.n
    if len(schema.entries) != n * (n + 1) // 2:
        raise ValidationError(f"A {n}-node graph needs {n * (n + 1) // 2} upper-triangle entries, "
                              f"got {len(schema.entries)}")
    entries = np.zeros((n, n), dtype=space.dtype)
    rows, cols = np.triu_indices(n)
    values = space.check_array(np.asarray(schema.entries))
    entries[rows, cols] = values
    entries[cols, rows] = values
    return DecoratedGraph(space, entries, loopless=schema.loopless, metadata=schema.metadata)


def graph_to_schema(G: DecoratedGraph) -> GraphSchema:
    return GraphSchema(space=space_to_schema(G.space), n=G.n, entries=G.upper_triangle().tolist(),
                       loopless=G.loopless, metadata=G.metadata)


def pattern_from_schema(schema: PatternSchema) -> PatternGraph:
    space = space_from_schema(schema.space)
    return PatternGraph(space, schema.k, tuple((i, j, function_from_schema(f, space)) for i, j, f in schema.edges))


def pattern_to_schema(F: PatternGraph) -> PatternSchema:
    return PatternSchema(space=space_to_schema(F.space), k=F.k,
                         edges=[(i, j, function_to_schema(f)) for i, j, f in F.edges])


def parse_graph(data) -> DecoratedGraph:
    return graph_from_schema(parse_payload(GraphSchema, data))


def parse_pattern(data) -> PatternGraph:
    return pattern_from_schema(parse_payload(PatternSchema, data))
