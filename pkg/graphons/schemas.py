# graphons/schemas.py
from typing import List, Optional, Union

from pydantic import BaseModel, Field

from common import ValidationError, parse_payload
from config import settings
from decorations.schemas import (
    DistributionSchema,
    FamilySchema,
    SpaceSchema,
    distribution_from_schema,
    distribution_to_schema,
    family_from_schema,
    family_to_schema,
    space_from_schema,
    space_to_schema,
)
from graphs.schemas import parse_graph
from models.graph_models import DecoratedGraph
from models.graphon_models import KernelMatrix, MomentFunctionSequence, StepGraphon


class GraphonSchema(BaseModel):
    space: SpaceSchema
    m: int = Field(..., ge=1)
    cells: List[DistributionSchema]  # row-major upper triangle, diagonal included


class KernelSchema(BaseModel):
    m: int = Field(..., ge=1)
    values: List[List[float]]
    sup_bound: Optional[float] = None


class MomentSequenceSchema(BaseModel):
    family: FamilySchema
    m: int = Field(..., ge=1)
    components: List[KernelSchema]


def graphon_from_schema(schema: GraphonSchema) -> StepGraphon:
    space = space_from_schema(schema.space)
    m = schema.m
    if len(schema.cells) != m * (m + 1) // 2:
        raise ValidationError(f"A {m}-step graphon needs {m * (m + 1) // 2} upper-triangle cells, "
                              f"got {len(schema.cells)}")
    upper = iter(schema.cells)
    cells = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(a, m):
            cells[a][b] = cells[b][a] = distribution_from_schema(next(upper), space)
    return StepGraphon.from_cells(space, cells, settings.MERGE_TOL)


def graphon_to_schema(W: StepGraphon) -> GraphonSchema:
    return GraphonSchema(space=space_to_schema(W.space), m=W.m,
                         cells=[distribution_to_schema(mu) for _, _, mu in W.cells()])


def kernel_from_schema(schema: KernelSchema) -> KernelMatrix:
    if len(schema.values) != schema.m or any(len(row) != schema.m for row in schema.values):
        raise ValidationError(f"Kernel values must be a {schema.m}×{schema.m} matrix")
    return KernelMatrix(schema.values, -1.0 if schema.sup_bound is None else schema.sup_bound)


def kernel_to_schema(X: KernelMatrix) -> KernelSchema:
    return KernelSchema(m=X.m, values=X.values.tolist(), sup_bound=X.sup_bound)


def sequence_from_schema(schema: MomentSequenceSchema) -> MomentFunctionSequence:
    components = tuple(kernel_from_schema(c) for c in schema.components)
    if any(c.m != schema.m for c in components):
        raise ValidationError(f"Every component must have {schema.m} steps")
    return MomentFunctionSequence(family_from_schema(schema.family), components)


def sequence_to_schema(s: MomentFunctionSequence) -> MomentSequenceSchema:
    return MomentSequenceSchema(family=family_to_schema(s.family), m=s.m,
                                components=[kernel_to_schema(c) for c in s.components])


def parse_graphon(data) -> StepGraphon:
    return graphon_from_schema(parse_payload(GraphonSchema, data))


def parse_kernel(data) -> KernelMatrix:
    if isinstance(data, list):
        data = {"m": len(data), "values": data}
    return kernel_from_schema(parse_payload(KernelSchema, data))


def parse_sequence(data) -> MomentFunctionSequence:
    return sequence_from_schema(parse_payload(MomentSequenceSchema, data))


def parse_target(data) -> Union[DecoratedGraph, StepGraphon]:
    """A graph or a graphon, told apart by their ``entries`` and ``cells`` fields."""
    if isinstance(data, dict) and "cells" in data:
        return parse_graphon(data)
    if isinstance(data, dict) and "entries" in data:
        return parse_graph(data)
    raise ValidationError("Expected a graph (with 'entries') or a graphon (with 'cells')")
