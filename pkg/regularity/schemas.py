# regularity/schemas.py
from typing import List

from pydantic import BaseModel, Field

from common import parse_payload
from models.graphon_models import StepPartition


class PartitionSchema(BaseModel):
    m: int = Field(..., ge=1)
    groups: List[List[int]]


class RegularityReport(BaseModel):
    eps: float
    mode: str
    partition: PartitionSchema
    functions: List[str]
    achieved: List[float]
    certified: List[bool]
    rounds: int


def partition_to_schema(P: StepPartition) -> PartitionSchema:
    return PartitionSchema(m=P.m, groups=[list(g) for g in P.groups])


def partition_from_schema(schema: PartitionSchema) -> StepPartition:
    return StepPartition(schema.m, tuple(tuple(g) for g in schema.groups))


def parse_partition(data) -> StepPartition:
    return partition_from_schema(parse_payload(PartitionSchema, data))
