# sampling/schemas.py
from typing import List, Tuple

from pydantic import BaseModel, Field

from common import parse_payload
from decorations.schemas import SpaceSchema, space_from_schema, space_to_schema
from models.sample_models import SampleDistribution


class SampleDistributionSchema(BaseModel):
    space: SpaceSchema
    k: int = Field(..., ge=0)
    total: int = Field(..., ge=0)
    counts: List[Tuple[List[int], int]]


def distribution_to_schema(distribution: SampleDistribution) -> SampleDistributionSchema:
    return SampleDistributionSchema(
        space=space_to_schema(distribution.space),
        k=distribution.k,
        total=distribution.total,
        counts=[(list(key), count) for key, count in distribution.counts.items()],
    )


def distribution_from_schema(schema: SampleDistributionSchema) -> SampleDistribution:
    counts = {tuple(key): count for key, count in schema.counts}
    return SampleDistribution(space_from_schema(schema.space), schema.k, counts, schema.total)


def parse_sample_distribution(data) -> SampleDistribution:
    return distribution_from_schema(parse_payload(SampleDistributionSchema, data))
