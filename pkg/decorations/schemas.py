# decorations/schemas.py
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, TypeAdapter
from typing_extensions import Annotated

from common import ValidationError, load_json, parse_payload
from decorations.main import bits_to_mask, default_family, support_bits
from models.decoration_models import (
    Constant,
    DecorationSpace,
    KDistribution,
    LinearCombination,
    Monomial,
    ProductIndicator,
    SpaceKind,
    Table,
    TestFamily,
    TestFunction,
)


class FiniteSpaceSchema(BaseModel):
    kind: Literal["finite"]
    elements: List[str]
    zero: Optional[int] = 0


class IntervalSpaceSchema(BaseModel):
    kind: Literal["interval"]
    lo: float
    hi: float
    zero: Optional[float] = None


class ProductSpaceSchema(BaseModel):
    kind: Literal["product"]
    bits: int = Field(..., ge=1)
    zero: Optional[int] = 0
    truncated: bool = False


SpaceSchema = Annotated[
    Union[FiniteSpaceSchema, IntervalSpaceSchema, ProductSpaceSchema],
    Field(discriminator="kind"),
]


class TableSchema(BaseModel):
    form: Literal["table"]
    values: List[float]


class MonomialSchema(BaseModel):
    form: Literal["monomial"]
    degree: int = Field(..., ge=0)


class ProductIndicatorSchema(BaseModel):
    form: Literal["product_indicator"]
    support: List[int]


class ConstantSchema(BaseModel):
    form: Literal["constant"]
    c: float = 1.0


class LinearCombinationSchema(BaseModel):
    form: Literal["linear_combination"]
    terms: List[Tuple[float, "FunctionSchema"]]


FunctionSchema = Annotated[
    Union[TableSchema, MonomialSchema, ProductIndicatorSchema, ConstantSchema, LinearCombinationSchema],
    Field(discriminator="form"),
]
LinearCombinationSchema.model_rebuild()


class FamilySchema(BaseModel):
    space: SpaceSchema
    name: str = "custom"
    functions: List[FunctionSchema]


class DistributionSchema(BaseModel):
    support: List[Tuple[Union[int, float], float]]


space_adapter = TypeAdapter(SpaceSchema)
function_adapter = TypeAdapter(FunctionSchema)


def space_from_schema(schema) -> DecorationSpace:
    if isinstance(schema, FiniteSpaceSchema):
        return DecorationSpace.finite(schema.elements, zero=schema.zero)
    if isinstance(schema, IntervalSpaceSchema):
        return DecorationSpace.interval(schema.lo, schema.hi, zero=schema.zero)
    return DecorationSpace.product(schema.bits, zero=schema.zero, truncated=schema.truncated)


def space_to_schema(space: DecorationSpace):
    if space.kind == SpaceKind.FINITE:
        return FiniteSpaceSchema(kind="finite", elements=list(space.elements), zero=space.zero)
    if space.kind == SpaceKind.INTERVAL:
        return IntervalSpaceSchema(kind="interval", lo=space.lo, hi=space.hi, zero=space.zero)
    return ProductSpaceSchema(kind="product", bits=space.bits, zero=space.zero, truncated=space.truncated)


def function_from_schema(schema, space: DecorationSpace) -> TestFunction:
    if isinstance(schema, TableSchema):
        return Table(space, tuple(schema.values))
    if isinstance(schema, MonomialSchema):
        return Monomial(space, schema.degree)
    if isinstance(schema, ProductIndicatorSchema):
        if space.kind != SpaceKind.PRODUCT or len(schema.support) != space.bits:
            raise ValidationError(f"Support vector {schema.support} does not match the space")
        return ProductIndicator(space, bits_to_mask(schema.support))
    if isinstance(schema, ConstantSchema):
        return Constant(space, schema.c)
    return LinearCombination(space, tuple((a, function_from_schema(t, space)) for a, t in schema.terms))


def function_to_schema(f: TestFunction):
    if isinstance(f, Table):
        return TableSchema(form="table", values=list(f.values))
    if isinstance(f, Monomial):
        return MonomialSchema(form="monomial", degree=f.degree)
    if isinstance(f, ProductIndicator):
        return ProductIndicatorSchema(form="product_indicator", support=list(support_bits(f.support, f.space.bits)))
    if isinstance(f, Constant):
        return ConstantSchema(form="constant", c=f.c)
    if isinstance(f, LinearCombination):
        return LinearCombinationSchema(form="linear_combination",
                                       terms=[(a, function_to_schema(t)) for a, t in f.terms])
    raise ValidationError(f"No wire format for {type(f).__name__}")


def parse_space(data) -> DecorationSpace:
    return space_from_schema(parse_payload(space_adapter, data))


def parse_function(data, space: DecorationSpace) -> TestFunction:
    return function_from_schema(parse_payload(function_adapter, data), space)


def family_from_schema(schema: FamilySchema) -> TestFamily:
    space = space_from_schema(schema.space)
    return TestFamily(space, tuple(function_from_schema(f, space) for f in schema.functions), name=schema.name)


def family_to_schema(family: TestFamily) -> FamilySchema:
    return FamilySchema(space=space_to_schema(family.space), name=family.name,
                        functions=[function_to_schema(f) for f in family])


def resolve_family(spec: Union[str, dict], space: DecorationSpace, max_degree: Optional[int] = None,
                   max_support: Optional[int] = None) -> TestFamily:
    """``"default"`` selects the built-in family; a mapping is parsed as a FamilySchema on ``space``."""
    if spec == "default":
        return default_family(space, max_degree=max_degree, max_support=max_support)
    family = family_from_schema(parse_payload(FamilySchema, spec))
    if family.space != space:
        raise ValidationError("The family lives on a different space than the input")
    return family


def distribution_from_schema(schema: DistributionSchema, space: DecorationSpace) -> KDistribution:
    return KDistribution(space, tuple(p for p, _ in schema.support), tuple(w for _, w in schema.support))


def distribution_to_schema(mu: KDistribution) -> DistributionSchema:
    return DistributionSchema(support=[(p, w) for p, w in zip(mu.points, mu.weights)])


def family_from_option(value: str, space: DecorationSpace, max_degree: Optional[int] = None,
                       max_support: Optional[int] = None) -> TestFamily:
    """Resolve a ``--family`` command-line value: ``default`` or the path of a family file."""
    spec = value if value == "default" else load_json(value)
    return resolve_family(spec, space, max_degree=max_degree, max_support=max_support)
