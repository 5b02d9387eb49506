# cutnorm/schemas.py
from typing import List, Optional

from pydantic import BaseModel

from cutnorm.main import CutNormResult


class CutNormResponse(BaseModel):
    value: float
    witness_S: List[int]
    witness_T: List[int]
    mode: str
    bilinear_pm1: Optional[float] = None


def result_to_schema(result: CutNormResult, bilinear: Optional[float] = None) -> CutNormResponse:
    return CutNormResponse(value=result.value, witness_S=list(result.S), witness_T=list(result.T),
                           mode=result.mode, bilinear_pm1=bilinear)
