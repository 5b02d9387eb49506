# convergence/schemas.py
from dataclasses import asdict
from typing import List, Optional

from pydantic import BaseModel

from convergence.main import CauchyReport, SamplingReport


class CauchySchema(BaseModel):
    window: int
    tol: float
    max_differences: List[float]
    pattern_converged: List[bool]
    converged: bool
    note: str


class PatternCheckSchema(BaseModel):
    pattern: str
    index: int
    sample_mean: float
    density: float
    gap_bound: float
    within_bound: bool


class SamplingSchema(BaseModel):
    k: int
    reps: int
    seed: int
    window: int
    tol: float
    tv_distances: List[float]
    converged: bool
    checks: List[PatternCheckSchema]
    note: str


class ConvergenceReport(BaseModel):
    sequence: List[str]
    catalog: List[str]
    kmax: int
    edge_budget: int
    family: str
    trace: List[List[float]]
    cauchy: CauchySchema
    sampling: Optional[SamplingSchema] = None


def cauchy_to_schema(report: CauchyReport) -> CauchySchema:
    return CauchySchema(window=report.window, tol=report.tol, max_differences=list(report.max_differences),
                        pattern_converged=list(report.pattern_converged), converged=report.converged,
                        note=report.note)


def sampling_to_schema(report: SamplingReport) -> SamplingSchema:
    return SamplingSchema(k=report.k, reps=report.reps, seed=report.seed, window=report.window, tol=report.tol,
                          tv_distances=list(report.tv_distances), converged=report.converged,
                          checks=[PatternCheckSchema(**asdict(c)) for c in report.checks], note=report.note)
