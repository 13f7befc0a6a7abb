"""HTTP service exposing the analysis pipeline.

POST endpoints take a problem document (same shape as the JSON problem
files) plus optional config overrides, and return the same payloads the
CLI emits with --json.  Malformed input (bad grammar, inconsistent
shapes, non-composing resolutions) is a 422; domain outcomes such as a
rank-deficient presentation are ordinary 200 responses with a "status"
field, because infinite entropy is an answer, not a failure.
"""
from __future__ import annotations

import math
from typing import Any, Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .mahler import (METHOD_EXACT_INFINITE, METHOD_JENSEN,
                     METHOD_QUADRATURE, mahler)
from .expansive import expansive as expansive_check
from .fitting import (CompositionNonzeroError, Contained, FreeResolution,
                      fitting_ideal, principal_candidate_check)
from .polyio import (PolyParseError, Problem, ProblemFormatError,
                     parse_problem, parse_poly, serialize_poly)
from .presentation import FreeSubmoduleError, PresentationMatrix, minors
from .report import (PROV_BOUNDED, PROV_CERTIFIED, PROV_EXACT,
                     STATUS_FREE_SUBMODULE, STATUS_OK, STATUS_UNDECIDED,
                     ReportConfig, _expansive_json, build_report)
from .squaredyn import Lattice, fix_count

app = FastAPI(
    title="algdyn",
    description="Dynamical invariants of modules over the integral Laurent "
                "polynomial ring: determinantal ideals, entropy, "
                "expansiveness, periodic points, mixing and ergodicity.",
    version="0.1.0",
)


class ProblemModel(BaseModel):
    d: int
    kind: Literal["presentation", "resolution", "lattice-query"]
    matrix: Optional[list[list[str]]] = None
    maps: Optional[list[list[list[str]]]] = None
    lattice: Optional[list[list[int]]] = None
    name: Optional[str] = None
    expected: dict[str, Any] = Field(default_factory=dict)


class ConfigModel(BaseModel):
    tol: float = 1e-6
    grid_budget: int = 10 ** 7
    search_bound: int = 8
    precision: int = 256
    max_period: int = 8
    threads: int = 1


class AnalysisRequest(BaseModel):
    problem: ProblemModel
    config: ConfigModel = Field(default_factory=ConfigModel)


class PeriodicRequest(AnalysisRequest):
    n: Optional[int] = None
    lattice: Optional[list[list[int]]] = None


class FittingRequest(AnalysisRequest):
    level: Optional[int] = None
    candidate: Optional[str] = None


class EntropyBlock(BaseModel):
    value: float | str
    method: str
    error: float
    provenance: str
    note: Optional[str] = None


class EntropyResponse(BaseModel):
    entropy: EntropyBlock
    gcd: Optional[str] = None
    status: str
    error: Optional[str] = None


class ExpansiveResponse(BaseModel):
    verdict: str
    provenance: str
    grid: Optional[int] = None
    margin: Optional[float] = None
    witness: Optional[list[str]] = None
    witness_exact: Optional[bool] = None
    residual: Optional[float] = None
    best_margin: Optional[float] = None
    budget_used: Optional[int] = None
    status: str


class GcdResponse(BaseModel):
    generators: list[str]
    gcd: str
    provenance: str
    status: str


class CountRow(BaseModel):
    period: Optional[int] = None
    index: Optional[int] = None
    basis: Optional[list[list[int]]] = None
    count: str


class PeriodicResponse(BaseModel):
    counts: list[CountRow]
    provenance: str
    status: str


class CandidateBlock(BaseModel):
    poly: str
    verdict: str
    witness: Optional[str] = None


class FittingLevelBlock(BaseModel):
    level: int
    rank: int
    generators: list[str]
    gcd: str
    gcd_content_factors: list[list[int]]
    candidate: Optional[CandidateBlock] = None


class FittingResponse(BaseModel):
    levels: list[FittingLevelBlock]
    provenance: str
    status: str


class HealthResponse(BaseModel):
    status: str
    version: str


def _to_problem(model: ProblemModel) -> Problem:
    doc = model.model_dump(exclude_none=True)
    try:
        return parse_problem(doc)
    except (ProblemFormatError, PolyParseError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def _to_config(model: ConfigModel) -> ReportConfig:
    try:
        return ReportConfig(tol=model.tol, grid_budget=model.grid_budget,
                            search_bound=model.search_bound,
                            precision=model.precision,
                            max_period=model.max_period,
                            threads=model.threads)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def _presentation(problem: Problem) -> PresentationMatrix:
    return PresentationMatrix(problem.d, problem.presentation_matrix)


@app.get("/healthz", response_model=HealthResponse)
def healthz() -> HealthResponse:
    return HealthResponse(status="ok", version=app.version)


@app.post("/v1/report")
def report_endpoint(req: AnalysisRequest) -> JSONResponse:
    problem = _to_problem(req.problem)
    config = _to_config(req.config)
    try:
        report = build_report(problem, config)
    except CompositionNonzeroError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    return JSONResponse(report)


@app.post("/v1/entropy", response_model=EntropyResponse,
          response_model_exclude_none=True)
def entropy_endpoint(req: AnalysisRequest) -> EntropyResponse:
    problem = _to_problem(req.problem)
    config = _to_config(req.config)
    A = _presentation(problem)
    try:
        ideal = minors(A)
    except FreeSubmoduleError as exc:
        return EntropyResponse(
            entropy=EntropyBlock(value="infinite",
                                 method=METHOD_EXACT_INFINITE,
                                 error=0.0, provenance=PROV_EXACT),
            status=STATUS_FREE_SUBMODULE, error=str(exc))
    val = mahler(ideal.gcd, tol=config.tol, budget=config.grid_budget)
    prov = {METHOD_JENSEN: PROV_CERTIFIED,
            METHOD_QUADRATURE: PROV_BOUNDED}.get(val.method, PROV_EXACT)
    return EntropyResponse(
        entropy=EntropyBlock(
            value="infinite" if math.isinf(val.value) else val.value,
            method=val.method, error=val.error, provenance=prov,
            note=val.note),
        gcd=serialize_poly(ideal.gcd), status=STATUS_OK)


@app.post("/v1/expansive", response_model=ExpansiveResponse,
          response_model_exclude_none=True)
def expansive_endpoint(req: AnalysisRequest) -> ExpansiveResponse:
    problem = _to_problem(req.problem)
    config = _to_config(req.config)
    A = _presentation(problem)
    try:
        verdict = expansive_check(A, budget=config.grid_budget)
    except FreeSubmoduleError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from None
    block = _expansive_json(verdict)
    status = STATUS_UNDECIDED if block["verdict"] == "Undecided" else STATUS_OK
    return ExpansiveResponse(status=status, **block)


@app.post("/v1/gcd", response_model=GcdResponse)
def gcd_endpoint(req: AnalysisRequest) -> GcdResponse:
    problem = _to_problem(req.problem)
    A = _presentation(problem)
    try:
        ideal = minors(A)
    except FreeSubmoduleError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from None
    return GcdResponse(
        generators=[serialize_poly(g) for g in ideal.generators],
        gcd=serialize_poly(ideal.gcd), provenance=PROV_EXACT, status=STATUS_OK)


@app.post("/v1/periodic", response_model=PeriodicResponse,
          response_model_exclude_none=True)
def periodic_endpoint(req: PeriodicRequest) -> PeriodicResponse:
    problem = _to_problem(req.problem)
    config = _to_config(req.config)
    A = _presentation(problem)
    if not A.is_square():
        raise HTTPException(status_code=422,
                            detail="periodic point counts need a square "
                                   "presentation matrix")
    lattice_rows = req.lattice if req.lattice is not None else problem.lattice
    rows: list[CountRow] = []
    try:
        if lattice_rows is not None:
            lat = Lattice(tuple(tuple(int(x) for x in r) for r in lattice_rows))
            count = fix_count(A, lat)
            rows.append(CountRow(
                basis=[list(r) for r in lat.basis], index=lat.index(),
                count="infinite" if count.is_infinite else str(count.value)))
        else:
            upto = req.n if req.n is not None else config.max_period
            for n in range(1, upto + 1):
                count = fix_count(A, Lattice.rectangular(A.d, n))
                rows.append(CountRow(
                    period=n,
                    count="infinite" if count.is_infinite else str(count.value)))
    except FreeSubmoduleError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from None
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    return PeriodicResponse(counts=rows, provenance=PROV_EXACT, status=STATUS_OK)


@app.post("/v1/fitting", response_model=FittingResponse,
          response_model_exclude_none=True)
def fitting_endpoint(req: FittingRequest) -> FittingResponse:
    problem = _to_problem(req.problem)
    if problem.maps is not None:
        res = FreeResolution(problem.d, problem.maps)
    else:
        res = FreeResolution(problem.d, (problem.presentation_matrix,))
    try:
        res.validate()
    except CompositionNonzeroError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    levels = [req.level] if req.level is not None \
        else list(range(1, res.length + 1))
    candidate = None
    if req.candidate is not None:
        try:
            candidate = parse_poly(req.candidate, problem.d)
        except PolyParseError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
    out = []
    for level in levels:
        if not 1 <= level <= res.length:
            raise HTTPException(status_code=422,
                                detail=f"level must be between 1 and {res.length}")
        data = fitting_ideal(res, level)
        block = FittingLevelBlock(
            level=data.level, rank=data.rank,
            generators=[serialize_poly(g) for g in data.generators],
            gcd=serialize_poly(data.gcd),
            gcd_content_factors=[[p, e] for p, e in data.content_factors])
        if candidate is not None:
            verdict = principal_candidate_check(res, level, candidate)
            if isinstance(verdict, Contained):
                block.candidate = CandidateBlock(
                    poly=serialize_poly(candidate), verdict="Contained")
            else:
                block.candidate = CandidateBlock(
                    poly=serialize_poly(candidate), verdict="NotContained",
                    witness=serialize_poly(verdict.witness))
        out.append(block)
    return FittingResponse(levels=out, provenance=PROV_EXACT, status=STATUS_OK)
