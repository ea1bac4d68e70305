"""Pydantic request/response models and JSON codecs shared by service and CLI."""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, Field, field_validator


def frac_to_str(x) -> str:
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 else str(f.numerator)


def str_to_frac(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = str(s).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def cyclo_to_dict(z) -> dict:
    z = z.reduced()  # canonical minimal conductor so equal values serialize identically
    return {"conductor": z.n, "terms": [[i, frac_to_str(c)] for i, c in z.terms()]}


def series_to_dict(f) -> dict:
    return f.to_json_dict()


def matrix_to_dict(m) -> dict:
    return {"dim": m.dim, "rows": [[cyclo_to_dict(x) for x in row] for row in m.rows]}


class MetaElementModel(BaseModel):
    matrix: list[str] = Field(..., min_length=4, max_length=4, description="entries a,b,c,d as rationals")
    eps: int = 1

    @field_validator("eps")
    @classmethod
    def _eps_sign(cls, v):
        if v not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        return v

    def to_element(self):
        from .meta import MetaElement

        return MetaElement(tuple(str_to_frac(x) for x in self.matrix), self.eps)

    @staticmethod
    def from_element(g) -> "MetaElementModel":
        return MetaElementModel(matrix=[frac_to_str(x) for x in g.mat], eps=g.eps)


class CpsiRequest(BaseModel):
    k: int = Field(..., ge=1, le=24)
    beta: str
    order: int = Field(..., ge=1, le=20000)
    closed: bool = False


class SeriesResponse(BaseModel):
    series: dict


class RhoRequest(BaseModel):
    k: int = Field(..., ge=1, le=12)
    gamma: list[int] = Field(..., min_length=4, max_length=4)
    eps: int = 1
    closed: bool = False


class MatrixResponse(BaseModel):
    matrix: dict


class WeilRequest(BaseModel):
    k: int = Field(..., ge=-8, le=8)
    gamma: list[int] = Field(..., min_length=4, max_length=4)
    eps: int = 1


class ComposeRequest(BaseModel):
    g1: MetaElementModel
    g2: MetaElementModel


class ElementResponse(BaseModel):
    element: MetaElementModel


class WordRequest(BaseModel):
    gamma: list[int] = Field(..., min_length=4, max_length=4)
    eps: int = 1


class WordResponse(BaseModel):
    factors: list
    sign: int


class ChiRequest(BaseModel):
    gamma: list[int] = Field(..., min_length=4, max_length=4)
    eps: int = 1


class CycloResponse(BaseModel):
    value: dict


class ClassesRequest(BaseModel):
    k: int = Field(..., ge=1, le=64)


class ClassesResponse(BaseModel):
    k: int
    classes: list[list[str]]
    doubled: list[list[int]]


class GammaFindRequest(BaseModel):
    k: int = Field(..., ge=1, le=16)
    p: int = Field(..., ge=5)
    beta: str
    beta2: str


class GammaFindResponse(BaseModel):
    gamma: list[int]
    r: int
    r_e: int
    target_index: str


class UprimeRequest(BaseModel):
    k: int = Field(..., ge=1, le=64)
    beta: str
    p: int = Field(..., ge=5)


class UprimeResponse(BaseModel):
    r: int
    r_e: int


class ScanRequest(BaseModel):
    family: str
    alpha: int = Field(..., ge=1, le=8)
    nmax: int = Field(..., ge=0, le=100000)
    order: int | None = None


class ConjectureRequest(BaseModel):
    k: int
    alpha: int = Field(..., ge=1, le=4)
    nmax: int = Field(..., ge=0, le=10000)
    beta: str | None = None


class ReportResponse(BaseModel):
    report: dict


class AppendixRequest(BaseModel):
    order: int = Field(60, ge=8, le=200)


class AppendixResponse(BaseModel):
    order: int
    results: dict
    all_pass: bool


class LawsRequest(BaseModel):
    ids: list[str] | None = None
    tol: float = 1e-8


class LawsResponse(BaseModel):
    results: dict
    all_pass: bool


class MkRequest(BaseModel):
    k: int = Field(..., ge=1, le=24)
    mode: str = "exact"

    @field_validator("mode")
    @classmethod
    def _mode(cls, v):
        if v not in ("exact", "float"):
            raise ValueError("mode must be exact or float")
        return v


class MkResponse(BaseModel):
    k: int
    mode: str
    mk: int


class TablesRequest(BaseModel):
    which: str
    kmax: int = Field(..., ge=1, le=24)
    mode: str = "float"

    @field_validator("which")
    @classmethod
    def _which(cls, v):
        if v not in ("classes", "mk"):
            raise ValueError("which must be classes or mk")
        return v


class TablesResponse(BaseModel):
    which: str
    rows: list


class SeriesEchoRequest(BaseModel):
    series: dict
