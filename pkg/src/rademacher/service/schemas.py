"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

Suite = Literal["all", "lemmas", "theorem", "classical", "cocycle", "linking"]
OutputFormat = Literal["json", "csv"]


class WordModel(BaseModel):
    sign: Literal[1, -1]
    syllables: list[tuple[Literal["S", "U"], int]]


class SymbolRequest(BaseModel):
    p: int
    q: int
    word: str
    format: OutputFormat = "json"


class SymbolResponse(BaseModel):
    p: int
    q: int
    word: str
    word_json: WordModel
    psi: int
    Psi_cocycle: int
    Psi_formula: Optional[int] = None
    Psi_classical: Optional[int] = None
    trace_sign: int
    linking: Optional[str] = None
    agreement: bool


class VerifyRequest(BaseModel):
    p: int
    q: int
    max_r: int = Field(default=3, ge=1)
    seed: int = 0
    suite: Suite = "all"
    trials: int = Field(default=1000, ge=1)
    log_pairs: int = Field(default=500, ge=1)
    workers: int = Field(default=1, ge=1)


class SuiteRowModel(BaseModel):
    name: str
    cases: int
    failures: int
    first_failure: Optional[str] = None
    skipped: bool = False
    note: str = ""


class VerifyResponse(BaseModel):
    p: int
    q: int
    suite: Suite
    passed: bool
    results: list[SuiteRowModel]


class TableRequest(BaseModel):
    p: int
    q: int
    max_r: int = Field(default=3, ge=1)
    format: OutputFormat = "json"


class TableRowModel(BaseModel):
    word: str
    psi: int
    Psi: int
    trace_sign: int
    linking: Optional[str] = None


class TableResponse(BaseModel):
    p: int
    q: int
    max_r: int
    rows: list[TableRowModel]


class DecomposeRequest(BaseModel):
    p: int
    q: int
    matrix: dict[str, Any]
    max_syllables: int = Field(default=8, ge=0)


class DecomposeResponse(BaseModel):
    p: int
    q: int
    word: WordModel
    text: str
