"""FastAPI service exposing the symbol computations over HTTP.

All computation is stateless and exact; requests carry (p, q) so one running
instance serves any triangle group.  CSV output uses RFC 4180 quoting.
"""

from __future__ import annotations

import csv
import io

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse

from .. import __version__
from ..cyclotomic import make_context
from ..symbols import compute_report, dehornoy_linking, psi, rademacher_symbol
from ..triangle import matrix_from_json, trace_sign
from ..verify import run_suites
from ..words import (WordNotFoundError, WordSyntaxError, cyclic_key,
                     enumerate_words, matrix_to_word, parse_word, word_to_matrix)
from .schemas import (DecomposeRequest, DecomposeResponse, SymbolRequest,
                      SymbolResponse, TableRequest, TableResponse, VerifyRequest,
                      VerifyResponse)

TABLE_COLUMNS = ("word", "psi", "Psi", "trace_sign", "linking")


def _context(p: int, q: int):
    try:
        return make_context(p, q)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)  # default dialect is RFC 4180 quoting, CRLF rows
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _table_rows(ctx, max_r: int) -> list[dict]:
    # sign + only: Psi(-gamma) = Psi(gamma), so the - half adds nothing
    rows = []
    for w in enumerate_words(ctx, max_r):
        if w.sign < 0:
            continue
        lk = dehornoy_linking(cyclic_key(w, ctx), ctx)
        rows.append({
            "word": str(w),
            "psi": psi(w, ctx),
            "Psi": rademacher_symbol(w, ctx),
            "trace_sign": trace_sign(word_to_matrix(w, ctx)),
            "linking": f"{lk.numerator}/{lk.denominator}",
        })
    return rows


def create_app() -> FastAPI:
    app = FastAPI(
        title="rademacher",
        version=__version__,
        description="Exact Rademacher symbols, Dedekind sums and linking "
                    "numbers on triangle groups.",
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/symbol", response_model=None)
    def symbol(req: SymbolRequest):
        ctx = _context(req.p, req.q)
        try:
            word = parse_word(req.word)
        except WordSyntaxError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        report = compute_report(word, ctx).to_dict()
        if req.format == "csv":
            header = ["p", "q", "word", "psi", "Psi_cocycle", "Psi_formula",
                      "Psi_classical", "trace_sign", "linking", "agreement"]
            row = [report[k] if report[k] is not None else "" for k in header]
            return PlainTextResponse(_csv_text(header, [row]), media_type="text/csv")
        return SymbolResponse(**report)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        ctx = _context(req.p, req.q)
        results = run_suites(ctx.p, ctx.q, suite=req.suite, max_r=req.max_r,
                             seed=req.seed, trials=req.trials,
                             log_pairs=req.log_pairs, workers=req.workers)
        return VerifyResponse(
            p=req.p, q=req.q, suite=req.suite,
            passed=all(r.passed or r.skipped for r in results),
            results=[r.to_dict() for r in results],
        )

    @app.post("/table", response_model=None)
    def table(req: TableRequest):
        ctx = _context(req.p, req.q)
        rows = _table_rows(ctx, req.max_r)
        if req.format == "csv":
            body = _csv_text(TABLE_COLUMNS, [[r[c] for c in TABLE_COLUMNS] for r in rows])
            return PlainTextResponse(body, media_type="text/csv")
        return TableResponse(p=req.p, q=req.q, max_r=req.max_r, rows=rows)

    @app.post("/decompose", response_model=DecomposeResponse)
    def decompose(req: DecomposeRequest):
        ctx = _context(req.p, req.q)
        try:
            matrix = matrix_from_json(ctx, req.matrix)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        try:
            word = matrix_to_word(matrix, ctx, max_syllables=req.max_syllables)
        except WordNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return DecomposeResponse(p=req.p, q=req.q,
                                 word=word.to_json(), text=str(word))

    return app


app = create_app()
