"""FastAPI application exposing the counting engines.

The app owns a :class:`CountTable` that persists across requests, so
repeated recurrence/product queries reuse earlier work.  With a cache path
the table is seeded from disk at startup and written back whenever it has
grown.  Stranded cars and failed verification checks are ordinary 200
responses; only malformed requests and guard refusals map to 400.
"""

import logging
import time
from pathlib import Path
from typing import Iterator

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .. import __version__
from ..closed_forms import count_nondecreasing_closed, nonincreasing_series
from ..errors import GuardError, InputError
from ..exhaustive import count_brute, parking_functions, permutation_invariant_members
from ..recurrences import (
    CountTable,
    count_k_vacillating,
    count_nondecreasing,
    count_nonincreasing,
    load_table,
    save_table,
)
from ..rules import CLASSICAL, Rule, simulate, vacillating
from ..verification import sequence_table, verify_suite
from . import schemas

logger = logging.getLogger("vacpark.service")


def _rule_from(rule: str, k: int) -> Rule:
    return CLASSICAL if rule == "classical" else vacillating(k)


def _dispatch_count(req: schemas.CountRequest, table: CountTable) -> int:
    """Route a count request to the right engine, or reject the combination."""
    if req.n == 0:
        return 1  # the empty list parks under every rule and filter
    if req.method == "brute":
        return count_brute(
            req.n,
            _rule_from(req.rule, req.k),
            req.filter,
            max_n=req.max_n,
            workers=req.workers,
        )
    if req.method == "recurrence":
        if req.rule != "vacillating" or req.k != 1:
            raise InputError(
                "method 'recurrence' covers the vacillating rule with k=1 only; "
                "valid methods here: brute, product"
            )
        if req.filter == "all":
            return table.total(req.n)
        if req.filter == "nondecreasing":
            return count_nondecreasing(req.n)
        return count_nonincreasing(req.n)
    if req.method == "product":
        if req.rule != "vacillating":
            raise InputError(
                "method 'product' applies to the vacillating rule; "
                "valid methods for classical: brute, closed"
            )
        if req.filter != "all":
            raise InputError(
                "method 'product' counts unfiltered lists only; "
                "valid methods for monotone filters: brute, recurrence, closed"
            )
        return count_k_vacillating(req.n, req.k, table)
    # method == "closed"
    if req.rule == "classical":
        if req.filter != "all":
            raise InputError(
                "no closed form for filtered classical counts; valid methods: brute"
            )
        return (req.n + 1) ** (req.n - 1)
    if req.filter == "nondecreasing":
        return count_nondecreasing_closed(req.n)
    if req.filter == "nonincreasing":
        return nonincreasing_series(req.n)[req.n]
    raise InputError(
        "no closed form for the unfiltered vacillating count; "
        "valid methods: brute, recurrence (k=1), product"
    )


def create_app(cache_path: str | Path | None = None) -> FastAPI:
    """Build the service; ``cache_path`` enables count-table persistence."""
    app = FastAPI(title="vacpark", version=__version__)
    table: CountTable | None = None
    if cache_path is not None:
        table = load_table(cache_path)
        if table is not None:
            logger.info("loaded count table (n <= %d) from %s", table.built, cache_path)
    if table is None:
        table = CountTable()
    app.state.table = table
    app.state.cache_path = Path(cache_path) if cache_path is not None else None
    app.state.saved_len = table.built

    def persist() -> None:
        if app.state.cache_path is None or table.built <= app.state.saved_len:
            return
        try:
            save_table(table, app.state.cache_path)
            app.state.saved_len = table.built
        except OSError as exc:
            logger.warning("could not write count cache %s: %s", app.state.cache_path, exc)

    @app.exception_handler(InputError)
    async def _input_error(_: Request, exc: InputError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(GuardError)
    async def _guard_error(_: Request, exc: GuardError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/", response_model=schemas.ServiceInfo)
    def info() -> schemas.ServiceInfo:
        return schemas.ServiceInfo(name="vacpark", version=__version__)

    @app.post("/check", response_model=schemas.CheckResponse)
    def check(req: schemas.CheckRequest) -> schemas.CheckResponse:
        outcome = simulate(req.prefs, _rule_from(req.rule, req.k))
        return schemas.CheckResponse(
            status="success" if outcome.success else "failure",
            spots=list(outcome.spots),
            failing_car=outcome.failing_car,
        )

    @app.post("/count", response_model=schemas.CountResponse)
    def count(req: schemas.CountRequest) -> schemas.CountResponse:
        start = time.perf_counter()
        value = _dispatch_count(req, table)
        elapsed = time.perf_counter() - start
        persist()
        return schemas.CountResponse(
            n=req.n,
            rule=req.rule,
            k=None if req.rule == "classical" else req.k,
            filter=req.filter,
            method=req.method,
            count=str(value),
            elapsed_s=elapsed,
        )

    @app.post("/enumerate")
    def enumerate_lists(req: schemas.EnumerateRequest) -> StreamingResponse:
        rule = _rule_from(req.rule, req.k)
        stream = parking_functions(
            req.n, rule, req.filter, limit=req.limit, max_n=req.max_n, workers=req.workers
        )

        def rows() -> Iterator[str]:
            for prefs in stream:
                spots = simulate(prefs, rule).spots if prefs else ()
                row = schemas.EnumerateRow(prefs=list(prefs), spots=list(spots))
                yield row.model_dump_json() + "\n"

        return StreamingResponse(rows(), media_type="application/x-ndjson")

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        report = verify_suite(
            req.n_brute_max, req.n_rec_max, req.k_max, workers=req.workers
        )
        return schemas.VerifyResponse(
            overall=report.overall,
            checks=[
                schemas.CheckRecord(
                    check_id=c.check_id,
                    parameters=c.parameters,
                    expected=c.expected,
                    actual=c.actual,
                    passed=c.passed,
                    elapsed_s=c.elapsed,
                )
                for c in report.checks
            ],
        )

    @app.post("/invariant-scan", response_model=schemas.InvariantScanResponse)
    def invariant_scan(req: schemas.InvariantScanRequest) -> schemas.InvariantScanResponse:
        members = permutation_invariant_members(req.n, req.k, max_n=req.max_n)
        return schemas.InvariantScanResponse(
            n=req.n, k=req.k, count=len(members), members=[list(m) for m in members]
        )

    @app.get("/sequence", response_model=schemas.SequenceResponse)
    def sequence(
        family: schemas.FamilyName = Query(...), n_max: int = Query(ge=1)
    ) -> schemas.SequenceResponse:
        rows = sequence_table(family, n_max)
        return schemas.SequenceResponse(
            family=family,
            rows=[schemas.SequenceRow(n=n, count=c) for n, c in rows],
        )

    return app


app = create_app()
