"""Command-line client for the counting service.

Every subcommand talks HTTP to the FastAPI app: against ``--server URL``
when given, otherwise against an in-process instance over an ASGI
transport, so no daemon is needed for local use.  Exit codes: 0 success,
1 a legal negative outcome (a stranded car, a failed verification), 2 bad
input or a refused resource guard.

Structured outputs (``--format jsonl|csv``) carry counts as decimal
strings; parsing a row recovers the exact integer at any magnitude.
"""

import argparse
import asyncio
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, AsyncIterator

import httpx

from . import __version__
from .service.app import create_app

EXIT_OK = 0
EXIT_OUTCOME = 1
EXIT_USAGE = 2

SERVER_ENV = "VACPARK_SERVER"


def default_cache_path() -> Path:
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / "vacpark" / "counts.txt"


class ApiClient:
    """httpx wrapper that is remote or in-process depending on --server."""

    def __init__(self, server: str | None, cache_path: Path | None):
        self._server = server
        self._cache_path = cache_path

    async def __aenter__(self) -> "ApiClient":
        if self._server:
            self._client = httpx.AsyncClient(base_url=self._server, timeout=None)
        else:
            app = create_app(cache_path=self._cache_path)
            self._client = httpx.AsyncClient(
                transport=httpx.ASGITransport(app=app),
                base_url="http://vacpark.internal",
                timeout=None,
            )
        return self

    async def __aexit__(self, *exc: object) -> None:
        await self._client.aclose()

    async def post(self, path: str, payload: dict[str, Any]) -> httpx.Response:
        return await self._client.post(path, json=payload)

    async def get(self, path: str, params: dict[str, Any]) -> httpx.Response:
        return await self._client.get(path, params=params)

    def stream(self, path: str, payload: dict[str, Any]):
        return self._client.stream("POST", path, json=payload)


class UsageError(Exception):
    """Bad command input detected client-side; maps to exit 2."""


def _parse_prefs(raw: str) -> list[int]:
    try:
        return [int(part) for part in raw.replace(" ", "").split(",") if part != ""]
    except ValueError:
        raise UsageError(f"--prefs must be comma-separated integers, got {raw!r}") from None


def _detail(resp: httpx.Response) -> str:
    try:
        body = resp.json()
    except (json.JSONDecodeError, ValueError):
        return resp.text
    if isinstance(body, dict) and "detail" in body:
        detail = body["detail"]
        return detail if isinstance(detail, str) else json.dumps(detail)
    return resp.text


def _reject(resp: httpx.Response) -> None:
    if resp.status_code >= 400:
        raise UsageError(_detail(resp))


def _print_csv(fieldnames: list[str], rows: list[dict[str, Any]]) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _ints(values: list[int]) -> str:
    return " ".join(str(v) for v in values)


# ---------------------------------------------------------------------------
# Subcommand handlers.

async def _cmd_check(api: ApiClient, args: argparse.Namespace) -> int:
    payload = {"prefs": _parse_prefs(args.prefs), "rule": args.rule, "k": args.k}
    resp = await api.post("/check", payload)
    _reject(resp)
    body = resp.json()
    if args.format == "jsonl":
        print(json.dumps(body))
    elif args.format == "csv":
        _print_csv(
            ["status", "spots", "failing_car"],
            [
                {
                    "status": body["status"],
                    "spots": _ints(body["spots"]),
                    "failing_car": body["failing_car"] if body["failing_car"] is not None else "",
                }
            ],
        )
    else:
        print(f"status: {body['status']}")
        for car, spot in enumerate(body["spots"], start=1):
            print(f"car {car} -> spot {spot}")
        if body["failing_car"] is not None:
            print(f"car {body['failing_car']} failed to park")
    return EXIT_OK if body["status"] == "success" else EXIT_OUTCOME


async def _cmd_count(api: ApiClient, args: argparse.Namespace) -> int:
    payload: dict[str, Any] = {
        "n": args.n,
        "rule": args.rule,
        "k": args.k,
        "method": args.method,
        "filter": args.filter,
    }
    if args.threads is not None:
        payload["workers"] = args.threads
    if args.max_n is not None:
        payload["max_n"] = args.max_n
    resp = await api.post("/count", payload)
    _reject(resp)
    body = resp.json()
    if args.format == "jsonl":
        print(json.dumps(body))
    elif args.format == "csv":
        _print_csv(
            ["n", "rule", "k", "filter", "method", "count", "elapsed_s"],
            [{k: ("" if body[k] is None else body[k]) for k in
              ("n", "rule", "k", "filter", "method", "count", "elapsed_s")}],
        )
    else:
        print(f"count:   {body['count']}")
        print(f"method:  {body['method']}")
        print(f"elapsed: {body['elapsed_s']:.4f}s")
    return EXIT_OK


async def _stream_rows(api: ApiClient, payload: dict[str, Any]) -> AsyncIterator[dict[str, Any]]:
    async with api.stream("/enumerate", payload) as resp:
        if resp.status_code >= 400:
            await resp.aread()
            raise UsageError(_detail(resp))
        async for line in resp.aiter_lines():
            if line.strip():
                yield json.loads(line)


async def _cmd_enumerate(api: ApiClient, args: argparse.Namespace) -> int:
    payload: dict[str, Any] = {
        "n": args.n,
        "rule": args.rule,
        "k": args.k,
        "filter": args.filter,
    }
    if args.limit is not None:
        payload["limit"] = args.limit
    if args.threads is not None:
        payload["workers"] = args.threads
    if args.max_n is not None:
        payload["max_n"] = args.max_n

    if args.format == "csv":
        rows = [row async for row in _stream_rows(api, payload)]
        _print_csv(
            ["prefs", "spots"],
            [{"prefs": _ints(r["prefs"]), "spots": _ints(r["spots"])} for r in rows],
        )
    else:
        async for row in _stream_rows(api, payload):
            if args.format == "jsonl":
                print(json.dumps(row))
            else:
                prefs = ",".join(str(p) for p in row["prefs"])
                spots = ",".join(str(s) for s in row["spots"])
                print(f"{prefs} -> {spots}")
    return EXIT_OK


def _params_str(parameters: dict[str, int]) -> str:
    return " ".join(f"{k}={v}" for k, v in sorted(parameters.items()))


async def _cmd_verify(api: ApiClient, args: argparse.Namespace) -> int:
    payload: dict[str, Any] = {
        "n_brute_max": args.n_brute_max,
        "n_rec_max": args.n_rec_max,
        "k_max": args.k_max,
    }
    if args.threads is not None:
        payload["workers"] = args.threads
    resp = await api.post("/verify", payload)
    _reject(resp)
    body = resp.json()
    checks = body["checks"]
    if args.format == "jsonl":
        for c in checks:
            print(json.dumps(c))
    elif args.format == "csv":
        _print_csv(
            ["check_id", "parameters", "expected", "actual", "passed", "elapsed_s"],
            [
                {
                    "check_id": c["check_id"],
                    "parameters": _params_str(c["parameters"]),
                    "expected": c["expected"],
                    "actual": c["actual"],
                    "passed": c["passed"],
                    "elapsed_s": c["elapsed_s"],
                }
                for c in checks
            ],
        )
    else:
        id_w = max((len(c["check_id"]) for c in checks), default=8)
        par_w = max((len(_params_str(c["parameters"])) for c in checks), default=6)
        for c in checks:
            mark = "ok  " if c["passed"] else "FAIL"
            line = (
                f"{mark} {c['check_id']:<{id_w}} {_params_str(c['parameters']):<{par_w}} "
                f"expected={c['expected']} actual={c['actual']}"
            )
            print(line)
        failed = sum(1 for c in checks if not c["passed"])
        verdict = "PASS" if body["overall"] else "FAIL"
        print(f"overall: {verdict} ({len(checks)} checks, {failed} failed)")
    return EXIT_OK if body["overall"] else EXIT_OUTCOME


async def _cmd_invariant_scan(api: ApiClient, args: argparse.Namespace) -> int:
    payload: dict[str, Any] = {"n": args.n, "k": args.k}
    if args.max_n is not None:
        payload["max_n"] = args.max_n
    resp = await api.post("/invariant-scan", payload)
    _reject(resp)
    body = resp.json()
    if args.format == "jsonl":
        for member in body["members"]:
            print(json.dumps({"prefs": member}))
        print(json.dumps({"count": body["count"]}))
    elif args.format == "csv":
        _print_csv(["prefs"], [{"prefs": _ints(m)} for m in body["members"]])
    else:
        for member in body["members"]:
            print(",".join(str(p) for p in member))
        print(f"count: {body['count']}")
    return EXIT_OK


async def _cmd_sequence(api: ApiClient, args: argparse.Namespace) -> int:
    resp = await api.get("/sequence", {"family": args.family, "n_max": args.n_max})
    _reject(resp)
    body = resp.json()
    rows = body["rows"]
    if args.format == "jsonl":
        for r in rows:
            print(json.dumps(r))
    elif args.format == "csv":
        _print_csv(["n", "count"], rows)
    else:
        width = max((len(r["count"]) for r in rows), default=1)
        for r in rows:
            print(f"{r['n']:>4}  {r['count']:>{width}}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    cache = None if args.no_cache else (args.cache_file or default_cache_path())
    uvicorn.run(create_app(cache_path=cache), host=args.host, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vacpark",
        description="Count, enumerate, and verify vacillating parking functions.",
    )
    parser.add_argument("--version", action="version", version=f"vacpark {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=["human", "jsonl", "csv"],
        default="human",
        help="output format (default: human)",
    )
    common.add_argument(
        "--server",
        default=os.environ.get(SERVER_ENV),
        help=f"base URL of a running service (default: ${SERVER_ENV} or in-process)",
    )
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker processes for scans (default: $VACPARK_WORKERS or CPU count)",
    )
    common.add_argument(
        "--cache-file",
        type=Path,
        default=None,
        help="count-table cache file (default: user cache dir; in-process mode only)",
    )
    common.add_argument(
        "--no-cache", action="store_true", help="disable the count-table cache"
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="park one preference list")
    p.add_argument("--prefs", required=True, help="comma-separated preferences, e.g. 4,1,1,4")
    p.add_argument("--rule", choices=["classical", "vacillating"], default="vacillating")
    p.add_argument("--k", type=int, default=1, help="vacillating offset (default 1)")

    p = sub.add_parser("count", parents=[common], help="count parking lists")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rule", choices=["classical", "vacillating"], default="vacillating")
    p.add_argument("--k", type=int, default=1)
    p.add_argument(
        "--method",
        choices=["brute", "recurrence", "product", "closed"],
        default="recurrence",
    )
    p.add_argument(
        "--filter",
        choices=["all", "nondecreasing", "nonincreasing"],
        default="all",
    )
    p.add_argument("--max-n", type=int, default=None, help="raise a resource ceiling")

    p = sub.add_parser("enumerate", parents=[common], help="stream parking lists")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rule", choices=["classical", "vacillating"], default="vacillating")
    p.add_argument("--k", type=int, default=1)
    p.add_argument(
        "--filter",
        choices=["all", "nondecreasing", "nonincreasing"],
        default="all",
    )
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None, help="raise a resource ceiling")

    p = sub.add_parser("verify", parents=[common], help="run the cross-check matrix")
    p.add_argument("--n-brute-max", type=int, default=7)
    p.add_argument("--n-rec-max", type=int, default=40)
    p.add_argument("--k-max", type=int, default=7)

    p = sub.add_parser(
        "invariant-scan",
        parents=[common],
        help="lists that park in every rearrangement",
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-n", type=int, default=None, help="raise a resource ceiling")

    p = sub.add_parser("sequence", parents=[common], help="print a count sequence")
    p.add_argument(
        "--family",
        choices=["total", "nondecreasing", "nonincreasing"],
        required=True,
    )
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("serve", help="run the HTTP service under uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--cache-file", type=Path, default=None)
    p.add_argument("--no-cache", action="store_true")

    return parser


_HANDLERS = {
    "check": _cmd_check,
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "invariant-scan": _cmd_invariant_scan,
    "sequence": _cmd_sequence,
}


async def _dispatch(args: argparse.Namespace) -> int:
    cache = None if args.no_cache else (args.cache_file or default_cache_path())
    async with ApiClient(args.server, cache) as api:
        return await _HANDLERS[args.command](api, args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own diagnostics
        return int(exc.code or 0)
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        return asyncio.run(_dispatch(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        return EXIT_USAGE
    except Exception as exc:  # exit codes are contractual: never leak a traceback
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
