"""Command-line front end.

A thin client over the HTTP service: with --server it talks to a running
instance, otherwise it drives the FastAPI app in-process through the same
request/response path.  Exit codes: 0 success/agreement, 1 verification or
agreement failure, 2 usage/context/parse errors, 3 decomposition not found.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings
    with warnings.catch_warnings():
        # some starlette builds warn about their own TestClient/httpx pairing
        warnings.filterwarnings(
            "ignore", message="Using `httpx` with `starlette.testclient`")
        from fastapi.testclient import TestClient

    from .service.app import app
    return TestClient(app, raise_server_exceptions=False)


def _post(server: str | None, path: str, payload: dict):
    try:
        with _client(server) as client:
            return client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"error: cannot reach {server}: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _fail_for_status(response) -> None:
    if response.status_code == 200:
        return
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    click.echo(f"error: {detail}", err=True)
    sys.exit(EXIT_NOT_FOUND if response.status_code == 404 else EXIT_USAGE)


server_option = click.option(
    "--server", default=None, metavar="URL",
    help="Base URL of a running service; defaults to in-process execution.")


@click.group()
def main():
    """Exact Rademacher symbols on triangle groups."""


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--word", required=True, help="Word in S and U, e.g. 'S U^2 S U'.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@server_option
def symbol(p, q, word, fmt, server):
    """Full symbol report for one word; exit 0 iff all paths agree."""
    response = _post(server, "/symbol", {"p": p, "q": q, "word": word, "format": fmt})
    _fail_for_status(response)
    if fmt == "csv":
        click.echo(response.text, nl=False)
        agreement = response.text.splitlines()[1].rstrip().endswith("True")
    else:
        body = response.json()
        click.echo(json.dumps(body, indent=2))
        agreement = body["agreement"]
    sys.exit(EXIT_OK if agreement else EXIT_DISAGREE)


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--max-r", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--suite", type=click.Choice(
    ["all", "lemmas", "theorem", "classical", "cocycle", "linking"]),
    default="all", show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True,
              help="Seeded random trials per randomized check.")
@click.option("--log-pairs", type=int, default=500, show_default=True,
              help="Pairs for the log-definition cross-check.")
@click.option("--workers", type=int, default=None,
              help="Worker processes (default: number of processors).")
@server_option
def verify(p, q, max_r, seed, suite, trials, log_pairs, workers, server):
    """Run property suites; exit 0 iff every check passes."""
    if workers is None:
        import os
        workers = os.cpu_count() or 1
    response = _post(server, "/verify", {
        "p": p, "q": q, "max_r": max_r, "seed": seed, "suite": suite,
        "trials": trials, "log_pairs": log_pairs, "workers": workers,
    })
    _fail_for_status(response)
    body = response.json()
    for row in body["results"]:
        if row["skipped"]:
            status = "skip"
        else:
            status = "pass" if row["failures"] == 0 else "FAIL"
        line = f"{status:4} {row['name']:24} cases={row['cases']:<6} failures={row['failures']}"
        if row["first_failure"]:
            line += f"  first: {row['first_failure']}"
        if row["note"]:
            line += f"  ({row['note']})"
        click.echo(line)
    click.echo("all checks passed" if body["passed"] else "FAILURES detected")
    sys.exit(EXIT_OK if body["passed"] else EXIT_DISAGREE)


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--max-r", type=int, default=3, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@server_option
def table(p, q, max_r, fmt, server):
    """Tabulate (word, psi, Psi, trace sign, linking) over enumerated words."""
    response = _post(server, "/table", {"p": p, "q": q, "max_r": max_r, "format": fmt})
    _fail_for_status(response)
    if fmt == "csv":
        click.echo(response.text, nl=False)
    else:
        click.echo(json.dumps(response.json(), indent=2))
    sys.exit(EXIT_OK)


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--matrix", required=True,
              help='Matrix JSON, e.g. \'{"a": 0, "b": -1, "c": 1, "d": 0}\'.')
@click.option("--max-syllables", type=int, default=8, show_default=True)
@server_option
def decompose(p, q, matrix, max_syllables, server):
    """Find a word evaluating exactly to the matrix; exit 3 when none found."""
    try:
        matrix_data = json.loads(matrix)
    except json.JSONDecodeError as exc:
        click.echo(f"error: --matrix is not valid JSON: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    response = _post(server, "/decompose", {
        "p": p, "q": q, "matrix": matrix_data, "max_syllables": max_syllables,
    })
    _fail_for_status(response)
    click.echo(json.dumps(response.json(), indent=2))
    sys.exit(EXIT_OK)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn
    uvicorn.run("rademacher.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
