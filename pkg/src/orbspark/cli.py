"""Command line client.

Every subcommand builds the same request the HTTP endpoints take, runs it
against an in-process application by default or against a remote server
with --server, and prints the returned report.  Exit codes: 0 when nothing
failed, 1 when a check failed, 2 when --strict-unknown escalates an
inconclusive search, 3 for unusable input or flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from .document import DocumentError, parse_document
from .fixtures import BUILDERS, PRODUCT_PAIRS, write_fixtures
from .report import exit_code, report_to_json, report_to_text
from .verify import SUITES

EXIT_INPUT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _document_payload(parser, args):
    """The document as a JSON-ready dict plus its bundled name, if any."""
    if getattr(args, "fixture", None):
        doc = BUILDERS[args.fixture]()
        return doc.model_dump(by_alias=True, exclude_none=True), args.fixture
    if not getattr(args, "file", None):
        parser.error("a document file or --fixture is required")
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        parser.exit(EXIT_INPUT, f"orbspark: cannot read {args.file}: {e.strerror}\n")
    try:
        doc = parse_document(text)
    except DocumentError as e:
        parser.exit(EXIT_INPUT, f"orbspark: {args.file}: {e}\n")
    return doc.model_dump(by_alias=True, exclude_none=True), None


def _run(args, path: str, payload: dict) -> int:
    with _client(args.server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        print(f"orbspark: {detail}", file=sys.stderr)
        return EXIT_INPUT
    report = resp.json()
    if args.format == "json":
        sys.stdout.write(report_to_json(report))
    else:
        sys.stdout.write(report_to_text(report))
    return exit_code(report, getattr(args, "strict_unknown", False))


def main(argv=None) -> int:
    parser = _Parser(prog="orbspark",
                     description="exact checks for chart-system complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text",
                        help="report rendering (default text)")
    common.add_argument("--server", metavar="URL", default=None,
                        help="send the request to a running service instead "
                             "of computing in-process")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("file", nargs="?", help="scenario document (JSON)")
    source.add_argument("--fixture", choices=sorted(BUILDERS),
                        help="use a bundled scenario instead of a file")

    p = sub.add_parser("validate", parents=[common, source],
                       help="check atlas axioms and morphism laws of a document")
    p.add_argument("--seed", default="0")
    p.add_argument("--probes", type=int, default=8)

    p = sub.add_parser("cohomology", parents=[common, source],
                       help="integer cohomology of the string complex")
    p.add_argument("--atlas", default=None, help="atlas name within the document")
    p.add_argument("--complex", choices=("big", "small"), default="big",
                   help="full chart strings or vertex strings only")
    p.add_argument("--degree", default="all", help="a single degree, or 'all'")
    p.add_argument("--phi", choices=("min", "max"), default=None,
                   help="also compare the two complexes through this choice map")

    p = sub.add_parser("verify", parents=[common, source],
                       help="run the randomized law suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", default="0")
    p.add_argument("--probes", type=int, default=None,
                   help="probes per check (default: per-suite)")
    p.add_argument("--max-deg", type=int, default=None,
                   help="coefficient degree of sampled forms")
    p.add_argument("--bound", type=int, default=3,
                   help="coefficient degree bound of the equivalence search")
    p.add_argument("--all-pairs", action="store_true",
                   help="with --fixture, take products of all bundled sparks "
                        "instead of the designated pairs")
    p.add_argument("--strict-unknown", action="store_true",
                   help="exit 2 if any check is UNKNOWN")

    p = sub.add_parser("spark", parents=[common],
                       help="decompose, multiply or compare cochains of the document")
    p.add_argument("args", nargs="+", metavar="[FILE] OP NAME",
                   help="document file (omit with --fixture), an operation "
                        "(decompose, mul or equiv), then cochain name(s)")
    p.add_argument("--fixture", choices=sorted(BUILDERS),
                   help="use a bundled scenario instead of a file")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--strict-unknown", action="store_true",
                   help="exit 2 if the bounded search is inconclusive")

    p = sub.add_parser("fixtures", help="write the bundled scenarios to a directory")
    p.add_argument("directory", nargs="?", default="fixtures")

    p = sub.add_parser("schema", help="print the document schema")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    args = parser.parse_args(argv)

    if args.command == "fixtures":
        for path in write_fixtures(args.directory):
            print(path)
        return 0
    if args.command == "schema":
        from .document import document_schema

        print(json.dumps(document_schema(), indent=2))
        return 0
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    if args.command == "spark":
        rest = list(args.args)
        args.file = None if args.fixture else (rest.pop(0) if rest else None)
        if not rest:
            parser.error("spark needs an operation: decompose, mul or equiv")
        args.op = rest.pop(0)
        if args.op not in ("decompose", "mul", "equiv"):
            parser.error(f"unknown spark operation {args.op!r}")
        if not rest:
            parser.error("spark needs at least one cochain name")
        args.names = rest

    doc_payload, bundled = _document_payload(parser, args)

    if args.command == "validate":
        payload = {"document": doc_payload, "seed": args.seed, "probes": args.probes}
        return _run(args, "/validate", payload)

    if args.command == "cohomology":
        if args.degree == "all":
            degree = None
        else:
            try:
                degree = int(args.degree)
            except ValueError:
                parser.error(f"--degree must be an integer or 'all', not {args.degree!r}")
        payload = {"document": doc_payload, "atlas": args.atlas,
                   "complex": args.complex, "degree": degree, "phi": args.phi}
        return _run(args, "/cohomology", payload)

    if args.command == "verify":
        pairs = None
        if bundled and not args.all_pairs:
            pairs = PRODUCT_PAIRS.get(bundled)
        payload = {"document": doc_payload, "suite": args.suite,
                   "seed": args.seed, "probes": args.probes,
                   "max_deg": args.max_deg, "bound": args.bound,
                   "product_pairs": pairs}
        return _run(args, "/verify", payload)

    payload = {"document": doc_payload, "op": args.op,
               "cochains": args.names, "bound": args.bound}
    return _run(args, "/spark", payload)


if __name__ == "__main__":
    sys.exit(main())
