"""``esgames`` command line: validate, build, search-uniform, export-dot.

Exit codes: 0 pass, 1 validation failure, 2 input error, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .report import BoundExceeded, ValidationError
from .serialize import Bundle, DocumentError, dumps, encode
from .uniform import DEFAULT_SEARCH_BOUND, search_uniform_structure
from .workbench import (
    CONSTRUCTIONS,
    VIEWS,
    build,
    pick,
    report_json,
    report_text,
    to_dot,
    validate_bundle,
)

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    results = [validate_bundle(Bundle.load(p), args.kind) for p in args.paths]
    if args.report == "json":
        sys.stdout.write(json.dumps(report_json(results), ensure_ascii=False, indent=1) + "\n")
    else:
        sys.stdout.write(report_text(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVALID


def cmd_build(args) -> int:
    bundles = [Bundle.load(p) for p in args.inputs]
    try:
        bundle = build(args.construction, bundles, args.name, args.n)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(dumps(bundle), args.out)
    return EXIT_OK


def cmd_search_uniform(args) -> int:
    bundle = Bundle.load(args.path)
    name, s = pick(bundle, "strategy", args.name)
    result = search_uniform_structure(s, bound=args.bound)
    if result.found:
        out = encode({f"uniform-{name}": result.uniform})
    else:
        out = {"schema_version": 1, "result": "none", "strategy": name, "certificate": result.certificate}
    _emit(dumps(out), args.out)
    if args.certificate:
        Path(args.certificate).write_text(
            json.dumps(result.certificate, ensure_ascii=False, indent=1, default=repr) + "\n", encoding="utf-8"
        )
    return EXIT_OK


def cmd_export_dot(args) -> int:
    bundle = Bundle.load(args.path)
    if args.name:
        obj = bundle.get(args.name)
    else:
        names = bundle.names()
        if not names:
            raise DocumentError(f"{args.path}: empty bundle")
        obj = bundle.get(names[-1])
    _emit(to_dot(obj, args.view), args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="esgames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the validator suite of every document")
    p.add_argument("paths", nargs="+")
    p.add_argument("--kind", help="only documents of this kind")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="run a construction on documents")
    p.add_argument("construction", choices=CONSTRUCTIONS)
    p.add_argument("inputs", nargs="+", help="input bundle(s); par takes two")
    p.add_argument("--name", help="input document (default: last of the needed kind)")
    p.add_argument("-n", type=int, default=2, help="copies for bang")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search-uniform", help="search for a uniform structure on a strategy")
    p.add_argument("path")
    p.add_argument("--name")
    p.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND)
    p.add_argument("--certificate", help="also write the search certificate here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search_uniform)

    p = sub.add_parser("export-dot", help="render a document as Graphviz DOT")
    p.add_argument("path")
    p.add_argument("--name")
    p.add_argument("--view", choices=VIEWS, default="causality")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
