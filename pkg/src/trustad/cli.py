"""trustctl: command-line front end.

Exit codes, used consistently by every subcommand:
  0  success (for validate: document is valid)
  1  semantic rejection (shape errors, bad weight profile, nothing to rank)
  2  parse error in a .stad input
  3  I/O failure

Machine-readable output is JSON on stdout; all diagnostics go to stderr.
validate/score/rank/diff work offline on files and never touch the network;
serve runs the catalog HTTP service until interrupted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import (
    CorpusParams,
    DEFAULT_PREVALENCE,
    load_prevalence_file,
    write_corpus,
)
from .profile import ExtractError, extract_profile
from .shapes import validate_graph
from .stad import StadParseError, parse_document
from .engine import (
    WeightProfile,
    aggregate_trust,
    compare,
    delta_report_to_dict,
    load_weight_profile,
    report_to_dict,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_IO = 3


class _CliFailure(Exception):
    def __init__(self, code: int, message: str | None = None):
        super().__init__(message or "")
        self.code = code
        self.message = message


def _print_json(data: object) -> None:
    print(json.dumps(data, indent=2))


def _diag(message: str) -> None:
    print(message, file=sys.stderr)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliFailure(EXIT_IO, f"cannot read {path}: {exc}")


def _load_profile(path: str | None) -> WeightProfile | None:
    if path is None:
        return None
    try:
        return load_weight_profile(path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise _CliFailure(EXIT_INVALID, f"invalid weight profile {path}: {exc}")


def _score_file(path: str, weights: WeightProfile | None, emit: bool = True):
    """Parse, validate and score one document; failures map to exit codes.

    With ``emit`` the offending error report is printed as JSON before the
    failure is raised; rank turns that off to keep its stdout a single
    JSON document.
    """
    text = _read_text(path)
    try:
        graph = parse_document(text)
    except StadParseError as exc:
        if emit:
            _print_json(exc.to_dict())
        raise _CliFailure(EXIT_PARSE, f"{path}: {exc}")
    report = validate_graph(graph)
    if not report.valid:
        if emit:
            _print_json(report.to_dict())
        raise _CliFailure(EXIT_INVALID,
                          f"{path}: {len(report.errors)} shape error(s)")
    try:
        profile = extract_profile(graph)
    except ExtractError as exc:
        raise _CliFailure(EXIT_INVALID, f"{path}: {exc}")
    return aggregate_trust(profile, weights=weights)


def cmd_validate(args: argparse.Namespace) -> int:
    text = _read_text(args.file)
    try:
        graph = parse_document(text)
    except StadParseError as exc:
        _print_json(exc.to_dict())
        return EXIT_PARSE
    report = validate_graph(graph)
    _print_json(report.to_dict())
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_score(args: argparse.Namespace) -> int:
    weights = _load_profile(args.profile)
    report = _score_file(args.file, weights)
    _print_json(report_to_dict(report))
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise _CliFailure(EXIT_IO, f"not a directory: {args.dir}")
    weights = _load_profile(args.profile)
    scored = []
    for path in sorted(root.glob("*.stad")):
        try:
            report = _score_file(str(path), weights, emit=False)
        except _CliFailure as exc:
            _diag(f"skipped {path}: {exc.message}")
            continue
        scored.append((report, path.name))
    if not scored:
        raise _CliFailure(EXIT_INVALID, f"no valid .stad documents in {args.dir}")
    scored.sort(key=lambda item: (-item[0].aggregate, item[0].provider_id))
    _print_json({
        "profile": scored[0][0].profile_name,
        "ranking": [
            {
                "provider_id": report.provider_id,
                "aggregate": round(report.aggregate, 4),
                "file": name,
            }
            for report, name in scored
        ],
    })
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    weights = _load_profile(args.profile)
    report_a = _score_file(args.file_a, weights)
    report_b = _score_file(args.file_b, weights)
    _print_json(delta_report_to_dict(compare(report_a, report_b)))
    return EXIT_OK


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    prevalence = dict(DEFAULT_PREVALENCE)
    if args.prevalence:
        try:
            prevalence.update(load_prevalence_file(args.prevalence))
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise _CliFailure(EXIT_INVALID,
                              f"invalid prevalence file {args.prevalence}: {exc}")
    try:
        params = CorpusParams(n=args.n, seed=args.seed, prevalence=prevalence)
    except ValueError as exc:
        raise _CliFailure(EXIT_INVALID, str(exc))
    try:
        paths = write_corpus(params, args.out)
    except OSError as exc:
        raise _CliFailure(EXIT_IO, f"cannot write corpus: {exc}")
    _print_json({"out_dir": str(args.out), "seed": args.seed,
                 "count": len(paths)})
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    if not args.store:
        raise _CliFailure(EXIT_INVALID,
                          "--store (or TRUSTCTL_STORE) is required")
    app = create_app(args.store, profiles_dir=args.profiles)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trustctl",
        description="Validate, score, rank and serve provider trust "
                    "advertisements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check one document; exit 0 iff valid")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", help="trust score report for one document")
    p.add_argument("file")
    p.add_argument("--profile", help="weight profile JSON file")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("rank", help="rank all .stad documents in a directory")
    p.add_argument("dir")
    p.add_argument("--profile", help="weight profile JSON file")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("diff", help="per-category score deltas of two documents")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--profile", help="weight profile JSON file")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser(
        "gen-corpus",
        help="write a deterministic synthetic corpus",
        description="Generate n synthetic provider documents using a seeded "
                    "SplitMix64 generator (one child stream per document, so "
                    "output is independent of n and of scheduling). Category "
                    "signals are independent Bernoulli draws at the "
                    "configured prevalences; within an included category, "
                    "item counts are uniform over small ranges: 1-5 customer "
                    "references, 1-3 certifications, 1-4 employees, 1-4 "
                    "publications, 1-3 systems, 1-2 facilities, 1-3 partners, "
                    "1-2 terms records. Every document is valid by "
                    "construction.")
    p.add_argument("--n", type=int, required=True, help="number of documents")
    p.add_argument("--seed", type=int, required=True, help="64-bit seed")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--prevalence",
                   help="JSON file overriding signal prevalences")
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("serve", help="run the catalog HTTP service")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("TRUSTCTL_PORT", "8000")))
    p.add_argument("--host", default=os.environ.get("TRUSTCTL_HOST",
                                                    "127.0.0.1"))
    p.add_argument("--store", default=os.environ.get("TRUSTCTL_STORE"),
                   help="store directory (TRUSTCTL_STORE)")
    p.add_argument("--profiles", default=os.environ.get("TRUSTCTL_PROFILES"),
                   help="weight profile directory (TRUSTCTL_PROFILES)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliFailure as exc:
        if exc.message:
            _diag(f"trustctl: {exc.message}")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
