"""Command-line front end.

Subcommands::

    nojs-lint inspect FILE [--url U] [--config C] [--variant V]
    nojs-lint compare --plain F1 --nojs F2 [--config C]
    nojs-lint corpus --root DIR --out results.jsonl [--summary S] [--jobs N]
    nojs-lint requests --plain-log L1 --nojs-log L2 --trackers T --suffixes PSL

Exit codes: 0 success, 1 usage error, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import AnalyzerConfig, load_config
from .corpus import run_corpus
from .dom import parse_document
from .errors import AnalyzerError
from .report import FeatureReport, VARIANT_NOJS, build_report, compare_pair
from .requestlog import SuffixTable, TrackerList, load_request_log, summarize

USAGE_ERROR = 1
INPUT_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="nojs-lint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    inspect = sub.add_parser("inspect", help="analyze one saved HTML file")
    inspect.add_argument("file", type=Path)
    inspect.add_argument("--url", default="")
    inspect.add_argument("--config", type=Path)
    inspect.add_argument("--variant", choices=["plain", "nojs"], default=VARIANT_NOJS)

    compare = sub.add_parser("compare", help="compare two feature reports")
    compare.add_argument("--plain", type=Path, required=True)
    compare.add_argument("--nojs", type=Path, required=True)
    compare.add_argument("--config", type=Path)

    corpus = sub.add_parser("corpus", help="analyze a crawl corpus directory")
    corpus.add_argument("--root", type=Path, required=True)
    corpus.add_argument("--out", type=Path, required=True)
    corpus.add_argument("--summary", type=Path)
    corpus.add_argument("--jobs", type=int, default=1)
    corpus.add_argument("--config", type=Path)

    requests = sub.add_parser("requests", help="summarize paired request logs")
    requests.add_argument("--plain-log", type=Path, required=True)
    requests.add_argument("--nojs-log", type=Path, required=True)
    requests.add_argument("--trackers", type=Path, required=True)
    requests.add_argument("--suffixes", type=Path, required=True)

    return parser


def _load_cfg(path: Path | None) -> AnalyzerConfig:
    return load_config(path) if path else AnalyzerConfig()


def _cmd_inspect(args: argparse.Namespace) -> int:
    cfg = _load_cfg(args.config)
    doc = parse_document(args.file.read_bytes())
    report = build_report(doc, args.variant, cfg, page_url=args.url)
    json.dump(report.to_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    plain = FeatureReport.from_dict(json.loads(args.plain.read_text(encoding="utf-8")))
    nojs = FeatureReport.from_dict(json.loads(args.nojs.read_text(encoding="utf-8")))
    result = compare_pair(plain, nojs)
    json.dump(result.to_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_corpus(args: argparse.Namespace) -> int:
    cfg = _load_cfg(args.config)
    with open(args.out, "w", encoding="utf-8") as out:
        def sink(result: dict) -> None:
            out.write(json.dumps(result, sort_keys=True))
            out.write("\n")

        summary = run_corpus(args.root, cfg, jobs=max(1, args.jobs), sink=sink)
    payload = summary.to_dict()
    if args.summary:
        args.summary.write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def _cmd_requests(args: argparse.Namespace) -> int:
    trackers = TrackerList.load(args.trackers)
    suffixes = SuffixTable.load(args.suffixes)
    plain = load_request_log(args.plain_log)
    nojs = load_request_log(args.nojs_log)
    summary = summarize(plain, nojs, trackers, suffixes)
    json.dump(summary.to_dict(), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


_COMMANDS = {
    "inspect": _cmd_inspect,
    "compare": _cmd_compare,
    "corpus": _cmd_corpus,
    "requests": _cmd_requests,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except AnalyzerError as exc:
        print(f"nojs-lint: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (OSError, json.JSONDecodeError) as exc:
        print(f"nojs-lint: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
