"""Whole-corpus analysis: page pairs in, PairResult stream and summary out.

Corpus layout, one directory per page id::

    <root>/<page-id>/plain.html
    <root>/<page-id>/nojs.html
    <root>/<page-id>/meta.json            (optional)
    <root>/<page-id>/plain.requests.jsonl (optional, unused here)
    <root>/<page-id>/nojs.requests.jsonl  (optional, unused here)

Pages with missing or unreadable inputs are skipped and tallied, never
fatal.  Page directories are processed in sorted order and the summary is
a deterministic fold over that order, so the output is reproducible no
matter how many workers run.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .config import AnalyzerConfig
from .dom import parse_document
from .errors import AnalyzerError, EmptyCorpusError, EmptyInputError
from .metrics import PageStatus
from .report import (
    AGGREGATE_INTERACTIVE,
    AGGREGATE_MAIN_FEATURES,
    FEATURE_KEYS,
    PairResult,
    VARIANT_NOJS,
    VARIANT_PLAIN,
    build_report,
    compare_pair,
)

UNCATEGORIZED = "uncategorized"

# Feature rows reported in the per-group percentile breakdown.
PERCENTILE_FEATURES = FEATURE_KEYS + (AGGREGATE_INTERACTIVE, AGGREGATE_MAIN_FEATURES)


def percentile(values: list[float], p: float) -> float:
    """Nearest-rank percentile: the ceil(p/100*n)-th smallest value."""
    if not values:
        raise EmptyInputError("percentile of an empty list")
    if not 0 < p <= 100:
        raise EmptyInputError(f"percentile rank out of range: {p}")
    ordered = sorted(values)
    rank = math.ceil(p / 100 * len(ordered))
    return ordered[rank - 1]


@dataclass
class CorpusSummary:
    pages_total: int
    pages_analyzed: int
    pages_skipped: int
    skipped: dict[str, str]
    share_all_main_features_working_whole: float
    share_all_main_features_working_main: float
    group_feature_dbr_p90: dict[str, dict[str, float]]
    group_page_counts: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "pages_total": self.pages_total,
            "pages_analyzed": self.pages_analyzed,
            "pages_skipped": self.pages_skipped,
            "skipped": dict(self.skipped),
            "share_all_main_features_working_whole":
                self.share_all_main_features_working_whole,
            "share_all_main_features_working_main":
                self.share_all_main_features_working_main,
            "group_feature_dbr_p90": {
                group: dict(rows)
                for group, rows in self.group_feature_dbr_p90.items()
            },
            "group_page_counts": dict(self.group_page_counts),
        }


def _read_meta(page_dir: Path) -> dict:
    meta_path = page_dir / "meta.json"
    if not meta_path.exists():
        return {}
    return json.loads(meta_path.read_text(encoding="utf-8"))


def analyze_pair_dir(
    page_dir: Path, cfg: AnalyzerConfig | None = None
) -> tuple[PairResult, list[str]]:
    """Analyze one page directory; returns (result, category groups).

    Raises AnalyzerError subclasses or OSError when inputs are unusable;
    run_corpus converts those into skip tallies.
    """
    cfg = cfg or AnalyzerConfig()
    meta = _read_meta(page_dir)
    page_url = meta.get("url") or page_dir.name
    reports = {}
    for variant, load_key in (
        (VARIANT_PLAIN, "load_ms_plain"),
        (VARIANT_NOJS, "load_ms_nojs"),
    ):
        html_path = page_dir / f"{variant}.html"
        if not html_path.exists():
            raise FileNotFoundError(f"missing_{variant}_html")
        load_ms = meta.get(load_key)
        doc = parse_document(html_path.read_bytes())
        reports[variant] = build_report(
            doc, variant, cfg, page_url=page_url,
            load_ms=load_ms if isinstance(load_ms, int) else None,
        )
    categories = meta.get("categories")
    if not isinstance(categories, list) or not categories:
        groups = [UNCATEGORIZED]
    else:
        groups = [str(c) for c in categories]
    return compare_pair(reports[VARIANT_PLAIN], reports[VARIANT_NOJS]), groups


def _worker(args: tuple[str, AnalyzerConfig]) -> tuple[str, str, dict | None, list[str]]:
    page_dir, cfg = Path(args[0]), args[1]
    page_id = page_dir.name
    started = time.monotonic()
    try:
        result, groups = analyze_pair_dir(page_dir, cfg)
    except FileNotFoundError as exc:
        return page_id, str(exc), None, []
    except AnalyzerError as exc:
        return page_id, f"{type(exc).__name__}: {exc}", None, []
    except (OSError, json.JSONDecodeError) as exc:
        return page_id, f"unreadable: {exc}", None, []
    if time.monotonic() - started > cfg.page_budget_s:
        return page_id, "inspect_timeout", None, []
    return page_id, "", result.to_dict(), groups


def run_corpus(
    root: str | Path,
    cfg: AnalyzerConfig | None = None,
    jobs: int = 1,
    sink: Callable[[dict], None] | None = None,
) -> CorpusSummary:
    """Analyze every page pair under ``root``.

    Each PairResult is passed to ``sink`` as a JSON-ready dict as soon as
    it is produced (insertion order = sorted page ids), keeping memory
    flat for large corpora.  The returned summary holds the Table-style
    accounting, the working shares and per-group p90 breakdowns.
    """
    cfg = cfg or AnalyzerConfig()
    root = Path(root)
    page_dirs = sorted(
        (p for p in root.iterdir() if p.is_dir()), key=lambda p: p.name
    ) if root.is_dir() else []
    if not page_dirs:
        raise EmptyCorpusError(f"no page directories under {root}")

    skipped: dict[str, str] = {}
    analyzed = 0
    working_whole = 0
    working_main = 0
    group_values: dict[str, dict[str, list[float]]] = {}
    group_pages: dict[str, int] = {}

    def fold(page_id: str, reason: str, result: dict | None, groups: list[str]) -> None:
        nonlocal analyzed, working_whole, working_main
        if result is None:
            skipped[page_id] = reason
            return
        analyzed += 1
        status = result["main_features_status"]
        if status in (PageStatus.WORKING_WHOLE_PAGE.value, PageStatus.FEATURE_ABSENT.value):
            working_whole += 1
        if status != PageStatus.BROKEN_IN_MAIN.value:
            working_main += 1
        for group in groups:
            group_pages[group] = group_pages.get(group, 0) + 1
            rows = group_values.setdefault(group, {})
            for feature in PERCENTILE_FEATURES:
                rows.setdefault(feature, []).append(
                    result["features"][feature]["dbr_visible_main"]
                )
        if sink is not None:
            sink(result)

    work = [(str(p), cfg) for p in page_dirs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for page_id, reason, result, groups in pool.map(_worker, work, chunksize=8):
                fold(page_id, reason, result, groups)
    else:
        for item in work:
            fold(*_worker(item))

    p90s: dict[str, dict[str, float]] = {}
    for group, rows in sorted(group_values.items()):
        p90s[group] = {
            feature: percentile(values, 90)
            for feature, values in rows.items()
            if values
        }

    return CorpusSummary(
        pages_total=len(page_dirs),
        pages_analyzed=analyzed,
        pages_skipped=len(skipped),
        skipped=skipped,
        share_all_main_features_working_whole=(
            working_whole / analyzed if analyzed else 0.0
        ),
        share_all_main_features_working_main=(
            working_main / analyzed if analyzed else 0.0
        ),
        group_feature_dbr_p90=p90s,
        group_page_counts=group_pages,
    )
