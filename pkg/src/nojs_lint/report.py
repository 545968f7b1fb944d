"""Per-page feature reports and plain/nojs pair comparison."""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import AnalyzerConfig
from .detectors import FeatureKind, FeatureVerdict
from .dom import DomDocument
from .errors import PairingError
from .metrics import (
    BreakageMetrics,
    FeatureCount,
    INTERACTIVE_FEATURE_KEYS,
    MAIN_FEATURE_KEYS,
    PageStatus,
    Scope,
    aggregate_interactive,
    aggregate_main_features,
    compute_metrics,
    page_status,
)
from .sections import classify_sections

VARIANT_PLAIN = "plain"
VARIANT_NOJS = "nojs"

AGGREGATE_INTERACTIVE = "interactive"
AGGREGATE_MAIN_FEATURES = "main_features"

# Feature keys as serialized, in fixed report order.
FEATURE_KEYS = tuple(kind.value for kind in FeatureKind)


@dataclass
class FeatureReport:
    """Counts of broken and working elements for one page variant."""

    page_url: str
    variant: str
    counts: dict[str, dict[Scope, FeatureCount]]
    page_flags: dict[str, bool]
    timings: dict[str, int] | None = None
    diagnostics: list[str] = field(default_factory=list)

    def count(self, feature: str, scope: Scope) -> FeatureCount:
        return self.counts[feature][scope]

    def to_dict(self) -> dict:
        return {
            "page_url": self.page_url,
            "variant": self.variant,
            "counts": {
                key: {
                    scope.value: {
                        "broken_visible": c.broken_visible,
                        "broken_hidden": c.broken_hidden,
                        "working_visible": c.working_visible,
                        "working_hidden": c.working_hidden,
                    }
                    for scope, c in scopes.items()
                }
                for key, scopes in self.counts.items()
            },
            "page_flags": dict(self.page_flags),
            "timings": dict(self.timings) if self.timings else None,
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureReport":
        counts: dict[str, dict[Scope, FeatureCount]] = {}
        for key, scopes in data["counts"].items():
            counts[key] = {}
            for scope_name, c in scopes.items():
                scope = Scope(scope_name)
                counts[key][scope] = FeatureCount(
                    broken_visible=c["broken_visible"],
                    broken_hidden=c["broken_hidden"],
                    working_visible=c["working_visible"],
                    working_hidden=c["working_hidden"],
                    scope=scope,
                )
        return cls(
            page_url=data["page_url"],
            variant=data["variant"],
            counts=counts,
            page_flags=dict(data["page_flags"]),
            timings=dict(data["timings"]) if data.get("timings") else None,
            diagnostics=list(data.get("diagnostics", [])),
        )


def _empty_counts() -> dict[str, dict[Scope, FeatureCount]]:
    return {
        key: {
            Scope.MAIN: FeatureCount(scope=Scope.MAIN),
            Scope.WHOLE_PAGE: FeatureCount(scope=Scope.WHOLE_PAGE),
        }
        for key in FEATURE_KEYS
    }


def _tally(
    counts: dict[str, dict[Scope, FeatureCount]], verdicts: list[FeatureVerdict]
) -> None:
    for verdict in verdicts:
        key = verdict.kind.value
        bv = 1 if verdict.broken and verdict.visible else 0
        bh = 1 if verdict.broken and not verdict.visible else 0
        wv = 1 if not verdict.broken and verdict.visible else 0
        wh = 1 if not verdict.broken and not verdict.visible else 0
        scopes = [Scope.WHOLE_PAGE] + ([Scope.MAIN] if verdict.in_main else [])
        for scope in scopes:
            current = counts[key][scope]
            counts[key][scope] = FeatureCount(
                current.broken_visible + bv,
                current.broken_hidden + bh,
                current.working_visible + wv,
                current.working_hidden + wh,
                scope,
            )


def build_report(
    doc: DomDocument,
    variant: str,
    cfg: AnalyzerConfig | None = None,
    page_url: str = "",
    load_ms: int | None = None,
) -> FeatureReport:
    """Run the section classifier and every detector, tally the counts.

    A detector that raises is recorded as a diagnostic and contributes
    zero counts; the report is still produced.
    """
    cfg = cfg or AnalyzerConfig()
    labels = classify_sections(doc, cfg.sections)
    counts = _empty_counts()
    diagnostics: list[str] = []
    page_flags = {"has_body_text": False, "has_stylesheets": False}

    from . import detectors as _d

    per_element = (
        (FeatureKind.LARGE_IMAGE, _d.detect_images),
        (FeatureKind.FORM, _d.detect_forms),
        (FeatureKind.LONE_CONTROL, _d.detect_lone_controls),
        (FeatureKind.EMPTY_ANCHOR_BUTTON, _d.detect_empty_anchor_buttons),
        (FeatureKind.MISLINKED_FRAGMENT_ANCHOR, _d.detect_mislinked_fragment_anchors),
        (FeatureKind.DISCLOSURE_BUTTON, _d.detect_disclosure_buttons),
        (FeatureKind.PROTECTED_EMAIL, _d.detect_protected_emails),
        (FeatureKind.LOADER_OVERLAY, _d.detect_loader_overlays),
    )
    whole_page = (
        (FeatureKind.PAGE_TEXT, _d.check_page_text),
        (FeatureKind.STYLESHEETS_LOADED, _d.check_stylesheets),
    )

    shared_ctx = _d._Context(doc, labels)
    results: dict[FeatureKind, list[FeatureVerdict]] = {}
    for kind, fn in per_element:
        try:
            results[kind] = fn(doc, labels, cfg, shared_ctx)
        except Exception as exc:  # one bad detector must not sink the report
            diagnostics.append(f"{kind.value}: {exc}")
            results[kind] = []
    for kind, page_fn in whole_page:
        try:
            results[kind] = [page_fn(doc)]
        except Exception as exc:
            diagnostics.append(f"{kind.value}: {exc}")
            results[kind] = []

    for verdicts in results.values():
        _tally(counts, verdicts)

    page_text = results.get(FeatureKind.PAGE_TEXT) or []
    stylesheets = results.get(FeatureKind.STYLESHEETS_LOADED) or []
    page_flags["has_body_text"] = bool(page_text) and not page_text[0].broken
    page_flags["has_stylesheets"] = bool(stylesheets) and not stylesheets[0].broken

    return FeatureReport(
        page_url=page_url,
        variant=variant,
        counts=counts,
        page_flags=page_flags,
        timings={"load_ms": load_ms} if load_ms is not None else None,
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class FeaturePairMetrics:
    main: BreakageMetrics
    whole_page: BreakageMetrics
    status: PageStatus
    # Main-scope dbr over visible elements only; feeds the per-group
    # percentile breakdowns.
    dbr_visible_main: int

    def to_dict(self) -> dict:
        return {
            "main": _metrics_dict(self.main),
            "whole_page": _metrics_dict(self.whole_page),
            "status": self.status.value,
            "dbr_visible_main": self.dbr_visible_main,
        }


def _metrics_dict(metrics: BreakageMetrics) -> dict:
    return {"dbr": metrics.dbr, "tot_nojs": metrics.tot_nojs, "dbrn": metrics.dbrn}


@dataclass(frozen=True)
class PairResult:
    page_url: str
    features: dict[str, FeaturePairMetrics]
    main_features_status: PageStatus

    def to_dict(self) -> dict:
        return {
            "page_url": self.page_url,
            "features": {key: fpm.to_dict() for key, fpm in self.features.items()},
            "main_features_status": self.main_features_status.value,
        }


def compare_pair(
    plain: FeatureReport, nojs: FeatureReport, visible_only: bool = False
) -> PairResult:
    """Differential metrics, per-feature statuses and the main-features
    aggregate for one page."""
    if plain.page_url != nojs.page_url:
        raise PairingError(
            f"page_url mismatch: {plain.page_url!r} vs {nojs.page_url!r}"
        )
    if plain.variant != VARIANT_PLAIN or nojs.variant != VARIANT_NOJS:
        raise PairingError(
            f"expected variants plain/nojs, got {plain.variant!r}/{nojs.variant!r}"
        )

    features: dict[str, FeaturePairMetrics] = {}
    counts: dict[str, dict[Scope, tuple[FeatureCount, FeatureCount]]] = {}
    for key in FEATURE_KEYS:
        counts[key] = {
            scope: (nojs.count(key, scope), plain.count(key, scope))
            for scope in (Scope.MAIN, Scope.WHOLE_PAGE)
        }

    interactive = {}
    for scope in (Scope.MAIN, Scope.WHOLE_PAGE):
        per_kind = {key: counts[key][scope] for key in INTERACTIVE_FEATURE_KEYS}
        interactive[scope] = aggregate_interactive(per_kind)
    counts[AGGREGATE_INTERACTIVE] = interactive

    for key, scoped in counts.items():
        features[key] = _pair_metrics(key, scoped, visible_only)

    main_metrics = {}
    main_counts: dict[Scope, tuple[FeatureCount, FeatureCount]] = {}
    for scope in (Scope.MAIN, Scope.WHOLE_PAGE):
        entries = {
            key: compute_metrics(*counts[key][scope], visible_only)
            for key in MAIN_FEATURE_KEYS
        }
        main_metrics[scope] = aggregate_main_features(entries)
        nojs_sum = plain_sum = FeatureCount(scope=scope)
        for key in MAIN_FEATURE_KEYS:
            nojs_sum = nojs_sum + counts[key][scope][0]
            plain_sum = plain_sum + counts[key][scope][1]
        main_counts[scope] = (nojs_sum, plain_sum)

    visible_entries = {
        key: compute_metrics(*counts[key][Scope.MAIN], True)
        for key in MAIN_FEATURE_KEYS
    }
    visible_dbr = aggregate_main_features(visible_entries).dbr
    main_status = page_status(
        AGGREGATE_MAIN_FEATURES,
        main_counts[Scope.MAIN][0],
        main_counts[Scope.WHOLE_PAGE][0],
        main_metrics[Scope.MAIN].dbr,
        main_metrics[Scope.WHOLE_PAGE].dbr,
        visible_only,
    )
    features[AGGREGATE_MAIN_FEATURES] = FeaturePairMetrics(
        main=main_metrics[Scope.MAIN],
        whole_page=main_metrics[Scope.WHOLE_PAGE],
        status=main_status,
        dbr_visible_main=visible_dbr,
    )

    return PairResult(
        page_url=nojs.page_url,
        features=features,
        main_features_status=main_status,
    )


def _pair_metrics(
    key: str,
    scoped: dict[Scope, tuple[FeatureCount, FeatureCount]],
    visible_only: bool,
) -> FeaturePairMetrics:
    main = compute_metrics(*scoped[Scope.MAIN], visible_only)
    whole = compute_metrics(*scoped[Scope.WHOLE_PAGE], visible_only)
    status = page_status(
        key,
        scoped[Scope.MAIN][0],
        scoped[Scope.WHOLE_PAGE][0],
        main.dbr,
        whole.dbr,
        visible_only,
    )
    return FeaturePairMetrics(
        main=main,
        whole_page=whole,
        status=status,
        dbr_visible_main=compute_metrics(*scoped[Scope.MAIN], True).dbr,
    )
