"""Static analyzer for JavaScript-reliance breakage in saved web pages.

Given the DOM of a page saved with scripts blocked (and optionally its
scripts-enabled counterpart), the analyzer finds page features that rely
on JavaScript, classifies each occurrence as working or broken per page
section, computes differential-breakage metrics, and quantifies the
tracking-request reduction from paired request logs.
"""

from .config import AnalyzerConfig, load_config
from .detectors import FeatureKind, FeatureVerdict, run_detectors
from .dom import (
    DomDocument,
    DomNode,
    approximate_geometry,
    is_visible,
    parse_document,
    serialize,
    text_content,
)
from .errors import AnalyzerError
from .metrics import (
    BreakageMetrics,
    FeatureCount,
    PageStatus,
    Scope,
    aggregate_interactive,
    aggregate_main_features,
    compute_metrics,
    dbr,
    dbrn,
    page_status,
)
from .corpus import CorpusSummary, percentile, run_corpus
from .report import FeatureReport, PairResult, build_report, compare_pair
from .requestlog import (
    Party,
    RequestRecord,
    RequestSummary,
    SuffixTable,
    TrackerList,
    base_domain,
    classify_party,
    classify_tracking,
    summarize,
)
from .sections import SectionConfig, SectionLabel, classify_sections, in_main_section
from .selectors import SelectorList, query

__version__ = "0.1.0"

__all__ = [
    "AnalyzerConfig",
    "AnalyzerError",
    "BreakageMetrics",
    "CorpusSummary",
    "DomDocument",
    "DomNode",
    "FeatureCount",
    "FeatureKind",
    "FeatureReport",
    "FeatureVerdict",
    "PageStatus",
    "PairResult",
    "Party",
    "RequestRecord",
    "RequestSummary",
    "Scope",
    "SectionConfig",
    "SectionLabel",
    "SelectorList",
    "SuffixTable",
    "TrackerList",
    "aggregate_interactive",
    "aggregate_main_features",
    "approximate_geometry",
    "base_domain",
    "build_report",
    "classify_party",
    "classify_sections",
    "classify_tracking",
    "compare_pair",
    "compute_metrics",
    "dbr",
    "dbrn",
    "in_main_section",
    "is_visible",
    "load_config",
    "page_status",
    "parse_document",
    "percentile",
    "query",
    "run_corpus",
    "run_detectors",
    "serialize",
    "summarize",
    "text_content",
]
