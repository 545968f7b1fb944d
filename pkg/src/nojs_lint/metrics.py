"""Differential breakage arithmetic and page-status classification.

All quantities compare the scripts-blocked variant (nojs) of a page with
its default counterpart (plain):

* ``dbr`` — broken count under nojs minus broken count under plain;
* ``tot`` — broken plus working under nojs;
* ``dbrn`` — dbr normalized by tot, defined as 0 when tot is 0.

Counts default to visible plus hidden elements; pass ``visible_only``
where the analysis should ignore hidden ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ContractError


class Scope(enum.Enum):
    MAIN = "main"
    WHOLE_PAGE = "whole_page"


class PageStatus(enum.Enum):
    FEATURE_ABSENT = "feature_absent"
    WORKING_WHOLE_PAGE = "working_whole_page"
    WORKING_MAIN_ONLY = "working_main_only"
    BROKEN_IN_MAIN = "broken_in_main"


@dataclass(frozen=True)
class FeatureCount:
    broken_visible: int = 0
    broken_hidden: int = 0
    working_visible: int = 0
    working_hidden: int = 0
    scope: Scope = Scope.WHOLE_PAGE

    def broken(self, visible_only: bool = False) -> int:
        return self.broken_visible + (0 if visible_only else self.broken_hidden)

    def working(self, visible_only: bool = False) -> int:
        return self.working_visible + (0 if visible_only else self.working_hidden)

    def total(self, visible_only: bool = False) -> int:
        return self.broken(visible_only) + self.working(visible_only)

    def __add__(self, other: "FeatureCount") -> "FeatureCount":
        if self.scope is not other.scope:
            raise ContractError("cannot add counts of different scopes")
        return FeatureCount(
            self.broken_visible + other.broken_visible,
            self.broken_hidden + other.broken_hidden,
            self.working_visible + other.working_visible,
            self.working_hidden + other.working_hidden,
            self.scope,
        )


@dataclass(frozen=True)
class BreakageMetrics:
    dbr: int
    tot_nojs: int
    dbrn: float


def dbr(nojs: FeatureCount, plain: FeatureCount, visible_only: bool = False) -> int:
    if nojs.scope is not plain.scope:
        raise ContractError(
            f"scope mismatch: {nojs.scope.value} vs {plain.scope.value}"
        )
    return nojs.broken(visible_only) - plain.broken(visible_only)


def dbrn(nojs: FeatureCount, plain: FeatureCount, visible_only: bool = False) -> float:
    total = nojs.total(visible_only)
    if total == 0:
        return 0.0
    return dbr(nojs, plain, visible_only) / total


def compute_metrics(
    nojs: FeatureCount, plain: FeatureCount, visible_only: bool = False
) -> BreakageMetrics:
    return BreakageMetrics(
        dbr=dbr(nojs, plain, visible_only),
        tot_nojs=nojs.total(visible_only),
        dbrn=dbrn(nojs, plain, visible_only),
    )


# Interactive features: the five element-level interactive kinds, summed.
INTERACTIVE_FEATURE_KEYS = (
    "lone_control",
    "form",
    "empty_anchor_button",
    "mislinked_fragment_anchor",
    "disclosure_button",
)

# Main features: what has to work for the page to be usable; aggregated by
# taking the maximum of each metric, so the worst feature dominates.  Ties
# on dbrn resolve to the first key in this order.
MAIN_FEATURE_KEYS = (
    "page_text",
    "stylesheets_loaded",
    "interactive",
    "large_image",
    "loader_overlay",
)


def aggregate_interactive(
    per_feature: dict[str, tuple[FeatureCount, FeatureCount]],
) -> tuple[FeatureCount, FeatureCount]:
    """Componentwise sum of (nojs, plain) counts over the interactive kinds.

    The verdict sets are disjoint, so summing counts equals counting the
    union.
    """
    missing = [k for k in INTERACTIVE_FEATURE_KEYS if k not in per_feature]
    if missing:
        raise ContractError(f"missing interactive kinds: {missing}")
    nojs_counts, plain_counts = zip(
        *(per_feature[k] for k in INTERACTIVE_FEATURE_KEYS)
    )
    nojs_sum = nojs_counts[0]
    for count in nojs_counts[1:]:
        nojs_sum = nojs_sum + count
    plain_sum = plain_counts[0]
    for count in plain_counts[1:]:
        plain_sum = plain_sum + count
    return nojs_sum, plain_sum


def aggregate_main_features(metrics: dict[str, BreakageMetrics]) -> BreakageMetrics:
    """Componentwise maximum of dbr and dbrn over the main features.

    ``tot_nojs`` is reported from the entry attaining the maximum dbrn
    (first in ``MAIN_FEATURE_KEYS`` order on ties).
    """
    missing = [k for k in MAIN_FEATURE_KEYS if k not in metrics]
    if missing:
        raise ContractError(f"missing main-feature entries: {missing}")
    entries = [metrics[k] for k in MAIN_FEATURE_KEYS]
    max_dbr = max(e.dbr for e in entries)
    max_dbrn = max(e.dbrn for e in entries)
    attaining = next(e for e in entries if e.dbrn == max_dbrn)
    return BreakageMetrics(dbr=max_dbr, tot_nojs=attaining.tot_nojs, dbrn=max_dbrn)


def page_status(
    feature: str,
    main_counts_nojs: FeatureCount,
    whole_counts_nojs: FeatureCount,
    dbr_main: int,
    dbr_whole: int,
    visible_only: bool = False,
) -> PageStatus:
    """Classify one (page, feature) into the four-way status.

    Exactly one branch fires for every consistent input; the outcome
    depends only on the sign of the dbr values and the emptiness of the
    whole-page total.
    """
    for field in ("broken_visible", "broken_hidden", "working_visible", "working_hidden"):
        if getattr(whole_counts_nojs, field) < getattr(main_counts_nojs, field):
            raise ContractError(
                f"whole-page counts below main counts ({field}) for {feature}"
            )
    if whole_counts_nojs.total(visible_only) == 0:
        return PageStatus.FEATURE_ABSENT
    if dbr_main > 0:
        return PageStatus.BROKEN_IN_MAIN
    if dbr_whole > 0:
        return PageStatus.WORKING_MAIN_ONLY
    return PageStatus.WORKING_WHOLE_PAGE
