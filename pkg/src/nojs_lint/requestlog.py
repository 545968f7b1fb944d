"""Request-log classification: party, tracking status, per-type summaries.

Inputs are JSONL logs of one record per request (fields ``url``,
``page_url``, ``resource_type``, ``timestamp_ms``), a newline-delimited
tracker domain list, and a public-suffix table in the standard text
format.  A request is first party when its host shares a registrable
domain (eTLD+1) with the page, and tracking when its host equals or is a
subdomain of a listed tracker domain.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import urlsplit

from .errors import PairingError, RecordError, SuffixOnlyError


class ResourceType(enum.Enum):
    IMAGE = "image"
    STYLESHEET = "stylesheet"
    FONT = "font"
    SCRIPT = "script"
    XHR = "xhr"
    OTHER = "other"


@dataclass(frozen=True)
class RequestRecord:
    url: str
    page_url: str
    resource_type: ResourceType
    timestamp_ms: int


def parse_record(data: dict) -> RequestRecord:
    try:
        rtype = ResourceType(str(data["resource_type"]))
    except ValueError:
        rtype = ResourceType.OTHER
    except KeyError as exc:
        raise RecordError(f"record missing field {exc}") from exc
    try:
        return RequestRecord(
            url=str(data["url"]),
            page_url=str(data["page_url"]),
            resource_type=rtype,
            timestamp_ms=int(data.get("timestamp_ms", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise RecordError(f"malformed record: {exc}") from exc


def load_request_log(path: str | Path) -> dict[str, list[RequestRecord]]:
    """Read a JSONL log and group the records by page_url."""
    pages: dict[str, list[RequestRecord]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = parse_record(json.loads(line))
            pages.setdefault(record.page_url, []).append(record)
    return pages


# -- public-suffix table ------------------------------------------------


class SuffixTable:
    """Public-suffix rules: plain, wildcard (``*.``) and exception (``!``)."""

    def __init__(
        self,
        rules: set[str],
        wildcards: set[str],
        exceptions: set[str],
    ):
        self.rules = rules
        self.wildcards = wildcards
        self.exceptions = exceptions

    @classmethod
    def parse(cls, text: str) -> "SuffixTable":
        rules: set[str] = set()
        wildcards: set[str] = set()
        exceptions: set[str] = set()
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("//"):
                continue
            line = line.split()[0].lower().lstrip(".")
            if line.startswith("!"):
                exceptions.add(line[1:])
            elif line.startswith("*."):
                wildcards.add(line[2:])
            else:
                rules.add(line)
        return cls(rules, wildcards, exceptions)

    @classmethod
    def load(cls, path: str | Path) -> "SuffixTable":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def suffix_length(self, labels: list[str]) -> int:
        """Number of labels in the public suffix of the host, per the
        standard matching algorithm (longest rule wins, exceptions trump
        wildcards, unknown TLDs default to one label)."""
        best = 0
        matched = False
        for i in range(len(labels)):
            candidate = ".".join(labels[i:])
            remainder = len(labels) - i
            if candidate in self.exceptions:
                # The exception rule's suffix is the rule minus one label.
                return remainder - 1
            if candidate in self.rules:
                matched = True
                best = max(best, remainder)
            if candidate in self.wildcards and i > 0:
                matched = True
                best = max(best, remainder + 1)
        if not matched:
            return 1  # default rule "*": the last label is the suffix
        return best


def base_domain(host: str, suffixes: SuffixTable) -> str:
    """Registrable domain (eTLD+1) of a host.

    A single unlisted label (``localhost``) is returned unchanged; a host
    that is itself a listed public suffix has no registrable domain.
    """
    host = host.strip().rstrip(".").lower()
    labels = [l for l in host.split(".") if l]
    if not labels:
        raise RecordError(f"empty host {host!r}")
    if len(labels) == 1 and labels[0] not in suffixes.rules:
        return labels[0]
    suffix_len = suffixes.suffix_length(labels)
    if suffix_len >= len(labels):
        raise SuffixOnlyError(f"{host!r} is a public suffix")
    return ".".join(labels[-(suffix_len + 1):])


# -- tracker list ---------------------------------------------------------


@dataclass(frozen=True)
class TrackerList:
    domains: frozenset[str] = field(default_factory=frozenset)

    @classmethod
    def parse(cls, text: str) -> "TrackerList":
        domains = set()
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            domains.add(line.lower().lstrip("."))
        return cls(frozenset(domains))

    @classmethod
    def load(cls, path: str | Path) -> "TrackerList":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def matches_host(self, host: str) -> bool:
        host = host.strip().rstrip(".").lower()
        probe = host
        while probe:
            if probe in self.domains:
                return True
            _, _, probe = probe.partition(".")
        return False


def trackers_from_disconnect_json(text: str) -> TrackerList:
    """Flatten the Disconnect services JSON into a plain domain list."""
    data = json.loads(text)
    domains: set[str] = set()

    def collect(obj: object) -> None:
        if isinstance(obj, dict):
            for value in obj.values():
                collect(value)
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, str):
                    host = item.split("//")[-1].split("/")[0].strip().lower()
                    if host and "." in host:
                        domains.add(host.lstrip("."))
                else:
                    collect(item)

    collect(data.get("categories", data))
    return TrackerList(frozenset(domains))


# -- classification ---------------------------------------------------------


class Party(enum.Enum):
    FIRST = "first"
    THIRD = "third"


def _host_of(url: str) -> str:
    try:
        host = urlsplit(url).hostname
    except ValueError as exc:
        raise RecordError(f"unparseable URL {url!r}: {exc}") from exc
    if not host:
        raise RecordError(f"URL has no host: {url!r}")
    return host


def classify_party(record: RequestRecord, suffixes: SuffixTable) -> Party:
    try:
        request_base = base_domain(_host_of(record.url), suffixes)
        page_base = base_domain(_host_of(record.page_url), suffixes)
    except SuffixOnlyError as exc:
        raise RecordError(str(exc)) from exc
    return Party.FIRST if request_base == page_base else Party.THIRD


def classify_tracking(record: RequestRecord, trackers: TrackerList) -> bool:
    return trackers.matches_host(_host_of(record.url))


# -- Table-style summary ------------------------------------------------------

_PARTY_PREFIX = {Party.FIRST: "first_party", Party.THIRD: "third_party"}

SUMMARY_CATEGORIES = (
    "all",
    "non_tracking",
    "tracking",
    "first_party",
    "first_party_image",
    "first_party_stylesheet",
    "first_party_font",
    "first_party_script",
    "first_party_xhr",
    "third_party",
    "third_party_image",
    "third_party_stylesheet",
    "third_party_font",
    "third_party_script",
    "third_party_xhr",
)


def mean_change_pct(mean_plain: float, mean_nojs: float) -> float | None:
    """Percentage change of the mean; None when the baseline mean is 0."""
    if mean_plain == 0:
        return 0.0 if mean_nojs == 0 else None
    return (mean_nojs - mean_plain) / mean_plain * 100.0


def _mean_sd(values: list[float]) -> tuple[float, float]:
    if not values:
        return 0.0, 0.0
    mean = sum(values) / len(values)
    variance = sum((v - mean) ** 2 for v in values) / len(values)
    return mean, math.sqrt(variance)


def _page_counts(
    records: list[RequestRecord],
    suffixes: SuffixTable,
    trackers: TrackerList,
) -> tuple[dict[str, int], int]:
    counts = {category: 0 for category in SUMMARY_CATEGORIES}
    skipped = 0
    for record in records:
        try:
            party = classify_party(record, suffixes)
            tracking = classify_tracking(record, trackers)
        except RecordError:
            skipped += 1
            continue
        counts["all"] += 1
        counts["tracking" if tracking else "non_tracking"] += 1
        prefix = _PARTY_PREFIX[party]
        counts[prefix] += 1
        if record.resource_type is not ResourceType.OTHER:
            counts[f"{prefix}_{record.resource_type.value}"] += 1
    return counts, skipped


@dataclass
class RequestSummary:
    categories: dict[str, dict]
    page_count: int
    skipped_records: int

    def to_dict(self) -> dict:
        return {
            "page_count": self.page_count,
            "skipped_records": self.skipped_records,
            "categories": {k: dict(v) for k, v in self.categories.items()},
        }


def summarize(
    plain_logs: dict[str, list[RequestRecord]],
    nojs_logs: dict[str, list[RequestRecord]],
    trackers: TrackerList,
    suffixes: SuffixTable,
) -> RequestSummary:
    """Per-category request-count means, SDs and mean change percentages.

    The two logs must cover the same page set; orphans on either side are
    a PairingError.  SD is the population standard deviation.
    """
    plain_pages = set(plain_logs)
    nojs_pages = set(nojs_logs)
    orphans = sorted(plain_pages ^ nojs_pages)
    if orphans:
        raise PairingError(
            f"page sets differ between logs ({len(orphans)} orphans)", orphans
        )
    pages = sorted(plain_pages)
    skipped = 0
    per_variant: dict[str, dict[str, list[float]]] = {"plain": {}, "nojs": {}}
    for variant, logs in (("plain", plain_logs), ("nojs", nojs_logs)):
        columns = {category: [] for category in SUMMARY_CATEGORIES}
        for page in pages:
            counts, bad = _page_counts(logs[page], suffixes, trackers)
            skipped += bad
            for category, value in counts.items():
                columns[category].append(float(value))
        per_variant[variant] = columns

    categories: dict[str, dict] = {}
    for category in SUMMARY_CATEGORIES:
        plain_mean, plain_sd = _mean_sd(per_variant["plain"][category])
        nojs_mean, nojs_sd = _mean_sd(per_variant["nojs"][category])
        categories[category] = {
            "plain": {"mean": plain_mean, "sd": plain_sd},
            "nojs": {"mean": nojs_mean, "sd": nojs_sd},
            "mean_change_pct": mean_change_pct(plain_mean, nojs_mean),
        }
    return RequestSummary(
        categories=categories,
        page_count=len(pages),
        skipped_records=skipped,
    )
