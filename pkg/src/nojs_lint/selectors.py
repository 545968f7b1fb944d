"""Minimal CSS selector subset: tag, #id, .class, compounds and comma lists.

Combinators, attribute selectors and pseudo-classes are deliberately not
supported; the small grammar keeps matching verifiable against a
brute-force oracle.  Tag matching is case-insensitive, id and class
matching is case-sensitive and token-exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .dom import ELEMENT, DomDocument, DomNode
from .errors import SelectorSyntaxError

_TAG_RE = re.compile(r"[A-Za-z][-A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"([#.])([-A-Za-z0-9_]+)")


@dataclass(frozen=True)
class CompoundSelector:
    """One alternative: all present parts must match the same element."""

    tag: str | None = None
    id: str | None = None
    classes: frozenset[str] = field(default_factory=frozenset)

    def matches(self, node: DomNode) -> bool:
        if node.kind != ELEMENT:
            return False
        if self.tag is not None and node.tag != self.tag:
            return False
        if self.id is not None and node.attributes.get("id") != self.id:
            return False
        if self.classes and not self.classes.issubset(node.classes):
            return False
        return True


@dataclass(frozen=True)
class SelectorList:
    """A comma-separated list of alternatives; any match counts."""

    alternatives: tuple[CompoundSelector, ...]

    @classmethod
    def parse(cls, text: str) -> SelectorList:
        alternatives = []
        for part in text.split(","):
            part = part.strip()
            if not part:
                raise SelectorSyntaxError(f"empty alternative in {text!r}")
            alternatives.append(_parse_compound(part))
        return cls(tuple(alternatives))

    def matches(self, node: DomNode) -> bool:
        return any(alt.matches(node) for alt in self.alternatives)

    def __str__(self) -> str:
        out = []
        for alt in self.alternatives:
            chunk = alt.tag or ""
            if alt.id is not None:
                chunk += f"#{alt.id}"
            chunk += "".join(f".{c}" for c in sorted(alt.classes))
            out.append(chunk)
        return ", ".join(out)


def _parse_compound(part: str) -> CompoundSelector:
    pos = 0
    tag: str | None = None
    match = _TAG_RE.match(part)
    if match:
        tag = match.group(0).lower()
        pos = match.end()
    sel_id: str | None = None
    classes: set[str] = set()
    while pos < len(part):
        match = _TOKEN_RE.match(part, pos)
        if not match:
            raise SelectorSyntaxError(f"unsupported selector syntax at {part[pos:]!r}")
        marker, name = match.groups()
        if marker == "#":
            if sel_id is not None:
                raise SelectorSyntaxError(f"multiple ids in compound {part!r}")
            sel_id = name
        else:
            classes.add(name)
        pos = match.end()
    if tag is None and sel_id is None and not classes:
        raise SelectorSyntaxError(f"empty compound selector {part!r}")
    return CompoundSelector(tag=tag, id=sel_id, classes=frozenset(classes))


def query(doc: DomDocument, sel: SelectorList | str) -> list[DomNode]:
    """All elements matched by any alternative, in document order.

    Each element appears at most once even when several alternatives
    match it.
    """
    if isinstance(sel, str):
        sel = SelectorList.parse(sel)
    return [node for node in doc.elements if sel.matches(node)]
