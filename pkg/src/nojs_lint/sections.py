"""Page section inference from semantic tags, ids and class names.

Every element gets the label of its nearest matching ancestor-or-self;
nested section markers override outer ones.  When a page has no explicit
main element but does mark other sections, the unlabeled remainder is
treated as the main section; when nothing is marked at all, the whole
page counts as main.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .dom import DomDocument, DomNode, ELEMENT
from .selectors import SelectorList


class SectionLabel(enum.Enum):
    HEADER = "header"
    FOOTER = "footer"
    ASIDE = "aside"
    NAV = "nav"
    MAIN = "main"
    UNKNOWN = "unknown"


# Precedence when one element matches several section selector sets.
_LABEL_ORDER = (
    SectionLabel.MAIN,
    SectionLabel.HEADER,
    SectionLabel.FOOTER,
    SectionLabel.ASIDE,
    SectionLabel.NAV,
)
_LABEL_RANK = {label: rank for rank, label in enumerate(_LABEL_ORDER)}


def _sel(text: str) -> SelectorList:
    return SelectorList.parse(text)


@dataclass(frozen=True)
class SectionConfig:
    """Selector vocabulary for section markers.

    The defaults are the tag/#id/.class triples commonly used to mark
    page structure; matching is exact-token, so `.main` does not match
    `class="mainNav"`.
    """

    main_selectors: SelectorList = field(default_factory=lambda: _sel("main, #main, .main"))
    header_selectors: SelectorList = field(default_factory=lambda: _sel("header, #header, .header"))
    footer_selectors: SelectorList = field(default_factory=lambda: _sel("footer, #footer, .footer"))
    aside_selectors: SelectorList = field(default_factory=lambda: _sel("aside"))
    nav_selectors: SelectorList = field(default_factory=lambda: _sel("nav"))

    def selectors_for(self, label: SectionLabel) -> SelectorList:
        return {
            SectionLabel.MAIN: self.main_selectors,
            SectionLabel.HEADER: self.header_selectors,
            SectionLabel.FOOTER: self.footer_selectors,
            SectionLabel.ASIDE: self.aside_selectors,
            SectionLabel.NAV: self.nav_selectors,
        }[label]


class _CompiledSections:
    """Hash-based dispatch for the common single-facet selectors (bare
    tag, #id or .class); anything fancier falls back to full matching."""

    def __init__(self, selector_map: list[tuple[SectionLabel, SelectorList]]):
        self.by_tag: dict[str, SectionLabel] = {}
        self.by_id: dict[str, SectionLabel] = {}
        self.by_class: dict[str, SectionLabel] = {}
        self.generic: list[tuple[SectionLabel, SelectorList]] = []
        for label, selectors in reversed(selector_map):
            # reversed so higher-precedence labels overwrite lower ones
            simple = []
            for alt in selectors.alternatives:
                facets = (alt.tag is not None) + (alt.id is not None) + len(alt.classes)
                if facets != 1:
                    simple = None
                    break
                simple.append(alt)
            if simple is None:
                self.generic.append((label, selectors))
                continue
            for alt in simple:
                if alt.tag is not None:
                    self.by_tag[alt.tag] = label
                elif alt.id is not None:
                    self.by_id[alt.id] = label
                else:
                    self.by_class[next(iter(alt.classes))] = label
        self.generic.reverse()

    def label_for(self, node: DomNode) -> SectionLabel | None:
        best: SectionLabel | None = None
        best_rank = len(_LABEL_ORDER)
        for label, selectors in self.generic:
            if selectors.matches(node):
                best, best_rank = label, _LABEL_RANK[label]
                break  # generic entries are already in precedence order
        candidate = self.by_tag.get(node.tag)
        if candidate is not None and _LABEL_RANK[candidate] < best_rank:
            best, best_rank = candidate, _LABEL_RANK[candidate]
        node_id = node.attributes.get("id")
        if node_id is not None:
            candidate = self.by_id.get(node_id)
            if candidate is not None and _LABEL_RANK[candidate] < best_rank:
                best, best_rank = candidate, _LABEL_RANK[candidate]
        class_attr = node.attributes.get("class")
        if class_attr and self.by_class:
            for token in class_attr.split():
                candidate = self.by_class.get(token)
                if candidate is not None and _LABEL_RANK[candidate] < best_rank:
                    best, best_rank = candidate, _LABEL_RANK[candidate]
        return best


def classify_sections(
    doc: DomDocument, cfg: SectionConfig | None = None
) -> dict[DomNode, SectionLabel]:
    """Label every element with the section of its nearest marked ancestor."""
    cfg = cfg or SectionConfig()
    selector_map = [(label, cfg.selectors_for(label)) for label in _LABEL_ORDER]
    compiled = _CompiledSections(selector_map)
    labels: dict[DomNode, SectionLabel] = {}
    stack: list[tuple[DomNode, SectionLabel]] = [
        (child, SectionLabel.UNKNOWN)
        for child in reversed(doc.root.children)
        if child.kind == ELEMENT
    ]
    while stack:
        node, label = stack.pop()
        own = compiled.label_for(node)
        if own is not None:
            label = own
        labels[node] = label
        for child in reversed(node.children):
            if child.kind == ELEMENT:
                stack.append((child, label))
    return labels


class MainMembership:
    """Main-section membership for one labeled page.

    Three page modes, decided once from the label set:

    * an explicit main exists: only main-labeled nodes are in main;
    * no main but other sections are marked: the unlabeled remainder is
      the recovered main section;
    * nothing is marked: the whole page is the main section.
    """

    def __init__(self, labels: dict[DomNode, SectionLabel]):
        present = set(labels.values())
        self.has_main = SectionLabel.MAIN in present
        self.has_other_sections = bool(
            present & {SectionLabel.HEADER, SectionLabel.FOOTER,
                       SectionLabel.ASIDE, SectionLabel.NAV}
        )
        self._labels = labels

    def in_main(self, node: DomNode) -> bool:
        if self.has_main:
            return self._labels.get(node) == SectionLabel.MAIN
        if self.has_other_sections:
            return self._labels.get(node) == SectionLabel.UNKNOWN
        return True


def in_main_section(
    doc: DomDocument, labels: dict[DomNode, SectionLabel], node: DomNode
) -> bool:
    """Whether one node belongs to the (possibly recovered) main section."""
    return MainMembership(labels).in_main(node)
