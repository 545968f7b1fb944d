"""Heuristics that find page features and decide if blocking JavaScript
breaks them.

Each detector is a pure function of the parsed document: it finds the
elements matching one feature of interest and classifies every occurrence
as working or broken.  Every verdict carries a reason code drawn from the
detector's closed set (see ``REASON_CODES``), the node's visibility, and
whether it sits in the main section.

Detectors never fetch resources and never see script behavior; an element
whose reliance on JavaScript is invisible in markup (a plain ``div`` with
a listener attached elsewhere) is out of reach by design.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from urllib.parse import urlencode

from .config import AnalyzerConfig
from .dom import (
    DomDocument,
    DomNode,
    ELEMENT,
    TEXT,
    _hidden_by_own_markup,
    approximate_geometry,
    text_content,
)
from .sections import MainMembership, SectionLabel


class FeatureKind(enum.Enum):
    LARGE_IMAGE = "large_image"
    FORM = "form"
    LONE_CONTROL = "lone_control"
    EMPTY_ANCHOR_BUTTON = "empty_anchor_button"
    MISLINKED_FRAGMENT_ANCHOR = "mislinked_fragment_anchor"
    DISCLOSURE_BUTTON = "disclosure_button"
    PROTECTED_EMAIL = "protected_email"
    LOADER_OVERLAY = "loader_overlay"
    PAGE_TEXT = "page_text"
    STYLESHEETS_LOADED = "stylesheets_loaded"


INTERACTIVE_KINDS = (
    FeatureKind.LONE_CONTROL,
    FeatureKind.FORM,
    FeatureKind.EMPTY_ANCHOR_BUTTON,
    FeatureKind.MISLINKED_FRAGMENT_ANCHOR,
    FeatureKind.DISCLOSURE_BUTTON,
)

# Whole-page features: at most one verdict per page, always counted as
# visible and in-main so they weigh into the main-section aggregate.
WHOLE_PAGE_KINDS = frozenset({FeatureKind.PAGE_TEXT, FeatureKind.STYLESHEETS_LOADED})

REASON_CODES: dict[FeatureKind, frozenset[str]] = {
    FeatureKind.LARGE_IMAGE: frozenset({
        "ok", "lazy_no_src", "placeholder_src", "noscript_fallback",
        "native_lazy_disabled",
    }),
    FeatureKind.FORM: frozenset({"ok", "unnamed_control", "no_submission", "js_action"}),
    FeatureKind.LONE_CONTROL: frozenset({
        "no_form_owner", "inline_handler", "stateful_control",
    }),
    FeatureKind.EMPTY_ANCHOR_BUTTON: frozenset({
        "no_href", "empty_href", "go_to_top", "hash_button", "js_noop",
    }),
    FeatureKind.MISLINKED_FRAGMENT_ANCHOR: frozenset({"unresolved_fragment"}),
    FeatureKind.DISCLOSURE_BUTTON: frozenset({
        "native_details", "css_toggle", "script_toggle",
    }),
    FeatureKind.PROTECTED_EMAIL: frozenset({"obfuscated_text", "cfemail_attr"}),
    FeatureKind.LOADER_OVERLAY: frozenset({"overlay_blocks", "hidden_overlay"}),
    FeatureKind.PAGE_TEXT: frozenset({"has_text", "empty_text", "no_body"}),
    FeatureKind.STYLESHEETS_LOADED: frozenset({"stylesheet_present", "no_styles"}),
}


@dataclass(frozen=True)
class FeatureVerdict:
    kind: FeatureKind
    broken: bool
    visible: bool
    in_main: bool
    node_path: str
    detail: str


class _Context:
    """Shared per-document state: membership, paths, memoized visibility."""

    def __init__(self, doc: DomDocument, labels: dict[DomNode, SectionLabel] | None):
        self.doc = doc
        self.membership = MainMembership(labels) if labels is not None else None
        self._visible: dict[int, bool] = {}
        self._ownership: tuple[dict, set] | None = None

    def control_ownership(self) -> tuple[dict["DomNode", list["DomNode"]], set[int]]:
        if self._ownership is None:
            self._ownership = _control_ownership(self.doc)
        return self._ownership

    def is_visible(self, node: DomNode) -> bool:
        """Same rules as :func:`nojs_lint.dom.is_visible`, with the
        ancestor chain memoized across calls."""
        chain: list[DomNode] = []
        current: DomNode | None = node
        verdict = True
        while current is not None:
            cached = self._visible.get(id(current))
            if cached is not None:
                verdict = cached
                break
            chain.append(current)
            current = current.parent
        for member in reversed(chain):
            if verdict and member.kind == ELEMENT and _hidden_by_own_markup(member):
                verdict = False
            self._visible[id(member)] = verdict
        return self._visible.get(id(node), verdict)

    def verdict(
        self, kind: FeatureKind, node: DomNode, broken: bool, detail: str,
        *, whole_page: bool = False,
    ) -> FeatureVerdict:
        if whole_page:
            visible = True
            in_main = True
        else:
            ref = node if node.kind == ELEMENT else (node.parent or node)
            visible = self.is_visible(ref)
            in_main = self.membership.in_main(ref) if self.membership else True
        return FeatureVerdict(
            kind=kind,
            broken=broken,
            visible=visible,
            in_main=in_main,
            node_path=self.doc.node_path(node),
            detail=detail,
        )


# -- images ----------------------------------------------------------

_PLACEHOLDER_SCHEME = "data:"


def _has_lazy_attr(node: DomNode, lazy_attrs: tuple[str, ...]) -> bool:
    attrs = node.attributes
    return any(attrs.get(name) for name in lazy_attrs)


def _real_source(node: DomNode) -> bool:
    """The node references a fetchable image: non-placeholder src or srcset."""
    src = (node.attributes.get("src") or "").strip()
    if src and not src.lower().startswith(_PLACEHOLDER_SCHEME):
        return True
    return bool((node.attributes.get("srcset") or "").strip())


def _noscript_fallback_nearby(node: DomNode) -> bool:
    """A noscript ancestor or sibling supplies an image with a real source."""
    candidates: list[DomNode] = []
    if node.parent is not None:
        candidates.extend(
            sib for sib in node.parent.children
            if sib.kind == ELEMENT and sib.tag == "noscript" and sib is not node
        )
    candidates.extend(a for a in node.ancestors() if a.kind == ELEMENT and a.tag == "noscript")
    for noscript in candidates:
        for el in noscript.iter_elements():
            if el.tag in ("img", "source") and el is not node and _real_source(el):
                return True
    return False


def detect_images(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """One verdict per image that is (or may be) large.

    Broken when the real source only exists in a lazy-loading data-*
    attribute that scripts would have copied over, unless a noscript
    fallback restores it.  Native ``loading="lazy"`` with a real source is
    fetchable without scripts (eagerly, since the browser disables lazy
    loading), so it stays working, tagged ``native_lazy_disabled``.
    Images whose declared size is known and below the large-image
    threshold are not reported at all.
    """
    cfg = cfg or AnalyzerConfig()
    ctx = _ctx or _Context(doc, labels)
    min_px = cfg.large_image_min_px
    verdicts = []
    for node in doc.elements:
        if node.tag == "picture":
            parts = [node] + [
                el for el in node.iter_elements() if el.tag in ("img", "source")
            ]
        elif node.tag == "img":
            if any(a.tag == "picture" for a in node.ancestors()):
                continue  # the enclosing picture gets the single verdict
            parts = [node]
        else:
            continue

        img_part = next((p for p in parts if p.tag == "img"), parts[0])
        geometry = approximate_geometry(img_part)
        lazy = any(_has_lazy_attr(p, cfg.lazy_attrs) for p in parts)
        src = (img_part.attributes.get("src") or "").strip()
        srcset = any((p.attributes.get("srcset") or "").strip() for p in parts)
        placeholder_geometry = geometry.width == 1 and geometry.height == 1
        src_is_placeholder = bool(src) and (
            src.lower().startswith(_PLACEHOLDER_SCHEME) or placeholder_geometry
        )

        broken = False
        detail = "ok"
        if lazy and not src and not srcset:
            broken, detail = True, "lazy_no_src"
        elif lazy and src_is_placeholder and not srcset:
            broken, detail = True, "placeholder_src"
        if broken and _noscript_fallback_nearby(node):
            broken, detail = False, "noscript_fallback"
        if not broken and detail == "ok" \
                and img_part.attributes.get("loading", "").strip().lower() == "lazy" \
                and any(_real_source(p) for p in parts):
            detail = "native_lazy_disabled"

        width, height = geometry.width, geometry.height
        if broken and placeholder_geometry:
            # A 1x1 declaration marks the placeholder, not the lazy image:
            # its real size is unknown, which counts as large.
            width = height = None
        if (width is not None and width < min_px) or \
                (height is not None and height < min_px):
            continue
        verdicts.append(ctx.verdict(FeatureKind.LARGE_IMAGE, node, broken, detail))
    return verdicts


# -- forms and controls ------------------------------------------------

_CONTROL_TAGS = frozenset({"input", "button", "select", "textarea"})

# Input types that activate rather than carry a value.
_ACTIVATION_INPUT_TYPES = frozenset({"submit", "button", "reset", "image"})

_SINGLE_LINE_TEXT_TYPES = frozenset({
    "text", "search", "url", "tel", "email", "password", "number",
    "date", "datetime-local", "month", "week", "time",
})

_INLINE_HANDLER_ATTRS = frozenset({
    "onclick", "ondblclick", "onchange", "oninput", "onsubmit", "onreset",
    "onfocus", "onblur", "onkeydown", "onkeyup", "onkeypress",
    "onmousedown", "onmouseup", "onmouseover", "onmouseout",
    "ontouchstart", "ontouchend",
})


def _input_type(node: DomNode) -> str:
    return (node.attributes.get("type") or "text").strip().lower()


def _form_owner(node: DomNode, doc: DomDocument) -> DomNode | None:
    referenced = node.attributes.get("form")
    if referenced:
        target = doc.get_by_id(referenced)
        if target is not None and target.tag == "form":
            return target
    for ancestor in node.ancestors():
        if ancestor.kind == ELEMENT and ancestor.tag == "form":
            return ancestor
    return None


def _control_ownership(doc: DomDocument) -> tuple[dict[DomNode, list[DomNode]], set[int]]:
    owned: dict[DomNode, list[DomNode]] = {}
    owned_ids: set[int] = set()
    for node in doc.elements:
        if node.tag not in _CONTROL_TAGS:
            continue
        owner = _form_owner(node, doc)
        if owner is not None:
            owned.setdefault(owner, []).append(node)
            owned_ids.add(id(node))
    return owned, owned_ids


def _is_submit_control(node: DomNode) -> bool:
    if node.tag == "button":
        type_attr = node.attributes.get("type")
        return type_attr is None or type_attr.strip().lower() in ("submit", "")
    if node.tag == "input":
        return _input_type(node) in ("submit", "image")
    return False


def _is_single_line_text(node: DomNode) -> bool:
    return node.tag == "input" and _input_type(node) in _SINGLE_LINE_TEXT_TYPES


def _carries_value(node: DomNode) -> bool:
    if node.tag in ("select", "textarea"):
        return True
    if node.tag == "input":
        return _input_type(node) not in _ACTIVATION_INPUT_TYPES
    return False


def implicit_submission_possible(controls: list[DomNode]) -> bool:
    """Enter-key submission works when the form has at most one
    single-line text control."""
    return sum(1 for c in controls if _is_single_line_text(c)) <= 1


def detect_forms(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """One verdict per form.

    Broken when a value-carrying control has no name (its value would be
    dropped), when nothing can trigger submission (no submit control and
    implicit submission blocked), or when the action is a javascript: URL.
    """
    ctx = _ctx or _Context(doc, labels)
    owned, _ = ctx.control_ownership()
    verdicts = []
    for form in doc.elements:
        if form.tag != "form":
            continue
        controls = owned.get(form, [])
        broken = False
        detail = "ok"
        if any(_carries_value(c) and not c.attributes.get("name") for c in controls):
            broken, detail = True, "unnamed_control"
        elif not any(_is_submit_control(c) for c in controls) \
                and not implicit_submission_possible(controls):
            broken, detail = True, "no_submission"
        elif (form.attributes.get("action") or "").strip().lower().startswith("javascript:"):
            broken, detail = True, "js_action"
        verdicts.append(ctx.verdict(FeatureKind.FORM, form, broken, detail))
    return verdicts


def synthesize_query(form: DomNode, doc: DomDocument) -> str:
    """Query string a scriptless GET submission of this form would send.

    Sample values stand in for user input: text controls get "test",
    checked checkables their value or "on", selects their first option.
    """
    pairs: list[tuple[str, str]] = []
    for control in _control_ownership(doc)[0].get(form, []):
        name = control.attributes.get("name")
        if not name:
            continue
        if control.tag == "button" or (
            control.tag == "input" and _input_type(control) in _ACTIVATION_INPUT_TYPES
        ):
            continue
        if control.tag == "select":
            options = [el for el in control.iter_elements() if el.tag == "option"]
            if options:
                first = options[0]
                value = first.attributes.get("value")
                if value is None:
                    value = text_content(first).strip()
            else:
                value = ""
        elif control.tag == "input" and _input_type(control) in ("checkbox", "radio"):
            value = control.attributes.get("value") or "on"
        else:
            value = control.attributes.get("value") or "test"
        pairs.append((name, value))
    return "?" + urlencode(pairs)


def detect_lone_controls(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """Form controls with no form owner.

    Without an owner there is no native behavior to fall back on, so they
    are broken, except checkboxes and radios whose state CSS can reach.
    An inline on* handler is still script, hence still broken.
    """
    ctx = _ctx or _Context(doc, labels)
    _, owned_ids = ctx.control_ownership()
    verdicts = []
    for node in doc.elements:
        if node.tag not in _CONTROL_TAGS:
            continue
        if id(node) in owned_ids:
            continue
        if node.tag == "input" and _input_type(node) in ("checkbox", "radio"):
            verdicts.append(
                ctx.verdict(FeatureKind.LONE_CONTROL, node, False, "stateful_control")
            )
            continue
        if any(a in node.attributes for a in _INLINE_HANDLER_ATTRS):
            detail = "inline_handler"
        else:
            detail = "no_form_owner"
        verdicts.append(ctx.verdict(FeatureKind.LONE_CONTROL, node, True, detail))
    return verdicts


# -- anchors -----------------------------------------------------------

_JS_NOOP_BODIES = frozenset({"", "void(0)", "void0"})


def _is_js_noop(href: str) -> bool:
    lowered = href.strip().lower()
    if not lowered.startswith("javascript:"):
        return False
    body = lowered[len("javascript:"):]
    body = "".join(body.split()).rstrip(";")
    return body in _JS_NOOP_BODIES


def detect_empty_anchor_buttons(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """Anchors used as script-driven buttons: missing, empty, ``#`` or
    no-op ``javascript:`` hrefs.

    ``#`` and ``#top`` are the standardized go-to-top idiom and count as
    working unless the config says otherwise.
    """
    cfg = cfg or AnalyzerConfig()
    ctx = _ctx or _Context(doc, labels)
    verdicts = []
    for node in doc.elements:
        if node.tag != "a":
            continue
        href = node.attributes.get("href")
        if href is None:
            if node.attributes.get("name") or node.attributes.get("id"):
                continue  # legacy named anchor destination, not a button
            verdicts.append(
                ctx.verdict(FeatureKind.EMPTY_ANCHOR_BUTTON, node, True, "no_href")
            )
            continue
        stripped = href.strip()
        if stripped == "":
            verdicts.append(
                ctx.verdict(FeatureKind.EMPTY_ANCHOR_BUTTON, node, True, "empty_href")
            )
        elif stripped in ("#", "#top"):
            if cfg.hash_go_to_top:
                verdict = ctx.verdict(
                    FeatureKind.EMPTY_ANCHOR_BUTTON, node, False, "go_to_top"
                )
            else:
                verdict = ctx.verdict(
                    FeatureKind.EMPTY_ANCHOR_BUTTON, node, True, "hash_button"
                )
            verdicts.append(verdict)
        elif _is_js_noop(stripped):
            verdicts.append(
                ctx.verdict(FeatureKind.EMPTY_ANCHOR_BUTTON, node, True, "js_noop")
            )
    return verdicts


def detect_mislinked_fragment_anchors(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """Same-page fragment anchors whose target id does not exist.

    Cross-page fragments are not resolvable statically and are skipped.
    """
    ctx = _ctx or _Context(doc, labels)
    anchor_names = {
        node.attributes["name"]
        for node in doc.elements
        if node.tag == "a" and node.attributes.get("name")
    }
    verdicts = []
    for node in doc.elements:
        if node.tag != "a":
            continue
        href = (node.attributes.get("href") or "").strip()
        if not href.startswith("#"):
            continue
        fragment = href[1:]
        if fragment in ("", "top"):
            continue
        if doc.get_by_id(fragment) is None and fragment not in anchor_names:
            verdicts.append(
                ctx.verdict(
                    FeatureKind.MISLINKED_FRAGMENT_ANCHOR, node, True,
                    "unresolved_fragment",
                )
            )
    return verdicts


# -- disclosure buttons -------------------------------------------------

_DISCLOSURE_ATTRS = (
    "aria-expanded", "aria-haspopup", "aria-controls", "data-toggle",
    "data-bs-toggle",
)


def _inside_details(node: DomNode) -> bool:
    return any(a.kind == ELEMENT and a.tag == "details" for a in node.ancestors())


def detect_disclosure_buttons(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """Dropdown/accordion-style togglers.

    Candidates are marked by ARIA attributes, framework data-* toggles,
    well-known class tokens, or being a native ``summary`` in ``details``.
    Only the native pair and the label-toggles-checkbox CSS pattern work
    without scripts; everything else needs a listener that never loaded.
    """
    cfg = cfg or AnalyzerConfig()
    ctx = _ctx or _Context(doc, labels)
    class_markers = frozenset(cfg.disclosure_classes)
    verdicts = []
    for node in doc.elements:
        attrs = node.attributes
        native_summary = node.tag == "summary" and _inside_details(node)
        marked = native_summary or (
            "aria-expanded" in attrs
            or "aria-haspopup" in attrs
            or "aria-controls" in attrs
            or "data-toggle" in attrs
            or "data-bs-toggle" in attrs
        )
        if not marked:
            class_attr = attrs.get("class")
            marked = bool(class_attr) and not class_markers.isdisjoint(
                class_attr.split()
            )
        if not marked:
            continue
        if native_summary:
            verdicts.append(
                ctx.verdict(FeatureKind.DISCLOSURE_BUTTON, node, False, "native_details")
            )
            continue
        if node.tag == "label":
            target_id = node.attributes.get("for")
            target = doc.get_by_id(target_id) if target_id else None
            if target is not None and target.tag == "input" \
                    and _input_type(target) in ("checkbox", "radio"):
                verdicts.append(
                    ctx.verdict(FeatureKind.DISCLOSURE_BUTTON, node, False, "css_toggle")
                )
                continue
        verdicts.append(
            ctx.verdict(FeatureKind.DISCLOSURE_BUTTON, node, True, "script_toggle")
        )
    return verdicts


# -- protected e-mails ---------------------------------------------------

_PROTECTED_EMAIL_TEXT = "[email protected]"


def detect_protected_emails(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """Script-decoded e-mail addresses, left as their placeholder text or
    as an encoded data-cfemail attribute."""
    ctx = _ctx or _Context(doc, labels)
    verdicts = []
    for node in doc.root.walk():
        if node.kind == TEXT:
            parent = node.parent
            if parent is not None and parent.kind == ELEMENT \
                    and parent.tag in ("script", "style"):
                continue
            if _PROTECTED_EMAIL_TEXT in node.text:
                verdicts.append(
                    ctx.verdict(FeatureKind.PROTECTED_EMAIL, node, True, "obfuscated_text")
                )
        elif node.kind == ELEMENT and "data-cfemail" in node.attributes:
            verdicts.append(
                ctx.verdict(FeatureKind.PROTECTED_EMAIL, node, True, "cfemail_attr")
            )
    return verdicts


# -- loader overlays ------------------------------------------------------


def detect_loader_overlays(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel] | None = None,
    cfg: AnalyzerConfig | None = None,
    _ctx: _Context | None = None,
) -> list[FeatureVerdict]:
    """Full-page preloader divs that only scripts would have removed.

    Only direct children of body qualify; a statically hidden overlay
    cannot obstruct anything and counts as working.
    """
    ctx = _ctx or _Context(doc, labels)
    body = doc.body
    if body is None:
        return []
    verdicts = []
    for node in body.children:
        if node.kind != ELEMENT or node.tag != "div":
            continue
        if node.attributes.get("id") == "preloader" or any(
            "preloader" in token.lower() for token in node.classes
        ):
            if ctx.is_visible(node):
                verdict = ctx.verdict(
                    FeatureKind.LOADER_OVERLAY, node, True, "overlay_blocks"
                )
            else:
                verdict = ctx.verdict(
                    FeatureKind.LOADER_OVERLAY, node, False, "hidden_overlay"
                )
            verdicts.append(verdict)
    return verdicts


# -- whole-page checks -----------------------------------------------------


def check_page_text(doc: DomDocument) -> FeatureVerdict:
    """Broken when the body has no text content other than whitespace."""
    ctx = _Context(doc, None)
    body = doc.body
    if body is None:
        return ctx.verdict(
            FeatureKind.PAGE_TEXT, doc.root, True, "no_body", whole_page=True
        )
    if text_content(body).strip() == "":
        return ctx.verdict(
            FeatureKind.PAGE_TEXT, body, True, "empty_text", whole_page=True
        )
    return ctx.verdict(FeatureKind.PAGE_TEXT, body, False, "has_text", whole_page=True)


def check_stylesheets(doc: DomDocument) -> FeatureVerdict:
    """Broken when neither a stylesheet link nor an inline style exists."""
    ctx = _Context(doc, None)
    node = doc.body or doc.root
    for el in doc.elements:
        if el.tag == "link":
            rel_tokens = (el.attributes.get("rel") or "").lower().split()
            if "stylesheet" in rel_tokens and (el.attributes.get("href") or "").strip():
                return ctx.verdict(
                    FeatureKind.STYLESHEETS_LOADED, node, False,
                    "stylesheet_present", whole_page=True,
                )
        elif el.tag == "style":
            if text_content_raw(el).strip():
                return ctx.verdict(
                    FeatureKind.STYLESHEETS_LOADED, node, False,
                    "stylesheet_present", whole_page=True,
                )
    return ctx.verdict(
        FeatureKind.STYLESHEETS_LOADED, node, True, "no_styles", whole_page=True
    )


def text_content_raw(node: DomNode) -> str:
    """Text of a raw-text element (script/style), which ``text_content``
    deliberately skips."""
    return "".join(c.text for c in node.children if c.kind == TEXT)


# -- one-call front door ----------------------------------------------------


def run_detectors(
    doc: DomDocument,
    labels: dict[DomNode, SectionLabel],
    cfg: AnalyzerConfig | None = None,
) -> dict[FeatureKind, list[FeatureVerdict]]:
    """All detectors over one document, in a fixed feature order."""
    cfg = cfg or AnalyzerConfig()
    ctx = _Context(doc, labels)
    return {
        FeatureKind.LARGE_IMAGE: detect_images(doc, labels, cfg, ctx),
        FeatureKind.FORM: detect_forms(doc, labels, cfg, ctx),
        FeatureKind.LONE_CONTROL: detect_lone_controls(doc, labels, cfg, ctx),
        FeatureKind.EMPTY_ANCHOR_BUTTON: detect_empty_anchor_buttons(
            doc, labels, cfg, ctx
        ),
        FeatureKind.MISLINKED_FRAGMENT_ANCHOR: detect_mislinked_fragment_anchors(
            doc, labels, cfg, ctx
        ),
        FeatureKind.DISCLOSURE_BUTTON: detect_disclosure_buttons(doc, labels, cfg, ctx),
        FeatureKind.PROTECTED_EMAIL: detect_protected_emails(doc, labels, cfg, ctx),
        FeatureKind.LOADER_OVERLAY: detect_loader_overlays(doc, labels, cfg, ctx),
        FeatureKind.PAGE_TEXT: [check_page_text(doc)],
        FeatureKind.STYLESHEETS_LOADED: [check_stylesheets(doc)],
    }
