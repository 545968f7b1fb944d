"""JavaScript-reliance classes for standard HTML elements.

Classes:

* ``r0`` — works without JavaScript, and very unlikely to need it in the wild
* ``r1`` — standard-compliant without JavaScript, sometimes scripted for extras
* ``r1_nonsemantic`` — works without JavaScript but often misused as a
  script-driven button (div/a/span); also the fallback for unknown tags
* ``r2`` — requires JavaScript in some use cases
* ``r2_outside_form`` — often requires JavaScript when used outside a form
* ``r3`` — always requires JavaScript
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class JsRelianceClass(enum.Enum):
    R0 = "r0"
    R1 = "r1"
    R1_NONSEMANTIC = "r1_nonsemantic"
    R2 = "r2"
    R2_OUTSIDE_FORM = "r2_outside_form"
    R3 = "r3"


@dataclass(frozen=True)
class RelianceContext:
    in_form: bool = False


_R1_TAGS = frozenset({"link", "audio", "img", "video", "source", "svg"})
_R1_NONSEMANTIC_TAGS = frozenset({"div", "a", "span"})
_R2_TAGS = frozenset({"script", "form"})
_R2_OUTSIDE_FORM_TAGS = frozenset({
    "button", "datalist", "input", "meter", "optgroup", "option",
    "progress", "select", "textarea",
})
_R3_TAGS = frozenset({"canvas"})

_R0_TAGS = frozenset({
    # main root / metadata / sectioning
    "html", "base", "head", "meta", "style", "title", "body",
    "address", "article", "aside", "footer", "header",
    "h1", "h2", "h3", "h4", "h5", "h6", "main", "nav", "section",
    # text content
    "blockquote", "dd", "dl", "dt", "figcaption", "figure", "hr",
    "li", "ol", "p", "pre", "ul",
    # table content
    "caption", "col", "colgroup", "table", "tbody", "td", "tfoot",
    "th", "thead", "tr",
    # edits and inline semantics
    "del", "ins", "abbr", "b", "bdi", "bdo", "br", "cite", "code",
    "data", "dfn", "em", "i", "kbd", "mark", "q", "rp", "rt", "ruby",
    "s", "samp", "small", "strong", "sub", "sup", "time", "u", "var",
    "wbr",
    # media, embedded content, math, scripting-adjacent
    "area", "map", "track", "embed", "iframe", "object", "param",
    "picture", "portal", "math", "noscript",
    # forms (the structural, script-free ones)
    "fieldset", "label", "legend",
})

KNOWN_TAGS = (
    _R0_TAGS | _R1_TAGS | _R1_NONSEMANTIC_TAGS | _R2_TAGS
    | _R2_OUTSIDE_FORM_TAGS | _R3_TAGS
)


def element_js_reliance(
    tag: str, context: RelianceContext | None = None
) -> JsRelianceClass:
    """Reliance class for a lowercase tag name; total over all strings.

    Form controls are only risky outside a form: inside one they submit
    natively, so they get the r0 treatment there.  Unknown tags are
    treated like non-semantic containers.
    """
    context = context or RelianceContext()
    if tag in _R0_TAGS:
        return JsRelianceClass.R0
    if tag in _R1_TAGS:
        return JsRelianceClass.R1
    if tag in _R1_NONSEMANTIC_TAGS:
        return JsRelianceClass.R1_NONSEMANTIC
    if tag in _R2_TAGS:
        return JsRelianceClass.R2
    if tag in _R2_OUTSIDE_FORM_TAGS:
        if context.in_form:
            return JsRelianceClass.R0
        return JsRelianceClass.R2_OUTSIDE_FORM
    if tag in _R3_TAGS:
        return JsRelianceClass.R3
    return JsRelianceClass.R1_NONSEMANTIC
