"""DOM tree model and forgiving HTML parsing.

The parser applies a pragmatic subset of the HTML5 recovery rules: void
elements never nest, implied end tags close ``p``/``li``/table rows and
friends, a missing ``html``/``head``/``body`` skeleton is synthesized,
stray end tags are dropped, and everything left open at EOF is closed.
``noscript`` content is parsed as regular markup, which is what a browser
does when scripting is off.  No cascade, layout or scripting is ever
evaluated: visibility and geometry are approximations over attributes and
inline styles only.

Documents are treated as immutable once parsed; all query helpers are
read-only and safe to share across threads.
"""

from __future__ import annotations

import re
import string
from html import unescape
from typing import Iterator

from .errors import DecodeError

ELEMENT = "element"
TEXT = "text"
COMMENT = "comment"
DOCUMENT = "document"

VOID_ELEMENTS = frozenset({
    "area", "base", "basefont", "bgsound", "br", "col", "embed", "frame",
    "hr", "img", "input", "keygen", "link", "meta", "param", "source",
    "track", "wbr",
})

# Raw-text elements: children are a single text node, serialized unescaped.
RAW_TEXT_ELEMENTS = frozenset({"script", "style"})

# Elements whose presence before <body> belongs in <head>.
_HEAD_CONTENT = frozenset({
    "base", "basefont", "bgsound", "link", "meta", "noframes", "script",
    "style", "template", "title",
})

# Tags that always take the slow skeleton-handling path.
_STRUCTURE_TAGS = frozenset({"html", "head", "body"})

# Start tags that close an open <p>.
_P_CLOSERS = frozenset({
    "address", "article", "aside", "blockquote", "details", "dialog", "dir",
    "div", "dl", "fieldset", "figcaption", "figure", "footer", "form",
    "h1", "h2", "h3", "h4", "h5", "h6", "header", "hgroup", "hr", "main",
    "menu", "nav", "ol", "p", "pre", "section", "table", "ul",
})

# While the innermost open element is KEY, a start tag in VALUE closes it.
_CLOSED_BY: dict[str, frozenset[str]] = {
    "p": _P_CLOSERS,
    "li": frozenset({"li"}),
    "dt": frozenset({"dt", "dd"}),
    "dd": frozenset({"dt", "dd"}),
    "option": frozenset({"option", "optgroup"}),
    "optgroup": frozenset({"optgroup"}),
    "rt": frozenset({"rt", "rp"}),
    "rp": frozenset({"rt", "rp"}),
    "tr": frozenset({"tr", "tbody", "tfoot", "thead"}),
    "td": frozenset({"td", "th", "tr", "tbody", "tfoot", "thead"}),
    "th": frozenset({"td", "th", "tr", "tbody", "tfoot", "thead"}),
    "thead": frozenset({"tbody", "tfoot"}),
    "tbody": frozenset({"tbody", "tfoot"}),
    "caption": frozenset({"tbody", "tfoot", "thead", "tr", "td", "th", "colgroup"}),
}


class DomNode:
    """One node of the parsed tree.

    ``kind`` is one of ``element``, ``text``, ``comment`` or ``document``.
    Elements carry a lowercase ``tag`` and an insertion-ordered attribute
    map (first occurrence of a duplicated attribute wins, bare attributes
    map to the empty string).  Text and comment nodes carry ``text``.
    """

    __slots__ = ("kind", "tag", "attributes", "children", "parent", "text", "_index")

    def __init__(self, kind: str, tag: str = "", text: str = ""):
        self.kind = kind
        self.tag = tag
        self.attributes: dict[str, str] = {}
        self.children: list[DomNode] = []
        self.parent: DomNode | None = None
        self.text = text
        self._index = 0

    def __repr__(self) -> str:
        if self.kind == ELEMENT:
            return f"<DomNode {self.tag} {self.attributes!r}>"
        return f"<DomNode {self.kind} {self.text[:20]!r}>"

    def append(self, child: DomNode) -> DomNode:
        child.parent = self
        child._index = len(self.children)
        self.children.append(child)
        return child

    def get(self, name: str, default: str | None = None) -> str | None:
        return self.attributes.get(name, default)

    def has(self, name: str) -> bool:
        return name in self.attributes

    @property
    def classes(self) -> tuple[str, ...]:
        """Whitespace-split tokens of the ``class`` attribute."""
        value = self.attributes.get("class")
        return tuple(value.split()) if value else ()

    def walk(self) -> Iterator[DomNode]:
        """Pre-order traversal of this node and all descendants."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def iter_elements(self) -> Iterator[DomNode]:
        for node in self.walk():
            if node.kind == ELEMENT:
                yield node

    def ancestors(self) -> Iterator[DomNode]:
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def ancestor_or_self(self) -> Iterator[DomNode]:
        yield self
        yield from self.ancestors()

    def child_elements(self) -> list[DomNode]:
        return [c for c in self.children if c.kind == ELEMENT]


class DomDocument:
    """An immutable parsed document with precomputed lookups."""

    def __init__(self, root: DomNode, elements: list[DomNode] | None = None):
        self.root = root
        if elements is None:
            elements = [n for n in root.walk() if n.kind == ELEMENT]
        self.elements = elements
        self.ids: dict[str, DomNode] = {}
        self.html: DomNode | None = None
        self.head: DomNode | None = None
        self.body: DomNode | None = None
        ids = self.ids
        for node in elements:
            node_id = node.attributes.get("id")
            if node_id is not None and node_id not in ids:
                # Duplicate ids resolve to the first element in document order.
                ids[node_id] = node
            tag = node.tag
            if tag == "html":
                if self.html is None:
                    self.html = node
            elif tag == "head":
                if self.head is None:
                    self.head = node
            elif tag == "body":
                if self.body is None:
                    self.body = node

    def get_by_id(self, value: str) -> DomNode | None:
        return self.ids.get(value)

    def node_path(self, node: DomNode) -> str:
        """Root-to-node child-index path, e.g. ``/0/1/0``."""
        indexes: list[int] = []
        current: DomNode | None = node
        while current is not None and current is not self.root:
            indexes.append(current._index)
            current = current.parent
        return "/" + "/".join(str(i) for i in reversed(indexes))

    def resolve_path(self, path: str) -> DomNode | None:
        node = self.root
        for part in path.strip("/").split("/"):
            if not part:
                continue
            try:
                node = node.children[int(part)]
            except (IndexError, ValueError):
                return None
        return node

    def to_html(self) -> str:
        return serialize(self.root)


_CHARSET_META_RE = re.compile(
    rb"""<meta[^>]+charset\s*=\s*["']?\s*([a-zA-Z0-9_+.:!-]+)""", re.IGNORECASE
)


def _decode(data: bytes) -> str:
    if data.startswith(b"\xef\xbb\xbf"):
        data = data[3:]
    elif data.startswith(b"\xff\xfe") or data.startswith(b"\xfe\xff"):
        try:
            return data.decode("utf-16")
        except UnicodeDecodeError as exc:
            raise DecodeError(f"undecodable byte stream: {exc}") from exc
    match = _CHARSET_META_RE.search(data[:2048])
    if match:
        charset = match.group(1).decode("ascii", errors="replace").strip().lower()
        if charset not in ("utf-8", "utf8"):
            try:
                return data.decode(charset)
            except (LookupError, UnicodeDecodeError):
                pass  # fall through to the UTF-8 attempt
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(f"undecodable byte stream: {exc}") from exc


_ASCII_LOWER = str.maketrans(string.ascii_uppercase, string.ascii_lowercase)

_TAG_NAME_RE = re.compile(r"[a-zA-Z][^\s/>]*")
_START_TAG_RE = re.compile(
    r"<([a-zA-Z][^\s/>]*)"
    r"((?:[\s/]+[^\s/>=]+(?:\s*=\s*(?:\"[^\"]*\"|'[^']*'|[^\s>]*))?)*)"
    r"\s*(/?)\s*>",
    re.DOTALL,
)
_END_TAG_RE = re.compile(r"</\s*([a-zA-Z][^\s>]*)\s*[^>]*>")
_ATTR_RE = re.compile(
    r"([^\s/>=]+)(?:\s*=\s*(\"[^\"]*\"|'[^']*'|[^\s>]*))?",
    re.DOTALL,
)


def _parse_attrs(raw: str) -> dict[str, str]:
    amap: dict[str, str] = {}
    for name, value in _ATTR_RE.findall(raw):
        if not name.islower():
            name = name.translate(_ASCII_LOWER)
        if name in amap:
            continue  # first occurrence of a duplicated attribute wins
        if value[:1] in ("'", '"'):
            value = value[1:-1]
        amap[name] = unescape(value) if "&" in value else value
    return amap


class _TreeBuilder:
    def __init__(self) -> None:
        self.root = DomNode(DOCUMENT)
        self.html_el: DomNode | None = None
        self.head_el: DomNode | None = None
        self.body_el: DomNode | None = None
        self.stack: list[DomNode] = [self.root]
        # Elements in creation order; the builder only ever appends at the
        # deepest open position, so this equals pre-order document order.
        self.elements: list[DomNode] = []

    def _new_element(self, tag: str) -> DomNode:
        node = DomNode(ELEMENT, tag)
        self.elements.append(node)
        return node

    # -- skeleton -----------------------------------------------------

    def _ensure_html(self, attrs: dict[str, str] | None = None) -> DomNode:
        if self.html_el is None:
            self.html_el = self.root.append(self._new_element("html"))
        if attrs:
            for name, value in attrs.items():
                self.html_el.attributes.setdefault(name, value)
        return self.html_el

    def _ensure_head(self) -> DomNode:
        if self.head_el is None:
            self.head_el = self._ensure_html().append(self._new_element("head"))
        return self.head_el

    def _ensure_body(self, attrs: dict[str, str] | None = None) -> DomNode:
        if self.body_el is None:
            self._ensure_head()
            self.body_el = self._ensure_html().append(self._new_element("body"))
            self.stack = [self.root, self.html_el, self.body_el]
        if attrs:
            for name, value in attrs.items():
                self.body_el.attributes.setdefault(name, value)
        return self.body_el

    def _in_body(self) -> bool:
        return self.body_el is not None

    def _top(self) -> DomNode:
        return self.stack[-1]

    # -- tokenizer callbacks ------------------------------------------

    def handle_starttag(self, tag: str, amap: dict[str, str]) -> None:
        stack = self.stack
        if self.body_el is not None and tag not in _STRUCTURE_TAGS:
            # hot path: in body, plain element
            top = stack[-1]
            closers = _CLOSED_BY.get(top.tag)
            while closers is not None and tag in closers and top is not self.body_el:
                stack.pop()
                top = stack[-1]
                closers = _CLOSED_BY.get(top.tag)
            node = DomNode(ELEMENT, tag)
            node.attributes = amap
            node.parent = top
            node._index = len(top.children)
            top.children.append(node)
            self.elements.append(node)
            if tag not in VOID_ELEMENTS:
                stack.append(node)
            return
        self._slow_starttag(tag, amap)

    def _slow_starttag(self, tag: str, amap: dict[str, str]) -> None:
        if tag == "html":
            self._ensure_html(amap)
            return
        if tag == "head":
            self._ensure_head()
            if not self._in_body():
                self.stack = [self.root, self.html_el, self.head_el]
            return
        if tag == "body":
            self._ensure_body(amap)
            return

        if not self._in_body():
            if tag in _HEAD_CONTENT:
                head = self._ensure_head()
                if self._top() is not head and self._top().kind == ELEMENT \
                        and self._top().tag in _HEAD_CONTENT:
                    self.stack.pop()
                node = head.append(self._new_element(tag))
                node.attributes = amap
                if tag not in VOID_ELEMENTS:
                    self.stack.append(node)
                return
            self._ensure_body()

        while True:
            top = self._top()
            if top.kind != ELEMENT or top is self.body_el:
                break
            closers = _CLOSED_BY.get(top.tag)
            if closers is None or tag not in closers:
                break
            self.stack.pop()

        node = self._top().append(self._new_element(tag))
        node.attributes = amap
        if tag not in VOID_ELEMENTS:
            self.stack.append(node)

    def handle_startendtag(self, tag: str, amap: dict[str, str]) -> None:
        # XML-style self-close: correct for void elements and SVG islands,
        # and the least surprising recovery for stray `<div/>`.
        self.handle_starttag(tag, amap)
        if tag not in VOID_ELEMENTS and self._top().tag == tag:
            self.stack.pop()

    def handle_endtag(self, tag: str) -> None:
        if tag in ("html", "body"):
            return
        if tag == "head":
            if not self._in_body() and self.head_el is not None:
                self.stack = [self.root, self.html_el]
            return
        if tag in VOID_ELEMENTS:
            return
        for depth in range(len(self.stack) - 1, -1, -1):
            node = self.stack[depth]
            if node.kind == ELEMENT and node.tag == tag:
                if node in (self.body_el, self.html_el):
                    return
                del self.stack[depth:]
                return
        # No matching open element: drop the stray end tag.

    def handle_data(self, data: str) -> None:
        if not data:
            return
        if not self._in_body():
            top = self._top()
            if top is not self.root and top is not self.html_el \
                    and top is not self.head_el:
                self._append_text(top, data)
                return
            if data.strip() == "":
                return
            self._ensure_body()
        self._append_text(self._top(), data)

    def _append_text(self, parent: DomNode, data: str) -> None:
        if parent.children and parent.children[-1].kind == TEXT:
            parent.children[-1].text += data
        else:
            parent.append(DomNode(TEXT, text=data))

    def handle_comment(self, data: str) -> None:
        target = self._top()
        if target is self.root and self.html_el is not None:
            target = self.html_el
        target.append(DomNode(COMMENT, text=data))

    def finish(self) -> DomDocument:
        self._ensure_body()
        return DomDocument(self.root, self.elements)


_RAW_END_RES = {
    tag: re.compile("</" + tag + r"(?=[\s/>]|$)", re.IGNORECASE)
    for tag in RAW_TEXT_ELEMENTS
}


def _find_raw_end(text: str, start: int, tag: str) -> int:
    """Index of the real ``</tag`` closing a raw-text element, or -1."""
    match = _RAW_END_RES[tag].search(text, start)
    return match.start() if match else -1


def _tokenize(text: str, builder: _TreeBuilder) -> None:
    length = len(text)
    pos = 0
    find = text.find
    start_match = _START_TAG_RE.match
    handle_data = builder.handle_data
    handle_starttag = builder.handle_starttag
    # Markup repeats heavily within a page; memoize attr-string parses.
    attr_cache: dict[str, dict[str, str]] = {}
    while pos < length:
        lt = find("<", pos)
        if lt < 0:
            handle_data(_decode_entities(text[pos:]))
            break
        if lt > pos:
            handle_data(_decode_entities(text[pos:lt]))
        nxt = text[lt + 1: lt + 2]
        if nxt == "!":
            if text.startswith("<!--", lt):
                end = text.find("-->", lt + 4)
                if end < 0:
                    builder.handle_comment(text[lt + 4:])
                    break
                builder.handle_comment(text[lt + 4: end])
                pos = end + 3
                continue
            end = text.find(">", lt)  # doctype or bogus declaration: skip
            pos = length if end < 0 else end + 1
            continue
        if nxt == "?":
            end = text.find(">", lt)
            pos = length if end < 0 else end + 1
            continue
        if nxt == "/":
            match = _END_TAG_RE.match(text, lt)
            if match:
                tag = match.group(1)
                if not tag.islower():
                    tag = tag.translate(_ASCII_LOWER)
                builder.handle_endtag(tag)
                pos = match.end()
                continue
            end = text.find(">", lt)  # malformed end tag: drop it
            pos = length if end < 0 else end + 1
            continue
        match = start_match(text, lt)
        if match:
            tag, raw_attrs, selfclose = match.group(1, 2, 3)
            if not tag.islower():
                tag = tag.translate(_ASCII_LOWER)
            if raw_attrs:
                amap = attr_cache.get(raw_attrs)
                if amap is None:
                    amap = _parse_attrs(raw_attrs)
                    attr_cache[raw_attrs] = amap
                amap = amap.copy()
            else:
                amap = {}
            if selfclose:
                builder.handle_startendtag(tag, amap)
            else:
                handle_starttag(tag, amap)
            pos = match.end()
            if not selfclose and tag in RAW_TEXT_ELEMENTS:
                end = _find_raw_end(text, pos, tag)
                if end < 0:
                    handle_data(text[pos:])
                    builder.handle_endtag(tag)
                    break
                handle_data(text[pos:end])
                builder.handle_endtag(tag)
                gt = find(">", end)
                pos = length if gt < 0 else gt + 1
            continue
        if _TAG_NAME_RE.match(text, lt + 1):
            # Tag-like but unterminated or mangled: salvage name and attrs
            # up to the next ">", or drop the tail at EOF.
            end = text.find(">", lt)
            if end < 0:
                break
            name_match = _TAG_NAME_RE.match(text, lt + 1)
            tag = name_match.group(0).translate(_ASCII_LOWER)
            raw_attrs = text[name_match.end(): end].rstrip("/")
            builder.handle_starttag(tag, _parse_attrs(raw_attrs))
            pos = end + 1
            continue
        builder.handle_data("<")
        pos = lt + 1


def _decode_entities(data: str) -> str:
    return unescape(data) if "&" in data else data


def parse_document(data: bytes | str) -> DomDocument:
    """Parse an HTML byte stream (or string) into a :class:`DomDocument`.

    Malformed markup is recovered from, never fatal.  Raises
    :class:`DecodeError` only when the byte stream cannot be decoded as
    UTF-8 or its declared charset.
    """
    text = _decode(data) if isinstance(data, bytes) else data
    builder = _TreeBuilder()
    _tokenize(text, builder)
    return builder.finish()


# -- text ------------------------------------------------------------


def text_content(node: DomNode) -> str:
    """Concatenated descendant text, skipping ``script``/``style`` subtrees."""
    parts: list[str] = []
    stack = [node]
    while stack:
        current = stack.pop()
        if current.kind == TEXT:
            parts.append(current.text)
            continue
        if current.kind == ELEMENT and current.tag in RAW_TEXT_ELEMENTS:
            continue
        stack.extend(reversed(current.children))
    return "".join(parts)


# -- inline styles, visibility, geometry ------------------------------


def parse_inline_style(value: str) -> dict[str, str]:
    """Split a ``style`` attribute into a {property: value} map.

    Tolerates empty declarations and missing colons; property names are
    lowercased, values are stripped but kept verbatim otherwise.
    """
    declarations: dict[str, str] = {}
    for chunk in value.split(";"):
        name, sep, val = chunk.partition(":")
        if not sep:
            continue
        name = name.strip().lower()
        if name:
            declarations[name] = val.strip()
    return declarations


def _hidden_by_own_markup(node: DomNode) -> bool:
    attrs = node.attributes
    if "hidden" in attrs:
        return True
    if attrs.get("aria-hidden", "").strip().lower() == "true":
        return True
    if attrs.get("type", "").strip().lower() == "hidden":
        return True
    style = attrs.get("style")
    if style and (":" in style):
        declarations = parse_inline_style(style)
        if declarations.get("display", "").lower() == "none":
            return True
        if declarations.get("visibility", "").lower() == "hidden":
            return True
    return False


def is_visible(node: DomNode) -> bool:
    """Static visibility approximation.

    False iff the node or an ancestor is hidden by its own markup: the
    ``hidden`` attribute, ``aria-hidden="true"``, ``type="hidden"``, or an
    inline style declaring ``display:none``/``visibility:hidden``.
    External stylesheets are never consulted.
    """
    for current in node.ancestor_or_self():
        if current.kind == ELEMENT and _hidden_by_own_markup(current):
            return False
    return True


_PX_VALUE_RE = re.compile(r"^\s*(\d+)(?:\.\d+)?\s*(?:px)?\s*$", re.IGNORECASE)


def parse_px(value: str | None) -> int | None:
    """Parse a dimension attribute or ``px`` style value; None when unknown."""
    if value is None:
        return None
    match = _PX_VALUE_RE.match(value)
    return int(match.group(1)) if match else None


class Geometry:
    """Declared size of an element in pixels; None means unknown."""

    __slots__ = ("width", "height")

    def __init__(self, width: int | None = None, height: int | None = None):
        self.width = width
        self.height = height

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Geometry)
            and self.width == other.width
            and self.height == other.height
        )

    def __repr__(self) -> str:
        return f"Geometry({self.width}, {self.height})"


def approximate_geometry(node: DomNode) -> Geometry:
    """Size from ``width``/``height`` attributes or inline-style px values."""
    width = parse_px(node.attributes.get("width"))
    height = parse_px(node.attributes.get("height"))
    style = node.attributes.get("style")
    if style and (width is None or height is None):
        declarations = parse_inline_style(style)
        if width is None:
            width = parse_px(declarations.get("width"))
        if height is None:
            height = parse_px(declarations.get("height"))
    return Geometry(width, height)


# -- serialization ----------------------------------------------------


def _escape_text(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return value.replace("&", "&amp;").replace('"', "&quot;").replace("<", "&lt;")


def serialize(node: DomNode) -> str:
    """Serialize a subtree back to HTML.

    Round-trip stable with :func:`parse_document` for tag names, attribute
    sets and text content; whitespace placement is not normalized.
    """
    parts: list[str] = []
    _serialize_into(node, parts)
    return "".join(parts)


def _serialize_into(node: DomNode, parts: list[str]) -> None:
    if node.kind == DOCUMENT:
        for child in node.children:
            _serialize_into(child, parts)
        return
    if node.kind == TEXT:
        parent = node.parent
        if parent is not None and parent.kind == ELEMENT and parent.tag in RAW_TEXT_ELEMENTS:
            parts.append(node.text)
        else:
            parts.append(_escape_text(node.text))
        return
    if node.kind == COMMENT:
        parts.append(f"<!--{node.text}-->")
        return
    parts.append(f"<{node.tag}")
    for name, value in node.attributes.items():
        parts.append(f' {name}="{_escape_attr(value)}"')
    parts.append(">")
    if node.tag in VOID_ELEMENTS:
        return
    for child in node.children:
        _serialize_into(child, parts)
    parts.append(f"</{node.tag}>")


def tree_signature(node: DomNode) -> object:
    """Structure of a subtree as nested tuples (tags, attrs, merged text).

    Adjacent text nodes are merged so signatures are insensitive to text
    chunking; used by the parse/serialize round-trip checks.
    """
    if node.kind == TEXT:
        return ("#text", node.text)
    if node.kind == COMMENT:
        return ("#comment", node.text)
    children: list[object] = []
    for child in node.children:
        sig = tree_signature(child)
        if (
            children
            and isinstance(sig, tuple)
            and sig[0] == "#text"
            and isinstance(children[-1], tuple)
            and children[-1][0] == "#text"
        ):
            children[-1] = ("#text", children[-1][1] + sig[1])
        else:
            children.append(sig)
    name = node.tag if node.kind == ELEMENT else "#document"
    return (name, tuple(sorted(node.attributes.items())), tuple(children))
