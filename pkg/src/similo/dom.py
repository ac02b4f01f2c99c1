"""Lenient HTML parsing into an immutable element tree.

The parser recovers from the usual real-world damage (unclosed ``li``/``p``,
stray end tags, missing ``html``/``head``/``body`` wrappers) the way a
browser would, so that element paths computed here agree with paths computed
inside a browser on the same markup. Trees are never mutated after parsing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html import escape
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable, Mapping, Optional

VOID_TAGS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

# Text inside these never reaches the visible-text model.
NON_TEXT_TAGS = frozenset({"script", "style", "template", "noscript"})

HEAD_TAGS = frozenset({"title", "meta", "link", "base", "style", "script"})

# An opening tag (key) implicitly closes these tags when they sit on top of
# the open stack.
CLOSE_BEFORE = {
    "li": {"li"},
    "dt": {"dt", "dd"},
    "dd": {"dt", "dd"},
    "option": {"option"},
    "optgroup": {"option", "optgroup"},
    "tr": {"tr", "td", "th"},
    "td": {"td", "th"},
    "th": {"td", "th"},
    "thead": {"tr", "td", "th", "thead", "tbody", "tfoot"},
    "tbody": {"tr", "td", "th", "thead", "tbody", "tfoot"},
    "tfoot": {"tr", "td", "th", "thead", "tbody", "tfoot"},
}

_P_CLOSERS = frozenset(
    "address article aside blockquote div dl fieldset footer form h1 h2 h3 h4 h5 h6 "
    "header hr main nav ol p pre section table ul".split()
)

DEFAULT_CANDIDATE_TAGS = frozenset(
    "input button select a h1 h2 h3 h4 h5 li span p th tr td label svg".split()
)

CONTAINER_TAGS = frozenset({"div", "frame", "iframe"})


class Node:
    """One element node. Identity is node identity; trees are immutable."""

    __slots__ = ("tag", "attrs", "parent", "children", "index", "_chunks", "_subtree_cache")

    def __init__(self, tag: str, attrs: dict[str, str]):
        self.tag = tag
        self.attrs = attrs
        self.parent: Optional[Node] = None
        self.children: list[Node] = []
        self.index = -1
        self._chunks: list[tuple[int, str]] = []
        self._subtree_cache: Optional[str] = None

    def attr(self, name: str) -> str:
        """Attribute value by case-insensitive name, '' when absent."""
        return self.attrs.get(name.lower(), "")

    @property
    def text(self) -> str:
        """Whitespace-collapsed concatenation of the node's direct text."""
        return _collapse("".join(chunk for _, chunk in self._chunks))

    @property
    def subtree_text(self) -> str:
        """Whitespace-collapsed text of the whole subtree, in document order."""
        if self._subtree_cache is None:
            self._subtree_cache = _collapse(self._raw_text())
        return self._subtree_cache

    def _raw_text(self) -> str:
        parts: list[str] = []
        chunk_at = 0
        chunks = self._chunks
        for slot in range(len(self.children) + 1):
            while chunk_at < len(chunks) and chunks[chunk_at][0] == slot:
                parts.append(chunks[chunk_at][1])
                chunk_at += 1
            if slot < len(self.children):
                parts.append(self.children[slot]._raw_text())
        return "".join(parts)

    def __repr__(self) -> str:
        return f"<Node {self.tag} #{self.index}>"


# Public alias: an ElementRef is simply a node handle within its tree.
ElementRef = Node


class DomTree:
    """Immutable parsed document: a root node plus pre-order node listing."""

    __slots__ = ("root", "nodes", "_by_tag", "_by_id")

    def __init__(self, root: Node):
        self.root = root
        nodes: list[Node] = []
        by_tag: dict[str, list[Node]] = {}
        by_id: dict[str, Node] = {}
        stack = [root]
        while stack:
            node = stack.pop()
            node.index = len(nodes)
            nodes.append(node)
            by_tag.setdefault(node.tag, []).append(node)
            node_id = node.attrs.get("id", "")
            if node_id and node_id not in by_id:
                by_id[node_id] = node
            stack.extend(reversed(node.children))
        self.nodes = tuple(nodes)
        self._by_tag = by_tag
        self._by_id = by_id

    def by_tag(self, tag: str) -> list[Node]:
        return self._by_tag.get(tag.lower(), [])

    def by_id(self, value: str) -> Optional[Node]:
        """First element in document order whose id equals ``value``."""
        return self._by_id.get(value)

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class Geometry:
    """Document-coordinate bounding box (CSS pixels)."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self):
        if self.width < 0 or self.height < 0:
            raise ValueError("geometry width/height must be >= 0")

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def shape(self) -> Optional[float]:
        # Width-to-height ratio; undefined for zero-height boxes.
        if self.height == 0:
            return None
        return self.width / self.height


@dataclass(frozen=True)
class CandidatePolicy:
    """Which tags count as candidate web elements."""

    tags: frozenset = field(default_factory=lambda: DEFAULT_CANDIDATE_TAGS)
    include_containers: bool = False

    def __post_init__(self):
        if not self.tags:
            raise ValueError("candidate tag set must be non-empty")
        object.__setattr__(self, "tags", frozenset(t.lower() for t in self.tags))

    def allows(self, tag: str) -> bool:
        tag = tag.lower()
        if tag in self.tags:
            return True
        return self.include_containers and tag in CONTAINER_TAGS


DEFAULT_POLICY = CandidatePolicy()


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root: Optional[Node] = None
        self.head: Optional[Node] = None
        self.body: Optional[Node] = None
        self.stack: list[Node] = []

    # -- structure synthesis ------------------------------------------------

    def _ensure_html(self, attrs: Optional[dict[str, str]] = None) -> Node:
        if self.root is None:
            self.root = Node("html", attrs or {})
            self.stack = [self.root]
        return self.root

    def _ensure_head(self) -> Node:
        root = self._ensure_html()
        if self.head is None:
            self.head = Node("head", {})
            self.head.parent = root
            root.children.append(self.head)
        return self.head

    def _ensure_body(self) -> Node:
        root = self._ensure_html()
        while self.head is not None and self.stack and self.stack[-1] is self.head:
            self.stack.pop()
        if self.body is None:
            self.body = Node("body", {})
            self.body.parent = root
            root.children.append(self.body)
            self.stack.append(self.body)
        return self.body

    def _insertion_parent(self, tag: str) -> Node:
        top = self.stack[-1] if self.stack else self._ensure_html()
        if top.tag == "html":
            # Metadata goes to head until body content starts.
            if tag in HEAD_TAGS and self.body is None:
                return self._ensure_head()
            if tag == "head":
                return top
            self._ensure_body()
            return self.stack[-1]
        return top

    # -- parser callbacks ---------------------------------------------------

    def handle_starttag(self, tag, attrs):
        attr_map: dict[str, str] = {}
        for name, value in attrs:
            attr_map.setdefault(name.lower(), value if value is not None else "")

        if tag == "html":
            if self.root is None:
                self._ensure_html(attr_map)
            return
        if tag == "head":
            self._ensure_html()
            if self.head is None:
                self._ensure_head()
            if self.body is None and self.head is not None and self.head not in self.stack:
                self.stack.append(self.head)
            return
        if tag == "body":
            self._ensure_body()
            return

        # Non-metadata content while head is still open moves us into body.
        if (
            self.head is not None
            and self.stack
            and self.stack[-1] is self.head
            and tag not in HEAD_TAGS
        ):
            self._ensure_body()

        closes = CLOSE_BEFORE.get(tag, ())
        while len(self.stack) > 1 and self.stack[-1].tag in closes:
            self.stack.pop()
        if tag in _P_CLOSERS and len(self.stack) > 1 and self.stack[-1].tag == "p":
            self.stack.pop()

        parent = self._insertion_parent(tag)
        node = Node(tag, attr_map)
        node.parent = parent
        parent.children.append(node)
        if tag not in VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        if tag in VOID_TAGS:
            self.handle_starttag(tag, attrs)
            return
        self.handle_starttag(tag, attrs)
        self.handle_endtag(tag)

    def handle_endtag(self, tag):
        if tag in VOID_TAGS or tag in ("html", "body"):
            return
        if tag == "head":
            if self.head is not None and self.head in self.stack:
                while self.stack and self.stack[-1] is not self.head:
                    self.stack.pop()
                self.stack.pop()
            return
        for depth in range(len(self.stack) - 1, 0, -1):
            if self.stack[depth].tag == tag:
                del self.stack[depth:]
                return
        # Unmatched end tag: ignored (recovery).

    def handle_data(self, data):
        if not self.stack:
            if not data.strip():
                return
            self._ensure_html()
        top = self.stack[-1]
        if top.tag in NON_TEXT_TAGS:
            return
        if top.tag == "html":
            if not data.strip():
                return
            self._ensure_body()
            top = self.stack[-1]
        top._chunks.append((len(top.children), data))


def parse_html(text: str) -> DomTree:
    """Parse HTML source into a :class:`DomTree`.

    Lenient: unclosed and misnested tags are recovered, missing
    ``html``/``head``/``body`` wrappers are synthesized. Raises
    ``ValueError("empty document")`` when the source contains no elements.
    """
    if text.startswith("﻿"):
        text = text[1:]
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    if builder.root is None:
        raise ValueError("empty document")
    return DomTree(builder.root)


def load_html(path) -> DomTree:
    """Read an HTML file (UTF-8, BOM tolerated) and parse it."""
    return parse_html(Path(path).read_text(encoding="utf-8-sig"))


def candidates(
    tree: DomTree,
    policy: Optional[CandidatePolicy] = None,
    visibility: Optional[Mapping[Node, bool]] = None,
) -> list[Node]:
    """Candidate elements in document order.

    ``visibility`` is an optional per-node overlay (typically merged from a
    page capture); nodes explicitly marked invisible are excluded. Without
    it every policy-matching element is a candidate (static mode).
    """
    policy = policy or DEFAULT_POLICY
    out = []
    for node in tree.nodes:
        if not policy.allows(node.tag):
            continue
        if visibility is not None and not visibility.get(node, True):
            continue
        out.append(node)
    return out


def serialize(tree: DomTree) -> str:
    """Render the tree back to HTML (normalized form, original text order)."""
    return _render(tree.root)


def _render(node: Node) -> str:
    attrs = "".join(f' {name}="{escape(value, quote=True)}"' for name, value in node.attrs.items())
    if node.tag in VOID_TAGS:
        return f"<{node.tag}{attrs}>"
    parts = [f"<{node.tag}{attrs}>"]
    chunk_at = 0
    chunks = node._chunks
    for slot in range(len(node.children) + 1):
        while chunk_at < len(chunks) and chunks[chunk_at][0] == slot:
            parts.append(escape(chunks[chunk_at][1]))
            chunk_at += 1
        if slot < len(node.children):
            parts.append(_render(node.children[slot]))
    parts.append(f"</{node.tag}>")
    return "".join(parts)


def _collapse(raw: str) -> str:
    return " ".join(raw.split())


def preorder(tree: DomTree) -> Iterable[Node]:
    return iter(tree.nodes)
