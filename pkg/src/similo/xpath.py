"""Restricted XPath dialect: generation, evaluation, tolerant comparison.

The dialect covers exactly what the locator generators emit plus the
absolute-path oracle format: absolute child steps ``/tag[i]``, the
``id("value")`` root anchor, leading ``//tag`` / ``//*`` descendant steps,
and step predicates ``[i]``, ``[@name='v']``, ``[text()='v']``,
``[contains(@name,'v')]``, ``[contains(text(),'v')]`` joined by ``and``.
Anything else fails loudly instead of mis-evaluating silently.

Positional predicates follow XPath 1.0 semantics: positions count within
each parent's matching children, after the predicates to their left.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from similo.dom import DomTree, Node

XPathString = str


@dataclass(frozen=True)
class Position:
    index: int


@dataclass(frozen=True)
class AttrEquals:
    name: str
    value: str


@dataclass(frozen=True)
class AttrContains:
    name: str
    value: str


@dataclass(frozen=True)
class TextEquals:
    value: str


@dataclass(frozen=True)
class TextContains:
    value: str


Predicate = Union[Position, AttrEquals, AttrContains, TextEquals, TextContains]


@dataclass(frozen=True)
class Step:
    axis: str  # "child" or "descendant"
    tag: str  # lowercased tag name or "*"
    predicates: tuple = ()


@dataclass(frozen=True)
class XPathExpr:
    anchor_id: Optional[str]  # id("...") anchor; None for / and // paths
    steps: tuple = ()


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, n: int = 1) -> str:
        return self.text[self.pos : self.pos + n]

    def take(self, n: int = 1) -> str:
        out = self.text[self.pos : self.pos + n]
        self.pos += n
        return out

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            self.fail(self.peek(len(literal)) or "<end>")
        self.pos += len(literal)

    def take_name(self) -> str:
        start = self.pos
        while not self.eof() and (self.text[self.pos].isalnum() or self.text[self.pos] in "-_"):
            self.pos += 1
        if self.pos == start:
            self.fail(self.peek() or "<end>")
        return self.text[start : self.pos]

    def take_string(self) -> str:
        quote = self.peek()
        if quote not in ("'", '"'):
            self.fail(quote or "<end>")
        self.pos += 1
        end = self.text.find(quote, self.pos)
        if end < 0:
            self.fail("<unterminated string>")
        value = self.text[self.pos : end]
        self.pos = end + 1
        return value

    def fail(self, token: str):
        raise ValueError(f"unsupported xpath construct: {token!r} at offset {self.pos}")


def _parse_predicate_body(scanner: _Scanner) -> Predicate:
    ch = scanner.peek()
    if ch.isdigit():
        start = scanner.pos
        while not scanner.eof() and scanner.peek().isdigit():
            scanner.take()
        return Position(int(scanner.text[start : scanner.pos]))
    if ch == "@":
        scanner.take()
        name = scanner.take_name()
        scanner.expect("=")
        return AttrEquals(name.lower(), scanner.take_string())
    if scanner.text.startswith("text()", scanner.pos):
        scanner.take(len("text()"))
        scanner.expect("=")
        return TextEquals(scanner.take_string())
    if scanner.text.startswith("contains(", scanner.pos):
        scanner.take(len("contains("))
        if scanner.peek() == "@":
            scanner.take()
            name = scanner.take_name()
            scanner.expect(",")
            value = scanner.take_string()
            scanner.expect(")")
            return AttrContains(name.lower(), value)
        scanner.expect("text()")
        scanner.expect(",")
        value = scanner.take_string()
        scanner.expect(")")
        return TextContains(value)
    scanner.fail(ch or "<end>")


def _parse_step(scanner: _Scanner, axis: str) -> Step:
    if scanner.peek() == "*":
        scanner.take()
        tag = "*"
    else:
        tag = scanner.take_name().lower()
    predicates: list[Predicate] = []
    while scanner.peek() == "[":
        scanner.take()
        predicates.append(_parse_predicate_body(scanner))
        while scanner.text.startswith(" and ", scanner.pos):
            scanner.take(len(" and "))
            predicates.append(_parse_predicate_body(scanner))
        scanner.expect("]")
    return Step(axis, tag, tuple(predicates))


@lru_cache(maxsize=8192)
def parse_xpath(expression: XPathString) -> XPathExpr:
    """Parse an expression of the supported dialect (cached)."""
    scanner = _Scanner(expression.strip())
    anchor_id: Optional[str] = None
    steps: list[Step] = []

    if scanner.text.startswith("id("):
        scanner.take(len("id("))
        anchor_id = scanner.take_string()
        scanner.expect(")")
    elif scanner.peek() != "/":
        scanner.fail(scanner.peek() or "<end>")

    while not scanner.eof():
        if scanner.peek(2) == "//":
            scanner.take(2)
            steps.append(_parse_step(scanner, "descendant"))
        elif scanner.peek() == "/":
            scanner.take()
            steps.append(_parse_step(scanner, "child"))
        else:
            scanner.fail(scanner.peek())

    if anchor_id is None and not steps:
        scanner.fail("<empty>")
    return XPathExpr(anchor_id, tuple(steps))


# -- evaluation --------------------------------------------------------------

_DOC = object()  # virtual document node above the root


def _children_of(context, tree: DomTree) -> list[Node]:
    if context is _DOC:
        return [tree.root]
    return context.children


def _descendants_of(context, tree: DomTree) -> list[Node]:
    if context is _DOC:
        return list(tree.nodes)
    out: list[Node] = []
    stack = list(reversed(context.children))
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(reversed(node.children))
    return out


def _matches_predicate(node: Node, pred: Predicate) -> bool:
    if isinstance(pred, AttrEquals):
        return node.attrs.get(pred.name) == pred.value
    if isinstance(pred, AttrContains):
        value = node.attrs.get(pred.name)
        return value is not None and pred.value in value
    if isinstance(pred, TextEquals):
        return node.text == pred.value
    if isinstance(pred, TextContains):
        return pred.value in node.text
    raise TypeError(pred)


def _apply_predicates(group: list[Node], predicates: tuple) -> list[Node]:
    current = group
    for pred in predicates:
        if isinstance(pred, Position):
            current = [current[pred.index - 1]] if len(current) >= pred.index >= 1 else []
        else:
            current = [n for n in current if _matches_predicate(n, pred)]
    return current


def _apply_step(contexts: list, step: Step, tree: DomTree) -> list[Node]:
    results: list[Node] = []
    for context in contexts:
        if step.axis == "child":
            base = _children_of(context, tree)
        else:
            base = _descendants_of(context, tree)
        if step.tag != "*":
            base = [n for n in base if n.tag == step.tag]
        # Positional predicates count within each parent's children.
        groups: dict[int, list[Node]] = {}
        order: list[int] = []
        for node in base:
            key = id(node.parent)
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(node)
        for key in order:
            results.extend(_apply_predicates(groups[key], step.predicates))
    if len(results) > 1:
        results = sorted(dict.fromkeys(results), key=lambda n: n.index)
    return results


def evaluate(tree: DomTree, xpath: XPathString) -> list[Node]:
    """All elements matching ``xpath``, in document order."""
    expr = parse_xpath(xpath)
    if expr.anchor_id is not None:
        anchor = tree.by_id(expr.anchor_id)
        contexts: list = [anchor] if anchor is not None else []
    else:
        contexts = [_DOC]
    for step in expr.steps:
        if not contexts:
            return []
        contexts = _apply_step(contexts, step, tree)
    return [n for n in contexts if n is not _DOC]


# -- generation --------------------------------------------------------------

def _sibling_position(node: Node) -> int:
    if node.parent is None:
        return 1
    position = 0
    for sibling in node.parent.children:
        if sibling.tag == node.tag:
            position += 1
        if sibling is node:
            return position
    raise ValueError("element not among its parent's children")


def _path_to(node: Node) -> list[Node]:
    path = [node]
    while path[-1].parent is not None:
        path.append(path[-1].parent)
    path.reverse()
    return path


def element_path(el: Node) -> XPathString:
    """Absolute path of a node, derived from its parent chain."""
    return "".join(f"/{n.tag}[{_sibling_position(n)}]" for n in _path_to(el))


def absolute_xpath(tree: DomTree, el: Node) -> XPathString:
    """Root-to-element path with 1-based same-tag sibling indices."""
    return element_path(el)


def id_relative_xpath(tree: DomTree, el: Node) -> XPathString:
    """Path anchored at the nearest ancestor-or-self with a usable id.

    An id is usable when it is non-empty, expressible in the dialect, and
    actually resolves to that ancestor (duplicate ids that resolve elsewhere
    are skipped). Without any usable id this falls back to the absolute path.
    """
    node = el
    while node is not None:
        id_value = node.attrs.get("id", "")
        if id_value and '"' not in id_value and tree.by_id(id_value) is node:
            anchor = f'id("{id_value}")'
            if node is el:
                return anchor
            path = _path_to(el)
            tail = path[path.index(node) + 1 :]
            # Path below the anchor, child steps only.
            suffix = "".join(f"/{n.tag}[{_sibling_position(n)}]" for n in tail)
            return anchor + suffix
        node = node.parent
    return absolute_xpath(tree, el)


# -- tolerant oracle comparison ----------------------------------------------

def _normalized_steps(xpath: XPathString) -> tuple:
    expr = parse_xpath(xpath)
    if expr.anchor_id is not None:
        raise ValueError(f"unsupported xpath construct: {'id('!r} (oracle paths are absolute)")
    normalized = []
    for step in expr.steps:
        position = 1
        rest = []
        for pred in step.predicates:
            if isinstance(pred, Position):
                position = pred.index
            else:
                rest.append(pred)
        normalized.append((step.axis, step.tag, position, tuple(rest)))
    return tuple(normalized)


def tolerant_match(candidate_xpath: XPathString, oracle_xpath: XPathString) -> bool:
    """True when the step sequences are equal, or equal after removing one
    trailing step from exactly one side."""
    a = _normalized_steps(candidate_xpath)
    b = _normalized_steps(oracle_xpath)
    if a == b:
        return True
    if len(a) == len(b) + 1:
        return a[:-1] == b
    if len(b) == len(a) + 1:
        return b[:-1] == a
    return False
