"""The five single-locator generators used by the voting baseline.

Absolute and id-relative paths come from the xpath module; this module adds
the Selenium-IDE priority chain, the bottom-up text/attribute generator, and
the breadth-first specialization generator. Every generated expression stays
inside the supported dialect and is verified with ``evaluate`` before use.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from similo.dom import DomTree, Node
from similo.xpath import XPathString, absolute_xpath, evaluate, id_relative_xpath

KIND_ABSOLUTE = "absolute"
KIND_ID_RELATIVE = "id_relative"
KIND_SELENIUM_IDE = "selenium_ide"
KIND_MONTOTO = "montoto"
KIND_ROBULA_PLUS = "robula_plus"

# Fixed kind order, also the tie-break order for voting.
KIND_ORDER = (
    KIND_ABSOLUTE,
    KIND_ID_RELATIVE,
    KIND_SELENIUM_IDE,
    KIND_MONTOTO,
    KIND_ROBULA_PLUS,
)

DISPLAY_NAMES = {
    KIND_ABSOLUTE: "Absolute XPath",
    KIND_ID_RELATIVE: "Relative ID-based XPath",
    KIND_SELENIUM_IDE: "Selenium IDE",
    KIND_MONTOTO: "Montoto",
    KIND_ROBULA_PLUS: "Robula+",
}


@dataclass(frozen=True)
class LocatorExpr:
    kind: str
    expr: XPathString
    unique_at_generation: bool


@dataclass(frozen=True)
class LocatorSet:
    target_xpath: XPathString  # absolute path of the target on the old tree
    locators: tuple

    def get(self, kind: str) -> Optional[LocatorExpr]:
        for locator in self.locators:
            if locator.kind == kind:
                return locator
        return None


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the specialization generator and predicate construction."""

    attribute_priority: tuple = ("id", "name", "class", "title", "alt", "value")
    attribute_blacklist: frozenset = frozenset({"style"})
    blacklist_prefixes: tuple = ("on",)  # inline event handlers
    exclude_href_with_query: bool = True  # href with a query string is volatile
    max_depth: int = 5
    attribute_set_limit: int = 6


DEFAULT_GENERATOR_CONFIG = GeneratorConfig()


_ATTR_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_-]*\Z")


def _predicate_value_ok(value: str) -> bool:
    # The dialect has no escaping: values using both quote kinds are skipped.
    return not ("'" in value and '"' in value)


def _attr_name_ok(name: str) -> bool:
    # Names outside the dialect grammar (namespaced etc.) are skipped.
    return _ATTR_NAME_RE.match(name) is not None


def _quoted(value: str) -> str:
    return f'"{value}"' if "'" in value else f"'{value}'"


def _attr_predicate(name: str, value: str) -> str:
    return f"[@{name}={_quoted(value)}]"


def _usable_attrs(node: Node, config: GeneratorConfig) -> list[tuple[str, str]]:
    """Attributes usable in predicates, priority names first, then document order."""
    usable = []
    for name, value in node.attrs.items():
        if not value or not _predicate_value_ok(value) or not _attr_name_ok(name):
            continue
        if name in config.attribute_blacklist:
            continue
        if any(name.startswith(prefix) for prefix in config.blacklist_prefixes):
            continue
        if name == "href" and config.exclude_href_with_query and "?" in value:
            continue
        usable.append((name, value))
    priority = {name: i for i, name in enumerate(config.attribute_priority)}
    usable.sort(key=lambda item: priority.get(item[0], len(priority)))
    return usable


def _is_unique(tree: DomTree, expr: str, el: Node) -> bool:
    try:
        return evaluate(tree, expr) == [el]
    except ValueError:
        return False


def gen_selenium_ide(
    tree: DomTree, el: Node, config: GeneratorConfig = DEFAULT_GENERATOR_CONFIG
) -> LocatorExpr:
    """First unique locator from the priority chain: id, link text, name,
    single-attribute paths; absolute path as the guaranteed fallback."""
    candidates: list[str] = []
    id_value = el.attr("id")
    if id_value and _predicate_value_ok(id_value):
        candidates.append(f"//*{_attr_predicate('id', id_value)}")
    if el.tag == "a":
        text = el.text
        if text and _predicate_value_ok(text):
            candidates.append(f"//a[text()={_quoted(text)}]")
    name_value = el.attr("name")
    if name_value and _predicate_value_ok(name_value):
        candidates.append(f"//*{_attr_predicate('name', name_value)}")
    for attr_name, attr_value in el.attrs.items():
        if attr_value and _predicate_value_ok(attr_value) and _attr_name_ok(attr_name):
            candidates.append(f"//{el.tag}{_attr_predicate(attr_name, attr_value)}")

    for expr in candidates:
        if _is_unique(tree, expr, el):
            return LocatorExpr(KIND_SELENIUM_IDE, expr, True)
    return LocatorExpr(KIND_SELENIUM_IDE, absolute_xpath(tree, el), True)


def gen_montoto(
    tree: DomTree, el: Node, config: GeneratorConfig = DEFAULT_GENERATOR_CONFIG
) -> Optional[LocatorExpr]:
    """Bottom-up generator: text and attribute predicates on the element,
    then ancestor steps (with their attribute predicates) prepended one at a
    time. Returns None when the root is reached without a unique match."""

    def step_for(node: Node, with_text: bool) -> str:
        predicates = []
        if with_text:
            text = node.text
            if text and _predicate_value_ok(text):
                predicates.append(f"[text()={_quoted(text)}]")
        for attr_name, attr_value in node.attrs.items():
            if attr_value and _predicate_value_ok(attr_value) and _attr_name_ok(attr_name):
                predicates.append(_attr_predicate(attr_name, attr_value))
        return node.tag + "".join(predicates)

    chain = [el]
    while True:
        top = chain[0]
        expr = "//" + step_for(top, with_text=top is el)
        for node in chain[1:]:
            expr += "/" + step_for(node, with_text=node is el)
        matches = evaluate(tree, expr)
        if len(matches) == 1:
            return LocatorExpr(KIND_MONTOTO, expr, True)
        if top.parent is None:
            return None
        chain.insert(0, top.parent)


# -- breadth-first specialization ---------------------------------------------


@dataclass(frozen=True)
class _SpecStep:
    tag: str  # tag name or "*"
    predicates: tuple = ()  # rendered predicate strings

    def render(self) -> str:
        return self.tag + "".join(self.predicates)

    def has_position(self) -> bool:
        return any(p[1].isdigit() for p in self.predicates)

    def has_attribute(self) -> bool:
        return any(p.startswith("[@") for p in self.predicates)

    def has_text(self) -> bool:
        return any("text()" in p for p in self.predicates)


def _render_spec(steps: tuple) -> str:
    return "//" + "/".join(step.render() for step in steps)


def _with_head(steps: tuple, head: _SpecStep) -> tuple:
    return (head,) + steps[1:]


def gen_robula_plus(
    tree: DomTree, el: Node, config: GeneratorConfig = DEFAULT_GENERATOR_CONFIG
) -> LocatorExpr:
    """Shortest-first specialization from ``//*``: convert star, add id/text/
    attribute/attribute-set/position predicates, or prepend an ancestor
    level; the first expression matching exactly the target wins. Falls back
    to the absolute path when the depth budget is exhausted."""
    queue: deque = deque()
    queue.append((_SpecStep("*"),))
    seen = {_render_spec(queue[0])}

    while queue:
        steps = queue.popleft()
        for transformed in _spec_transformations(steps, el, config):
            rendered = _render_spec(transformed)
            if rendered in seen:
                continue
            seen.add(rendered)
            if _is_unique(tree, rendered, el):
                return LocatorExpr(KIND_ROBULA_PLUS, rendered, True)
            queue.append(transformed)

    return LocatorExpr(KIND_ROBULA_PLUS, absolute_xpath(tree, el), True)


def _spec_transformations(steps: tuple, el: Node, config: GeneratorConfig):
    """Candidate specializations of the head step, in application order."""
    head = steps[0]
    anchor = el
    for _ in range(len(steps) - 1):
        if anchor.parent is None:
            return []
        anchor = anchor.parent

    out = []
    if head.tag == "*":
        out.append(_with_head(steps, _SpecStep(anchor.tag, head.predicates)))

    if not head.has_position():
        id_value = anchor.attr("id")
        if id_value and _predicate_value_ok(id_value) and not head.has_attribute():
            out.append(
                _with_head(
                    steps,
                    _SpecStep(head.tag, head.predicates + (_attr_predicate("id", id_value),)),
                )
            )

        text = anchor.text
        if text and _predicate_value_ok(text) and not head.has_text():
            predicate = f"[contains(text(),{_quoted(text)})]"
            out.append(_with_head(steps, _SpecStep(head.tag, head.predicates + (predicate,))))

        if not head.has_attribute():
            usable = _usable_attrs(anchor, config)
            for attr_name, attr_value in usable:
                out.append(
                    _with_head(
                        steps,
                        _SpecStep(
                            head.tag,
                            head.predicates + (_attr_predicate(attr_name, attr_value),),
                        ),
                    )
                )
            limited = usable[: config.attribute_set_limit]
            for size in range(2, len(limited) + 1):
                for subset in combinations(limited, size):
                    joined = " and ".join(
                        f"@{name}={_quoted(value)}" for name, value in subset
                    )
                    out.append(
                        _with_head(
                            steps,
                            _SpecStep(head.tag, head.predicates + (f"[{joined}]",)),
                        )
                    )

        position = _spec_position(anchor, head.tag)
        out.append(
            _with_head(steps, _SpecStep(head.tag, head.predicates + (f"[{position}]",)))
        )

    if len(steps) < config.max_depth and anchor.parent is not None:
        out.append((_SpecStep("*"),) + steps)

    return out


def _spec_position(anchor: Node, head_tag: str) -> int:
    if anchor.parent is None:
        return 1
    position = 0
    for sibling in anchor.parent.children:
        if head_tag == "*" or sibling.tag == anchor.tag:
            position += 1
        if sibling is anchor:
            return position
    return 1


def gen_all(
    tree: DomTree, el: Node, config: GeneratorConfig = DEFAULT_GENERATOR_CONFIG
) -> LocatorSet:
    """The available single-locators for ``el`` (Montoto may be absent)."""
    absolute = absolute_xpath(tree, el)
    id_relative = id_relative_xpath(tree, el)
    locators = [
        LocatorExpr(KIND_ABSOLUTE, absolute, True),
        LocatorExpr(KIND_ID_RELATIVE, id_relative, _is_unique(tree, id_relative, el)),
        gen_selenium_ide(tree, el, config),
    ]
    montoto = gen_montoto(tree, el, config)
    if montoto is not None:
        locators.append(montoto)
    locators.append(gen_robula_plus(tree, el, config))
    return LocatorSet(absolute, tuple(locators))
