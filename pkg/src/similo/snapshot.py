"""Element snapshots: the 14 locator parameters compared by the scorer."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from similo.dom import DomTree, Geometry, Node
from similo.xpath import absolute_xpath, id_relative_xpath

# Canonical parameter names, in presentation order.
PARAMETERS = (
    "tag",
    "class",
    "name",
    "id",
    "href",
    "alt",
    "absolute_xpath",
    "id_relative_xpath",
    "is_button",
    "location",
    "area",
    "shape",
    "visible_text",
    "neighbor_texts",
)

# Parameter name → snapshot attribute ("class" is a Python keyword).
_PARAM_ATTR = {name: name for name in PARAMETERS}
_PARAM_ATTR["class"] = "class_name"

_BUTTON_INPUT_TYPES = frozenset({"button", "submit", "reset", "image"})
_BUTTON_CLASS_TOKENS = frozenset({"btn", "button"})

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)

DEFAULT_NEIGHBOR_RADIUS_PX = 100.0


@dataclass(frozen=True)
class ElementSnapshot:
    """The locator parameters of one element. Blank/None means absent."""

    tag: str = ""
    class_name: str = ""
    name: str = ""
    id: str = ""
    href: str = ""
    alt: str = ""
    absolute_xpath: str = ""
    id_relative_xpath: str = ""
    is_button: bool = False
    location: Optional[Tuple[float, float]] = None
    area: Optional[float] = None
    shape: Optional[float] = None
    visible_text: str = ""
    neighbor_texts: frozenset = frozenset()

    def param(self, name: str):
        return getattr(self, _PARAM_ATTR[name])

    def to_dict(self) -> dict:
        out = {}
        for name in PARAMETERS:
            value = self.param(name)
            if name == "neighbor_texts":
                value = sorted(value)
            elif name == "location" and value is not None:
                value = list(value)
            out[name] = value
        return out


def words(text: str) -> frozenset:
    """Lowercased word set: split on non-alphanumeric runs, deduplicated."""
    return frozenset(_WORD_RE.findall(text.lower()))


def visible_text_of(node: Node) -> str:
    """First non-blank among subtree text, value, placeholder."""
    for source in (node.subtree_text, node.attr("value"), node.attr("placeholder")):
        if source.strip():
            return " ".join(source.split())
    return ""


def is_button_like(node: Node) -> bool:
    if node.tag == "button":
        return True
    if node.tag == "input" and node.attr("type").lower() in _BUTTON_INPUT_TYPES:
        return True
    return bool(words(node.attr("class")) & _BUTTON_CLASS_TOKENS)


def _static_neighbors(el: Node) -> list[Node]:
    # No layout available: parent, siblings, and children stand in for
    # spatially nearby elements.
    neighbors = [el]
    if el.parent is not None:
        neighbors.append(el.parent)
        neighbors.extend(sib for sib in el.parent.children if sib is not el)
    neighbors.extend(el.children)
    return neighbors


def extract_snapshot(
    tree: DomTree,
    el: Node,
    geom: Optional[Geometry] = None,
    neighbor_source: Optional[Sequence[Tuple[Node, Optional[Geometry]]]] = None,
    neighbor_radius: float = DEFAULT_NEIGHBOR_RADIUS_PX,
) -> ElementSnapshot:
    """Fill every derivable parameter for ``el``.

    ``neighbor_source`` is the candidate list with per-candidate geometry;
    when it and ``geom`` are present, neighbors are the candidates whose
    top-left corner lies within ``neighbor_radius`` pixels of the element's.
    Without geometry the tree neighborhood (parent, siblings, children) is
    used instead.
    """
    neighbor_words = set(words(visible_text_of(el)))
    if geom is not None and neighbor_source is not None:
        origin = (geom.x, geom.y)
        radius_sq = neighbor_radius * neighbor_radius
        for other, other_geom in neighbor_source:
            if other_geom is None:
                continue
            dx = other_geom.x - origin[0]
            dy = other_geom.y - origin[1]
            if dx * dx + dy * dy <= radius_sq:
                neighbor_words.update(words(visible_text_of(other)))
    else:
        for neighbor in _static_neighbors(el):
            neighbor_words.update(words(visible_text_of(neighbor)))

    return ElementSnapshot(
        tag=el.tag,
        class_name=el.attr("class"),
        name=el.attr("name"),
        id=el.attr("id"),
        href=el.attr("href"),
        alt=el.attr("alt"),
        absolute_xpath=absolute_xpath(tree, el),
        id_relative_xpath=id_relative_xpath(tree, el),
        is_button=is_button_like(el),
        location=(geom.x, geom.y) if geom is not None else None,
        area=geom.area if geom is not None else None,
        shape=geom.shape if geom is not None else None,
        visible_text=visible_text_of(el),
        neighbor_texts=frozenset(neighbor_words),
    )
