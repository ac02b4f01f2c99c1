"""Deterministic synthetic page-pair corpus with evolution mutations.

Generates old/new page pairs where the new page differs by id renames,
element moves, and class changes — the evolution patterns that break
path-, id-, and attribute-based locators. Target elements survive every
mutation, so each pair carries ground-truth oracles.
"""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Optional

from similo.capture import BenchmarkCase, BenchmarkTarget
from similo.dom import DEFAULT_CANDIDATE_TAGS, DomTree, Node, serialize
from similo.xpath import absolute_xpath

_WORDS = (
    "account home search products news contact about profile settings help "
    "cart orders login logout register support blog press careers legal terms "
    "privacy team pricing download upload share invite browse explore trending "
    "popular latest archive gallery video audio music photos messages inbox "
    "deals offers sale premium basic advanced guide docs forum community events"
).split()

_CLASS_TOKENS = (
    "nav-link menu-item primary secondary highlight card row col wide compact "
    "item entry label-text control field wrapper inner outer active muted"
).split()


def _element(tag: str, attrs: Optional[dict] = None, text: str = "") -> Node:
    node = Node(tag, dict(attrs or {}))
    if text:
        node._chunks.append((0, text))
    return node


def _adopt(parent: Node, child: Node) -> Node:
    child.parent = parent
    parent.children.append(child)
    return child


def _clone(node: Node, mapping: dict) -> Node:
    copy = Node(node.tag, dict(node.attrs))
    copy._chunks = list(node._chunks)
    mapping[node] = copy
    for child in node.children:
        grandchild = _clone(child, mapping)
        grandchild.parent = copy
        copy.children.append(grandchild)
    return copy


def _phrase(rng: random.Random, n_min: int = 1, n_max: int = 3) -> str:
    return " ".join(rng.sample(_WORDS, rng.randint(n_min, n_max))).title()


def _build_page(rng: random.Random) -> Node:
    html = _element("html")
    head = _adopt(html, _element("head"))
    _adopt(head, _element("title", text=_phrase(rng)))
    body = _adopt(html, _element("body"))

    header = _adopt(body, _element("header", {"id": "header", "class": "top"}))
    _adopt(header, _element("h1", {"class": "site-title"}, text=_phrase(rng, 2, 3)))

    nav = _adopt(body, _element("nav", {"id": "main-nav"}))
    menu = _adopt(nav, _element("ul", {"class": "menu"}))
    for i in range(rng.randint(4, 7)):
        item = _adopt(menu, _element("li", {"class": rng.choice(_CLASS_TOKENS)}))
        _adopt(
            item,
            _element(
                "a",
                {"href": f"/{rng.choice(_WORDS)}", "id": f"nav-{i}-{rng.choice(_WORDS)}"},
                text=_phrase(rng, 1, 2),
            ),
        )

    main = _adopt(body, _element("main", {"id": "content"}))
    for s in range(rng.randint(2, 4)):
        section = _adopt(
            main, _element("section", {"id": f"section-{s}", "class": rng.choice(_CLASS_TOKENS)})
        )
        _adopt(section, _element("h2", {}, text=_phrase(rng, 1, 3)))
        for _ in range(rng.randint(1, 3)):
            paragraph = _adopt(section, _element("p", {"class": rng.choice(_CLASS_TOKENS)}))
            paragraph._chunks.append((0, _phrase(rng, 3, 6) + " "))
            _adopt(paragraph, _element("span", {"class": "detail"}, text=_phrase(rng)))
        if rng.random() < 0.6:
            form_word = rng.choice(_WORDS)
            label = _adopt(section, _element("label", {"for": f"{form_word}-field"}))
            label._chunks.append((0, _phrase(rng, 1, 2)))
            _adopt(
                section,
                _element(
                    "input",
                    {
                        "type": "text",
                        "id": f"{form_word}-field",
                        "name": form_word,
                        "placeholder": _phrase(rng, 1, 2),
                    },
                ),
            )
            _adopt(
                section,
                _element(
                    "button",
                    {"class": "btn " + rng.choice(_CLASS_TOKENS), "type": "submit"},
                    text=_phrase(rng, 1, 2),
                ),
            )

    footer = _adopt(body, _element("footer", {"id": "footer"}))
    for _ in range(rng.randint(2, 4)):
        _adopt(
            footer,
            _element("a", {"href": f"/{rng.choice(_WORDS)}", "class": "footer-link"},
                     text=_phrase(rng, 1, 2)),
        )
    return html


def _nodes_of(root: Node) -> list[Node]:
    out = []
    stack = [root]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(reversed(node.children))
    return out


def _mutate_id_rename(rng: random.Random, root: Node) -> bool:
    with_ids = [n for n in _nodes_of(root) if n.attrs.get("id")]
    if not with_ids:
        return False
    node = rng.choice(with_ids)
    node.attrs["id"] = node.attrs["id"] + "-" + rng.choice(_WORDS)
    return True


def _mutate_move(rng: random.Random, root: Node) -> bool:
    parents = [n for n in _nodes_of(root) if len(n.children) >= 3]
    if not parents:
        return False
    parent = rng.choice(parents)
    source = rng.randrange(len(parent.children))
    dest = rng.randrange(len(parent.children))
    while dest == source:
        dest = rng.randrange(len(parent.children))
    child = parent.children.pop(source)
    parent.children.insert(dest, child)
    return True


def _mutate_class_change(rng: random.Random, root: Node) -> bool:
    with_class = [n for n in _nodes_of(root) if n.attrs.get("class")]
    if not with_class:
        return False
    node = rng.choice(with_class)
    tokens = node.attrs["class"].split()
    if tokens and rng.random() < 0.5:
        tokens[rng.randrange(len(tokens))] = rng.choice(_CLASS_TOKENS)
    else:
        tokens.append(rng.choice(_CLASS_TOKENS))
    node.attrs["class"] = " ".join(tokens)
    return True


_MUTATIONS = (
    (_mutate_move, 0.5),
    (_mutate_id_rename, 0.3),
    (_mutate_class_change, 0.2),
)


def generate_pair(rng: random.Random, site: str, targets_per_page: int = 3) -> BenchmarkCase:
    """One old/new page pair with evolution mutations and surviving targets.

    Every pair gets at least one element move (the dominant evolution
    pattern, and the one that breaks full-path locators), plus up to two
    further mutations drawn from the move/id-rename/class-change mix.
    """
    old_root = _build_page(rng)
    mapping: dict = {}
    new_root = _clone(old_root, mapping)

    _mutate_move(rng, new_root)
    for _ in range(rng.randint(0, 2)):
        pick = rng.random()
        cumulative = 0.0
        for mutation, share in _MUTATIONS:
            cumulative += share
            if pick <= cumulative:
                mutation(rng, new_root)
                break
    # Mutations can cancel out (e.g. two moves swapping back); force a rename
    # then so every pair actually evolves.
    old_tree = DomTree(old_root)
    new_tree = DomTree(new_root)
    while serialize(old_tree) == serialize(new_tree):
        _mutate_id_rename(rng, new_root)
        new_tree = DomTree(new_root)
    eligible = [n for n in old_tree.nodes if n.tag in DEFAULT_CANDIDATE_TAGS]
    chosen = rng.sample(eligible, min(targets_per_page, len(eligible)))
    targets = [
        BenchmarkTarget(
            old_xpath=absolute_xpath(old_tree, node),
            oracle_new_xpath=absolute_xpath(new_tree, mapping[node]),
        )
        for node in chosen
    ]
    return BenchmarkCase(site, serialize(old_tree), serialize(new_tree), targets)


def generate_corpus(n_pairs: int, seed: int = 7, targets_per_page: int = 3) -> list[BenchmarkCase]:
    rng = random.Random(seed)
    return [
        generate_pair(rng, f"pair_{i:03d}", targets_per_page) for i in range(n_pairs)
    ]


def write_corpus(dataset_dir, n_pairs: int, seed: int = 7, targets_per_page: int = 3) -> None:
    """Materialize a generated corpus in the benchmark dataset layout."""
    root = Path(dataset_dir)
    root.mkdir(parents=True, exist_ok=True)
    cases = generate_corpus(n_pairs, seed, targets_per_page)
    total_targets = 0
    for case in cases:
        site_dir = root / case.site
        site_dir.mkdir(exist_ok=True)
        (site_dir / "old.html").write_text(case.old_html, encoding="utf-8")
        (site_dir / "new.html").write_text(case.new_html, encoding="utf-8")
        (site_dir / "targets.json").write_text(
            json.dumps(
                [
                    {"old_xpath": t.old_xpath, "oracle_new_xpath": t.oracle_new_xpath}
                    for t in case.targets
                ],
                indent=2,
            ),
            encoding="utf-8",
        )
        total_targets += len(case.targets)
    manifest = {"pairs": len(cases), "targets": total_targets, "seed": seed}
    (root / "manifest.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")
