"""Page-capture interchange format (schema version 1) and dataset loading.

A capture carries the rendered-layout facts the static parser cannot derive:
per-element geometry in document coordinates, visibility, and visible text.
Captures are JSON, produced either by the in-browser extractor or statically
via :func:`capture_from_tree`, and keyed by absolute XPath.

Dataset layout (one directory per site)::

    <site>/old.html
    <site>/new.html
    <site>/old.capture.json   (optional)
    <site>/new.capture.json   (optional)
    <site>/targets.json       [{"old_xpath": ..., "oracle_new_xpath": ...}, ...]
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from similo.dom import CandidatePolicy, DomTree, Geometry, Node, candidates
from similo.snapshot import visible_text_of
from similo.xpath import absolute_xpath, evaluate

SCHEMA_VERSION = 1

logger = logging.getLogger(__name__)


class CaptureValidationError(ValueError):
    """Itemized schema violations (field path + reason per entry)."""

    def __init__(self, issues: list[str]):
        self.issues = issues
        super().__init__("; ".join(issues))


@dataclass
class CaptureElement:
    absolute_xpath: str
    tag: str
    attributes: dict
    visible: bool
    visible_text: str = ""
    geometry: Optional[Geometry] = None


@dataclass
class PageCapture:
    url: str
    captured_at: str
    elements: list
    schema_version: int = SCHEMA_VERSION
    metadata: dict = field(default_factory=dict)


def _check_geometry(value, path: str, issues: list[str]) -> Optional[Geometry]:
    if not isinstance(value, dict):
        issues.append(f"{path}: geometry must be an object")
        return None
    for key in ("x", "y", "width", "height"):
        if key not in value:
            issues.append(f"{path}.{key}: missing geometry field")
            return None
        if not isinstance(value[key], (int, float)) or isinstance(value[key], bool):
            issues.append(f"{path}.{key}: geometry field must be a number")
            return None
    if value["width"] < 0 or value["height"] < 0:
        issues.append(f"{path}: width/height must be >= 0")
        return None
    return Geometry(value["x"], value["y"], value["width"], value["height"])


def capture_from_dict(data: dict) -> PageCapture:
    """Validate raw JSON data against schema version 1 and build a capture."""
    issues: list[str] = []
    if not isinstance(data, dict):
        raise CaptureValidationError(["document: must be a JSON object"])

    version = data.get("schema_version")
    if version is None:
        issues.append("schema_version: missing required field")
    elif version != SCHEMA_VERSION:
        issues.append(f"schema_version: unsupported version {version!r}")

    for key in ("url", "captured_at"):
        if not isinstance(data.get(key), str):
            issues.append(f"{key}: missing required string field")

    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        issues.append("metadata: must be an object")
        metadata = {}

    elements: list[CaptureElement] = []
    raw_elements = data.get("elements")
    if not isinstance(raw_elements, list):
        issues.append("elements: missing required list field")
        raw_elements = []

    seen_xpaths: set[str] = set()
    for i, raw in enumerate(raw_elements):
        path = f"elements[{i}]"
        if not isinstance(raw, dict):
            issues.append(f"{path}: must be an object")
            continue
        ok = True
        for key, kind in (("absolute_xpath", str), ("tag", str), ("visible_text", str)):
            if not isinstance(raw.get(key), kind):
                issues.append(f"{path}.{key}: missing required string field")
                ok = False
        if not isinstance(raw.get("attributes"), dict):
            issues.append(f"{path}.attributes: missing required object field")
            ok = False
        if not isinstance(raw.get("visible"), bool):
            issues.append(f"{path}.visible: missing required boolean field")
            ok = False
        geometry = None
        if "geometry" in raw and raw["geometry"] is not None:
            geometry = _check_geometry(raw["geometry"], f"{path}.geometry", issues)
            if geometry is None:
                ok = False
        if not ok:
            continue
        xpath = raw["absolute_xpath"]
        if xpath in seen_xpaths:
            issues.append(f"{path}.absolute_xpath: duplicate value {xpath!r}")
            continue
        seen_xpaths.add(xpath)
        elements.append(
            CaptureElement(
                absolute_xpath=xpath,
                tag=raw["tag"].lower(),
                attributes={str(k).lower(): str(v) for k, v in raw["attributes"].items()},
                visible=raw["visible"],
                visible_text=raw["visible_text"],
                geometry=geometry,
            )
        )

    if issues:
        raise CaptureValidationError(issues)
    return PageCapture(
        url=data["url"],
        captured_at=data["captured_at"],
        elements=elements,
        schema_version=SCHEMA_VERSION,
        metadata=metadata,
    )


def capture_to_dict(capture: PageCapture) -> dict:
    elements = []
    for el in capture.elements:
        entry = {
            "absolute_xpath": el.absolute_xpath,
            "tag": el.tag,
            "attributes": dict(el.attributes),
            "visible": el.visible,
            "visible_text": el.visible_text,
        }
        if el.geometry is not None:
            g = el.geometry
            entry["geometry"] = {"x": g.x, "y": g.y, "width": g.width, "height": g.height}
        elements.append(entry)
    return {
        "schema_version": capture.schema_version,
        "url": capture.url,
        "captured_at": capture.captured_at,
        "metadata": dict(capture.metadata),
        "elements": elements,
    }


def load_capture(path) -> PageCapture:
    with open(path, encoding="utf-8") as handle:
        return capture_from_dict(json.load(handle))


def save_capture(capture: PageCapture, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(capture_to_dict(capture), handle, indent=2)
        handle.write("\n")


def capture_from_tree(
    tree: DomTree,
    url: str = "",
    captured_at: str = "",
    policy: Optional[CandidatePolicy] = None,
) -> PageCapture:
    """Static capture of a parsed tree: no geometry, everything visible."""
    elements = [
        CaptureElement(
            absolute_xpath=absolute_xpath(tree, node),
            tag=node.tag,
            attributes=dict(node.attrs),
            visible=True,
            visible_text=visible_text_of(node),
        )
        for node in candidates(tree, policy)
    ]
    return PageCapture(url=url, captured_at=captured_at, elements=elements)


def resolve_overlays(tree: DomTree, capture: PageCapture):
    """Match capture entries to tree nodes by absolute XPath.

    Returns ``(visibility, geometry)`` maps keyed by node. Entries whose
    path does not resolve on the tree are skipped.
    """
    visibility: dict[Node, bool] = {}
    geometry: dict[Node, Geometry] = {}
    for el in capture.elements:
        try:
            matches = evaluate(tree, el.absolute_xpath)
        except ValueError:
            continue
        if len(matches) != 1:
            continue
        node = matches[0]
        visibility[node] = el.visible
        if el.geometry is not None:
            geometry[node] = el.geometry
    return visibility, geometry


# -- benchmark dataset ---------------------------------------------------------


@dataclass(frozen=True)
class BenchmarkTarget:
    old_xpath: str
    oracle_new_xpath: str


@dataclass
class BenchmarkCase:
    site: str
    old_html: str
    new_html: str
    targets: list
    old_capture: Optional[PageCapture] = None
    new_capture: Optional[PageCapture] = None


def _load_case(site_dir: Path) -> BenchmarkCase:
    from similo.dom import parse_html  # local import to keep module load light

    old_path = site_dir / "old.html"
    new_path = site_dir / "new.html"
    targets_path = site_dir / "targets.json"
    for required in (old_path, new_path, targets_path):
        if not required.is_file():
            raise ValueError(f"missing {required.name}")

    old_html = old_path.read_text(encoding="utf-8-sig")
    new_html = new_path.read_text(encoding="utf-8-sig")
    raw_targets = json.loads(targets_path.read_text(encoding="utf-8"))
    if not isinstance(raw_targets, list) or not raw_targets:
        raise ValueError("targets.json must be a non-empty list")

    old_tree = parse_html(old_html)
    new_tree = parse_html(new_html)
    targets = []
    for i, raw in enumerate(raw_targets):
        old_xpath = raw.get("old_xpath")
        oracle = raw.get("oracle_new_xpath")
        if not old_xpath or not oracle:
            raise ValueError(f"targets[{i}]: old_xpath and oracle_new_xpath are required")
        if len(evaluate(old_tree, old_xpath)) != 1:
            raise ValueError(f"targets[{i}]: old_xpath does not resolve uniquely: {old_xpath}")
        if len(evaluate(new_tree, oracle)) != 1:
            raise ValueError(f"targets[{i}]: oracle_new_xpath does not resolve uniquely: {oracle}")
        targets.append(BenchmarkTarget(old_xpath, oracle))

    case = BenchmarkCase(site_dir.name, old_html, new_html, targets)
    old_capture_path = site_dir / "old.capture.json"
    new_capture_path = site_dir / "new.capture.json"
    if old_capture_path.is_file():
        case.old_capture = load_capture(old_capture_path)
    if new_capture_path.is_file():
        case.new_capture = load_capture(new_capture_path)
    return case


def load_benchmark(dataset_dir) -> tuple[list[BenchmarkCase], list[str]]:
    """Load all site cases under ``dataset_dir``.

    Invalid cases are reported in the error list (``"site: reason"``) while
    valid ones are still returned.
    """
    root = Path(dataset_dir)
    if not root.is_dir():
        return [], [f"{root}: not a directory"]
    site_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not site_dirs:
        logger.warning("dataset directory %s contains no site directories", root)
        return [], []

    cases: list[BenchmarkCase] = []
    errors: list[str] = []
    for site_dir in site_dirs:
        try:
            cases.append(_load_case(site_dir))
        except (ValueError, OSError, json.JSONDecodeError) as exc:
            errors.append(f"{site_dir.name}: {exc}")
    return cases, errors
