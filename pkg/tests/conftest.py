import json
from pathlib import Path

import pytest

from similo.capture import BenchmarkCase, BenchmarkTarget, load_benchmark

FIXTURES = Path(__file__).parent / "fixtures"
DATASET = FIXTURES / "dataset"


@pytest.fixture(scope="session")
def dataset_dir() -> Path:
    return DATASET


@pytest.fixture(scope="session")
def dataset_cases():
    cases, errors = load_benchmark(DATASET)
    assert not errors, errors
    return cases


@pytest.fixture(scope="session")
def manifest():
    return json.loads((DATASET / "manifest.json").read_text())


@pytest.fixture(scope="session")
def fixture_pages(dataset_cases):
    """Every fixture page source, old and new, keyed by name."""
    pages = {}
    for case in dataset_cases:
        pages[f"{case.site}/old"] = case.old_html
        pages[f"{case.site}/new"] = case.new_html
    return pages


def identity_cases(cases):
    """Each fixture page paired with itself; oracle = the target itself."""
    out = []
    for case in cases:
        out.append(
            BenchmarkCase(
                f"{case.site}-old",
                case.old_html,
                case.old_html,
                [BenchmarkTarget(t.old_xpath, t.old_xpath) for t in case.targets],
            )
        )
        out.append(
            BenchmarkCase(
                f"{case.site}-new",
                case.new_html,
                case.new_html,
                [BenchmarkTarget(t.oracle_new_xpath, t.oracle_new_xpath) for t in case.targets],
            )
        )
    return out
