"""Similarity-based web element localization with locator baselines."""

from similo.capture import (
    BenchmarkCase,
    BenchmarkTarget,
    CaptureElement,
    CaptureValidationError,
    PageCapture,
    capture_from_tree,
    load_benchmark,
    load_capture,
    resolve_overlays,
    save_capture,
)
from similo.config import Config, load_config, parse_config
from similo.dom import (
    CandidatePolicy,
    DomTree,
    ElementRef,
    Geometry,
    candidates,
    load_html,
    parse_html,
    serialize,
)
from similo.evaluate import (
    APPROACHES,
    BenchmarkReport,
    LocalizationResult,
    run_benchmark,
    run_case,
)
from similo.kernels import BACKEND as KERNEL_BACKEND
from similo.kernels import levenshtein
from similo.locators import (
    GeneratorConfig,
    LocatorExpr,
    LocatorSet,
    gen_all,
    gen_montoto,
    gen_robula_plus,
    gen_selenium_ide,
)
from similo.metrics import (
    exact_similarity,
    location_similarity,
    scalar_similarity,
    string_similarity,
    word_set_similarity,
)
from similo.scoring import (
    RankedMatch,
    SimilarityBreakdown,
    WeightVector,
    rank_candidates,
    similarity_score,
)
from similo.snapshot import PARAMETERS, ElementSnapshot, extract_snapshot
from similo.voting import (
    LocatorOutcome,
    execute_locators,
    theoretical_limit,
    vote,
)
from similo.xpath import (
    absolute_xpath,
    element_path,
    evaluate,
    id_relative_xpath,
    parse_xpath,
    tolerant_match,
)

__version__ = "0.1.0"
