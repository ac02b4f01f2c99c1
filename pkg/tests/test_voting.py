import pytest

from similo.dom import parse_html
from similo.locators import gen_all
from similo.voting import (
    DEFAULT_KIND_WEIGHTS,
    LocatorOutcome,
    execute_locators,
    theoretical_limit,
    vote,
)
from similo.xpath import absolute_xpath, evaluate


def _outcome(kind, *nodes):
    return LocatorOutcome(kind, list(nodes))


def test_unchanged_page_all_locators_usable_and_agree(dataset_cases):
    case = next(c for c in dataset_cases if c.site == "contact")
    tree = parse_html(case.old_html)
    el = tree.by_id("subject")
    outcomes = execute_locators(gen_all(tree, el), tree)
    assert all(o.usable for o in outcomes)
    assert all(o.matched == [el] for o in outcomes)
    for variant in ("worst", "best", "weighted"):
        assert vote(outcomes, variant) is el


def test_moved_element_breaks_path_but_not_attributes(dataset_cases):
    case = next(c for c in dataset_cases if c.site == "contact")
    old = parse_html(case.old_html)
    new = parse_html(case.new_html)
    contact = next(a for a in old.by_tag("a") if a.text == "Contact")
    outcomes = {o.kind: o for o in execute_locators(gen_all(old, contact), new)}
    # the absolute path now points at a different nav entry
    moved_target = evaluate(new, "/html[1]/body[1]/nav[1]/ul[1]/li[3]/a[1]")
    assert outcomes["absolute"].matched == moved_target
    assert moved_target[0].text != "Contact"
    assert outcomes["selenium_ide"].usable
    assert outcomes["selenium_ide"].matched[0].text == "Contact"
    assert outcomes["montoto"].usable
    assert outcomes["robula_plus"].usable


def test_renamed_id_breaks_id_locators_text_survives(dataset_cases):
    case = next(c for c in dataset_cases if c.site == "news")
    old = parse_html(case.old_html)
    new = parse_html(case.new_html)
    h1 = old.by_id("brand")
    outcomes = {o.kind: o for o in execute_locators(gen_all(old, h1), new)}
    assert not outcomes["id_relative"].usable
    assert not outcomes["selenium_ide"].usable  # //*[@id='brand'] is gone
    assert outcomes["robula_plus"].usable  # //h1 still unique
    assert outcomes["robula_plus"].matched[0].text == "Daily Bugle"


def test_evaluation_errors_become_zero_match_outcomes():
    from similo.locators import LocatorExpr, LocatorSet

    tree = parse_html("<body><a>x</a></body>")
    bad = LocatorSet(
        "/html[1]/body[1]/a[1]",
        (LocatorExpr("robula_plus", "//a[starts-with(@id,'x')]", True),),
    )
    outcomes = execute_locators(bad, tree)
    assert outcomes[0].matched == []
    assert not outcomes[0].usable
    assert "unsupported xpath construct" in outcomes[0].error


def test_vote_unanimous(dataset_cases):
    tree = parse_html("<body><a id='x'>x</a><a>y</a></body>")
    el = tree.by_id("x")
    other = tree.by_tag("a")[1]
    outcomes = [
        _outcome("absolute", el),
        _outcome("id_relative", el),
        _outcome("selenium_ide", el),
        _outcome("robula_plus", el),
        _outcome("montoto", other, el),  # not usable: two matches
    ]
    for variant in ("worst", "best", "weighted"):
        assert vote(outcomes, variant) is el


def test_vote_split_best_and_worst_differ():
    tree = parse_html("<body><a>one</a><a>two</a></body>")
    first, second = tree.by_tag("a")
    outcomes = [
        _outcome("absolute", first),
        _outcome("id_relative", first),
        _outcome("selenium_ide", second),
        _outcome("robula_plus", second),
    ]
    assert vote(outcomes, "best") is first  # earliest supporting kind wins
    assert vote(outcomes, "worst") is second  # latest supporting kinds win
    # weighted: robula+selenium outweigh absolute+id_relative
    assert vote(outcomes, "weighted") is second


def test_vote_weighted_uses_kind_weights():
    tree = parse_html("<body><a>one</a><a>two</a></body>")
    first, second = tree.by_tag("a")
    outcomes = [
        _outcome("absolute", first),
        _outcome("id_relative", first),
        _outcome("robula_plus", second),
    ]
    # unweighted: 2 votes beat 1
    assert vote(outcomes, "best") is first
    # default weights: 0.21 + 0.41 < 0.65? no: 0.62 < 0.65 → second wins
    assert vote(outcomes, "weighted") is second
    flipped = vote(outcomes, "weighted", kind_weights={"absolute": 1.0, "id_relative": 1.0, "robula_plus": 0.5})
    assert flipped is first


def test_vote_no_usable_outcomes_is_absent():
    assert vote([_outcome("absolute")], "best") is None
    assert vote([], "worst") is None


def test_vote_rejects_unknown_variant_and_bad_weights():
    tree = parse_html("<body><a>x</a></body>")
    el = tree.by_tag("a")[0]
    with pytest.raises(ValueError):
        vote([_outcome("absolute", el)], "plurality")
    with pytest.raises(ValueError):
        vote([_outcome("absolute", el)], "weighted", kind_weights={"absolute": 0.0})
    with pytest.raises(ValueError):
        vote([_outcome("absolute", el)], "limit")


def test_default_kind_weights_are_normalized_located_rates():
    assert DEFAULT_KIND_WEIGHTS["robula_plus"] == pytest.approx(0.65)
    assert DEFAULT_KIND_WEIGHTS["absolute"] == pytest.approx(0.21)
    assert all(0 < w <= 1 for w in DEFAULT_KIND_WEIGHTS.values())


def test_theoretical_limit_any_correct_locator():
    tree = parse_html("<body><ul><li><a>x</a></li></ul></body>")
    anchor = tree.by_tag("a")[0]
    li = tree.by_tag("li")[0]
    oracle = absolute_xpath(tree, anchor)
    assert theoretical_limit([_outcome("robula_plus", anchor)], oracle)
    assert not theoretical_limit([_outcome("robula_plus")], oracle)
    # one trailing step off still counts
    assert theoretical_limit([_outcome("montoto", li)], oracle)
    # two steps off does not
    ul = tree.by_tag("ul")[0]
    assert not theoretical_limit([_outcome("montoto", ul)], oracle)


def test_theoretical_limit_is_monotone():
    tree = parse_html("<body><a>x</a><p>y</p></body>")
    anchor = tree.by_tag("a")[0]
    p = tree.by_tag("p")[0]
    oracle = absolute_xpath(tree, anchor)
    base = [_outcome("absolute", p)]
    assert not theoretical_limit(base, oracle)
    assert theoretical_limit(base + [_outcome("montoto", anchor)], oracle)
    # adding outcomes never flips true to false
    assert theoretical_limit([_outcome("montoto", anchor)] + base, oracle)
