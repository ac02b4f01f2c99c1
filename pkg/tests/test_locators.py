from similo.dom import parse_html, candidates
from similo.locators import (
    GeneratorConfig,
    KIND_ABSOLUTE,
    KIND_ID_RELATIVE,
    KIND_MONTOTO,
    KIND_ROBULA_PLUS,
    KIND_SELENIUM_IDE,
    gen_all,
    gen_montoto,
    gen_robula_plus,
    gen_selenium_ide,
)
from similo.xpath import absolute_xpath, evaluate, parse_xpath


def contact_tree(dataset_cases):
    case = next(c for c in dataset_cases if c.site == "contact")
    return parse_html(case.old_html)


# -- selenium-ide chain ---------------------------------------------------------


def test_selenium_ide_prefers_unique_id(dataset_cases):
    tree = contact_tree(dataset_cases)
    subject = tree.by_id("subject")
    locator = gen_selenium_ide(tree, subject)
    assert locator.expr == "//*[@id='subject']"
    assert locator.unique_at_generation


def test_selenium_ide_link_text_for_anchors(dataset_cases):
    tree = contact_tree(dataset_cases)
    contact = next(a for a in tree.by_tag("a") if a.text == "Contact")
    locator = gen_selenium_ide(tree, contact)
    assert locator.expr == "//a[text()='Contact']"
    assert evaluate(tree, locator.expr) == [contact]


def test_selenium_ide_name_attribute():
    tree = parse_html(
        "<body><input id='q' name='q'><input name='q2'><input name='q2' class='dup'></body>"
    )
    second = tree.by_tag("input")[1]
    # duplicate name: chain moves past //*[@name='q2'] to the class attribute
    third = tree.by_tag("input")[2]
    assert gen_selenium_ide(tree, third).expr == "//input[@class='dup']"
    assert gen_selenium_ide(tree, second).expr == absolute_xpath(tree, second)


def test_selenium_ide_falls_back_to_absolute():
    tree = parse_html("<body><p>x</p><p>x</p></body>")
    second = tree.by_tag("p")[1]
    locator = gen_selenium_ide(tree, second)
    assert locator.expr == absolute_xpath(tree, second)


# -- bottom-up text/attribute generator ----------------------------------------


def test_montoto_single_attribute():
    tree = parse_html("<body><input name='email'><input name='other'></body>")
    locator = gen_montoto(tree, tree.by_tag("input")[0])
    assert locator is not None
    assert locator.expr == "//input[@name='email']"
    assert evaluate(tree, locator.expr) == [tree.by_tag("input")[0]]


def test_montoto_absent_for_indistinguishable_twins():
    tree = parse_html(
        "<body><div><ul><li>Item</li></ul></div><div><ul><li>Item</li></ul></div></body>"
    )
    first = tree.by_tag("li")[0]
    assert gen_montoto(tree, first) is None


def test_montoto_extends_through_ancestor_with_id():
    tree = parse_html(
        "<body><div id='a'><span>X</span></div><div id='b'><span>X</span></div></body>"
    )
    first = tree.by_tag("span")[0]
    locator = gen_montoto(tree, first)
    assert locator is not None
    assert locator.expr == "//div[@id='a']/span[text()='X']"
    assert evaluate(tree, locator.expr) == [first]


def test_montoto_text_predicate_comes_first():
    tree = parse_html("<body><a href='/go'>Go</a><a href='/stop'>Stop</a></body>")
    locator = gen_montoto(tree, tree.by_tag("a")[0])
    assert locator.expr == "//a[text()='Go'][@href='/go']"


# -- breadth-first specialization -----------------------------------------------


def test_robula_unique_id_predicate(dataset_cases):
    tree = contact_tree(dataset_cases)
    name_input = tree.by_id("name")
    locator = gen_robula_plus(tree, name_input)
    assert locator.expr == "//*[@id='name']"


def test_robula_star_to_tag_when_tag_unique(dataset_cases):
    case = next(c for c in dataset_cases if c.site == "news")
    tree = parse_html(case.old_html)
    h1 = tree.by_tag("h1")[0]
    assert gen_robula_plus(tree, h1).expr == "//h1"


def test_robula_positional_predicate_for_twins():
    tree = parse_html("<body><button class='x'>Go</button><button class='x'>Go</button></body>")
    second = tree.by_tag("button")[1]
    locator = gen_robula_plus(tree, second)
    assert evaluate(tree, locator.expr) == [second]
    assert any(p == "[2]" or "[2]" in locator.expr for p in [locator.expr])


def test_robula_blacklist_skips_volatile_attributes():
    tree = parse_html(
        "<body>"
        "<a style='color:red' onclick='go()' href='/x?session=1'>One</a>"
        "<a style='color:blue' onclick='stop()' href='/y?session=2'>One</a>"
        "</body>"
    )
    first = tree.by_tag("a")[0]
    locator = gen_robula_plus(tree, first)
    assert "style" not in locator.expr
    assert "onclick" not in locator.expr
    assert "session" not in locator.expr
    assert evaluate(tree, locator.expr) == [first]


def test_robula_honors_config_priority():
    tree = parse_html(
        "<body><input name='n1' class='c'><input name='n2' class='c'></body>"
    )
    first = tree.by_tag("input")[0]
    default = gen_robula_plus(tree, first)
    assert default.expr == "//*[@name='n1']"
    declassed = gen_robula_plus(
        tree, first, GeneratorConfig(attribute_priority=("class",), attribute_blacklist=frozenset({"name"}))
    )
    assert "@name" not in declassed.expr
    assert evaluate(tree, declassed.expr) == [first]


def _expr_length(expr: str) -> int:
    parsed = parse_xpath(expr)
    return len(parsed.steps) + sum(len(s.predicates) for s in parsed.steps)


def test_robula_never_longer_than_absolute(fixture_pages):
    for html in fixture_pages.values():
        tree = parse_html(html)
        for el in candidates(tree):
            robula = gen_robula_plus(tree, el)
            assert _expr_length(robula.expr) <= _expr_length(absolute_xpath(tree, el))


# -- bundling -------------------------------------------------------------------


def test_gen_all_bundles_and_verifies(dataset_cases):
    tree = contact_tree(dataset_cases)
    subject = tree.by_id("subject")
    bundle = gen_all(tree, subject)
    kinds = {loc.kind for loc in bundle.locators}
    assert {KIND_ABSOLUTE, KIND_ID_RELATIVE, KIND_SELENIUM_IDE, KIND_ROBULA_PLUS} <= kinds
    assert bundle.target_xpath == absolute_xpath(tree, subject)
    for locator in bundle.locators:
        matches = evaluate(tree, locator.expr)
        assert subject in matches
        if locator.unique_at_generation:
            assert matches == [subject]


def test_gen_all_montoto_may_be_absent():
    tree = parse_html(
        "<body><div><ul><li>Item</li></ul></div><div><ul><li>Item</li></ul></div></body>"
    )
    first = tree.by_tag("li")[0]
    bundle = gen_all(tree, first)
    assert bundle.get(KIND_MONTOTO) is None
    assert len(bundle.locators) == 4


def test_gen_all_id_relative_equals_absolute_without_ids():
    tree = parse_html("<body><div><a>x</a><a>y</a></div></body>")
    el = tree.by_tag("a")[0]
    bundle = gen_all(tree, el)
    assert bundle.get(KIND_ID_RELATIVE).expr == bundle.get(KIND_ABSOLUTE).expr


def test_gen_all_every_locator_unique_with_unique_id(dataset_cases):
    tree = contact_tree(dataset_cases)
    send = tree.by_id("send-message")
    bundle = gen_all(tree, send)
    assert len(bundle.locators) == 5
    for locator in bundle.locators:
        assert evaluate(tree, locator.expr) == [send], locator


def test_generation_is_deterministic(fixture_pages):
    html = fixture_pages["contact/old"]
    tree_a = parse_html(html)
    tree_b = parse_html(html)
    for node_a, node_b in zip(candidates(tree_a), candidates(tree_b)):
        bundle_a = gen_all(tree_a, node_a)
        bundle_b = gen_all(tree_b, node_b)
        assert [(l.kind, l.expr) for l in bundle_a.locators] == [
            (l.kind, l.expr) for l in bundle_b.locators
        ]


def test_values_with_both_quote_kinds_are_skipped():
    tree = parse_html(
        """<body><a title="mix 'n' &quot;match&quot;">x</a><a>y</a></body>"""
    )
    first = tree.by_tag("a")[0]
    bundle = gen_all(tree, first)
    for locator in bundle.locators:
        assert "mix" not in locator.expr
        assert evaluate(tree, locator.expr), locator
