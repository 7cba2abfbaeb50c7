from hypothesis import given, strategies as st

from convbrowse.context_tree import (
    ROOT_INTENT,
    build_context_tree,
    find_node,
    path_to_root,
    tree_to_dict,
)
from convbrowse.dom import document_body, parse_html
from convbrowse.locator import PageLocator
from convbrowse.pages import Page
from convbrowse.annotations import extract_annotations


def page_from_markup(markup: str, title: str = "Test") -> Page:
    body = document_body(parse_html(markup))
    return Page(
        locator=PageLocator("", "test.html"),
        title=title,
        root=body,
        annotations=extract_annotations(body),
        page_description=None,
    )


def test_home_tree_shape(home_tree):
    root = home_tree.root
    assert root.node_kind == "root"
    assert root.intent == ROOT_INTENT
    assert [c.intent for c in root.children] == ["About", "LatestPaper", "Publications", "Login"]
    latest = root.children[1]
    assert [c.intent for c in latest.children] == ["Title"]
    assert latest.children[0].bot_type == "text"
    assert len(home_tree.nodes) == 6


def test_edge_count_is_nodes_minus_one(home_tree, corpus_page):
    assert home_tree.edge_count == len(home_tree.nodes) - 1
    for path in ["about.html", "publications.html", "login.html", "welcome.html"]:
        tree = build_context_tree(corpus_page(path))
        assert tree.edge_count == len(tree.nodes) - 1


def test_root_keys_fixed(home_tree):
    assert home_tree.root.keys == ["this page", "the page", "Home"]


def test_root_desc_prefers_page_description(home_tree):
    assert home_tree.root.desc == "Welcome to the ConvBrowse research project site."


def test_untyped_leaf_defaults_to_text():
    page = page_from_markup("<body><div bot-intent='Plain'>words</div></body>")
    tree = build_context_tree(page)
    node = find_node(tree, "Plain")
    assert node.bot_type == "text"
    assert node.node_kind == "selection"


def test_link_leaf_keeps_no_bot_type(home_tree):
    login = find_node(home_tree, "Login")
    assert login.node_kind == "link"
    assert login.bot_type is None
    assert login.link.path == "login.html"


def test_empty_page_single_root():
    tree = build_context_tree(page_from_markup("<body><p>nothing here</p></body>"))
    assert len(tree.nodes) == 1
    assert tree.root.children == []


def test_seven_annotations_make_eight_nodes():
    markup = "<body>" + "".join(
        f"<div bot-intent='I{i}'>x</div>" for i in range(7)
    ) + "</body>"
    tree = build_context_tree(page_from_markup(markup))
    assert len(tree.nodes) == 8


def test_find_node(home_tree):
    assert find_node(home_tree, "LatestPaper").intent == "LatestPaper"
    assert find_node(home_tree, "Nope") is None
    assert find_node(home_tree, ROOT_INTENT) is home_tree.root


def test_path_to_root(home_tree):
    title = find_node(home_tree, "Title")
    path = path_to_root(title)
    assert [n.intent for n in path] == ["Title", "LatestPaper", ROOT_INTENT]
    assert path_to_root(home_tree.root) == [home_tree.root]
    for node in home_tree.nodes:
        assert path_to_root(node)[-1] is home_tree.root


def test_document_order_stability(home_page):
    first = build_context_tree(home_page)
    second = build_context_tree(home_page)
    assert [n.intent for n in first.nodes] == [n.intent for n in second.nodes]
    assert [n.order for n in first.nodes] == list(range(len(first.nodes)))


def test_every_intent_in_exactly_one_node(home_page, home_tree):
    def intents(forest):
        for annotated in forest:
            yield annotated.intent_id
            yield from intents(annotated.children)

    annotated_ids = list(intents(home_page.annotations))
    node_ids = [n.intent for n in home_tree.nodes if n.intent != ROOT_INTENT]
    assert sorted(annotated_ids) == sorted(node_ids)


def test_tree_to_dict_shape(home_tree):
    rendered = tree_to_dict(home_tree)
    assert rendered["intent"] == ROOT_INTENT
    assert rendered["kind"] == "root"
    assert [c["intent"] for c in rendered["children"]] == [
        "About", "LatestPaper", "Publications", "Login",
    ]
    title = rendered["children"][1]["children"][0]
    assert title["type"] == "text"
    assert title["keys"] == ["title", "paper title"]


@st.composite
def nested_markup(draw):
    """Random annotation forests rendered as markup, for shape properties."""
    count = draw(st.integers(min_value=0, max_value=10))
    pieces = []
    open_divs = 0
    for i in range(count):
        if open_divs and draw(st.booleans()):
            pieces.append("</div>")
            open_divs -= 1
        pieces.append(f"<div bot-intent='N{i}'>")
        open_divs += 1
    pieces.extend("</div>" for _ in range(open_divs))
    return "<body>" + "".join(pieces) + "</body>", count


@given(nested_markup())
def test_tree_shape_property(case):
    markup, count = case
    tree = build_context_tree(page_from_markup(markup))
    assert len(tree.nodes) == count + 1
    assert tree.edge_count == len(tree.nodes) - 1
    for node in tree.nodes:
        if node is not tree.root:
            assert node.parent is not None
            assert node in node.parent.children
