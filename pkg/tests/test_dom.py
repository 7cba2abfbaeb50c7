import re

from hypothesis import given, strategies as st

from convbrowse.dom import DomNode, document_body, document_title, parse_html


def body_of(markup: str) -> DomNode:
    return document_body(parse_html(markup))


def test_basic_nesting_and_attributes():
    body = body_of("<html><body><div id='a' class='x'><span>hi</span></div></body></html>")
    div = body.element_children[0]
    assert div.tag == "div"
    assert div.attributes == {"id": "a", "class": "x"}
    assert div.element_children[0].tag == "span"
    assert div.text == "hi"


def test_duplicate_attribute_first_wins():
    body = body_of("<body><p id='first' id='second'>x</p></body>")
    assert body.element_children[0].attr("id") == "first"


def test_void_elements_do_not_nest():
    body = body_of("<body><p>a<br>b</p><img src='x'><p>c</p></body>")
    paragraphs = body.find_all("p")
    assert len(paragraphs) == 2
    assert paragraphs[0].text == "a b"
    br = paragraphs[0].element_children[0]
    assert br.tag == "br"
    assert br.children == []


def test_implicit_paragraph_close():
    body = body_of("<body><p>one<p>two<div>three</div></body>")
    children = body.element_children
    assert [c.tag for c in children] == ["p", "p", "div"]
    assert children[0].text == "one"
    assert children[1].text == "two"


def test_implicit_list_item_close():
    body = body_of("<body><ul><li>a<li>b<li>c</ul></body>")
    items = body.find_all("li")
    assert [i.text for i in items] == ["a", "b", "c"]
    ul = body.element_children[0]
    assert len(ul.element_children) == 3


def test_implicit_table_cell_close():
    body = body_of("<body><table><tr><td>1<td>2<tr><td>3<td>4</table></body>")
    rows = body.find_all("tr")
    assert len(rows) == 2
    assert [c.text for c in rows[0].element_children] == ["1", "2"]
    assert [c.text for c in rows[1].element_children] == ["3", "4"]


def test_stray_end_tag_is_ignored():
    body = body_of("<body><div>a</span></div><p>b</p></body>")
    assert [c.tag for c in body.element_children] == ["div", "p"]


def test_unclosed_elements_recovered():
    body = body_of("<body><div><span>deep</body>")
    assert body.element_children[0].element_children[0].text == "deep"


def test_script_and_style_excluded_from_text():
    body = body_of("<body><p>keep</p><script>var x = 'drop';</script><style>p{}</style></body>")
    assert body.text == "keep"


def test_text_whitespace_normalized():
    body = body_of("<body>  hello \n\t world  <b>  again </b>\n</body>")
    assert body.text == "hello world again"


def test_entities_decoded():
    body = body_of("<body><p>a &amp; b &lt;c&gt;</p></body>")
    assert body.text == "a & b <c>"


def test_title_extraction():
    doc = parse_html("<html><head><title> My  Page </title></head><body></body></html>")
    assert document_title(doc) == "My Page"


def test_fragment_without_body():
    body = body_of("<div><p>loose</p></div>")
    assert body.tag == "#document"
    assert body.text == "loose"


def test_parent_links_consistent():
    body = body_of("<body><div><span>x</span></div></body>")
    span = body.find_first("span")
    assert span.is_descendant_of(body)
    assert not body.is_descendant_of(span)


@given(st.lists(st.sampled_from(["  ", "a", "\n", "b c", "\t", "d"]), max_size=12))
def test_text_never_has_double_whitespace(chunks):
    markup = "<body><p>" + "</p><p>".join(chunks) + "</p></body>"
    text = body_of(markup).text
    assert not re.search(r"\s\s", text)
    assert text == text.strip()


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=200))
def test_parser_never_raises(markup):
    parse_html(markup)
