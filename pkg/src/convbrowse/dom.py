"""HTML document model and an error-tolerant parser.

The parser is built on the tokenizer in :mod:`html.parser` and adds the tree
construction rules real pages rely on: void elements never open a scope,
common containers (``p``, ``li``, ``td`` ...) close implicitly when a sibling
or block element starts, and stray end tags are dropped instead of failing.
No scripts are executed; ``script``/``style`` content is excluded from text
extraction entirely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Iterator, Optional

TEXT_TAG = "#text"
DOCUMENT_TAG = "#document"

VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

# Elements whose start tag implicitly closes an open <p>.
_P_CLOSERS = frozenset(
    "address article aside blockquote details div dl fieldset figure footer form "
    "h1 h2 h3 h4 h5 h6 header hr main nav ol p pre section table ul".split()
)

# Incoming start tag -> open tags it closes while one of them is on top.
_IMPLIED_END: dict[str, set[str]] = {
    "li": {"li"},
    "dt": {"dt", "dd"},
    "dd": {"dt", "dd"},
    "tr": {"tr", "td", "th"},
    "td": {"td", "th"},
    "th": {"td", "th"},
    "tbody": {"thead", "tr", "td", "th"},
    "tfoot": {"thead", "tbody", "tr", "td", "th"},
    "option": {"option"},
    "optgroup": {"option", "optgroup"},
}
for _tag in _P_CLOSERS:
    _IMPLIED_END.setdefault(_tag, set()).add("p")

_WHITESPACE_RUN = re.compile(r"\s+")

HEADING_TAGS = frozenset({"h1", "h2", "h3", "h4", "h5", "h6"})
_NON_CONTENT_TAGS = frozenset({"script", "style"})

# Elements that render as visual breaks; they contribute whitespace so that
# extracted text never glues adjacent blocks together ("2020" + "Title").
_TEXT_BREAK_TAGS = HEADING_TAGS | frozenset(
    "p div li ul ol tr td th table thead tbody tfoot section article header "
    "footer nav main blockquote pre form label option br hr".split()
)


@dataclass
class DomNode:
    """One node of the parsed document tree.

    Text is represented as child nodes with ``tag == "#text"`` so that
    document order is preserved exactly; ``children`` in the structural sense
    (element children) is available via :attr:`element_children`.
    """

    tag: str
    attributes: dict[str, str] = field(default_factory=dict)
    children: list["DomNode"] = field(default_factory=list)
    raw_text: str = ""
    source_line: int = field(default=0, compare=False)
    parent: Optional["DomNode"] = field(default=None, repr=False, compare=False)

    @property
    def is_text(self) -> bool:
        return self.tag == TEXT_TAG

    @property
    def element_children(self) -> list["DomNode"]:
        return [c for c in self.children if not c.is_text]

    @property
    def text(self) -> str:
        """Document-order concatenation of descendant text, whitespace-normalized."""
        parts: list[str] = []
        self._collect_text(parts)
        return _WHITESPACE_RUN.sub(" ", "".join(parts)).strip()

    def _collect_text(self, parts: list[str]) -> None:
        if self.is_text:
            parts.append(self.raw_text)
            return
        if self.tag in _NON_CONTENT_TAGS:
            return
        if self.tag in _TEXT_BREAK_TAGS:
            parts.append("\n")
        for child in self.children:
            child._collect_text(parts)
        if self.tag in _TEXT_BREAK_TAGS:
            parts.append("\n")

    def attr(self, name: str) -> Optional[str]:
        return self.attributes.get(name)

    def iter_elements(self) -> Iterator["DomNode"]:
        """Pre-order traversal of this node and its element descendants."""
        if not self.is_text:
            yield self
            for child in self.children:
                yield from child.iter_elements()

    def find_all(self, tag: str) -> list["DomNode"]:
        return [n for n in self.iter_elements() if n.tag == tag and n is not self]

    def find_first(self, tag: str) -> Optional["DomNode"]:
        for node in self.iter_elements():
            if node.tag == tag and node is not self:
                return node
        return None

    def is_descendant_of(self, ancestor: "DomNode") -> bool:
        node = self.parent
        while node is not None:
            if node is ancestor:
                return True
            node = node.parent
        return False


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = DomNode(DOCUMENT_TAG)
        self._stack: list[DomNode] = [self.root]

    def handle_starttag(self, tag: str, attrs: list[tuple[str, Optional[str]]]) -> None:
        closers = _IMPLIED_END.get(tag)
        if closers:
            while len(self._stack) > 1 and self._stack[-1].tag in closers:
                self._stack.pop()
        attributes: dict[str, str] = {}
        for name, value in attrs:
            attributes.setdefault(name, value if value is not None else "")
        parent = self._stack[-1]
        node = DomNode(
            tag,
            attributes,
            source_line=self.getpos()[0],
            parent=parent,
        )
        parent.children.append(node)
        if tag not in VOID_ELEMENTS:
            self._stack.append(node)

    def handle_endtag(self, tag: str) -> None:
        for index in range(len(self._stack) - 1, 0, -1):
            if self._stack[index].tag == tag:
                del self._stack[index:]
                return
        # Stray end tag: ignore.

    def handle_data(self, data: str) -> None:
        if not data:
            return
        parent = self._stack[-1]
        if parent.tag in _NON_CONTENT_TAGS:
            return
        parent.children.append(DomNode(TEXT_TAG, raw_text=data, parent=parent))


def parse_html(markup: str) -> DomNode:
    """Parse markup into a document node, repairing common authoring errors."""
    builder = _TreeBuilder()
    builder.feed(markup)
    builder.close()
    return builder.root


def document_title(document: DomNode) -> str:
    title = document.find_first("title")
    return title.text if title is not None else ""


def document_body(document: DomNode) -> DomNode:
    """The ``<body>`` element, or the document itself for body-less fragments."""
    body = document.find_first("body")
    return body if body is not None else document
