"""The per-page conversational context tree that drives bot selection.

Each node carries the intent identifier, its kind, the element bot type for
actionable leaves, the orientation description, the keyword phrases, a
reference to the annotated DOM element, and the link target for link intents.
A synthesized root stands for the page body. Trees are immutable after build
and safe to share between sessions of the same page.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .annotations import AnnotatedElement
from .dom import DomNode
from .locator import PageLocator
from .pages import Page

ROOT_INTENT = "__page__"

NODE_ROOT = "root"
NODE_SELECTION = "selection"
NODE_LINK = "link"


@dataclass(eq=False, slots=True)
class ContextNode:
    intent: str
    node_kind: str
    desc: str
    keys: list[str]
    elem: DomNode
    bot_type: Optional[str] = None
    link: Optional[PageLocator] = None
    children: list["ContextNode"] = field(default_factory=list)
    parent: Optional["ContextNode"] = field(default=None, repr=False)
    order: int = 0  # position in document order, root = 0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def subtree(self) -> Iterator["ContextNode"]:
        """This node and all descendants, pre-order in document order."""
        yield self
        for child in self.children:
            yield from child.subtree()

    def descendants(self) -> Iterator["ContextNode"]:
        for child in self.children:
            yield from child.subtree()

    def subtree_intents(self) -> frozenset[str]:
        return frozenset(node.intent for node in self.subtree())


@dataclass(eq=False)
class ContextTree:
    root: ContextNode
    nodes: list[ContextNode]  # document order, root first
    page_locator: Optional[PageLocator] = None
    _by_intent: dict[str, ContextNode] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._by_intent:
            self._by_intent = {node.intent: node for node in self.nodes}

    @property
    def edge_count(self) -> int:
        return sum(len(node.children) for node in self.nodes)


def build_context_tree(page: Page) -> ContextTree:
    """One node per annotated element plus a root for the body.

    Untyped leaf selection intents default to the text bot so that every
    leaf stays actionable; the root's keywords are fixed phrases that route
    page-level wording to it.
    """
    root_keys = ["this page", "the page"]
    if page.title:
        root_keys.append(page.title)
    root = ContextNode(
        intent=ROOT_INTENT,
        node_kind=NODE_ROOT,
        desc=page.page_description or page.title,
        keys=root_keys,
        elem=page.root,
    )
    nodes = [root]
    by_intent = {ROOT_INTENT: root}
    for annotated in page.annotations:
        root.children.append(_convert(annotated, root, nodes, by_intent))
    return ContextTree(root=root, nodes=nodes, page_locator=page.locator, _by_intent=by_intent)


def _convert(
    annotated: AnnotatedElement,
    parent: ContextNode,
    nodes: list[ContextNode],
    by_intent: dict[str, ContextNode],
) -> ContextNode:
    bot_type = annotated.bot_type
    if bot_type is None and annotated.kind == "selection" and not annotated.children:
        bot_type = "text"
    node = ContextNode(
        intent=annotated.intent_id,
        node_kind=NODE_LINK if annotated.kind == "link" else NODE_SELECTION,
        desc=annotated.description or "",
        keys=annotated.keywords,  # shared with the immutable page, never mutated
        elem=annotated.element,
        bot_type=bot_type,
        link=annotated.link_target,
        parent=parent,
        order=len(nodes),  # nodes grow in pre-order, so this equals document order
    )
    nodes.append(node)
    by_intent[node.intent] = node
    for child in annotated.children:
        node.children.append(_convert(child, node, nodes, by_intent))
    return node


def find_node(tree: ContextTree, intent: str) -> Optional[ContextNode]:
    return tree._by_intent.get(intent)


def path_to_root(node: ContextNode) -> list[ContextNode]:
    """The node's ancestor chain, starting at the node, ending at the root."""
    path = [node]
    while path[-1].parent is not None:
        path.append(path[-1].parent)
    return path


def tree_to_dict(tree: ContextTree) -> dict:
    """JSON-ready rendering for the debug dump endpoint."""

    def render(node: ContextNode) -> dict:
        return {
            "intent": node.intent,
            "kind": node.node_kind,
            "type": node.bot_type,
            "desc": node.desc,
            "keys": list(node.keys),
            "children": [render(child) for child in node.children],
        }

    return render(tree.root)
