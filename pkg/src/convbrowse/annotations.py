"""Extraction of conversational annotations from parsed pages.

Authors attach conversational knowledge to markup through a small attribute
vocabulary:

``bot-intent``
    Intent identifier; its presence makes the element conversationally
    addressable.
``bot-link``
    ``path[#intent]`` target; presence turns the intent into a link intent.
``bot-type``
    One of ``text``, ``list``, ``table``, ``form``; names the element bot
    that acts on the content. Typed intents are leaves.
``bot-keywords``
    Comma-separated synonym phrases used to train the page model.
``bot-description``
    A short sentence used when orienting the user.
``bot-attribute``
    A content role inside a typed element (``title``, ``paragraph``,
    ``item``, ``caption``, ``header``, ``field``, ``submit``).
``bot-label``
    Explicit conversational name for a form field.

Each attribute is also accepted with a ``data-`` prefix so that annotated
corpora can remain standards-valid HTML; the two spellings must agree when
both are present.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .dom import DomNode
from .errors import DuplicateIntentId, MalformedAnnotation
from .locator import PageLocator, parse_link_target

ATTR_INTENT = "bot-intent"
ATTR_LINK = "bot-link"
ATTR_TYPE = "bot-type"
ATTR_KEYWORDS = "bot-keywords"
ATTR_DESCRIPTION = "bot-description"
ATTR_ATTRIBUTE = "bot-attribute"
ATTR_LABEL = "bot-label"

BOT_TYPES = ("text", "list", "table", "form")

CONTENT_ROLES = frozenset({"title", "paragraph", "item", "caption", "header", "field", "submit"})

_INTENT_TOKEN = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")
_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z0-9])(?=[A-Z])")
_SPACE_RUN = re.compile(r"\s+")


@dataclass
class AnnotatedElement:
    """A DOM element together with its extracted annotation attributes."""

    intent_id: str
    kind: str  # "selection" | "link"
    element: DomNode
    link_target: Optional[PageLocator] = None
    bot_type: Optional[str] = None
    keywords: list[str] = field(default_factory=list)
    description: Optional[str] = None
    children: list["AnnotatedElement"] = field(default_factory=list)


def annotation_attr(node: DomNode, name: str) -> Optional[str]:
    """Read an annotation attribute, accepting the ``data-`` alias."""
    bare = node.attributes.get(name)
    prefixed = node.attributes.get("data-" + name)
    if bare is not None and prefixed is not None and bare != prefixed:
        raise MalformedAnnotation(
            f"conflicting values for {name!r} and 'data-{name}'", describe_element(node)
        )
    return bare if bare is not None else prefixed


def describe_element(node: DomNode) -> str:
    intent = node.attributes.get(ATTR_INTENT) or node.attributes.get("data-" + ATTR_INTENT)
    label = f"<{node.tag}>"
    if intent:
        label = f"<{node.tag} bot-intent={intent!r}>"
    return f"{label} on line {node.source_line}"


def humanize_intent(intent_id: str) -> str:
    """Readable phrase for an intent identifier ("LatestPaper" -> "latest paper")."""
    spaced = _CAMEL_BOUNDARY.sub(" ", intent_id)
    spaced = re.sub(r"[^A-Za-z0-9]+", " ", spaced)
    return _SPACE_RUN.sub(" ", spaced).strip().lower()


def split_keywords(raw: str) -> list[str]:
    """Comma-split keyword phrases with inner whitespace collapsed."""
    phrases = []
    for chunk in raw.split(","):
        phrase = _SPACE_RUN.sub(" ", chunk).strip()
        if phrase:
            phrases.append(phrase)
    return phrases


def extract_annotations(
    root: DomNode,
    base: str = "",
    page_path: str = "",
) -> list[AnnotatedElement]:
    """Extract the annotation forest beneath ``root`` (usually the body).

    Nesting mirrors DOM nesting: an element is a child of the nearest
    annotated ancestor. Elements carrying only content-role markers are left
    for the element bots to interpret, but their role names are validated
    here so authoring mistakes surface early.
    """
    seen: dict[str, DomNode] = {}
    page_locator = PageLocator(base, page_path)
    forest = _walk(root, seen, page_locator, inside_typed=None)
    return forest


def _walk(
    node: DomNode,
    seen: dict[str, DomNode],
    page: PageLocator,
    inside_typed: Optional[AnnotatedElement],
) -> list[AnnotatedElement]:
    collected: list[AnnotatedElement] = []
    for child in node.element_children:
        _validate_content_role(child)
        intent_value = annotation_attr(child, ATTR_INTENT)
        if intent_value is None:
            collected.extend(_walk(child, seen, page, inside_typed))
            continue
        if inside_typed is not None:
            raise MalformedAnnotation(
                f"intent {intent_value!r} nested inside typed intent "
                f"{inside_typed.intent_id!r}; typed intents are leaves",
                describe_element(child),
            )
        annotated = _build(child, intent_value, seen, page)
        annotated.children = _walk(
            child, seen, page, inside_typed=annotated if annotated.bot_type else None
        )
        if annotated.bot_type and annotated.children:
            # Unreachable via _walk's guard, kept as a safety net.
            raise MalformedAnnotation(
                f"typed intent {annotated.intent_id!r} has nested intents",
                describe_element(child),
            )
        collected.append(annotated)
    return collected


def _build(
    element: DomNode,
    intent_value: str,
    seen: dict[str, DomNode],
    page: PageLocator,
) -> AnnotatedElement:
    intent_id = intent_value.strip()
    location = describe_element(element)
    if not _INTENT_TOKEN.match(intent_id):
        raise MalformedAnnotation(f"invalid intent identifier {intent_value!r}", location)
    if intent_id in seen:
        raise DuplicateIntentId(intent_id, location)
    seen[intent_id] = element

    link_value = annotation_attr(element, ATTR_LINK)
    link_target: Optional[PageLocator] = None
    if link_value is not None:
        if not link_value.strip():
            raise MalformedAnnotation("link annotation with empty target", location)
        path, fragment = parse_link_target(link_value)
        link_target = page.sibling(path, fragment)

    type_value = annotation_attr(element, ATTR_TYPE)
    bot_type: Optional[str] = None
    if type_value is not None:
        bot_type = type_value.strip().lower()
        if bot_type not in BOT_TYPES:
            raise MalformedAnnotation(f"unknown bot type {type_value!r}", location)
        if link_target is not None:
            raise MalformedAnnotation(
                f"intent {intent_id!r} declares both a link target and a bot type", location
            )

    keywords_value = annotation_attr(element, ATTR_KEYWORDS)
    keywords = split_keywords(keywords_value) if keywords_value else []
    if not keywords:
        # Keep every intent trainable: fall back to the identifier itself.
        keywords = [humanize_intent(intent_id)]

    description = annotation_attr(element, ATTR_DESCRIPTION)
    if description is not None:
        description = _SPACE_RUN.sub(" ", description).strip() or None

    return AnnotatedElement(
        intent_id=intent_id,
        kind="link" if link_target is not None else "selection",
        element=element,
        link_target=link_target,
        bot_type=bot_type,
        keywords=keywords,
        description=description,
    )


def _validate_content_role(element: DomNode) -> None:
    role = annotation_attr(element, ATTR_ATTRIBUTE)
    if role is None:
        return
    if role.strip().lower() not in CONTENT_ROLES:
        raise MalformedAnnotation(f"unknown content role {role!r}", describe_element(element))


def count_intent_attributes(root: DomNode) -> int:
    """Independent scan: how many elements under ``root`` declare an intent."""
    count = 0
    for element in root.iter_elements():
        if element is root:
            continue
        if ATTR_INTENT in element.attributes or ("data-" + ATTR_INTENT) in element.attributes:
            count += 1
    return count
