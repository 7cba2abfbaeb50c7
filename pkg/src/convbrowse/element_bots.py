"""Pre-canned element bots for text, list, table and form content.

Each bot owns a fixed intent inventory matched with :class:`PatternMatcher`;
the inventories are built once at startup and reused for every site. A bot
call never mutates anything directly: it returns a verdict describing the
reply plus the binding updates to apply, and the caller commits those only
when the verdict wins the selection policy. Only form submission (behind an
explicit confirmation turn) ever causes a page transition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .annotations import ATTR_ATTRIBUTE, ATTR_LABEL, annotation_attr
from .dom import DomNode, HEADING_TAGS
from .matching import MatchResult, PatternMatcher
from .text import normalize

INTERNAL_THRESHOLD = 0.5

TEXT_PATTERNS: dict[str, list[str]] = {
    "read_all": [
        "read it",
        "read",
        "read the text",
        "read everything",
        "read all",
        "read it to me",
        "read this",
        "read it out loud",
        "read the whole thing",
    ],
    "read_titles": [
        "read the titles",
        "titles",
        "read the headings",
        "what are the titles",
        "read the titles only",
    ],
    "next_paragraph": ["next paragraph", "next", "go on", "continue"],
    "previous_paragraph": ["previous paragraph", "previous", "back a paragraph"],
    "repeat_paragraph": ["repeat the paragraph", "read that paragraph again", "read that again"],
}

LIST_PATTERNS: dict[str, list[str]] = {
    "count_items": [
        "how many items",
        "how many",
        "how many items are there",
        "count the items",
        "number of items",
        "how many entries",
    ],
    "read_all_items": [
        "read the items",
        "read all items",
        "read the list",
        "read them",
        "read them out",
        "list them",
        "read all",
        "read it",
    ],
    "next_item": ["next item", "next", "next one"],
    "previous_item": ["previous item", "previous", "previous one"],
    "read_item_n": [
        "read item <n>",
        "item <n>",
        "read the <n> item",
        "what is item <n>",
        "read number <n>",
    ],
}

TABLE_PATTERNS: dict[str, list[str]] = {
    "read_headers": [
        "read the headers",
        "headers",
        "what are the headers",
        "read the columns",
        "what are the columns",
        "what columns are there",
    ],
    "read_row_n": ["read row <n>", "row <n>", "read the <n> row", "what is in row <n>"],
    "read_column_named": [
        "read column <c>",
        "read the <c> column",
        "column <c>",
        "read the column <c>",
    ],
    "read_cell": [
        "read cell <n> <c>",
        "read row <n> column <c>",
        "what is in row <n> column <c>",
        "cell <n> <c>",
    ],
    "next_row": ["next row", "next"],
    "previous_row": ["previous row", "previous"],
}

FORM_PATTERNS: dict[str, list[str]] = {
    "list_fields": [
        "what do i need to fill in",
        "what fields are there",
        "list the fields",
        "which fields are there",
        "what are the fields",
        "what inputs are required",
        "what do i fill in",
        "what is required",
    ],
    "fill_field": [
        "set <f> to <v>",
        "set the <f> to <v>",
        "my <f> is <v>",
        "fill <f> with <v>",
        "fill in <f> with <v>",
        "change <f> to <v>",
    ],
    "review_inputs": [
        "review my inputs",
        "review",
        "what have i entered",
        "show my inputs",
        "check my inputs",
    ],
    "submit": ["submit", "submit the form", "send it", "send the form", "submit it"],
    "clear_field": ["clear <f>", "clear the <f>", "reset <f>", "reset the <f>"],
}

_MATCHERS: dict[str, PatternMatcher] = {
    "text": PatternMatcher(TEXT_PATTERNS, INTERNAL_THRESHOLD),
    "list": PatternMatcher(LIST_PATTERNS, INTERNAL_THRESHOLD),
    "table": PatternMatcher(TABLE_PATTERNS, INTERNAL_THRESHOLD),
    "form": PatternMatcher(FORM_PATTERNS, INTERNAL_THRESHOLD),
}


def configure_inventories(overrides: dict[str, dict[str, list[str]]]) -> None:
    """Replace bot inventories from configuration (process-wide, at startup)."""
    for bot_type, inventory in overrides.items():
        if bot_type not in _MATCHERS:
            raise ValueError(f"unknown element bot type: {bot_type!r}")
        _MATCHERS[bot_type] = PatternMatcher(inventory, INTERNAL_THRESHOLD)


@dataclass
class ElementBotBinding:
    """Session-local position state for one bound element."""

    bot_type: str
    element: DomNode
    cursor: int = -1  # -1 = before the first unit
    values: dict[str, str] = field(default_factory=dict)  # form fields only


@dataclass(frozen=True)
class SubmitRequest:
    """A form submission awaiting an explicit confirmation turn."""

    form_element: DomNode
    values_by_name: dict[str, str]
    summary: str
    submitter: Optional[Callable[[DomNode, dict[str, str]], object]] = None


@dataclass(frozen=True)
class ElementBotVerdict:
    understood: bool
    confidence: float
    reply: Optional[str] = None
    cursor: Optional[int] = None  # new cursor, applied only if the verdict wins
    values: Optional[dict[str, str]] = None  # replacement form values, ditto
    submit: Optional[SubmitRequest] = None


def _not_understood(result: Optional[MatchResult]) -> ElementBotVerdict:
    confidence = result.confidence if result is not None else 0.0
    return ElementBotVerdict(understood=False, confidence=min(confidence, INTERNAL_THRESHOLD - 1e-9))


def _answer(reply: str, confidence: float = 1.0, **updates) -> ElementBotVerdict:
    return ElementBotVerdict(understood=True, confidence=confidence, reply=reply, **updates)


def commit(binding: ElementBotBinding, verdict: ElementBotVerdict) -> None:
    """Apply a winning verdict's state updates to the binding."""
    if verdict.cursor is not None:
        binding.cursor = verdict.cursor
    if verdict.values is not None:
        binding.values = dict(verdict.values)


# --- content resolution -----------------------------------------------------


def _role_descendants(element: DomNode, role: str) -> list[DomNode]:
    found = []
    for node in element.iter_elements():
        if node is element:
            continue
        value = annotation_attr(node, ATTR_ATTRIBUTE)
        if value is not None and value.strip().lower() == role:
            found.append(node)
    return found


def text_paragraphs(element: DomNode) -> list[str]:
    marked = _role_descendants(element, "paragraph")
    if marked:
        return [n.text for n in marked]
    paragraphs = [n.text for n in element.find_all("p") if n.text]
    if paragraphs:
        return paragraphs
    whole = element.text
    return [whole] if whole else []

def text_titles(element: DomNode) -> list[str]:
    marked = _role_descendants(element, "title")
    if marked:
        return [n.text for n in marked]
    return [n.text for n in element.iter_elements() if n.tag in HEADING_TAGS and n.text]


def list_items(element: DomNode) -> list[str]:
    marked = _role_descendants(element, "item")
    if marked:
        return [n.text for n in marked]
    return [n.text for n in element.find_all("li")]


def _table_rows(element: DomNode) -> list[DomNode]:
    return element.find_all("tr")


def _row_cells(row: DomNode) -> list[DomNode]:
    return [c for c in row.element_children if c.tag in ("td", "th")]


def table_headers_and_rows(element: DomNode) -> tuple[list[str], list[list[str]]]:
    rows = _table_rows(element)
    if not rows:
        return [], []
    header_cells = _role_descendants(element, "header")
    if header_cells:
        header_ids = set(map(id, header_cells))
        headers = [c.text for c in header_cells]
        data_rows = [
            r for r in rows if not any(id(c) in header_ids for c in _row_cells(r))
        ]
    else:
        headers = [c.text for c in _row_cells(rows[0])]
        data_rows = rows[1:]
    return headers, [[c.text for c in _row_cells(r)] for r in data_rows]


@dataclass(frozen=True)
class FormField:
    name: str
    identity: str
    required: bool
    default: str = ""


def form_fields(element: DomNode) -> list[FormField]:
    controls = _role_descendants(element, "field")
    if not controls:
        controls = [
            n
            for n in element.iter_elements()
            if n.tag in ("input", "select", "textarea") and n.attr("name")
        ]
    fields = []
    for control in controls:
        name = control.attr("name") or control.attr("id") or ""
        identity = annotation_attr(control, ATTR_LABEL)
        if not identity:
            identity = _label_text(element, control)
        if not identity:
            identity = name
        fields.append(
            FormField(
                name=name,
                identity=normalize(identity),
                required="required" in control.attributes,
                default=control.attr("value") or "",
            )
        )
    return fields


def _label_text(form_element: DomNode, control: DomNode) -> str:
    control_id = control.attr("id")
    if not control_id:
        return ""
    for label in form_element.find_all("label"):
        if label.attr("for") == control_id:
            return label.text
    return ""


# --- the four bots ----------------------------------------------------------


def text_bot_handle(binding: ElementBotBinding, utterance: str) -> ElementBotVerdict:
    result = _MATCHERS["text"].score(utterance)
    if result is None or result.confidence < INTERNAL_THRESHOLD:
        return _not_understood(result)
    paragraphs = text_paragraphs(binding.element)

    if result.intent == "read_all":
        whole = binding.element.text
        return _answer(whole or "There is no text here.", result.confidence)
    if result.intent == "read_titles":
        titles = text_titles(binding.element)
        if not titles:
            return _answer("There are no titles here.", result.confidence)
        return _answer("The titles are: " + ", ".join(titles) + ".", result.confidence)
    if result.intent == "next_paragraph":
        index = binding.cursor + 1
        if index >= len(paragraphs):
            return _answer("There are no further paragraphs.", result.confidence)
        return _answer(paragraphs[index], result.confidence, cursor=index)
    if result.intent == "previous_paragraph":
        if binding.cursor <= 0:
            return _answer("There is no earlier paragraph.", result.confidence)
        index = binding.cursor - 1
        return _answer(paragraphs[index], result.confidence, cursor=index)
    if result.intent == "repeat_paragraph":
        if binding.cursor < 0 or binding.cursor >= len(paragraphs):
            return _answer(
                "We have not started reading yet; say 'next paragraph' or 'read it'.",
                result.confidence,
            )
        return _answer(paragraphs[binding.cursor], result.confidence)
    return _not_understood(result)


def list_bot_handle(binding: ElementBotBinding, utterance: str) -> ElementBotVerdict:
    result = _MATCHERS["list"].score(utterance)
    if result is None or result.confidence < INTERNAL_THRESHOLD:
        return _not_understood(result)
    items = list_items(binding.element)
    total = len(items)

    if result.intent == "count_items":
        noun = "item" if total == 1 else "items"
        return _answer(f"There are {total} {noun} in this list.", result.confidence)
    if result.intent == "read_all_items":
        if not items:
            return _answer("The list is empty.", result.confidence)
        return _answer(
            f"The {total} items are: " + "; ".join(items) + ".", result.confidence
        )
    if result.intent == "read_item_n":
        number = int(result.slots["n"])
        if number < 1 or number > total:
            return _answer(
                f"There is no item {number}; the list has {total} items.", result.confidence
            )
        return _answer(f"Item {number}: {items[number - 1]}", result.confidence, cursor=number - 1)
    if result.intent == "next_item":
        index = binding.cursor + 1
        if index >= total:
            return _answer("There are no further items.", result.confidence)
        return _answer(f"Item {index + 1}: {items[index]}", result.confidence, cursor=index)
    if result.intent == "previous_item":
        if binding.cursor <= 0:
            return _answer("There is no earlier item.", result.confidence)
        index = binding.cursor - 1
        return _answer(f"Item {index + 1}: {items[index]}", result.confidence, cursor=index)
    return _not_understood(result)


def _format_row(headers: list[str], row: list[str]) -> str:
    if headers and len(headers) == len(row):
        return ", ".join(f"{h}: {c}" for h, c in zip(headers, row)) + "."
    return ", ".join(row) + "."


def table_bot_handle(binding: ElementBotBinding, utterance: str) -> ElementBotVerdict:
    result = _MATCHERS["table"].score(utterance)
    if result is None or result.confidence < INTERNAL_THRESHOLD:
        return _not_understood(result)
    headers, rows = table_headers_and_rows(binding.element)
    total = len(rows)

    def headers_hint() -> str:
        return "The columns are: " + ", ".join(headers) + "." if headers else "This table has no headers."

    if result.intent == "read_headers":
        if not headers:
            return _answer("This table has no headers.", result.confidence)
        return _answer("The table columns are: " + ", ".join(headers) + ".", result.confidence)
    if result.intent == "read_row_n":
        number = int(result.slots["n"])
        if number < 1 or number > total:
            return _answer(
                f"There is no row {number}; the table has {total} rows.", result.confidence
            )
        return _answer(_format_row(headers, rows[number - 1]), result.confidence, cursor=number - 1)
    if result.intent == "read_column_named":
        wanted = normalize(result.slots["c"])
        column = next((i for i, h in enumerate(headers) if normalize(h) == wanted), None)
        if column is None:
            return _answer(
                f"There is no column named '{result.slots['c']}'. {headers_hint()}",
                result.confidence,
            )
        cells = [row[column] for row in rows if column < len(row)]
        return _answer(
            f"Column {headers[column]}: " + "; ".join(cells) + ".", result.confidence
        )
    if result.intent == "read_cell":
        number = int(result.slots["n"])
        wanted = normalize(result.slots["c"])
        column = next((i for i, h in enumerate(headers) if normalize(h) == wanted), None)
        if column is None:
            return _answer(
                f"There is no column named '{result.slots['c']}'. {headers_hint()}",
                result.confidence,
            )
        if number < 1 or number > total:
            return _answer(
                f"There is no row {number}; the table has {total} rows.", result.confidence
            )
        return _answer(
            f"{headers[column]} in row {number}: {rows[number - 1][column]}.",
            result.confidence,
            cursor=number - 1,
        )
    if result.intent == "next_row":
        index = binding.cursor + 1
        if index >= total:
            return _answer("There are no further rows.", result.confidence)
        return _answer(_format_row(headers, rows[index]), result.confidence, cursor=index)
    if result.intent == "previous_row":
        if binding.cursor <= 0:
            return _answer("There is no earlier row.", result.confidence)
        index = binding.cursor - 1
        return _answer(_format_row(headers, rows[index]), result.confidence, cursor=index)
    return _not_understood(result)


def _fields_reply(fields: list[FormField]) -> str:
    if not fields:
        return "This form has no fields."
    names = [f.identity for f in fields]
    required = [f.identity for f in fields if f.required]
    listing = ", ".join(names)
    if required and len(required) == len(fields):
        tail = "both required" if len(fields) == 2 else (
            "required" if len(fields) == 1 else "all required"
        )
        return f"You need to fill in: {listing} ({tail})."
    if required:
        return f"You need to fill in: {listing} ({', '.join(required)} required)."
    return f"You can fill in: {listing}."


def form_bot_handle(
    binding: ElementBotBinding,
    utterance: str,
    submitter: Optional[Callable[[DomNode, dict[str, str]], object]] = None,
) -> ElementBotVerdict:
    result = _MATCHERS["form"].score(utterance)
    if result is None or result.confidence < INTERNAL_THRESHOLD:
        return _not_understood(result)
    fields = form_fields(binding.element)
    by_identity = {f.identity: f for f in fields}

    def unknown_field_reply(wanted: str) -> ElementBotVerdict:
        listing = ", ".join(f.identity for f in fields) or "none"
        return _answer(
            f"There is no field called '{wanted}'. The fields are: {listing}.",
            result.confidence,
        )

    if result.intent == "list_fields":
        return _answer(_fields_reply(fields), result.confidence)
    if result.intent == "fill_field":
        identity = normalize(result.slots["f"])
        value = result.slots["v"]
        if identity not in by_identity:
            return unknown_field_reply(result.slots["f"])
        new_values = dict(binding.values)
        new_values[identity] = value
        return _answer(
            f"Okay, {identity} is set to '{value}'.", result.confidence, values=new_values
        )
    if result.intent == "clear_field":
        identity = normalize(result.slots["f"])
        if identity not in by_identity:
            return unknown_field_reply(result.slots["f"])
        if identity not in binding.values:
            return _answer(f"{identity} is already empty.", result.confidence)
        new_values = {k: v for k, v in binding.values.items() if k != identity}
        return _answer(f"Okay, {identity} is cleared.", result.confidence, values=new_values)
    if result.intent == "review_inputs":
        filled = [f for f in fields if f.identity in binding.values]
        if not filled:
            return _answer("Nothing has been filled in yet.", result.confidence)
        listing = ", ".join(f"{f.identity} = '{binding.values[f.identity]}'" for f in filled)
        return _answer(f"So far: {listing}.", result.confidence)
    if result.intent == "submit":
        missing = [
            f.identity for f in fields if f.required and not binding.values.get(f.identity)
        ]
        if missing:
            verb = "is" if len(missing) == 1 else "are"
            return _answer(
                f"I cannot submit yet: {' and '.join(missing)} {verb} still empty.",
                result.confidence,
            )
        values_by_name = {
            f.name: binding.values[f.identity] for f in fields if f.identity in binding.values
        }
        filled = [f for f in fields if f.identity in binding.values]
        summary = ", ".join(f"{f.identity} = '{binding.values[f.identity]}'" for f in filled)
        summary = summary or "no values"
        return ElementBotVerdict(
            understood=True,
            confidence=result.confidence,
            reply=f"Submit the form with {summary}? Say yes to confirm.",
            submit=SubmitRequest(
                form_element=binding.element,
                values_by_name=values_by_name,
                summary=summary,
                submitter=submitter,
            ),
        )
    return _not_understood(result)


_HANDLERS = {
    "text": text_bot_handle,
    "list": list_bot_handle,
    "table": table_bot_handle,
}


def handle(
    binding: ElementBotBinding,
    utterance: str,
    submitter: Optional[Callable[[DomNode, dict[str, str]], object]] = None,
) -> ElementBotVerdict:
    """Dispatch to the bot for the binding's type."""
    if binding.bot_type == "form":
        return form_bot_handle(binding, utterance, submitter)
    return _HANDLERS[binding.bot_type](binding, utterance)


def default_action(binding: ElementBotBinding) -> ElementBotVerdict:
    """What a bot does when its element is selected without a specific request."""
    if binding.bot_type == "text":
        whole = binding.element.text
        return _answer(whole or "There is no text here.")
    if binding.bot_type == "list":
        total = len(list_items(binding.element))
        noun = "item" if total == 1 else "items"
        return _answer(f"There are {total} {noun} in this list.")
    if binding.bot_type == "table":
        headers, _ = table_headers_and_rows(binding.element)
        if not headers:
            return _answer("This table has no headers.")
        return _answer("The table columns are: " + ", ".join(headers) + ".")
    if binding.bot_type == "form":
        return _answer(_fields_reply(form_fields(binding.element)))
    raise ValueError(f"unknown bot type: {binding.bot_type!r}")
