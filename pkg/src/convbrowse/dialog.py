"""Per-session dialog state and the bot-selection policy.

Every utterance is resolved by one policy pass over the page's context tree:

1. a pending confirmation, if any, is resolved first;
2. built-in intents (orientation, where-am-i, repeat, go-back) win when they
   match with very high confidence, so "help" always works without shadowing
   the page vocabulary;
3. the current node is asked: element verdict for actionable leaves, the page
   model restricted to the node's subtree otherwise;
4. failing that, the current node's descendants are tried depth-first in
   document order, first node at or above the threshold wins;
5. failing that, the input escalates ancestor by ancestor toward the root;
6. if the root cannot claim it either, the user is asked to reformulate and
   session state is left untouched.

The ensemble of page model and element bots thus answers as a single bot.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import element_bots, pages
from .annotations import humanize_intent
from .context_tree import (
    ContextNode,
    ContextTree,
    NODE_LINK,
    NODE_SELECTION,
    ROOT_INTENT,
    build_context_tree,
    find_node,
    path_to_root,
)
from .element_bots import ElementBotBinding, ElementBotVerdict, SubmitRequest
from .errors import FetchError, OutOfScope, PageNotFound, UnknownField
from .locator import PageLocator
from .matching import PatternMatcher
from .nlu import (
    Classification,
    DEFAULT_TEMPLATES,
    IntentModel,
    TrainingDataset,
    UtteranceTemplate,
    classify,
    generate_training_data,
    train,
)
from .pages import FetchConfig, Page
from .text import normalize

TAU_DEFAULT = 0.55
TAU_BUILTIN = 0.8

KIND_ANSWER = "answer"
KIND_ORIENTATION = "orientation"
KIND_FALLBACK = "fallback"
KIND_CONFIRMATION = "confirmation_request"

BUILTIN_PATTERNS: dict[str, list[str]] = {
    "orientation": [
        "what is the page about",
        "what is this page about",
        "what can i do",
        "what can i do here",
        "help",
        "what does this page offer",
        "what is here",
        "orient me",
    ],
    "where_am_i": [
        "where am i",
        "what page is this",
        "which page is this",
        "what page are we on",
    ],
    "repeat": ["repeat", "repeat that", "say that again", "what did you say", "pardon"],
    "go_back": ["go back", "back", "take me back", "previous page", "back to the previous page"],
}

_BUILTIN_MATCHER = PatternMatcher(BUILTIN_PATTERNS, threshold=TAU_BUILTIN)

_CONFIRM_WORDS = frozenset({"yes", "y", "yeah", "yep", "sure", "confirm", "ok", "okay", "yes please", "do it"})


@dataclass
class PolicyConfig:
    tau: float = TAU_DEFAULT
    max_reformulation_hint: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.tau < 1.0:
            raise ValueError(f"tau must be in (0, 1), got {self.tau}")


@dataclass(frozen=True)
class ReplyDebug:
    intent: Optional[str]
    confidence: float
    bot: str
    page: str


@dataclass(frozen=True)
class BotReply:
    text: str
    kind: str
    debug: ReplyDebug


@dataclass
class PendingConfirmation:
    request: SubmitRequest
    node: ContextNode


@dataclass
class Session:
    id: str
    page: Page
    tree: ContextTree
    model: IntentModel
    dataset: TrainingDataset
    current_node: ContextNode
    config: PolicyConfig
    fetch: FetchConfig
    templates: Sequence[UtteranceTemplate]
    bindings: dict[str, ElementBotBinding] = field(default_factory=dict)
    pending_confirmation: Optional[PendingConfirmation] = None
    transcript: list[tuple[str, str]] = field(default_factory=list)
    history: list[PageLocator] = field(default_factory=list)
    last_reply: Optional[BotReply] = None


def builtin_match(utterance: str) -> Optional[str]:
    """The built-in intent claiming the utterance, if any.

    Built-ins need no page annotations; they outrank application intents only
    at very high confidence so that page vocabulary is never shadowed.
    """
    result = _BUILTIN_MATCHER.match(utterance)
    return result.intent if result is not None else None


def open_session(
    locator: PageLocator,
    config: Optional[PolicyConfig] = None,
    fetch: Optional[FetchConfig] = None,
    templates: Sequence[UtteranceTemplate] = DEFAULT_TEMPLATES,
) -> tuple[Session, BotReply]:
    """Run the full generation pipeline for the page and greet with orientation."""
    config = config or PolicyConfig()
    fetch = fetch or FetchConfig()
    page = pages.load_page(locator, fetch)
    tree, model, dataset = _generate(page, templates)
    session = Session(
        id=secrets.token_hex(8),
        page=page,
        tree=tree,
        model=model,
        dataset=dataset,
        current_node=tree.root,
        config=config,
        fetch=fetch,
        templates=templates,
    )
    reply = orient(session)
    session.transcript.append(("BOT", reply.text))
    session.last_reply = reply
    return session, reply


def _generate(
    page: Page, templates: Sequence[UtteranceTemplate]
) -> tuple[ContextTree, IntentModel, TrainingDataset]:
    tree = build_context_tree(page)
    dataset = generate_training_data(tree, templates)
    model = train(dataset)
    return tree, model, dataset


def handle_utterance(session: Session, utterance: str) -> BotReply:
    """Resolve one user turn and record it in the transcript."""
    session.transcript.append(("USER", utterance))
    reply = _dispatch(session, utterance)
    session.transcript.append(("BOT", reply.text))
    session.last_reply = reply
    return reply


def select_node(
    current: ContextNode,
    confidence_of: Callable[[ContextNode], float],
    tau: float,
) -> Optional[ContextNode]:
    """The node the selection policy hands the utterance to, if any.

    Pure selection: the current node first, then its descendants depth-first
    in document order (first hit wins), then the ancestors up to the root.
    """
    if confidence_of(current) >= tau:
        return current
    for node in current.descendants():
        if confidence_of(node) >= tau:
            return node
    for ancestor in path_to_root(current)[1:]:
        if confidence_of(ancestor) >= tau:
            return ancestor
    return None


def _dispatch(session: Session, utterance: str) -> BotReply:
    if session.pending_confirmation is not None:
        return _resolve_confirmation(session, utterance)

    builtin = builtin_match(utterance)
    if builtin is not None:
        return _handle_builtin(session, builtin)

    evaluations: dict[int, tuple[str, object, Optional[ElementBotBinding]]] = {}

    def confidence_of(node: ContextNode) -> float:
        _, payload, _ = _evaluate_node(session, node, utterance, evaluations)
        return payload.confidence

    selected = select_node(session.current_node, confidence_of, session.config.tau)
    if selected is None:
        return _fallback(session, utterance)

    kind, payload, binding = evaluations[id(selected)]
    if kind == "element":
        return _apply_verdict(session, selected, payload, binding)
    classification: Classification = payload
    target = find_node(session.tree, classification.intent)
    return _act_on_intent(session, target, classification.confidence)


def _evaluate_node(
    session: Session,
    node: ContextNode,
    utterance: str,
    cache: dict[int, tuple[str, object, Optional[ElementBotBinding]]],
) -> tuple[str, object, Optional[ElementBotBinding]]:
    cached = cache.get(id(node))
    if cached is not None:
        return cached
    if node.bot_type is not None and node.is_leaf:
        # Probe against the existing binding or an uncommitted fresh one, so
        # losing candidates leave no trace in the session.
        binding = session.bindings.get(node.intent) or ElementBotBinding(
            bot_type=node.bot_type, element=node.elem
        )
        verdict = element_bots.handle(binding, utterance, submitter=_submitter(session))
        result: tuple[str, object, Optional[ElementBotBinding]] = ("element", verdict, binding)
    else:
        classification = classify(session.model, utterance, restrict_to=node.subtree_intents())
        result = ("model", classification, None)
    cache[id(node)] = result
    return result


def _binding_for(session: Session, node: ContextNode) -> ElementBotBinding:
    binding = session.bindings.get(node.intent)
    if binding is None:
        binding = ElementBotBinding(bot_type=node.bot_type, element=node.elem)
        session.bindings[node.intent] = binding
    return binding


def _submitter(session: Session):
    page = session.page
    fetch = session.fetch

    def run(form_element, values_by_name):
        return pages.submit_form(page, form_element, values_by_name, fetch)

    return run


def _apply_verdict(
    session: Session,
    node: ContextNode,
    verdict: ElementBotVerdict,
    binding: ElementBotBinding,
) -> BotReply:
    element_bots.commit(binding, verdict)
    session.bindings[node.intent] = binding
    session.current_node = node
    if verdict.submit is not None:
        session.pending_confirmation = PendingConfirmation(request=verdict.submit, node=node)
        return _reply(
            session, verdict.reply, KIND_CONFIRMATION, node.intent, verdict.confidence, node.bot_type
        )
    return _reply(session, verdict.reply, KIND_ANSWER, node.intent, verdict.confidence, node.bot_type)


def _act_on_intent(session: Session, node: ContextNode, confidence: float) -> BotReply:
    """Perform the default behavior of a classified intent.

    Selection intents with a single sub-intent drill down to it, so choosing
    a wrapper like a one-article section immediately plays its content.
    """
    resolved = node
    while resolved.node_kind == NODE_SELECTION and len(resolved.children) == 1:
        resolved = resolved.children[0]
    if resolved.node_kind == NODE_LINK:
        return navigate(session, resolved, confidence=confidence)
    if resolved.bot_type is not None and resolved.is_leaf:
        session.current_node = resolved
        binding = _binding_for(session, resolved)
        verdict = element_bots.default_action(binding)
        element_bots.commit(binding, verdict)
        return _reply(
            session, verdict.reply, KIND_ANSWER, resolved.intent, confidence, resolved.bot_type
        )
    session.current_node = resolved
    text = _orientation_text(session, resolved)
    return _reply(session, text, KIND_ORIENTATION, resolved.intent, confidence, "application")


def _fallback(session: Session, utterance: str) -> BotReply:
    text = "Sorry, I did not understand that. Could you rephrase?"
    best = classify(session.model, utterance)
    if session.config.max_reformulation_hint and best.intent is not None:
        name = "this page" if best.intent == ROOT_INTENT else humanize_intent(best.intent)
        text += f" Did you mean '{name}'?"
    return _reply(session, text, KIND_FALLBACK, None, best.confidence, "none")


def _handle_builtin(session: Session, intent: str) -> BotReply:
    if intent == "orientation":
        reply = orient(session)
        return BotReply(
            text=reply.text,
            kind=reply.kind,
            debug=ReplyDebug("orientation", 1.0, "builtin", session.page.locator.path),
        )
    if intent == "where_am_i":
        text = f"You are on '{session.page.title}' ({session.page.locator.path})."
        if session.current_node is not session.tree.root:
            text += f" We are looking at {humanize_intent(session.current_node.intent)}."
        return _reply(session, text, KIND_ANSWER, "where_am_i", 1.0, "builtin")
    if intent == "repeat":
        text = (
            session.last_reply.text
            if session.last_reply is not None
            else "I have not said anything yet."
        )
        return _reply(session, text, KIND_ANSWER, "repeat", 1.0, "builtin")
    if intent == "go_back":
        if not session.history:
            return _reply(
                session, "There is no previous page to go back to.", KIND_ANSWER, "go_back", 1.0, "builtin"
            )
        previous = session.history.pop()
        return _go_to(session, previous, record_history=False, confidence=1.0)
    raise ValueError(f"unknown builtin intent: {intent!r}")


def _resolve_confirmation(session: Session, utterance: str) -> BotReply:
    pending = session.pending_confirmation
    session.pending_confirmation = None
    if normalize(utterance) not in _CONFIRM_WORDS:
        return _reply(
            session, "Okay, I will not submit.", KIND_ANSWER, pending.node.intent, 1.0,
            pending.node.bot_type or "form",
        )
    request = pending.request
    try:
        landed = request.submitter(request.form_element, request.values_by_name)
    except (PageNotFound, FetchError, OutOfScope, UnknownField) as exc:
        return _reply(
            session,
            f"I could not submit the form ({exc}). We are still on '{session.page.title}'.",
            KIND_ANSWER,
            pending.node.intent,
            1.0,
            pending.node.bot_type or "form",
        )
    session.history.append(session.page.locator)
    _install_page(session, landed)
    text = "Submitted. " + _orientation_text(session, session.tree.root)
    return _reply(session, text, KIND_ORIENTATION, pending.node.intent, 1.0, "form")


def orient(session: Session) -> BotReply:
    """Summarize what the current context offers."""
    node = session.current_node
    text = _orientation_text(session, node)
    return _reply(session, text, KIND_ORIENTATION, node.intent, 1.0, "application")


_LEAF_HINTS = {
    "text": "You can ask me to read it, read the titles, or move between paragraphs.",
    "list": "You can ask me how many items there are, to read them, or to read a specific item.",
    "table": "You can ask me to read the headers, a row, a column, or a cell.",
    "form": "You can ask me what to fill in, set a field to a value, review your inputs, or submit.",
}


def _offer(node: ContextNode) -> str:
    if node.desc:
        return node.desc
    name = humanize_intent(node.intent)
    if node.node_kind == NODE_LINK:
        return f"take you to {name}"
    return f"tell you about {name}"


def _orientation_text(session: Session, node: ContextNode) -> str:
    if node is session.tree.root:
        lead = session.page.page_description or (
            f"This is '{session.page.title}'." if session.page.title else "This page has no description."
        )
    else:
        lead = f"We are looking at {humanize_intent(node.intent)}."
    if node.children:
        offers = "; ".join(_offer(child) for child in node.children)
        return f"{lead} Here I can: {offers}."
    if node is session.tree.root:
        return f"{lead} This page offers no conversational content."
    hint = _LEAF_HINTS.get(node.bot_type or "", "")
    return f"{lead} {hint}".strip()


def navigate(session: Session, node: ContextNode, confidence: float = 1.0) -> BotReply:
    """Follow a link intent: load the target page and re-run the pipeline.

    A link without a target intent lands with a fresh orientation; a link
    with one immediately performs the target's default action.
    """
    if node.link is None:
        raise ValueError(f"node {node.intent!r} is not a link intent")
    return _go_to(session, node.link, record_history=True, confidence=confidence)


def _go_to(
    session: Session,
    target: PageLocator,
    record_history: bool,
    confidence: float,
) -> BotReply:
    load_locator = PageLocator(target.base or session.page.locator.base, target.path)
    try:
        landed = pages.load_page(load_locator, session.fetch)
    except (PageNotFound, FetchError, OutOfScope) as exc:
        return _reply(
            session,
            f"I could not open that page ({exc}). We are still on '{session.page.title}'.",
            KIND_ANSWER,
            None,
            confidence,
            "application",
        )
    if record_history:
        session.history.append(session.page.locator)
    _install_page(session, landed)

    if target.fragment:
        found = find_node(session.tree, target.fragment)
        if found is None or found.node_kind == NODE_LINK:
            notice = f"I could not find '{target.fragment}' on the new page. "
            text = notice + _orientation_text(session, session.tree.root)
            return _reply(session, text, KIND_ORIENTATION, ROOT_INTENT, confidence, "application")
        return _land_on(session, found, confidence)
    return _reply(
        session,
        _orientation_text(session, session.tree.root),
        KIND_ORIENTATION,
        ROOT_INTENT,
        confidence,
        "application",
    )


def _land_on(session: Session, node: ContextNode, confidence: float) -> BotReply:
    resolved = node
    while resolved.node_kind == NODE_SELECTION and len(resolved.children) == 1:
        resolved = resolved.children[0]
    if resolved.bot_type is not None and resolved.is_leaf:
        session.current_node = resolved
        binding = _binding_for(session, resolved)
        verdict = element_bots.default_action(binding)
        element_bots.commit(binding, verdict)
        return _reply(
            session, verdict.reply, KIND_ANSWER, resolved.intent, confidence, resolved.bot_type
        )
    session.current_node = resolved
    return _reply(
        session,
        _orientation_text(session, resolved),
        KIND_ORIENTATION,
        resolved.intent,
        confidence,
        "application",
    )


def _install_page(session: Session, page: Page) -> None:
    tree, model, dataset = _generate(page, session.templates)
    session.page = page
    session.tree = tree
    session.model = model
    session.dataset = dataset
    session.current_node = tree.root
    session.bindings = {}
    session.pending_confirmation = None


def _reply(
    session: Session,
    text: str,
    kind: str,
    intent: Optional[str],
    confidence: float,
    bot: str,
) -> BotReply:
    return BotReply(
        text=text,
        kind=kind,
        debug=ReplyDebug(intent=intent, confidence=confidence, bot=bot, page=session.page.locator.path),
    )


def export_transcript(session: Session) -> str:
    """Plain-text transcript: one ``USER:``/``BOT:`` line per turn."""
    return "\n".join(f"{speaker}: {text}" for speaker, text in session.transcript)
