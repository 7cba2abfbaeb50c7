"""Training-data generation and the page-specific intent classifier.

The classifier is deliberately simple and fully deterministic: each training
utterance becomes a normalized token set, and a user utterance scores against
each of them with an IDF-weighted token-set overlap. The confidence is the
best match's score, naturally in [0, 1], with 1.0 reserved for utterances
whose content tokens exactly reproduce a training utterance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .context_tree import ContextTree, NODE_LINK
from .errors import EmptyDataset
from .locator import PageLocator
from .text import content_tokens, document_frequencies, normalize, weighted_overlap

KIND_SELECTION = "selection"
KIND_LINK = "link"
KIND_BUILTIN = "builtin"


@dataclass(frozen=True)
class UtteranceTemplate:
    """A phrase pattern with an optional ``{k}`` keyword slot."""

    pattern: str
    applicable_kinds: frozenset[str]

    def __post_init__(self) -> None:
        if self.pattern.count("{k}") > 1:
            raise ValueError(f"template has more than one slot: {self.pattern!r}")

    def expand(self, key: str) -> str:
        if "{k}" in self.pattern:
            return self.pattern.format(k=key)
        return self.pattern


def _selection(pattern: str) -> UtteranceTemplate:
    return UtteranceTemplate(pattern, frozenset({KIND_SELECTION}))


def _link(pattern: str) -> UtteranceTemplate:
    return UtteranceTemplate(pattern, frozenset({KIND_LINK}))


DEFAULT_TEMPLATES: tuple[UtteranceTemplate, ...] = (
    _selection("tell me about {k}"),
    _selection("what is {k}"),
    _selection("show me {k}"),
    _selection("read {k}"),
    _selection("{k}"),
    _link("go to {k}"),
    _link("open {k}"),
    _link("take me to {k}"),
    _link("navigate to {k}"),
    _link("{k} page"),
)


@dataclass(frozen=True)
class DatasetEntry:
    utterance: str
    intent: str


@dataclass
class TrainingDataset:
    entries: list[DatasetEntry]
    page: Optional[PageLocator] = None


@dataclass(frozen=True)
class Classification:
    intent: Optional[str]
    confidence: float
    runner_up: Optional[tuple[str, float]] = None


@dataclass
class IntentModel:
    """Per-intent bags of normalized training utterances plus the IDF index."""

    entries: list[tuple[frozenset[str], str]]
    df: Counter
    n_docs: int
    intent_order: dict[str, int] = field(default_factory=dict)

    @property
    def intents(self) -> list[str]:
        return sorted(self.intent_order, key=self.intent_order.get)


def generate_training_data(
    tree: ContextTree,
    templates: Sequence[UtteranceTemplate] = DEFAULT_TEMPLATES,
) -> TrainingDataset:
    """Cross-product expansion of applicable templates over each node's keys.

    Output order is deterministic: node document order, then template order,
    then key order.
    """
    entries: list[DatasetEntry] = []
    for node in tree.nodes:
        kind = KIND_LINK if node.node_kind == NODE_LINK else KIND_SELECTION
        for template in templates:
            if kind not in template.applicable_kinds:
                continue
            if "{k}" in template.pattern:
                for key in node.keys:
                    utterance = normalize(template.expand(key))
                    if utterance:
                        entries.append(DatasetEntry(utterance, node.intent))
            else:
                utterance = normalize(template.pattern)
                if utterance:
                    entries.append(DatasetEntry(utterance, node.intent))
    return TrainingDataset(entries=entries, page=tree.page_locator)


def train(dataset: TrainingDataset) -> IntentModel:
    """Build the classifier index; identical datasets yield identical models."""
    if not dataset.entries:
        raise EmptyDataset("cannot train on an empty dataset")
    entries: list[tuple[frozenset[str], str]] = []
    intent_order: dict[str, int] = {}
    for entry in dataset.entries:
        if entry.intent not in intent_order:
            intent_order[entry.intent] = len(intent_order)
        entries.append((content_tokens(entry.utterance), entry.intent))
    df = document_frequencies(tokens for tokens, _ in entries)
    return IntentModel(entries=entries, df=df, n_docs=len(entries), intent_order=intent_order)


def classify(
    model: IntentModel,
    utterance: str,
    restrict_to: Optional[Iterable[str]] = None,
) -> Classification:
    """Best-matching intent with its confidence.

    ``restrict_to`` limits scoring to the given intents, which is how the
    dialog policy evaluates a single node's subtree against one shared page
    model. Ties break toward the intent declared earlier on the page.
    """
    tokens = content_tokens(utterance)
    if not tokens:
        return Classification(intent=None, confidence=0.0)
    allowed = frozenset(restrict_to) if restrict_to is not None else None
    best_by_intent: dict[str, float] = {}
    for entry_tokens, intent in model.entries:
        if allowed is not None and intent not in allowed:
            continue
        score = weighted_overlap(tokens, entry_tokens, model.df, model.n_docs)
        if score > best_by_intent.get(intent, 0.0):
            best_by_intent[intent] = score
    scored = [
        (score, model.intent_order.get(intent, 0), intent)
        for intent, score in best_by_intent.items()
        if score > 0.0
    ]
    if not scored:
        return Classification(intent=None, confidence=0.0)
    scored.sort(key=lambda item: (-item[0], item[1]))
    best_score, _, best_intent = scored[0]
    runner_up = None
    if len(scored) > 1:
        runner_up = (scored[1][2], scored[1][0])
    return Classification(intent=best_intent, confidence=best_score, runner_up=runner_up)


def dataset_to_tsv(dataset: TrainingDataset) -> str:
    """One ``intent<TAB>utterance`` line per entry, for regression diffing."""
    return "\n".join(f"{entry.intent}\t{entry.utterance}" for entry in dataset.entries)


def templates_from_config(config: dict) -> tuple[UtteranceTemplate, ...]:
    """Build a template set from a ``{kind: [patterns]}`` mapping."""
    templates: list[UtteranceTemplate] = []
    for kind in (KIND_SELECTION, KIND_LINK, KIND_BUILTIN):
        for pattern in config.get(kind, []):
            templates.append(UtteranceTemplate(pattern, frozenset({kind})))
    if not templates:
        raise ValueError("template config defines no templates")
    return tuple(templates)
