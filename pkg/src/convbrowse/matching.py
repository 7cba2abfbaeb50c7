"""Fixed-inventory matcher with slot capture.

The element bots and the built-in intents match against small, hand-authored
pattern inventories. Plain patterns score with the same IDF-weighted token
overlap as the page model. Patterns may also contain slots written as
``<name>``: a slot named ``n`` (optionally suffixed with digits, e.g. ``n2``)
captures a single integer token, any other slot captures a token span. A
slotted pattern matches only as a whole utterance and then scores 1.0 with
its captures; ordinal words ("first" ... "tenth", "3rd") are rewritten to
integers beforehand so "read the second item" can satisfy ``item <n>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .text import (
    STOP_WORDS,
    document_frequencies,
    map_ordinals,
    tokenize,
    weighted_overlap,
)

_SLOT = re.compile(r"<([a-z][a-z0-9_]*)>")


def _is_numeric_slot(name: str) -> bool:
    return bool(re.fullmatch(r"n\d*", name))


def _strip_stop_edges(phrase: str) -> str:
    words = phrase.split()
    while words and words[0] in STOP_WORDS:
        words.pop(0)
    while words and words[-1] in STOP_WORDS:
        words.pop()
    return " ".join(words)


@dataclass(frozen=True)
class MatchResult:
    intent: str
    confidence: float
    slots: dict[str, str] = field(default_factory=dict)


class _Pattern:
    def __init__(self, intent: str, source: str):
        self.intent = intent
        self.source = source
        tokens = tokenize(_SLOT.sub(" ", source))
        self.all_tokens = tuple(tokens)
        self.fixed_tokens = frozenset(t for t in tokens if t not in STOP_WORDS)
        self.regex: Optional[re.Pattern] = None
        if _SLOT.search(source):
            self.regex = self._compile(source)

    @staticmethod
    def _compile(source: str) -> re.Pattern:
        pieces: list[str] = []
        position = 0
        for match in _SLOT.finditer(source):
            literal = source[position : match.start()]
            for token in tokenize(literal):
                pieces.append(re.escape(token))
            name = match.group(1)
            if _is_numeric_slot(name):
                pieces.append(f"(?P<{name}>\\d+)")
            else:
                pieces.append(f"(?P<{name}>.+?)")
            position = match.end()
        for token in tokenize(source[position:]):
            pieces.append(re.escape(token))
        return re.compile("^" + " ".join(pieces) + "$")


class PatternMatcher:
    """Matcher over an ``intent -> [patterns]`` inventory, built once."""

    def __init__(self, inventory: Mapping[str, Sequence[str]], threshold: float = 0.5):
        self.threshold = threshold
        self._patterns: list[_Pattern] = []
        for intent, patterns in inventory.items():
            for source in patterns:
                self._patterns.append(_Pattern(intent, source))
        docs = [p.fixed_tokens for p in self._patterns]
        self._df = document_frequencies(docs)
        self._n_docs = len(docs)

    def score(self, utterance: str) -> Optional[MatchResult]:
        """Best match regardless of threshold; ``None`` for empty input."""
        raw_tokens = map_ordinals(tokenize(utterance))
        if not raw_tokens:
            return None
        full = " ".join(raw_tokens)
        content = frozenset(t for t in raw_tokens if t not in STOP_WORDS)
        best: Optional[MatchResult] = None
        for pattern in self._patterns:
            if pattern.regex is not None:
                matched = pattern.regex.match(full)
                if not matched:
                    continue
                slots = {
                    name: _strip_stop_edges(value)
                    for name, value in matched.groupdict().items()
                }
                if any(not value for value in slots.values()):
                    continue
                candidate = MatchResult(pattern.intent, 1.0, slots)
            elif pattern.fixed_tokens:
                overlap = weighted_overlap(content, pattern.fixed_tokens, self._df, self._n_docs)
                if overlap <= 0.0:
                    continue
                candidate = MatchResult(pattern.intent, overlap)
            else:
                # Stop-word-only pattern ("where am i"): exact sequence match.
                if tuple(raw_tokens) != pattern.all_tokens:
                    continue
                candidate = MatchResult(pattern.intent, 1.0)
            if best is None or candidate.confidence > best.confidence:
                best = candidate
        return best

    def match(self, utterance: str) -> Optional[MatchResult]:
        """Best match at or above the matcher's threshold, else ``None``."""
        result = self.score(utterance)
        if result is None or result.confidence < self.threshold:
            return None
        return result
