"""Utterance normalization and the token-overlap similarity used throughout.

Every component that compares user language against known phrases (the
page-specific intent model, the element-bot matchers, the built-in matcher)
funnels through the same normalization and the same inverse-document-frequency
weighted token-set overlap, so confidences are comparable everywhere.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from typing import Iterable

# Small fixed English stop list. Deliberately minimal: frequent filler that
# carries no intent identity. Rare-but-empty words are handled by IDF instead.
STOP_WORDS = frozenset(
    """
    a an the this that these those it its
    i im me my we us our you your he she his her they them their
    what whats which who whom how when where why
    is are was were am be been being
    do does did doing have has had
    can could will would shall should may might must
    please to of in on at by for with from
    and or but if as than then
    there here some any all both more most other such
    so too very just now not dont
    """.split()
)

_APOSTROPHES = re.compile(r"['’]")
_NON_ALNUM = re.compile(r"[^a-z0-9]+")

_ORDINALS = {
    "first": "1",
    "second": "2",
    "third": "3",
    "fourth": "4",
    "fifth": "5",
    "sixth": "6",
    "seventh": "7",
    "eighth": "8",
    "ninth": "9",
    "tenth": "10",
}
_ORDINAL_SUFFIX = re.compile(r"^(\d+)(st|nd|rd|th)$")


def normalize(text: str) -> str:
    """Lowercase, drop punctuation, and collapse whitespace.

    Idempotent: normalizing an already-normalized string is a no-op.
    """
    lowered = _APOSTROPHES.sub("", text.lower())
    return _NON_ALNUM.sub(" ", lowered).strip()


def tokenize(text: str) -> list[str]:
    """All normalized tokens, in order."""
    normalized = normalize(text)
    return normalized.split() if normalized else []


def content_tokens(text: str) -> frozenset[str]:
    """The set of normalized tokens with stop words removed."""
    return frozenset(t for t in tokenize(text) if t not in STOP_WORDS)


def map_ordinals(tokens: Iterable[str]) -> list[str]:
    """Rewrite ordinal words and suffixed ordinals ("3rd") to bare integers."""
    out = []
    for tok in tokens:
        if tok in _ORDINALS:
            out.append(_ORDINALS[tok])
            continue
        suffixed = _ORDINAL_SUFFIX.match(tok)
        out.append(suffixed.group(1) if suffixed else tok)
    return out


def document_frequencies(documents: Iterable[frozenset[str]]) -> Counter:
    """Token -> number of documents containing it."""
    df: Counter = Counter()
    for doc in documents:
        df.update(doc)
    return df


def idf_weight(token: str, df: Counter, n_docs: int) -> float:
    """Smoothed inverse document frequency; defined for unseen tokens."""
    return math.log(1.0 + n_docs / (1.0 + df.get(token, 0)))


def weighted_overlap(a: frozenset[str], b: frozenset[str], df: Counter, n_docs: int) -> float:
    """IDF-weighted Jaccard similarity of two token sets, in [0, 1].

    Symmetric; exactly 1.0 for identical non-empty sets, 0.0 for disjoint
    sets and for any comparison involving an empty set. Both sums run over
    the sorted union so results do not depend on set iteration order.
    """
    if not a or not b:
        return 0.0
    numerator = 0.0
    denominator = 0.0
    for token in sorted(a | b):
        weight = idf_weight(token, df, n_docs)
        denominator += weight
        if token in a and token in b:
            numerator += weight
    if denominator <= 0.0:
        return 0.0
    return numerator / denominator
