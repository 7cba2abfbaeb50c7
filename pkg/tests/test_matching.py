from convbrowse.matching import PatternMatcher

INVENTORY = {
    "count": ["how many items", "count the items"],
    "read_nth": ["read item <n>", "item <n>", "read the <n> item"],
    "fill": ["set <f> to <v>", "my <f> is <v>"],
    "where": ["where am i"],
}


def matcher(threshold=0.5):
    return PatternMatcher(INVENTORY, threshold)


def test_plain_pattern_exact_match():
    result = matcher().match("how many items")
    assert result.intent == "count"
    assert result.confidence == 1.0
    assert result.slots == {}


def test_plain_pattern_fuzzy_match():
    result = matcher().match("how many items are there")
    assert result.intent == "count"
    assert 0.5 <= result.confidence <= 1.0


def test_numeric_slot_capture():
    result = matcher().match("read item 3")
    assert result.intent == "read_nth"
    assert result.slots == {"n": "3"}
    assert result.confidence == 1.0


def test_ordinal_words_normalize_to_integers():
    result = matcher().match("read the second item")
    assert result.intent == "read_nth"
    assert result.slots == {"n": "2"}


def test_suffixed_ordinals():
    result = matcher().match("read the 3rd item")
    assert result.slots == {"n": "3"}


def test_value_slot_capture():
    result = matcher().match("set username to alice")
    assert result.intent == "fill"
    assert result.slots == {"f": "username", "v": "alice"}


def test_multiword_value_slot():
    result = matcher().match("set the full name to ada rivera")
    assert result.intent == "fill"
    assert result.slots["f"] == "full name"  # leading stop word trimmed
    assert result.slots["v"] == "ada rivera"


def test_numeric_slot_rejects_words():
    assert matcher().score("read item heaps") is None or (
        matcher().score("read item heaps").intent != "read_nth"
        or matcher().score("read item heaps").confidence < 1.0
    )


def test_stopword_only_pattern_exact_sequence():
    assert matcher().match("where am i").intent == "where"
    assert matcher().match("where am i now") is None or (
        matcher().match("where am i now").intent != "where"
    )


def test_below_threshold_returns_none():
    high_bar = matcher(threshold=0.99)
    assert high_bar.match("how many things") is None
    # score() still reports the sub-threshold candidate
    scored = high_bar.score("how many things")
    assert scored is not None and scored.confidence < 0.99


def test_empty_utterance():
    assert matcher().score("") is None
    assert matcher().match("   ") is None


def test_unrelated_utterance_scores_nothing():
    assert matcher().score("purple elephant parade") is None
