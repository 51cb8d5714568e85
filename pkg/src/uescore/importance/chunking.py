"""Heuristic phrase segmentation.

A deterministic, dependency-free stand-in for a model-based shallow parser.
Tokens are grouped into words at leading-whitespace boundaries (so sub-word
pieces like "Shake" + "speare" never split), then words are merged into
phrases by two rules: consecutive capitalized words form one phrase, and a
determiner or closed-set adjective attaches forward to the word it modifies.
"""

from __future__ import annotations

from ..records import Generation, PhraseSegmentation

_DETERMINERS = frozenset({
    "a", "an", "the", "this", "that", "these", "those",
    "my", "your", "his", "her", "its", "our", "their",
    "each", "every", "some", "any", "no",
})

_ADJECTIVES = frozenset({
    "red", "blue", "green", "white", "black", "yellow",
    "big", "small", "large", "little", "old", "new", "young",
    "long", "short", "high", "low", "good", "great", "famous",
    "first", "second", "third", "last",
    "northern", "southern", "eastern", "western", "ancient", "modern",
})

_ATTACH_FORWARD = _DETERMINERS | _ADJECTIVES


class _Word:
    """A maximal run of tokens with no internal leading-whitespace boundary."""

    __slots__ = ("start", "end", "surface")

    def __init__(self, start: int, end: int, surface: str) -> None:
        self.start = start
        self.end = end
        self.surface = surface


def _split_words(gen: Generation) -> list[_Word]:
    words: list[_Word] = []
    for index, token in enumerate(gen.tokens):
        boundary = index == 0 or token.text[:1].isspace()
        if boundary:
            words.append(_Word(index, index + 1, token.text))
        else:
            words[-1].end = index + 1
            words[-1].surface += token.text
    return words


def _core(word: _Word) -> str:
    return word.surface.strip()


def _is_capitalized(word: _Word) -> bool:
    core = _core(word)
    return bool(core) and core[0].isalpha() and core[0].isupper()


def _attaches_forward(word: _Word) -> bool:
    return _core(word).lower() in _ATTACH_FORWARD


def segment_phrases(gen: Generation, question: str) -> PhraseSegmentation:
    """Partition the generation's tokens into contiguous phrases.

    ``question`` is part of the segmentation contract (a model-based
    segmenter may condition on it) but the heuristic rules ignore it.
    """
    del question
    words = _split_words(gen)
    # Each phrase is a word range [first, last]; grown by the merge rules.
    phrase_ranges: list[list[int]] = []
    awaiting_head = False
    for i, word in enumerate(words):
        if awaiting_head:
            phrase_ranges[-1][1] = i
            awaiting_head = _attaches_forward(word)
            continue
        if _attaches_forward(word):
            phrase_ranges.append([i, i])
            awaiting_head = True
            continue
        if (
            _is_capitalized(word)
            and phrase_ranges
            and phrase_ranges[-1][1] == i - 1
            and _is_capitalized(words[i - 1])
        ):
            phrase_ranges[-1][1] = i
            continue
        phrase_ranges.append([i, i])
    spans = tuple(
        (words[first].start, words[last].end) for first, last in phrase_ranges
    )
    return PhraseSegmentation(spans=spans)
