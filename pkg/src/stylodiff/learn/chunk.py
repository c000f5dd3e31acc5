"""Majority-vote label aggregation for long reviews.

Reviews longer than the chunk size (in word tokens) are split into
non-overlapping word chunks, each chunk is classified, and the final
label is the chunk majority. Ties fall back to word mass: under the
default 'summed' rule the label whose chunks carry more words in total
wins; under 'max_chunk' the label owning the single longest chunk wins.
A residual exact tie resolves to the lexicographically smallest label,
keeping the outcome independent of chunk order.
"""

from __future__ import annotations

from typing import Callable

from ..textproc import tokenize

CHUNK_SIZE = 512
TIE_RULES = ("summed", "max_chunk")


class ChunkError(Exception):
    pass


def split_chunks(text: str, chunk_size: int = CHUNK_SIZE) -> list[str]:
    """Non-overlapping chunks of `chunk_size` word tokens (last may be
    short); chunk text is the original character span, punctuation kept."""
    if not text.strip():
        raise ChunkError("empty review")
    tokens = tokenize(text)
    words = [t for t in tokens if t.is_word]
    if len(words) <= chunk_size:
        return [text]
    chunks = []
    for start in range(0, len(words), chunk_size):
        group = words[start:start + chunk_size]
        lo = group[0].span[0]
        hi = group[-1].span[1]
        chunks.append(text[lo:hi])
    return chunks


def vote(labels: list[str], word_counts: list[int],
         tie_rule: str = "summed") -> str:
    """Aggregate chunk labels into one review label."""
    if tie_rule not in TIE_RULES:
        raise ChunkError(f"unknown tie rule {tie_rule!r}")
    if not labels or len(labels) != len(word_counts):
        raise ChunkError("labels and word_counts must be equal-length, non-empty")
    counts: dict[str, int] = {}
    words: dict[str, int] = {}
    longest: dict[str, int] = {}
    for lab, wc in zip(labels, word_counts):
        counts[lab] = counts.get(lab, 0) + 1
        words[lab] = words.get(lab, 0) + wc
        longest[lab] = max(longest.get(lab, 0), wc)
    top = max(counts.values())
    leaders = sorted(l for l, c in counts.items() if c == top)
    if len(leaders) == 1:
        return leaders[0]
    mass = words if tie_rule == "summed" else longest
    best = max(mass[l] for l in leaders)
    heaviest = sorted(l for l in leaders if mass[l] == best)
    return heaviest[0]


def chunk_predict(classify: Callable[[str], str], text: str,
                  chunk_size: int = CHUNK_SIZE,
                  tie_rule: str = "summed") -> str:
    """Classify a review via per-chunk classification + majority vote.

    `classify` maps one chunk's text to a group label. Reviews at or
    under `chunk_size` words pass through in a single call.
    """
    chunks = split_chunks(text, chunk_size)
    labels = [classify(c) for c in chunks]
    word_counts = [sum(1 for t in tokenize(c) if t.is_word) for c in chunks]
    return vote(labels, word_counts, tie_rule)
