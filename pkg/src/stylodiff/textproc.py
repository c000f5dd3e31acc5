"""Deterministic tokenization, sentence segmentation, and POS tagging.

Everything here is a pure function of its input: no global state, no
randomness, identical output across runs and platforms. A word token is
any token containing at least one letter or digit; contractions
("don't") stay whole.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Protocol


class POSTag(str, Enum):
    """Closed coarse tagset."""

    ADJ = "ADJ"
    VERB = "VERB"
    NOUN = "NOUN"
    ADV = "ADV"
    DET = "DET"
    ADP = "ADP"
    CONJ = "CONJ"
    PRON = "PRON"
    NUM = "NUM"
    PART = "PART"
    PUNCT = "PUNCT"
    OTHER = "OTHER"


@dataclass
class Token:
    surface: str
    span: tuple[int, int]
    is_word: bool
    pos: POSTag | None = None

    @property
    def lower(self) -> str:
        return self.surface.lower()


@dataclass
class Sentence:
    span: tuple[int, int]
    tokens: list[Token] = field(default_factory=list)

    def word_count(self) -> int:
        return sum(1 for t in self.tokens if t.is_word)


@dataclass
class TokenizedReview:
    review_id: str
    text: str
    tokens: list[Token]
    sentences: list[Sentence]

    @property
    def word_count(self) -> int:
        return sum(1 for t in self.tokens if t.is_word)

    def word_tokens(self) -> list[Token]:
        return [t for t in self.tokens if t.is_word]


def _is_wordchar(ch: str) -> bool:
    return ch.isalpha() or ch.isdigit()


def tokenize(text: str) -> list[Token]:
    """Split on Unicode whitespace; peel leading/trailing punctuation runs
    off each chunk as separate non-word tokens. Internal punctuation
    (apostrophes, hyphens) stays inside the word token."""
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace():
            j += 1
        chunk = text[i:j]
        # leading punctuation run
        a = 0
        while a < len(chunk) and not _is_wordchar(chunk[a]):
            a += 1
        b = len(chunk)
        while b > a and not _is_wordchar(chunk[b - 1]):
            b -= 1
        if a == b:  # chunk is pure punctuation
            tokens.append(Token(chunk, (i, j), is_word=False))
        else:
            if a > 0:
                tokens.append(Token(chunk[:a], (i, i + a), is_word=False))
            core = chunk[a:b]
            tokens.append(Token(core, (i + a, i + b),
                                is_word=any(_is_wordchar(c) for c in core)))
            if b < len(chunk):
                tokens.append(Token(chunk[b:], (i + b, j), is_word=False))
        i = j
    return tokens


# Final-period guard: tokens whose lowercase form (sans trailing dot) is
# listed here do not end a sentence.
ABBREVIATIONS = frozenset({
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "rev", "gen",
    "etc", "e.g", "i.e", "vs", "cf", "al", "approx",
    "inc", "ltd", "co", "corp", "dept", "no", "vol", "fig", "p", "pp",
})

_TERMINATORS = frozenset(".!?")


def _sentence_spans(text: str) -> list[tuple[int, int]]:
    spans: list[tuple[int, int]] = []
    start = 0
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in _TERMINATORS:
            # consume the full terminator run (e.g. "?!", "...")
            j = i
            while j + 1 < n and text[j + 1] in _TERMINATORS:
                j += 1
            if ch == "." and text[j] == ".":
                # guard abbreviations: word immediately before the dot
                k = i - 1
                while k >= 0 and (text[k].isalpha() or text[k] == "."):
                    k -= 1
                word = text[k + 1:i].lower().rstrip(".")
                if word in ABBREVIATIONS:
                    i = j + 1
                    continue
            # boundary only before whitespace + capital/digit, or at EOT
            k = j + 1
            while k < n and text[k].isspace():
                k += 1
            if k == n:
                spans.append((start, n))
                return spans
            if k > j + 1 and (text[k].isupper() or text[k].isdigit()):
                spans.append((start, j + 1))
                start = k
            i = j + 1
            continue
        i += 1
    if text[start:].strip():
        spans.append((start, n))
    return spans


def split_sentences(text: str) -> list[Sentence]:
    """Sentence boundaries at {. ! ?} followed by whitespace and a capital
    or digit, or end of text; abbreviation guard suppresses false splits.
    Text with no terminator is one sentence."""
    if not text.strip():
        return []
    return [Sentence(span=s) for s in _sentence_spans(text)]


def tokenize_review(review_id: str, text: str) -> TokenizedReview:
    """Tokenize and segment; every token lands in exactly one sentence."""
    tokens = tokenize(text)
    sentences = split_sentences(text)
    if not sentences and tokens:
        sentences = [Sentence(span=(0, len(text)))]
    ti = 0
    for s in sentences[:-1] if sentences else []:
        while ti < len(tokens) and tokens[ti].span[0] < s.span[1]:
            s.tokens.append(tokens[ti])
            ti += 1
    if sentences:
        sentences[-1].tokens = tokens[ti:]
    return TokenizedReview(review_id=review_id, text=text,
                           tokens=tokens, sentences=sentences)


class Tagger(Protocol):
    def tag(self, tr: TokenizedReview) -> None:
        """Assign a POSTag to every token in place."""


# Suffix rules, checked in order after the lexicon lookup.
_SUFFIX_RULES: tuple[tuple[str, POSTag], ...] = (
    ("ing", POSTag.VERB),
    ("ed", POSTag.VERB),
    ("ize", POSTag.VERB),
    ("ise", POSTag.VERB),
    ("ly", POSTag.ADV),
    ("ous", POSTag.ADJ),
    ("ful", POSTag.ADJ),
    ("ive", POSTag.ADJ),
    ("able", POSTag.ADJ),
    ("ible", POSTag.ADJ),
    ("ic", POSTag.ADJ),
    ("ical", POSTag.ADJ),
    ("less", POSTag.ADJ),
    ("ish", POSTag.ADJ),
    ("est", POSTag.ADJ),
    ("tion", POSTag.NOUN),
    ("sion", POSTag.NOUN),
    ("ment", POSTag.NOUN),
    ("ness", POSTag.NOUN),
    ("ity", POSTag.NOUN),
    ("ance", POSTag.NOUN),
    ("ence", POSTag.NOUN),
)


class RuleTagger:
    """Lexicon lookup with suffix-rule fallback; unknown words tag NOUN.

    Immutable after construction, safe to share across threads.
    """

    def __init__(self, lexicon: dict[str, POSTag]):
        self._lexicon = dict(lexicon)

    @classmethod
    def from_tsv(cls, path: str | Path) -> "RuleTagger":
        """word<TAB>TAG per line, `#` comments."""
        lex: dict[str, POSTag] = {}
        for lineno, line in enumerate(
                Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected word<TAB>TAG")
            try:
                lex[parts[0].strip().lower()] = POSTag(parts[1].strip().upper())
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: unknown tag {parts[1]!r}") from None
        return cls(lex)

    def tag_word(self, lower: str) -> POSTag:
        hit = self._lexicon.get(lower)
        if hit is not None:
            return hit
        if lower.replace(".", "", 1).replace(",", "").isdigit():
            return POSTag.NUM
        for suffix, tag in _SUFFIX_RULES:
            if len(lower) > len(suffix) + 1 and lower.endswith(suffix):
                return tag
        return POSTag.NOUN

    def tag(self, tr: TokenizedReview) -> None:
        for t in tr.tokens:
            if not t.is_word:
                t.pos = POSTag.PUNCT
                continue
            try:
                t.pos = self.tag_word(t.lower)
            except Exception:
                t.pos = POSTag.OTHER


class PretaggedTagger:
    """Applies tags produced by an external tagger.

    Input: JSON-lines, one object per review:
    {"review_id": ..., "tags": [[surface, TAG], ...]} where the tag
    sequence covers the review's word tokens in order. Length or surface
    mismatches fall back to OTHER rather than aborting.
    """

    def __init__(self, tags_by_review: dict[str, list[tuple[str, POSTag]]]):
        self._tags = tags_by_review

    @classmethod
    def from_jsonl(cls, path: str | Path) -> "PretaggedTagger":
        out: dict[str, list[tuple[str, POSTag]]] = {}
        for lineno, line in enumerate(
                Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            rec = json.loads(line)
            try:
                out[str(rec["review_id"])] = [
                    (s, POSTag(t.upper())) for s, t in rec["tags"]]
            except (KeyError, ValueError) as e:
                raise ValueError(f"{path}:{lineno}: {e}") from None
        return cls(out)

    def tag(self, tr: TokenizedReview) -> None:
        provided = self._tags.get(tr.review_id, [])
        wi = 0
        for t in tr.tokens:
            if not t.is_word:
                t.pos = POSTag.PUNCT
                continue
            if wi < len(provided) and provided[wi][0] == t.surface:
                t.pos = provided[wi][1]
            else:
                t.pos = POSTag.OTHER
            wi += 1


def default_tagger() -> RuleTagger:
    from .lexicons import resource_path
    return RuleTagger.from_tsv(resource_path("pos_lexicon.tsv"))
