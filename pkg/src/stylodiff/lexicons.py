"""Word lists and sentiment lexicons backing grammatical and sentiment features.

Word-list files: UTF-8, one token per line, `#` starts a comment.
Valence files: token<TAB>valence per line, extra columns ignored.
Default resources ship under stylodiff/resources/.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from pathlib import Path

ARTICLES = frozenset({"a", "an", "the"})


class LexiconError(Exception):
    pass


@dataclass(frozen=True)
class WordList:
    name: str
    entries: frozenset[str]
    source: str = "builtin"

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SentimentLexicon:
    """Token -> valence map; unsigned lexicons use +1/-1. No zero valences."""

    name: str
    entries: dict[str, float] = field(default_factory=dict)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def valence(self, token: str) -> float | None:
        return self.entries.get(token.lower())


def _iter_tokens(path: Path):
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def load_word_list(path: str | Path, name: str) -> WordList:
    """Load one token per line; lowercased, deduplicated.

    Multiword entries are rejected: every in-scope feature counts single
    tokens, so silently keeping them would skew coverage.
    """
    path = Path(path)
    entries: set[str] = set()
    for lineno, tok in _iter_tokens(path):
        if any(ch.isspace() for ch in tok):
            raise LexiconError(
                f"{path}:{lineno}: entry {tok!r} contains whitespace"
            )
        entries.add(tok.lower())
    return WordList(name=name, entries=frozenset(entries), source=str(path))


def load_sentiment_lexicon(
    path: str | Path | tuple[str | Path, str | Path],
    format: str,
    name: str = "",
) -> SentimentLexicon:
    """Load a sentiment lexicon.

    format='wordlist_signed': `path` is a (positive_file, negative_file)
    pair; entries map to +1 / -1. format='tab_valence': one
    token<TAB>valence row per line; zero-valence rows are skipped.
    """
    entries: dict[str, float] = {}
    if format == "wordlist_signed":
        pos_path, neg_path = path  # type: ignore[misc]
        for p, val in ((Path(pos_path), 1.0), (Path(neg_path), -1.0)):
            for lineno, tok in _iter_tokens(p):
                if any(ch.isspace() for ch in tok):
                    raise LexiconError(f"{p}:{lineno}: entry {tok!r} contains whitespace")
                entries[tok.lower()] = val
        lexname = name or Path(pos_path).stem
    elif format == "tab_valence":
        p = Path(path)  # type: ignore[arg-type]
        n_zero = 0
        for lineno, line in enumerate(p.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise LexiconError(f"{p}:{lineno}: expected token<TAB>valence")
            tok = parts[0].strip().lower()
            try:
                val = float(parts[1])
            except ValueError:
                raise LexiconError(
                    f"{p}:{lineno}: non-numeric valence {parts[1]!r}"
                ) from None
            if any(ch.isspace() for ch in tok):
                raise LexiconError(f"{p}:{lineno}: entry {tok!r} contains whitespace")
            if val == 0.0:
                n_zero += 1
                continue
            entries[tok] = val
        lexname = name or p.stem
    else:
        raise LexiconError(f"unknown lexicon format {format!r}")
    if not entries:
        raise LexiconError("lexicon is empty")
    return SentimentLexicon(name=lexname, entries=entries)


def negative_subset(lex: SentimentLexicon) -> WordList:
    """All tokens with valence < 0, as a WordList."""
    return WordList(
        name=f"{lex.name}-negative",
        entries=frozenset(t for t, v in lex.entries.items() if v < 0),
        source=lex.name,
    )


def resource_path(filename: str) -> Path:
    """Path of a bundled default resource file."""
    ref = importlib_resources.files("stylodiff") / "resources" / filename
    with importlib_resources.as_file(ref) as p:
        return Path(p)


@dataclass(frozen=True)
class LexiconBundle:
    """Everything the linguistic feature extractor needs."""

    articles: WordList
    prepositions: WordList
    subordinating_conjunctions: WordList
    negation: WordList
    opinion: SentimentLexicon
    vader_style: SentimentLexicon


def default_bundle(
    prepositions_path: str | Path | None = None,
    sc_path: str | Path | None = None,
    opinion_paths: tuple[str | Path, str | Path] | None = None,
    valence_path: str | Path | None = None,
) -> LexiconBundle:
    """Bundle with shipped defaults, each overridable by path.

    The bundled sentiment lexicons are compact excerpts of widely used
    public lists; pass full lexicon files for serious runs.
    """
    preps = load_word_list(
        prepositions_path or resource_path("prepositions.txt"), "prepositions")
    scs = load_word_list(
        sc_path or resource_path("subordinating_conjunctions.txt"),
        "subordinating_conjunctions")
    if opinion_paths:
        opinion = load_sentiment_lexicon(opinion_paths, "wordlist_signed", "opinion")
    else:
        opinion = load_sentiment_lexicon(
            (resource_path("opinion_positive.txt"), resource_path("opinion_negative.txt")),
            "wordlist_signed", "opinion")
    vader = load_sentiment_lexicon(
        valence_path or resource_path("valence.tsv"), "tab_valence", "valence")
    return LexiconBundle(
        articles=WordList(name="articles", entries=ARTICLES),
        prepositions=preps,
        subordinating_conjunctions=scs,
        negation=negative_subset(vader),
        opinion=opinion,
        vader_style=vader,
    )
