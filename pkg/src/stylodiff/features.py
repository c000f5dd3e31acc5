"""Per-review linguistic features, corpus profiles, frequency rankings,
and tf-idf n-gram matrices."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .lexicons import LexiconBundle
from .textproc import POSTag, TokenizedReview


class FeatureError(Exception):
    pass


# Column order for dense matrices and CSV export.
FEATURE_NAMES: tuple[str, ...] = (
    "n_words", "n_sentences", "mean_sentence_len",
    "n_negation", "n_articles", "n_adjectives", "n_verbs",
    "n_prepositions", "n_subconj",
    "coverage_opinion", "coverage_vader",
)

# Count features aggregated in corpus profiles, keyed by short name.
_COUNT_FEATURES: tuple[str, ...] = (
    "negation", "articles", "adjectives", "verbs",
    "prepositions", "subconj", "opinion_hits", "vader_hits",
)


@dataclass(frozen=True)
class LinguisticFeatureVector:
    n_words: int
    n_sentences: int
    mean_sentence_len: float
    n_negation: int
    n_articles: int
    n_adjectives: int
    n_verbs: int
    n_prepositions: int
    n_subconj: int
    coverage_opinion: float
    coverage_vader: float

    def to_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES],
                        dtype=np.float64)

    def count(self, short: str) -> int:
        """Count feature by profile short name (coverage hits reconstructed)."""
        if short == "opinion_hits":
            return round(self.coverage_opinion * self.n_words)
        if short == "vader_hits":
            return round(self.coverage_vader * self.n_words)
        return int(getattr(self, "n_" + short))


def extract_linguistic(tr: TokenizedReview,
                       lexicons: LexiconBundle) -> LinguisticFeatureVector:
    """Compute the 11 per-review features; case-insensitive over word tokens.

    Requires a tagged review (adjective/verb counts come from POS tags).
    """
    words = tr.word_tokens()
    n_words = len(words)
    n_sentences = len(tr.sentences)
    n_neg = n_art = n_prep = n_sc = n_adj = n_verb = 0
    hits_opinion = hits_vader = 0
    for t in words:
        w = t.lower
        if w in lexicons.negation.entries:
            n_neg += 1
        # article / SC / preposition are mutually exclusive per token
        # (word lists may overlap; priority keeps their sum <= n_words)
        if w in lexicons.articles.entries:
            n_art += 1
        elif w in lexicons.subordinating_conjunctions.entries:
            n_sc += 1
        elif w in lexicons.prepositions.entries:
            n_prep += 1
        if w in lexicons.opinion.entries:
            hits_opinion += 1
        if w in lexicons.vader_style.entries:
            hits_vader += 1
        if t.pos is POSTag.ADJ:
            n_adj += 1
        elif t.pos is POSTag.VERB:
            n_verb += 1
    return LinguisticFeatureVector(
        n_words=n_words,
        n_sentences=n_sentences,
        mean_sentence_len=n_words / n_sentences if n_sentences else 0.0,
        n_negation=n_neg,
        n_articles=n_art,
        n_adjectives=n_adj,
        n_verbs=n_verb,
        n_prepositions=n_prep,
        n_subconj=n_sc,
        coverage_opinion=hits_opinion / n_words if n_words else 0.0,
        coverage_vader=hits_vader / n_words if n_words else 0.0,
    )


def feature_matrix(vectors: list[LinguisticFeatureVector]) -> np.ndarray:
    return np.vstack([v.to_array() for v in vectors]) if vectors else \
        np.zeros((0, len(FEATURE_NAMES)))


def _mean_std(values: list[float]) -> tuple[float, float]:
    # sample std (n-1 denominator); 0 for n<2
    n = len(values)
    if n == 0:
        return 0.0, 0.0
    m = sum(values) / n
    if n == 1:
        return m, 0.0
    var = sum((v - m) ** 2 for v in values) / (n - 1)
    return m, math.sqrt(var)


@dataclass
class GroupProfile:
    """Aggregates for one group.

    Ratio statistics carry two variants: micro (ratio of corpus totals)
    and macro (mean of per-review ratios). They differ whenever review
    lengths vary, so both are always reported.
    """

    label: str
    n_reviews: int
    total_words: int
    total_sentences: int
    unique_words: int | None
    totals: dict[str, int]
    mean_per_review: dict[str, float]
    std_per_review: dict[str, float]
    micro_pct: dict[str, float]
    macro_pct: dict[str, float]
    mean_review_words: float
    std_review_words: float
    mean_review_sentences: float
    std_review_sentences: float
    mean_sentence_len_micro: float
    mean_sentence_len_macro: float

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "n_reviews": self.n_reviews,
            "total_words": self.total_words,
            "total_sentences": self.total_sentences,
            "unique_words": self.unique_words,
            "totals": self.totals,
            "mean_per_review": self.mean_per_review,
            "std_per_review": self.std_per_review,
            "micro_pct": self.micro_pct,
            "macro_pct": self.macro_pct,
            "mean_review_words": self.mean_review_words,
            "std_review_words": self.std_review_words,
            "mean_review_sentences": self.mean_review_sentences,
            "std_review_sentences": self.std_review_sentences,
            "mean_sentence_len_micro": self.mean_sentence_len_micro,
            "mean_sentence_len_macro": self.mean_sentence_len_macro,
        }


@dataclass
class CorpusProfile:
    groups: dict[str, GroupProfile]
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {"groups": {g: p.as_dict() for g, p in self.groups.items()},
             "notes": self.notes},
            indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        """Aligned text table, one column per group."""
        labels = list(self.groups)
        rows: list[tuple[str, list[str]]] = []

        def row(name, fmt, getter):
            rows.append((name, [fmt.format(getter(self.groups[g])) for g in labels]))

        row("Reviews", "{:d}", lambda p: p.n_reviews)
        row("Total words (in corpus)", "{:d}", lambda p: p.total_words)
        row("Total sentences (in corpus)", "{:d}", lambda p: p.total_sentences)
        row("Mean review length (#words)", "{:.2f}", lambda p: p.mean_review_words)
        row("Std review length (#words)", "{:.2f}", lambda p: p.std_review_words)
        row("Mean review length (#sentences)", "{:.2f}",
            lambda p: p.mean_review_sentences)
        row("Mean sentence length, micro (#words)", "{:.2f}",
            lambda p: p.mean_sentence_len_micro)
        row("Mean sentence length, macro (#words)", "{:.2f}",
            lambda p: p.mean_sentence_len_macro)
        if all(self.groups[g].unique_words is not None for g in labels):
            row("Total unique words (in corpus)", "{:d}", lambda p: p.unique_words)
        for feat in _COUNT_FEATURES:
            pretty = feat.replace("_", " ")
            row(f"Total {pretty} (in corpus)", "{:d}", lambda p, f=feat: p.totals[f])
            row(f"% {pretty}, micro", "{:.2f}%", lambda p, f=feat: p.micro_pct[f])
            row(f"% {pretty}, macro", "{:.2f}%", lambda p, f=feat: p.macro_pct[f])
            row(f"{pretty} per review (mean)", "{:.2f}",
                lambda p, f=feat: p.mean_per_review[f])
        width = max(len(r[0]) for r in rows)
        colw = max(12, *(len(g) for g in labels))
        lines = [" " * width + "  " + "  ".join(g.rjust(colw) for g in labels)]
        for name, cells in rows:
            lines.append(name.ljust(width) + "  "
                         + "  ".join(c.rjust(colw) for c in cells))
        if self.notes:
            lines.append("")
            lines.extend("note: " + n for n in self.notes)
        return "\n".join(lines) + "\n"


def profile_corpus(
    vectors_by_group: dict[str, list[LinguisticFeatureVector]],
    tokenized_by_group: dict[str, list[TokenizedReview]] | None = None,
) -> CorpusProfile:
    """Aggregate per-review vectors into group profiles.

    Unique-word counts need the tokenized reviews and are omitted when
    they are not supplied.
    """
    groups: dict[str, GroupProfile] = {}
    for label, vecs in vectors_by_group.items():
        n_reviews = len(vecs)
        total_words = sum(v.n_words for v in vecs)
        total_sentences = sum(v.n_sentences for v in vecs)
        totals = {f: sum(v.count(f) for v in vecs) for f in _COUNT_FEATURES}
        mean_pr: dict[str, float] = {}
        std_pr: dict[str, float] = {}
        macro: dict[str, float] = {}
        for f in _COUNT_FEATURES:
            per_review = [float(v.count(f)) for v in vecs]
            mean_pr[f], std_pr[f] = _mean_std(per_review)
            ratios = [v.count(f) / v.n_words for v in vecs if v.n_words]
            macro[f] = 100.0 * (sum(ratios) / len(ratios)) if ratios else 0.0
        micro = {f: (100.0 * totals[f] / total_words if total_words else 0.0)
                 for f in _COUNT_FEATURES}
        unique: int | None = None
        if tokenized_by_group is not None and label in tokenized_by_group:
            vocab: set[str] = set()
            for tr in tokenized_by_group[label]:
                vocab.update(t.lower for t in tr.tokens if t.is_word)
            unique = len(vocab)
        mean_w, std_w = _mean_std([float(v.n_words) for v in vecs])
        mean_s, std_s = _mean_std([float(v.n_sentences) for v in vecs])
        per_review_slen = [v.mean_sentence_len for v in vecs if v.n_sentences]
        groups[label] = GroupProfile(
            label=label,
            n_reviews=n_reviews,
            total_words=total_words,
            total_sentences=total_sentences,
            unique_words=unique,
            totals=totals,
            mean_per_review=mean_pr,
            std_per_review=std_pr,
            micro_pct=micro,
            macro_pct=macro,
            mean_review_words=mean_w,
            std_review_words=std_w,
            mean_review_sentences=mean_s,
            std_review_sentences=std_s,
            mean_sentence_len_micro=(total_words / total_sentences
                                     if total_sentences else 0.0),
            mean_sentence_len_macro=(sum(per_review_slen) / len(per_review_slen)
                                     if per_review_slen else 0.0),
        )
    notes = [
        "ratio rows report micro (corpus-total ratio) and macro (mean of "
        "per-review ratios); the two disagree when review lengths vary, "
        "notably for preposition share and sentiment-lexicon coverage",
    ]
    return CorpusProfile(groups=groups, notes=notes)


def top_terms_by_pos(
    tagged_by_group: dict[str, list[TokenizedReview]],
    tag: POSTag,
    k: int,
) -> dict[str, list[tuple[str, int]]]:
    """Per-group top-k surface forms carrying `tag`, by descending count.

    Counts are over lowercased surface forms, no lemmatization; ties
    break lexicographically.
    """
    out: dict[str, list[tuple[str, int]]] = {}
    for label, reviews in tagged_by_group.items():
        counts: Counter[str] = Counter()
        for tr in reviews:
            for t in tr.tokens:
                if t.is_word and t.pos is tag:
                    counts[t.lower] += 1
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        out[label] = ranked[:k]
    return out


@dataclass
class SparseMatrix:
    """Document-term matrix; thin wrapper over CSR with the vocabulary."""

    csr: sp.csr_matrix
    vocabulary: dict[str, int]

    @property
    def n_rows(self) -> int:
        return self.csr.shape[0]

    @property
    def n_cols(self) -> int:
        return self.csr.shape[1]

    def entries(self):
        """Yield (row, col, weight) triples."""
        coo = self.csr.tocoo()
        yield from zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())

    def toarray(self) -> np.ndarray:
        return self.csr.toarray()


def doc_ngrams(tr: TokenizedReview, ngram_range: tuple[int, int]) -> list[str]:
    """Lowercase word n-grams, formed within sentences only."""
    lo, hi = ngram_range
    grams: list[str] = []
    for s in tr.sentences:
        words = [t.lower for t in s.tokens if t.is_word]
        for n in range(lo, hi + 1):
            for i in range(len(words) - n + 1):
                grams.append(" ".join(words[i:i + n]))
    return grams


class TfidfVectorizer:
    """tf-idf over word uni/bigrams.

    weight(t, d) = tf(t, d) * idf(t), tf = raw in-document count,
    idf(t) = ln((1+N)/(1+df(t))) + 1; rows are L2-normalized. The fitted
    vocabulary is frozen; out-of-vocabulary n-grams are dropped on
    transform (an all-OOV document becomes a zero row).
    """

    def __init__(self, ngram_range: tuple[int, int] = (1, 2), min_df: int = 2):
        self.ngram_range = ngram_range
        self.min_df = min_df
        self.vocabulary: dict[str, int] = {}
        self.idf: np.ndarray | None = None

    def fit(self, docs: list[TokenizedReview]) -> "TfidfVectorizer":
        df: Counter[str] = Counter()
        for tr in docs:
            df.update(set(doc_ngrams(tr, self.ngram_range)))
        terms = sorted(t for t, c in df.items() if c >= self.min_df)
        if not terms:
            raise FeatureError(
                f"empty vocabulary (min_df={self.min_df}, {len(docs)} docs)")
        self.vocabulary = {t: i for i, t in enumerate(terms)}
        n = len(docs)
        self.idf = np.array(
            [math.log((1 + n) / (1 + df[t])) + 1.0 for t in terms])
        return self

    def transform(self, docs: list[TokenizedReview]) -> SparseMatrix:
        if self.idf is None:
            raise FeatureError("vectorizer is not fitted")
        rows, cols, data = [], [], []
        for i, tr in enumerate(docs):
            counts: Counter[int] = Counter()
            for g in doc_ngrams(tr, self.ngram_range):
                j = self.vocabulary.get(g)
                if j is not None:
                    counts[j] += 1
            if not counts:
                continue
            idx = sorted(counts)
            vec = np.array([counts[j] * self.idf[j] for j in idx])
            norm = np.linalg.norm(vec)
            if norm > 0:
                vec = vec / norm
            rows.extend([i] * len(idx))
            cols.extend(idx)
            data.extend(vec.tolist())
        csr = sp.csr_matrix((data, (rows, cols)),
                            shape=(len(docs), len(self.vocabulary)))
        return SparseMatrix(csr=csr, vocabulary=self.vocabulary)

    def fit_transform(self, docs: list[TokenizedReview]) -> SparseMatrix:
        return self.fit(docs).transform(docs)


def fit_tfidf(docs: list[TokenizedReview],
              ngram_range: tuple[int, int] = (1, 2),
              min_df: int = 2) -> tuple[TfidfVectorizer, SparseMatrix]:
    vec = TfidfVectorizer(ngram_range=ngram_range, min_df=min_df)
    return vec, vec.fit_transform(docs)


def vectors_to_csv(ids: list[str], vectors: list[LinguisticFeatureVector]) -> str:
    """One row per review, columns = review_id + FEATURE_NAMES."""
    lines = ["review_id," + ",".join(FEATURE_NAMES)]
    for rid, v in zip(ids, vectors):
        arr = v.to_array()
        cells = [f"{x:.10g}" for x in arr]
        lines.append(rid + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def vocabulary_to_tsv(vec: TfidfVectorizer) -> str:
    """ngram<TAB>index<TAB>idf, in column order."""
    assert vec.idf is not None
    inv = sorted(vec.vocabulary.items(), key=lambda kv: kv[1])
    lines = [f"{t}\t{i}\t{vec.idf[i]:.12g}" for t, i in inv]
    return "\n".join(lines) + "\n"
