"""Convenience layer: corpus -> tokens -> tags -> features -> dataset.

Pure per-review transforms; order follows the corpus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .features import (LinguisticFeatureVector, extract_linguistic,
                       feature_matrix)
from .learn.cv import Dataset
from .lexicons import LexiconBundle, default_bundle
from .textproc import Tagger, TokenizedReview, default_tagger, tokenize_review


@dataclass
class ProcessedCorpus:
    corpus: Corpus
    tokenized: list[TokenizedReview]
    vectors: list[LinguisticFeatureVector]

    def by_group(self) -> tuple[dict[str, list[TokenizedReview]],
                                dict[str, list[LinguisticFeatureVector]]]:
        toks: dict[str, list[TokenizedReview]] = {}
        vecs: dict[str, list[LinguisticFeatureVector]] = {}
        for r, tr, v in zip(self.corpus, self.tokenized, self.vectors):
            toks.setdefault(r.group, []).append(tr)
            vecs.setdefault(r.group, []).append(v)
        return toks, vecs

    def dataset(self, feature_kind: str, ngram_range=(1, 2),
                min_df: int = 2) -> Dataset:
        dense = feature_matrix(self.vectors) \
            if feature_kind in ("linguistic", "combined") else None
        docs = self.tokenized if feature_kind in ("ngram", "combined") else None
        return Dataset(labels=[r.group for r in self.corpus],
                       feature_kind=feature_kind, dense=dense, docs=docs,
                       tfidf_ngram_range=tuple(ngram_range),
                       tfidf_min_df=min_df)

    def feature_column(self, name: str) -> np.ndarray:
        return np.array([getattr(v, name) for v in self.vectors])


def process_corpus(corpus: Corpus, tagger: Tagger | None = None,
                   lexicons: LexiconBundle | None = None) -> ProcessedCorpus:
    """Tokenize, segment, tag, and featurize every review."""
    tagger = tagger or default_tagger()
    lexicons = lexicons or default_bundle()
    tokenized: list[TokenizedReview] = []
    vectors: list[LinguisticFeatureVector] = []
    for r in corpus:
        tr = tokenize_review(r.id, r.text)
        tagger.tag(tr)
        tokenized.append(tr)
        vectors.append(extract_linguistic(tr, lexicons))
    return ProcessedCorpus(corpus=corpus, tokenized=tokenized, vectors=vectors)
