"""Seeded synthetic review corpora with planted group differences.

Group "D1" writes short sentences with heavy opinion-word use and few
subordinating conjunctions; group "D2" writes long, clause-heavy
sentences with sparse opinion words. With planted_vocab=True each group
additionally gets its own content vocabulary, which word n-grams pick
up easily.
"""

from __future__ import annotations

import random

from .corpus import Corpus, Review

_FILLERS = (
    "food place table menu dish plate rice bread soup salad meat fish "
    "chicken curry dessert drink coffee tea water staff waiter kitchen "
    "room seat corner window street evening lunch dinner breakfast bill "
    "portion flavor sauce spice order meal visit friend family group"
).split()

_OPINION = (
    "good great nice best delicious tasty fresh friendly lovely wonderful "
    "excellent awesome amazing bad poor slow dirty terrible horrible bland"
).split()

_SC = "because although though since while when unless until whereas if".split()

_D1_VOCAB = (
    "biryani kacchi bhuna borhani fuchka chotpoti naan paratha dhaka "
    "gulshan banani tehari rezala bakarkhani falooda lassi mughlai"
).split()

_D2_VOCAB = (
    "burger fries brunch patio downtown espresso pancake bacon brisket "
    "taco queso marinara parmesan brewery seattle portland happyhour"
).split()


def _sentence(rng: random.Random, n_words: int, p_opinion: float,
              p_sc: float, extra_vocab: list[str], p_extra: float) -> str:
    words = []
    for _ in range(n_words):
        u = rng.random()
        if u < p_opinion:
            words.append(rng.choice(_OPINION))
        elif u < p_opinion + p_sc:
            words.append(rng.choice(_SC))
        elif extra_vocab and u < p_opinion + p_sc + p_extra:
            words.append(rng.choice(extra_vocab))
        else:
            words.append(rng.choice(_FILLERS))
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def generate_corpus(n_per_group: int, seed: int,
                    planted_vocab: bool = False) -> Corpus:
    """Two groups of n_per_group reviews differing in sentence length,
    SC density, and opinion-word coverage (plus vocabulary if planted)."""
    rng = random.Random(seed)
    reviews: list[Review] = []
    profiles = {
        # label: (sentence-length range, p_opinion, p_sc, group vocab)
        "D1": ((4, 9), 0.22, 0.01, _D1_VOCAB),
        "D2": ((12, 22), 0.05, 0.09, _D2_VOCAB),
    }
    for label, ((lo, hi), p_op, p_sc, vocab) in profiles.items():
        extra = vocab if planted_vocab else []
        for i in range(n_per_group):
            n_sentences = rng.randint(2, 6)
            body = " ".join(
                _sentence(rng, rng.randint(lo, hi), p_op, p_sc, extra, 0.12)
                for _ in range(n_sentences))
            reviews.append(Review(id=f"{label}-{i}", text=body, group=label))
    return Corpus(reviews)
