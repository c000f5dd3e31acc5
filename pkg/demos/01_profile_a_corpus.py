"""Profile a small two-group review corpus.

Generates a synthetic corpus with two writing styles, extracts the
per-review linguistic features, and prints the group profile table plus
the top adjectives for each group.

Run from the repository root:

    python3 demos/01_profile_a_corpus.py
"""

from stylodiff.features import profile_corpus, top_terms_by_pos
from stylodiff.pipeline import process_corpus
from stylodiff.synthetic import generate_corpus
from stylodiff.textproc import POSTag

corpus = generate_corpus(n_per_group=200, seed=7, planted_vocab=True)
processed = process_corpus(corpus)
tokenized_by_group, vectors_by_group = processed.by_group()

profile = profile_corpus(vectors_by_group, tokenized_by_group)
print(profile.to_table())

print()
for group, ranked in sorted(top_terms_by_pos(tokenized_by_group,
                                             POSTag.ADJ, k=10).items()):
    words = ", ".join(f"{w} ({c})" for w, c in ranked)
    print(f"top adjectives in {group}: {words}")
