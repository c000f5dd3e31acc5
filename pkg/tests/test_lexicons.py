import pytest

from stylodiff.lexicons import (LexiconError, SentimentLexicon, default_bundle,
                                load_sentiment_lexicon, load_word_list,
                                negative_subset, resource_path)


def test_article_list(tmp_path):
    p = tmp_path / "articles.txt"
    p.write_text("a\nan\nthe\n")
    wl = load_word_list(p, "articles")
    assert wl.entries == {"a", "an", "the"}


def test_case_fold_and_dedup(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("Because\nbecause\n")
    assert len(load_word_list(p, "x")) == 1


def test_comments_and_blanks_stripped(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("# header\n\nfoo\nbar  # trailing\n")
    assert load_word_list(p, "x").entries == {"foo", "bar"}


def test_internal_whitespace_rejected(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("as if\n")
    with pytest.raises(LexiconError, match=":1"):
        load_word_list(p, "x")


def test_signed_wordlists(tmp_path):
    pos = tmp_path / "pos.txt"
    neg = tmp_path / "neg.txt"
    pos.write_text("good\n")
    neg.write_text("bad\n")
    lex = load_sentiment_lexicon((pos, neg), "wordlist_signed")
    assert lex.entries == {"good": 1.0, "bad": -1.0}


def test_tab_valence(tmp_path):
    p = tmp_path / "v.tsv"
    p.write_text("okay\t0.9\nhorrible\t-2.5\tignored extra col\n")
    lex = load_sentiment_lexicon(p, "tab_valence")
    assert lex.entries == {"okay": 0.9, "horrible": -2.5}


def test_tab_valence_zero_skipped(tmp_path):
    p = tmp_path / "v.tsv"
    p.write_text("meh\t0\nfine\t0.8\n")
    lex = load_sentiment_lexicon(p, "tab_valence")
    assert "meh" not in lex
    assert len(lex) == 1


def test_non_numeric_valence_names_line(tmp_path):
    p = tmp_path / "v.tsv"
    p.write_text("fine\t0.8\nbad\tnope\n")
    with pytest.raises(LexiconError, match=":2"):
        load_sentiment_lexicon(p, "tab_valence")


def test_negative_subset():
    lex = SentimentLexicon("t", {"good": 1.0, "bad": -1.0, "poor": -1.0})
    assert negative_subset(lex).entries == {"bad", "poor"}


def test_negative_subset_empty_for_all_positive():
    lex = SentimentLexicon("t", {"great": 3.1, "fine": 0.8})
    assert len(negative_subset(lex)) == 0


def test_negative_subset_mixed_valences():
    lex = SentimentLexicon("t", {"great": 3.1, "terrible": -2.1, "fine": 0.8})
    assert negative_subset(lex).entries == {"terrible"}


def test_negative_subset_disjoint_from_positive(bundle):
    neg = negative_subset(bundle.vader_style)
    positives = {t for t, v in bundle.vader_style.entries.items() if v > 0}
    assert neg.entries.isdisjoint(positives)


def test_load_same_file_twice_equal():
    p = resource_path("prepositions.txt")
    assert load_word_list(p, "a").entries == load_word_list(p, "b").entries


def test_membership_total(bundle):
    for probe in ("", "good", "NOT-A-WORD", "Σ", "don't"):
        assert (probe in bundle.prepositions) in (True, False)
        assert (probe in bundle.opinion) in (True, False)


def test_default_bundle_shapes(bundle):
    assert bundle.articles.entries == {"a", "an", "the"}
    assert len(bundle.subordinating_conjunctions) == 50
    assert 45 <= len(bundle.prepositions) <= 60
    assert len(bundle.opinion) > 100
    assert len(bundle.negation) > 0
