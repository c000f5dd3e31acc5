import pytest

from stylodiff.corpus import (Corpus, CorpusError, Review, balance_groups,
                              load_corpus, load_saved, merge, save_corpus)


def write(tmp_path, name, content):
    p = tmp_path / name
    p.write_text(content, encoding="utf-8")
    return p


def test_load_csv_two_rows(tmp_path):
    p = write(tmp_path, "r.csv", 'text,label\ngreat food,D1\nslow service,D2\n')
    c = load_corpus(p, "csv", "text", "label")
    assert len(c) == 2
    assert c.group_counts == {"D1": 1, "D2": 1}
    assert [r.text for r in c] == ["great food", "slow service"]


def test_load_drops_empty_text_with_report(tmp_path):
    p = write(tmp_path, "r.csv", 'text,label\nok food,D1\n,D1\nfine,D2\n')
    c = load_corpus(p, "csv", "text", "label")
    assert len(c) == 2
    assert c.load_report.n_dropped_empty == 1
    assert c.load_report.n_read == 3


def test_load_jsonl(tmp_path):
    p = write(tmp_path, "r.jsonl",
              '{"text": "nice place", "label": "D1"}\n'
              '{"text": "too loud", "label": "D2"}\n')
    c = load_corpus(p, "jsonl", "text", "label")
    assert len(c) == 2


def test_load_missing_field_names_line(tmp_path):
    p = write(tmp_path, "r.jsonl", '{"text": "x", "label": "D1"}\n{"text": "y"}\n')
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(p, "jsonl", "text", "label")


def test_load_malformed_json_names_line(tmp_path):
    p = write(tmp_path, "r.jsonl", '{"text": "x", "label": "D1"}\n{bad\n')
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(p, "jsonl", "text", "label")


def test_unknown_label_lists_allowed(tmp_path):
    p = write(tmp_path, "r.csv", 'text,label\ngood,D3\n')
    with pytest.raises(CorpusError, match="D1"):
        load_corpus(p, "csv", "text", "label", allowed_labels=("D1", "D2"))


def test_missing_file():
    with pytest.raises(CorpusError, match="no such file"):
        load_corpus("/nonexistent/file.csv", "csv", "text", "label")


def test_load_never_reorders(tmp_path):
    rows = [f'review number {i},D{i % 2 + 1}' for i in range(20)]
    p = write(tmp_path, "r.csv", "text,label\n" + "\n".join(rows) + "\n")
    c = load_corpus(p, "csv", "text", "label")
    assert [r.text for r in c] == [f"review number {i}" for i in range(20)]


def test_duplicate_ids_rejected():
    r = Review(id="x", text="hello", group="D1")
    with pytest.raises(CorpusError, match="duplicate"):
        Corpus([r, r])


def make(sizes):
    reviews = []
    for g, n in sizes.items():
        for i in range(n):
            reviews.append(Review(id=f"{g}{i}", text=f"text {g} {i}", group=g))
    return Corpus(reviews)


def test_balance_identity():
    c = make({"D1": 10, "D2": 10})
    b = balance_groups(c, 10, seed=7)
    assert b.checksum == c.checksum


def test_balance_deterministic():
    c = make({"D1": 20, "D2": 10})
    b1 = balance_groups(c, 10, seed=42)
    b2 = balance_groups(c, 10, seed=42)
    assert b1.group_counts == {"D1": 10, "D2": 10}
    assert b1.checksum == b2.checksum


def test_balance_preserves_relative_order():
    c = make({"D1": 30, "D2": 12})
    b = balance_groups(c, 12, seed=3)
    kept = [r.id for r in b if r.group == "D1"]
    assert kept == sorted(kept, key=lambda x: int(x[2:]))


def test_balance_insufficient_names_group():
    c = make({"D1": 9, "D2": 10})
    with pytest.raises(CorpusError, match="D1"):
        balance_groups(c, 10, seed=0)


def test_balance_idempotent_at_full_size():
    c = make({"D1": 8, "D2": 8})
    once = balance_groups(c, 8, seed=5)
    twice = balance_groups(once, 8, seed=5)
    assert once.checksum == twice.checksum == c.checksum


def test_save_load_roundtrip_checksum(tmp_path):
    c = make({"D1": 5, "D2": 5})
    save_corpus(c, tmp_path / "c.jsonl")
    again = load_saved(tmp_path / "c.jsonl")
    assert again.checksum == c.checksum
    manifest = (tmp_path / "c.jsonl.manifest.json").read_text()
    assert c.checksum in manifest


def test_merge_keeps_order():
    c1 = make({"D1": 3})
    c2 = make({"D2": 3})
    m = merge(c1, c2)
    assert [r.group for r in m] == ["D1"] * 3 + ["D2"] * 3
