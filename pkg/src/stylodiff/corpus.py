"""Loading, balancing, and persisting labeled review corpora.

Input formats: CSV (RFC-4180 quoting) and JSON-lines. A corpus is an
immutable, ordered collection of reviews carrying exactly two group
labels; a content checksum stamps every corpus for reproducibility.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
from dataclasses import dataclass, field
from pathlib import Path


class CorpusError(Exception):
    """Raised for malformed input files or violated corpus preconditions."""


@dataclass(frozen=True)
class Review:
    """One labeled review document."""

    id: str
    text: str
    group: str
    word_count: int = 0
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.text.strip():
            raise CorpusError(f"review {self.id!r}: empty text")


@dataclass(frozen=True)
class LoadReport:
    """Bookkeeping from a single load: rows read, kept, dropped for emptiness."""

    path: str
    n_read: int
    n_kept: int
    n_dropped_empty: int


class Corpus:
    """Immutable ordered collection of reviews with integrity metadata."""

    def __init__(self, reviews: list[Review], load_report: LoadReport | None = None):
        seen: set[str] = set()
        for r in reviews:
            if r.id in seen:
                raise CorpusError(f"duplicate review id {r.id!r}")
            seen.add(r.id)
        self._reviews = tuple(reviews)
        self.load_report = load_report

    @property
    def reviews(self) -> tuple[Review, ...]:
        return self._reviews

    def __len__(self) -> int:
        return len(self._reviews)

    def __iter__(self):
        return iter(self._reviews)

    @property
    def group_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for r in self._reviews:
            counts[r.group] = counts.get(r.group, 0) + 1
        return counts

    @property
    def checksum(self) -> str:
        """Deterministic digest over (id, text, group) in order."""
        h = hashlib.sha256()
        for r in self._reviews:
            for part in (r.id, r.text, r.group):
                h.update(part.encode("utf-8"))
                h.update(b"\x1f")
            h.update(b"\x1e")
        return h.hexdigest()

    def groups(self) -> list[str]:
        """Distinct group labels in first-appearance order."""
        out: list[str] = []
        for r in self._reviews:
            if r.group not in out:
                out.append(r.group)
        return out

    def by_group(self) -> dict[str, list[Review]]:
        out: dict[str, list[Review]] = {}
        for r in self._reviews:
            out.setdefault(r.group, []).append(r)
        return out


def _check_label(value: str, allowed: tuple[str, ...] | None, lineno: int) -> None:
    if allowed is not None and value not in allowed:
        raise CorpusError(
            f"line {lineno}: unknown label {value!r}; allowed labels: {sorted(allowed)}"
        )


def load_corpus(
    path: str | Path,
    format: str,
    text_field: str,
    label_field: str,
    allowed_labels: tuple[str, ...] | None = None,
    id_field: str | None = None,
) -> Corpus:
    """Load a corpus from a CSV or JSON-lines file.

    Empty-text records are dropped (counted in the load report), never
    reordered. Missing fields and undeclared labels raise CorpusError
    naming the offending line.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"no such file: {path}")
    if format not in ("csv", "jsonl"):
        raise CorpusError(f"unknown format {format!r}; expected 'csv' or 'jsonl'")

    reviews: list[Review] = []
    n_read = n_dropped = 0

    def add(text: str, label: str, lineno: int, rid: str | None, meta: dict[str, str]):
        nonlocal n_read, n_dropped
        n_read += 1
        _check_label(label, allowed_labels, lineno)
        if not text.strip():
            n_dropped += 1
            return
        reviews.append(
            Review(id=rid or f"{path.stem}-{n_read}", text=text, group=label, meta=meta)
        )

    try:
        raw = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(f"{path}: not valid UTF-8 ({e})") from None

    if format == "csv":
        reader = csv.DictReader(raw.splitlines())
        if reader.fieldnames is None or text_field not in reader.fieldnames \
                or label_field not in reader.fieldnames:
            raise CorpusError(
                f"{path}: header must contain {text_field!r} and {label_field!r}"
            )
        for i, row in enumerate(reader, start=2):
            if row.get(text_field) is None or row.get(label_field) is None:
                raise CorpusError(f"line {i}: missing field")
            meta = {k: v for k, v in row.items()
                    if k not in (text_field, label_field, id_field) and v}
            add(row[text_field], row[label_field], i,
                row.get(id_field) if id_field else None, meta)
    else:
        for i, line in enumerate(raw.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusError(f"line {i}: malformed JSON ({e.msg})") from None
            if text_field not in rec or label_field not in rec:
                raise CorpusError(f"line {i}: missing field "
                                  f"{text_field!r} or {label_field!r}")
            meta = rec.get("meta", {}) if isinstance(rec.get("meta"), dict) else {}
            add(str(rec[text_field]), str(rec[label_field]), i,
                str(rec[id_field]) if id_field and id_field in rec else None, meta)

    report = LoadReport(path=str(path), n_read=n_read,
                        n_kept=len(reviews), n_dropped_empty=n_dropped)
    return Corpus(reviews, load_report=report)


def merge(*corpora: Corpus) -> Corpus:
    """Concatenate corpora, preserving order; ids must stay unique."""
    reviews: list[Review] = []
    for c in corpora:
        reviews.extend(c.reviews)
    return Corpus(reviews)


def balance_groups(c: Corpus, per_group: int, seed: int) -> Corpus:
    """Seeded uniform sample of exactly `per_group` reviews per group.

    Relative order within each group (and across the corpus) is preserved.
    """
    if per_group <= 0:
        raise CorpusError("per_group must be positive")
    counts = c.group_counts
    for g, n in counts.items():
        if n < per_group:
            raise CorpusError(
                f"group {g!r} has only {n} reviews, need {per_group}"
            )
    rng = random.Random(seed)
    keep: set[int] = set()
    index_by_group: dict[str, list[int]] = {}
    for i, r in enumerate(c.reviews):
        index_by_group.setdefault(r.group, []).append(i)
    for g in sorted(index_by_group):
        keep.update(rng.sample(index_by_group[g], per_group))
    return Corpus([r for i, r in enumerate(c.reviews) if i in keep])


def save_corpus(c: Corpus, path: str | Path) -> Path:
    """Persist as JSON-lines plus a `<path>.manifest.json` sidecar.

    The sidecar carries checksum, group counts, and the load report (if any).
    """
    path = Path(path)
    with path.open("w", encoding="utf-8") as f:
        for r in c.reviews:
            rec = {"id": r.id, "text": r.text, "group": r.group}
            if r.meta:
                rec["meta"] = r.meta
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    manifest = {
        "checksum": c.checksum,
        "n_reviews": len(c),
        "group_counts": c.group_counts,
    }
    if c.load_report is not None:
        manifest["load_report"] = vars(c.load_report)
    mpath = path.with_name(path.name + ".manifest.json")
    mpath.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return mpath


def load_saved(path: str | Path) -> Corpus:
    """Load a corpus previously written by save_corpus."""
    return load_corpus(path, "jsonl", text_field="text", label_field="group",
                       id_field="id")
