"""Command-line frontend.

Subcommands: ingest, profile, test, train, evaluate, report. Every
command writes a run.json (resolved config + tool version + corpus
checksum) next to its outputs; files are written atomically. Exit
codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .analysis import AnalysisError, mann_whitney_u, utest_report_tsv
from .corpus import (Corpus, CorpusError, balance_groups, load_corpus,
                     load_saved, merge, save_corpus)
from .features import (FEATURE_NAMES, FeatureError, fit_tfidf, profile_corpus,
                       top_terms_by_pos, vectors_to_csv, vocabulary_to_tsv)
from .learn import (CLASSIFIER_KINDS, ChunkError, LearnError, cross_validate,
                    reports_to_tsv, train)
from .lexicons import LexiconError, default_bundle
from .pipeline import process_corpus
from .textproc import POSTag, PretaggedTagger, RuleTagger, default_tagger

DATA_ERRORS = (CorpusError, LexiconError, FeatureError, LearnError,
               AnalysisError, ChunkError, FileNotFoundError)


class UsageError(Exception):
    pass


def _atomic_write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_run_json(out: Path, command: str, args: argparse.Namespace,
                    corpus_checksum: str | None) -> None:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    payload = {
        "command": command,
        "config": config,
        "version": __version__,
        "corpus_checksum": corpus_checksum,
    }
    _atomic_write(out / "run.json",
                  json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")


def _bundle(args: argparse.Namespace):
    # STYLODIFF_RESOURCES redirects lexicon defaults to another directory

    res_dir = os.environ.get("STYLODIFF_RESOURCES")

    def resolve(flag_value, default_name):
        if flag_value:
            return flag_value
        if res_dir:
            return Path(res_dir) / default_name
        return None

    opinion = None
    pos = resolve(getattr(args, "opinion_pos", None), "opinion_positive.txt")
    neg = resolve(getattr(args, "opinion_neg", None), "opinion_negative.txt")
    if pos and neg:
        opinion = (pos, neg)
    return default_bundle(
        prepositions_path=resolve(getattr(args, "prepositions", None),
                                  "prepositions.txt"),
        sc_path=resolve(getattr(args, "sc_list", None),
                        "subordinating_conjunctions.txt"),
        opinion_paths=opinion,
        valence_path=resolve(getattr(args, "valence", None), "valence.tsv"),
    )


def _tagger(args: argparse.Namespace):
    if getattr(args, "tagger", "rule") == "pretagged":
        if not getattr(args, "pretagged", None):
            raise UsageError("--tagger pretagged requires --pretagged FILE")
        return PretaggedTagger.from_jsonl(args.pretagged)
    return default_tagger()


def _load_processed(args: argparse.Namespace):
    corpus = load_saved(args.corpus)
    return process_corpus(corpus, tagger=_tagger(args), lexicons=_bundle(args))


def cmd_ingest(args: argparse.Namespace) -> int:
    out = Path(args.out)
    labels = tuple(args.labels.split(",")) if args.labels else None
    fixed = args.fixed_label or []
    if fixed and len(fixed) != len(args.input):
        raise UsageError("--fixed-label must be given once per --input")
    parts = []
    for i, path in enumerate(args.input):
        if fixed:
            c = load_corpus(path, args.format, args.text_field,
                            args.label_field, allowed_labels=None)
            from .corpus import Review
            c = Corpus([Review(id=r.id, text=r.text, group=fixed[i],
                               meta=r.meta) for r in c],
                       load_report=c.load_report)
        else:
            c = load_corpus(path, args.format, args.text_field,
                            args.label_field, allowed_labels=labels)
        parts.append(c)
    corpus = merge(*parts) if len(parts) > 1 else parts[0]
    if args.balance:
        corpus = balance_groups(corpus, args.balance, args.seed)
    out.mkdir(parents=True, exist_ok=True)
    save_corpus(corpus, out / "corpus.jsonl")
    _write_run_json(out, "ingest", args, corpus.checksum)
    print(f"ingested {len(corpus)} reviews: {corpus.group_counts}")
    return 0


def cmd_profile(args: argparse.Namespace) -> int:
    out = Path(args.out)
    pc = _load_processed(args)
    toks, vecs = pc.by_group()
    profile = profile_corpus(vecs, toks)
    _atomic_write(out / "profile.json", profile.to_json())
    _atomic_write(out / "profile.txt", profile.to_table())
    lines = ["group\tpos\trank\tterm\tcount"]
    for tag in (POSTag.ADJ, POSTag.VERB):
        ranked = top_terms_by_pos(toks, tag, args.top_k)
        for g in sorted(ranked):
            for rank, (term, count) in enumerate(ranked[g], 1):
                lines.append(f"{g}\t{tag.value}\t{rank}\t{term}\t{count}")
    _atomic_write(out / "top_terms.tsv", "\n".join(lines) + "\n")
    _atomic_write(out / "features.csv",
                  vectors_to_csv([r.id for r in pc.corpus], pc.vectors))
    _write_run_json(out, "profile", args, pc.corpus.checksum)
    if args.json:
        print(profile.to_json(), end="")
    else:
        print(profile.to_table(), end="")
    return 0


def cmd_test(args: argparse.Namespace) -> int:
    out = Path(args.out)
    pc = _load_processed(args)
    _, vecs = pc.by_group()
    groups = sorted(vecs)
    if len(groups) != 2:
        raise CorpusError(f"need exactly 2 groups, found {groups}")
    g1, g2 = groups
    results = []
    for name in FEATURE_NAMES:
        x = [getattr(v, name) for v in vecs[g1]]
        y = [getattr(v, name) for v in vecs[g2]]
        results.append(mann_whitney_u(x, y, alpha=args.alpha, feature_name=name))
    tsv = utest_report_tsv(results)
    _atomic_write(out / "utest.tsv", tsv)
    _write_run_json(out, "test", args, pc.corpus.checksum)
    print(tsv, end="")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    out = Path(args.out)
    pc = _load_processed(args)
    dataset = pc.dataset(args.features, ngram_range=(1, args.ngram_max),
                         min_df=args.min_df)
    y = dataset.y()
    if dataset.feature_kind == "linguistic":
        x = dataset.dense
    else:
        vec, mat = fit_tfidf(dataset.docs, dataset.tfidf_ngram_range,
                             dataset.tfidf_min_df)
        _atomic_write(out / "vocabulary.tsv", vocabulary_to_tsv(vec))
        if dataset.feature_kind == "combined":
            import scipy.sparse as sp
            x = sp.hstack([sp.csr_matrix(dataset.dense), mat.csr], format="csr")
        else:
            x = mat.csr
    model = train(args.classifier, x, y, dataset.classes, seed=args.seed,
                  feature_kind=dataset.feature_kind)
    _atomic_write(out / f"model_{args.classifier}.json", model.to_json())
    _write_run_json(out, "train", args, pc.corpus.checksum)
    print(f"trained {args.classifier} on {len(y)} reviews "
          f"({dataset.feature_kind} features)")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    pc = _load_processed(args)
    kinds = args.classifiers.split(",")
    for k in kinds:
        if k not in CLASSIFIER_KINDS:
            raise UsageError(f"unknown classifier {k!r}; "
                             f"choose from {CLASSIFIER_KINDS}")
    dataset = pc.dataset(args.features, ngram_range=(1, args.ngram_max),
                         min_df=args.min_df)
    reports = []
    for kind in kinds:
        rep = cross_validate(kind, dataset, k=args.k, seed=args.seed,
                             n_trees=args.n_trees)
        _atomic_write(out / f"eval_{kind}_{args.features}.json", rep.to_json())
        reports.append(rep)
        a = rep.aggregate
        print(f"{kind:>14} {args.features:>10}  "
              f"macro_f1={a['macro_f1']:.4f}  accuracy={a['accuracy']:.4f}")
    _atomic_write(out / f"summary_{args.features}.tsv", reports_to_tsv(reports))
    _write_run_json(out, "evaluate", args, pc.corpus.checksum)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    out = Path(args.out)
    sections = []
    for name in ("corpus.jsonl.manifest.json", "profile.txt", "utest.tsv"):
        p = out / name
        if p.exists():
            sections.append(f"== {name} ==\n" + p.read_text(encoding="utf-8"))
    for p in sorted(out.glob("summary_*.tsv")):
        sections.append(f"== {p.name} ==\n" + p.read_text(encoding="utf-8"))
    if not sections:
        raise CorpusError(f"no analysis outputs found under {out}")
    text = "\n".join(sections)
    _atomic_write(out / "report.txt", text)
    print(text, end="")
    return 0


def _add_common(p: argparse.ArgumentParser, corpus: bool = True) -> None:
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    if corpus:
        p.add_argument("--corpus", required=True,
                       help="corpus.jsonl produced by `ingest`")
        p.add_argument("--tagger", choices=("rule", "pretagged"), default="rule")
        p.add_argument("--pretagged", help="pre-tagged JSONL (see README)")
        for flag in ("prepositions", "sc-list", "opinion-pos", "opinion-neg",
                     "valence"):
            p.add_argument(f"--{flag}", help=f"override bundled {flag} file")


def _add_feature_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--features", choices=("linguistic", "ngram", "combined"),
                   default="linguistic")
    p.add_argument("--min-df", type=int, default=2)
    p.add_argument("--ngram-max", type=int, default=2, choices=(1, 2))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stylodiff",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load, label, balance, persist a corpus")
    p.add_argument("--input", action="append", required=True,
                   help="input file (repeatable)")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--text-field", default="text")
    p.add_argument("--label-field", default="label")
    p.add_argument("--labels", help="comma-separated allowed group labels")
    p.add_argument("--fixed-label", action="append",
                   help="constant label for the matching --input (repeatable)")
    p.add_argument("--balance", type=int,
                   help="sample this many reviews per group")
    _add_common(p, corpus=False)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("profile", help="corpus statistics + term rankings")
    _add_common(p)
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--json", action="store_true",
                   help="print the JSON profile instead of the table")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("test", help="per-feature Mann-Whitney U tests")
    _add_common(p)
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("train", help="fit one classifier on the full corpus")
    _add_common(p)
    _add_feature_flags(p)
    p.add_argument("--classifier", choices=CLASSIFIER_KINDS, required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="cross-validated evaluation")
    _add_common(p)
    _add_feature_flags(p)
    p.add_argument("--classifiers", default=",".join(CLASSIFIER_KINDS),
                   help="comma-separated classifier kinds")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--n-trees", type=int, default=100)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", help="combine outputs into one report")
    p.add_argument("--out", required=True, help="directory holding outputs")
    p.set_defaults(func=cmd_report)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except DATA_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # internal failure
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
