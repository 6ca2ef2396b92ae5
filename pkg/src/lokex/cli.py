"""Command-line interface.

Subcommands: ``extract`` (rank one document's keywords), ``evaluate``
(corpus F1@k for one method), ``compare`` (side-by-side method table),
``build-df`` (persist a document-frequency table) and ``project``
(2-D principal-component export of a document's word vectors).
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import baselines as bl
from . import center as ct
from . import datasets as ds
from . import evaluation as ev
from . import scoring as sc
from .errors import LokexError
from .text import CandidateVocab, Document, FilterLists, build_candidate_index, read_document
from .vectors import GloVeConfig

logger = logging.getLogger(__name__)

METHODS = ("lv", "lvb", "tfidf", "fnw", "pr", "sr", "posr", "bt", "kcore")
FILTER_DIR_ENV = "LOKEX_FILTER_DIR"

_REPRESENTATIONS = {"tt": "term_term", "glove": "glove"}
_CENTERS = {"sample": "sample_mean", "mcd": "robust_mcd"}
_COVARIANCES = {"sample": "sample", "ml": "max_likelihood", "robust": "robust"}


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("k values must be positive integers")
    return values


def _method_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("method")
    group.add_argument("--method", choices=METHODS, default="lv")
    group.add_argument("--representation", choices=sorted(_REPRESENTATIONS), default="tt")
    group.add_argument("--metric", choices=sc.METRICS, default="euclidean")
    group.add_argument("--center", choices=sorted(_CENTERS), default="sample")
    group.add_argument("--covariance", choices=sorted(_COVARIANCES), default=None)
    group.add_argument("--pca-dims", type=int, default=None)
    group.add_argument("--window", type=int, default=10)
    group.add_argument("--glove-dim", type=int, default=50)
    group.add_argument("--epochs", type=int, default=100)
    group.add_argument("--seed", type=int, default=0)
    group.add_argument("--df-table", type=Path, default=None)
    group.add_argument("--filter-dir", type=Path,
                       default=os.environ.get(FILTER_DIR_ENV) or None)
    group.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")
    group.add_argument("-k", type=_int_list, default=None,
                       help="k or comma-separated k values (default 10 / 5,10,15)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lokex",
        description="Keyword extraction from local word-vector statistics.")
    parent = _method_parent()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[parent],
                       help="rank the keywords of one document")
    p.add_argument("document", type=Path)

    p = sub.add_parser("evaluate", parents=[parent],
                       help="F1@k of one method over a collection part")
    p.add_argument("corpus", type=Path)
    p.add_argument("--dataset", choices=ds.DATASETS, default="custom")
    p.add_argument("--part", choices=("train", "test"), default="test")
    p.add_argument("--manifest", type=Path, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, default=None,
                   help="per-document CSV path (default: evaluate_<method>_<part>.csv)")

    p = sub.add_parser("compare", parents=[parent],
                       help="side-by-side F1@k table for several methods")
    p.add_argument("corpus", type=Path)
    p.add_argument("--dataset", choices=ds.DATASETS, default="custom")
    p.add_argument("--part", choices=("train", "test"), default="test")
    p.add_argument("--manifest", type=Path, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--methods", default=None,
                   help="comma-separated method names (required)")

    p = sub.add_parser("build-df", parents=[parent],
                       help="build and save a document-frequency table")
    p.add_argument("corpus", type=Path)
    p.add_argument("--dataset", choices=ds.DATASETS, default="custom")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("project", parents=[parent],
                       help="2-D principal-component coordinates of one document")
    p.add_argument("document", type=Path)
    p.add_argument("--normalize", action="store_true",
                   help="scale retained components to unit variance")
    p.add_argument("--gold", type=Path, default=None,
                   help="file of gold keyphrases, one per line")
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    p.add_argument("--svg", type=Path, default=None, help="also render an SVG scatter")
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.covariance is not None and args.metric != "mahalanobis":
        parser.error("--covariance requires --metric mahalanobis")
    if args.window < 1:
        parser.error("--window must be >= 1")


def _filter_lists(args) -> FilterLists:
    if args.filter_dir is not None:
        return FilterLists.from_dir(args.filter_dir)
    return FilterLists.default()


def _scoring_config(args, use_position: bool) -> sc.ScoringConfig:
    return sc.ScoringConfig(
        representation=_REPRESENTATIONS[args.representation],
        metric=args.metric,
        center=_CENTERS[args.center],
        covariance_kind=_COVARIANCES[args.covariance] if args.covariance else None,
        use_position=use_position,
        pca_components=args.pca_dims,
        window=args.window,
        glove=GloVeConfig(q=args.glove_dim, window=args.window,
                          epochs=args.epochs, seed=args.seed),
        seed=args.seed,
    )


def _kcore_ranking(vocab: CandidateVocab, window: int) -> list[bl.RankedWord]:
    graph = bl.build_graph(vocab, window=window)
    core = bl.k_core(graph, weighted=True)
    strength = dict(zip(graph.stems, graph.weights.sum(axis=1).tolist()))
    members = sorted(core, key=lambda s: (-strength[s], vocab.first_sentence_index[s],
                                          vocab.first_word_position[s], s))
    return [bl.RankedWord(stem=s, score=strength[s]) for s in members]


def _rank_document(doc: Document, args, lists: FilterLists,
                   df: bl.DfTable | None, k: int) -> list[dict]:
    """Ranked rows for one document: stem, score, optional distance, z."""
    method = args.method
    if method in ("lv", "lvb"):
        cfg = _scoring_config(args, use_position=(method == "lv"))
        scored = sc.extract_keywords(doc, lists, cfg, k)
        return [
            {"rank": i + 1, "stem": s.stem, "score": s.score,
             "distance": s.distance, "z": s.z}
            for i, s in enumerate(scored)
        ]
    vocab = build_candidate_index(doc, lists)
    if method == "kcore":
        ranked = _kcore_ranking(vocab, args.window)[:k]
    else:
        ranked = bl.run_baseline(method, doc, lists, df=df, k=k,
                                 window=args.window, seed=args.seed)
    return [
        {"rank": i + 1, "stem": r.stem, "score": r.score,
         "distance": None, "z": vocab.first_sentence_index[r.stem]}
        for i, r in enumerate(ranked)
    ]


def _print_rows(rows: list[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["rank", "stem", "score", "distance", "z"])
        for r in rows:
            dist = "" if r["distance"] is None else f"{r['distance']:.12g}"
            writer.writerow([r["rank"], r["stem"], f"{r['score']:.12g}", dist, r["z"]])
    elif fmt == "jsonl":
        for r in rows:
            out.write(json.dumps(r) + "\n")
    else:
        width = max([len(r["stem"]) for r in rows] + [4])
        out.write(f"{'rank':>4}  {'stem':<{width}}  {'score':>10}  {'distance':>10}  {'z':>4}\n")
        for r in rows:
            dist = "" if r["distance"] is None else f"{r['distance']:.3f}"
            out.write(f"{r['rank']:>4}  {r['stem']:<{width}}  {r['score']:>10.3f}  "
                      f"{dist:>10}  {r['z']:>4}\n")


def cmd_extract(args) -> int:
    lists = _filter_lists(args)
    doc = read_document(args.document)
    df = bl.DfTable.load(args.df_table) if args.df_table else None
    if args.method == "tfidf" and df is None:
        raise LokexError("--method tfidf requires --df-table")
    ks = args.k or [10]
    rows = _rank_document(doc, args, lists, df, max(ks))
    _print_rows(rows, args.format)
    return 0


def _load_split_part(args) -> list[ds.LabeledDocument]:
    docs = ds.load_collection(args.corpus, args.dataset)
    if args.dataset == "custom" and args.manifest is None:
        # no manifest: the whole collection serves as the requested part
        return docs
    split = ds.make_split(docs, args.dataset, manifest=args.manifest)
    return split.part(args.part)


def _df_for_method(method: str, args, lists: FilterLists) -> bl.DfTable | None:
    if method != "tfidf":
        return None
    if args.df_table:
        return bl.DfTable.load(args.df_table)
    docs = ds.load_collection(args.corpus, args.dataset)
    logger.info("building df table over %d documents", len(docs))
    return bl.df_from_vocabs(
        (build_candidate_index(d.document, lists) for d in docs),
        collection_id=str(args.corpus))


# worker-side state for parallel evaluation
_WORKER: dict = {}


def _worker_init(payload: dict) -> None:
    _WORKER["lists"] = (FilterLists.from_dir(payload["filter_dir"])
                        if payload["filter_dir"] else FilterLists.default())
    _WORKER["payload"] = payload


def _worker_rank(doc: Document) -> tuple[str, list[str]]:
    payload = _WORKER["payload"]
    args = argparse.Namespace(**payload["args"])
    rows = _rank_document(doc, args, _WORKER["lists"], payload["df"], payload["k"])
    return doc.id, [r["stem"] for r in rows]


def _predictions(part: list[ds.LabeledDocument], args, lists: FilterLists,
                 df: bl.DfTable | None, method: str, k: int) -> dict[str, list[str]]:
    ranking_args = argparse.Namespace(**vars(args))
    ranking_args.method = method
    if args.workers > 1:
        payload = {
            "args": vars(ranking_args),
            "df": df,
            "k": k,
            "filter_dir": str(args.filter_dir) if args.filter_dir else None,
        }
        with ProcessPoolExecutor(max_workers=args.workers, initializer=_worker_init,
                                 initargs=(payload,)) as pool:
            results = dict(pool.map(_worker_rank, [d.document for d in part], chunksize=4))
        return results
    out = {}
    for labeled in part:
        rows = _rank_document(labeled.document, ranking_args, lists, df, k)
        out[labeled.id] = [r["stem"] for r in rows]
    return out


def _evaluate_method(part, args, lists, method: str, ks) -> ev.EvaluationReport:
    df = _df_for_method(method, args, lists)
    k = max(max(ks), 50)  # rank enough items for every requested k
    predictions = _predictions(part, args, lists, df, method, k)
    extractor = lambda doc: predictions[doc.id]  # noqa: E731
    return ev.evaluate_corpus(part, extractor, ks=ks, method_label=method)


def cmd_evaluate(args) -> int:
    lists = _filter_lists(args)
    part = _load_split_part(args)
    ks = tuple(args.k or ev.DEFAULT_KS)
    report = _evaluate_method(part, args, lists, args.method, ks)
    out = args.out or Path(f"evaluate_{args.method}_{args.part}.csv")
    report.write_csv(out)
    print("\n".join(report.summary_lines()))
    print(f"per-document metrics written to {out}")
    return 0


def cmd_compare(args) -> int:
    if not args.methods:
        raise LokexError("--methods requires a comma-separated method list")
    methods = [m for m in args.methods.split(",") if m]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise LokexError(f"unknown methods: {', '.join(unknown)}")
    lists = _filter_lists(args)
    part = _load_split_part(args)
    ks = tuple(args.k or ev.DEFAULT_KS)
    reports = {m: _evaluate_method(part, args, lists, m, ks) for m in methods}
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["method"] + [f"f1@{k}" for k in ks])
        for m in methods:
            writer.writerow([m] + [f"{reports[m].f1_at(k):.6f}" for k in ks])
    elif args.format == "jsonl":
        for m in methods:
            print(json.dumps({"method": m,
                              **{f"f1@{k}": reports[m].f1_at(k) for k in ks}}))
    else:
        best = {k: max(reports[m].f1_at(k) for m in methods) for k in ks}
        print(f"{'method':<10}" + "".join(f"{'F1@' + str(k):>10}" for k in ks))
        for m in methods:
            cells = []
            for k in ks:
                value = reports[m].f1_at(k)
                mark = "*" if value == best[k] else " "
                cells.append(f"{value:>9.3f}{mark}")
            print(f"{m:<10}" + "".join(cells))
        print("(* best per column)")
    return 0


def cmd_build_df(args) -> int:
    lists = _filter_lists(args)
    docs = ds.load_collection(args.corpus, args.dataset)
    table = bl.df_from_vocabs(
        (build_candidate_index(d.document, lists) for d in docs),
        collection_id=str(args.corpus))
    table.save(args.out)
    print(f"df table over {table.total_documents} documents "
          f"({len(table.df)} stems) written to {args.out}")
    return 0


def cmd_project(args) -> int:
    lists = _filter_lists(args)
    doc = read_document(args.document)
    vocab = build_candidate_index(doc, lists)
    cfg = _scoring_config(args, use_position=True)
    E = sc.build_representation(vocab, cfg)
    m = min(args.pca_dims or 10, E.n, E.dim)
    if m < 2:
        raise LokexError("document too small for a 2-D projection")
    projection = ct.pca_fit(E, m)
    coords = ct.pca_transform(E, projection).vectors
    mean_c = (E.vectors.mean(axis=0) - projection.column_means) @ projection.basis
    robust = ct.fast_mcd(coords, seed=args.seed) if E.n > m else None
    robust_c = robust.mean if robust is not None else None

    if args.normalize:
        stds = np.sqrt(projection.explained_variance)
        scale = np.ones_like(stds)
        positive = stds > 0
        if not np.all(positive):
            logger.warning("%d zero-variance components left unscaled",
                           int(np.sum(~positive)))
        scale[positive] = 1.0 / stds[positive]
        coords = coords * scale
        mean_c = mean_c * scale
        if robust_c is not None:
            robust_c = robust_c * scale

    gold = frozenset()
    if args.gold:
        phrases = [l.strip() for l in args.gold.read_text(encoding="utf-8").splitlines()
                   if l.strip()]
        gold = ds.gold_stems_from_phrases(phrases)

    rows = [(s, coords[i, 0], coords[i, 1], "gold" if s in gold else "word")
            for i, s in enumerate(vocab.stems)]
    rows.append(("", mean_c[0], mean_c[1], "mean"))
    if robust_c is not None:
        rows.append(("", robust_c[0], robust_c[1], "robust_mean"))

    def write(out):
        writer = csv.writer(out)
        writer.writerow(["word", "x", "y", "role"])
        for word, x, y, role in rows:
            writer.writerow([word, f"{x:.6f}", f"{y:.6f}", role])

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write(fh)
        print(f"projection written to {args.out}")
    else:
        write(sys.stdout)

    if args.svg:
        _render_svg(rows, args.svg)
        print(f"scatter written to {args.svg}")
    return 0


def _render_svg(rows, path: Path) -> None:
    try:
        import matplotlib
    except ImportError as exc:  # pragma: no cover - matplotlib is an extra
        raise LokexError("SVG rendering needs matplotlib (install lokex[plots])") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 6))
    styles = {
        "word": dict(c="0.6", marker="o", s=12, label="words"),
        "gold": dict(c="red", marker="o", s=30, label="gold keywords"),
        "mean": dict(c="blue", marker="x", s=80, label="mean"),
        "robust_mean": dict(c="black", marker="s", s=50, label="robust mean"),
    }
    for role, style in styles.items():
        pts = [(x, y) for _, x, y, r in rows if r == role]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, **style)
    ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("component 1")
    ax.set_ylabel("component 2")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


_COMMANDS = {
    "extract": cmd_extract,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
    "build-df": cmd_build_df,
    "project": cmd_project,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return _COMMANDS[args.command](args)
    except (LokexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
