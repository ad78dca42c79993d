"""Command-line interface.

Verbs: ``preprocess`` (tweets -> chunks), ``run`` (execute a plan from a
config file), ``analyze`` (marginals and rank tables from a results file),
``report`` (tables, sweep curves, heat grids, topic terms) and ``demo-data``
(generate a synthetic tweet file).  Exit codes: 0 success, 1 usage error,
2 data/contract error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__, corpus, harness, reporting
from .embedding import (
    EmbedderSpec,
    EmbeddingSources,
    load_sentence_vectors,
    load_word_vectors,
)
from .errors import FormatError, TopicbenchError
from .metricspace import Metric

log = logging.getLogger(__name__)

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_ERROR)


def plan_from_config(path: str) -> harness.ExperimentPlan:
    """Build an ExperimentPlan from a JSON config file.

    Schema: {"seed": int, "chunks": path, "chunk_id": int,
    "metrics": [...], "methods": [...], "grids": "default"|"demo"|{method:
    [{param: value, ...}, ...]}, "embedders": [{"name": ..., either
    "kind"/"dim"/"seed" for synthetic or "path" for the five named models}]}.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}", path=path) from e

    try:
        chunks_path = cfg["chunks"]
        chunk_id = int(cfg.get("chunk_id", 0))
        seed = int(cfg.get("seed", 0))
        metric_tokens = cfg.get("metrics", ["euclidean", "cosine"])
        methods = cfg.get("methods", list(harness.ALL_METHODS))
        grids_cfg = cfg.get("grids", "default")
        embedders_cfg = cfg["embedders"]
    except KeyError as e:
        raise FormatError(f"plan config is missing key {e}", path=path) from e

    base = os.path.dirname(os.path.abspath(path))

    def resolve(p: str) -> str:
        return p if os.path.isabs(p) else os.path.join(base, p)

    chunks = corpus.read_chunks(resolve(chunks_path))
    by_id = {c.chunk_id: c for c in chunks}
    if chunk_id not in by_id:
        raise FormatError(f"chunk_id {chunk_id} not present in {chunks_path}", path=path)
    chunk = by_id[chunk_id]

    specs: list[EmbedderSpec] = []
    word_tables = {}
    sentence_maps = {}
    for item in embedders_cfg:
        name = item["name"]
        if "path" in item:
            spec = EmbedderSpec.named(name)
            if spec.kind == "word-level":
                word_tables[name] = load_word_vectors(resolve(item["path"]))
            else:
                sentence_maps[name] = load_sentence_vectors(resolve(item["path"]))
        else:
            spec = EmbedderSpec.synthetic(
                name=name, dim=int(item.get("dim", 64)), seed=int(item.get("seed", 0))
            )
        specs.append(spec)

    if grids_cfg == "default":
        grids = harness.default_grids()
    elif grids_cfg == "demo":
        grids = harness.demo_grids()
    elif isinstance(grids_cfg, dict):
        grids = {
            method: [harness.parse_params(method, _params_text(p)) for p in points]
            for method, points in grids_cfg.items()
        }
    else:
        raise FormatError("grids must be 'default', 'demo' or an object", path=path)

    metrics = [Metric.parse(t) for t in metric_tokens]
    return harness.ExperimentPlan(
        embedders=specs,
        metrics=metrics,
        methods=list(methods),
        grids={m: grids[m] for m in methods},
        seed=seed,
        chunk=chunk,
        sources=EmbeddingSources(specs, word_tables, sentence_maps),
    )


def _params_text(obj: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in obj.items())


def _cmd_preprocess(args) -> int:
    stopwords = corpus.load_stopwords(args.stopwords) if args.stopwords else None
    drop_log = corpus.DropLog()
    chunks = list(
        corpus.chunk_stream(
            corpus.read_tweets(args.infile),
            chunk_size=args.chunk_size,
            min_words=args.min_words,
            stopwords=stopwords,
            lang_policy=corpus.LanguagePolicy(args.lang_policy),
            drop_log=drop_log,
        )
    )
    count = corpus.write_chunks(chunks, args.out)
    kept = sum(len(c.tweets) for c in chunks)
    print(f"wrote {count} chunk(s), {kept} tweet(s) kept, {len(drop_log)} dropped -> {args.out}")
    return 0


def _cmd_run(args) -> int:
    plan = plan_from_config(args.plan)
    results = harness.run_plan(plan, args.out, resume=args.resume)
    failed = sum(1 for r in results if r.failed)
    print(
        f"ran {len(results)} combination(s) ({failed} failed) -> "
        f"{os.path.join(args.out, harness.RESULTS_FILE)}"
    )
    return 0


def _write_marginals(report: harness.MarginalReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("factor\tname\tmean_silhouette\n")
        for name, value in report.embedder_results.items():
            fh.write(f"embedder\t{name}\t{repr(value)}\n")
        for metric, value in report.metric_results.items():
            fh.write(f"metric\t{metric.value}\t{repr(value)}\n")
        for method, value in report.method_results.items():
            fh.write(f"method\t{method}\t{repr(value)}\n")


def _write_embedder_ranks(ranks, path: str) -> None:
    columns = list(ranks)
    embedders = list(next(iter(ranks.values())))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("embedder\t" + "\t".join(f"{m.value}/{c}" for m, c in columns) + "\n")
        for e in embedders:
            fh.write(e + "\t" + "\t".join(str(ranks[col][e]) for col in columns) + "\n")


def _write_metric_duel(duel, path: str) -> None:
    embedders: list[str] = []
    methods: list[str] = []
    for e, c in duel:
        if e not in embedders:
            embedders.append(e)
        if c not in methods:
            methods.append(c)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("embedder\t" + "\t".join(methods) + "\n")
        for e in embedders:
            fh.write(e + "\t" + "\t".join(str(duel[(e, c)]) for c in methods) + "\n")


def _cmd_analyze(args) -> int:
    records = harness.read_results(args.results)
    os.makedirs(args.out, exist_ok=True)
    report = harness.compute_marginals(records)
    _write_marginals(report, os.path.join(args.out, "marginals.tsv"))
    _write_embedder_ranks(
        harness.rank_embeddings(records), os.path.join(args.out, "embedder_ranks.tsv")
    )
    _write_metric_duel(
        harness.rank_metric_duel(records), os.path.join(args.out, "metric_duel.tsv")
    )
    print(f"wrote marginals.tsv, embedder_ranks.tsv, metric_duel.tsv -> {args.out}")
    return 0


def _slice(records, method, metric, embedder):
    metric = Metric.parse(metric)
    out = [
        r for r in records
        if r.method == method and r.metric is metric and r.embedder == embedder
    ]
    if not out:
        raise TopicbenchError(
            f"no experiment records for ({embedder}, {metric.value}, {method})"
        )
    return out


def _require(parser, args, names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        parser.error(f"--kind {args.kind} requires {', '.join('--' + n for n in missing)}")


def _cmd_report(args, parser) -> int:
    if args.kind == "table":
        records = harness.read_results(args.results)
        reporting.emit_results_table(records, args.out)
    elif args.kind in ("sweep", "heatgrid"):
        _require(parser, args, ["method", "metric", "embedder"] if args.kind == "sweep"
                 else ["metric", "embedder"])
        experiments = harness.read_experiments(args.results)
        method = args.method if args.kind == "sweep" else "jarvis-patrick"
        chosen = _slice(experiments, method, args.metric, args.embedder)
        if args.kind == "sweep":
            reporting.emit_sweep(chosen, args.out)
        else:
            reporting.emit_heatgrid(chosen, args.out)
    else:  # topics
        _require(parser, args, ["plan", "method", "metric", "embedder"])
        plan = plan_from_config(args.plan)
        records = harness.read_results(args.results)
        metric = Metric.parse(args.metric)
        match = [
            r for r in records
            if r.method == args.method and r.metric is metric and r.embedder == args.embedder
        ]
        if not match or match[0].best_params is None:
            raise TopicbenchError(
                f"no tuned result for ({args.embedder}, {metric.value}, {args.method})"
            )
        ctx = harness.PlanContext(plan)
        labeling, _ = harness.cluster_combination(
            ctx, args.embedder, metric, args.method, match[0].best_params
        )
        retained = ctx.embedded(args.embedder).tweet_ids
        by_id = {t.id: t for t in plan.chunk.tweets}
        tweets = [by_id[i] for i in retained]
        summaries = reporting.extract_topics(labeling, tweets, top_n=args.top_n)
        reporting.emit_topics(summaries, args.out)
    print(f"wrote {args.kind} -> {args.out}")
    return 0


def _cmd_demo_data(args) -> int:
    from .synthetic import raw_tweet_stream

    tweets = raw_tweet_stream(n_tweets=args.count, seed=args.seed)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for t in tweets:
            fh.write(json.dumps({"id": t.id, "text": t.text, "lang": t.lang}) + "\n")
    print(f"wrote {len(tweets)} synthetic tweet(s) -> {args.out}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="topicbench", description=__doc__)
    parser.add_argument("--version", action="version", version=f"topicbench {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="tokenize, filter and chunk a tweet file")
    p.add_argument("--in", dest="infile", required=True, help="tweets, one JSON object per line")
    p.add_argument("--out", required=True, help="output chunks file")
    p.add_argument("--min-words", type=int, default=corpus.DEFAULT_MIN_WORDS)
    p.add_argument("--chunk-size", type=int, default=corpus.DEFAULT_CHUNK_SIZE)
    p.add_argument("--stopwords", help="stopword file (default: shipped list)")
    p.add_argument(
        "--lang-policy",
        choices=[p.value for p in corpus.LanguagePolicy],
        default=corpus.LanguagePolicy.METADATA.value,
    )

    p = sub.add_parser("run", help="run every combination of a plan config")
    p.add_argument("--plan", required=True, help="plan config (JSON)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--resume", action="store_true", help="reuse completed experiment records")

    p = sub.add_parser("analyze", help="marginal means and rank tables from a results file")
    p.add_argument("--results", required=True)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("report", help="emit a table, sweep, heat grid or topic list")
    p.add_argument("--results", required=True,
                   help="results file (table, topics) or experiments log (sweep, heatgrid)")
    p.add_argument("--kind", required=True, choices=["table", "sweep", "heatgrid", "topics"])
    p.add_argument("--out", required=True)
    p.add_argument("--method", help="clustering method of the slice")
    p.add_argument("--metric", help="distance metric of the slice")
    p.add_argument("--embedder", help="embedder of the slice")
    p.add_argument("--plan", help="plan config (topics only)")
    p.add_argument("--top-n", type=int, default=10)

    p = sub.add_parser("demo-data", help="write a synthetic tweet file")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "preprocess":
            return _cmd_preprocess(args)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "report":
            return _cmd_report(args, parser)
        if args.command == "demo-data":
            return _cmd_demo_data(args)
        parser.error(f"unknown command {args.command!r}")
    except (TopicbenchError, OSError, ValueError) as e:
        sys.stderr.write(f"topicbench: {e}\n")
        return DATA_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
