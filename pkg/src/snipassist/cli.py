"""Unified command-line entry point."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .completion import build_index, load_index, save_index, suggest
from .config import load_config
from .corpus import ingest_dump, load_store, save_store
from .lexicon import load_lexicon
from .search import retrieve_snippets
from .session import (
    ORIGIN_QUESTION_MARKS,
    TelemetryLog,
    apply_edit,
    begin_session,
    find_marker_query,
)
from .tasks import extract_corpus, read_tasks_tsv, write_tasks_tsv


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snipassist")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build a store from a posts dump")
    p.add_argument("dump", help="path to the posts dump file")
    p.add_argument("--tag", default="java", help="keep only questions with this tag ('' for all)")
    p.add_argument("--store", required=True, help="store directory to write")
    p.add_argument("--base-url", default=None)

    p = sub.add_parser("extract", help="extract task phrases from stored titles")
    p.add_argument("--store", required=True)
    p.add_argument("--actions", default=None, help="actions lexicon file")
    p.add_argument("--objects", default=None, help="generic objects lexicon file")
    p.add_argument("--out", required=True, help="tasks TSV to write")

    p = sub.add_parser("build-index", help="build the completion index from tasks TSV")
    p.add_argument("--tasks", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("suggest", help="query the completion index")
    p.add_argument("partial")
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--index", required=True)

    p = sub.add_parser("snippets", help="retrieve snippets for a task")
    p.add_argument("task")
    p.add_argument("--store", required=True)
    p.add_argument("--all", action="store_true", help="print every candidate")

    p = sub.add_parser("assist", help="process the first ?query? marker in a file")
    p.add_argument("file")
    p.add_argument("--store", required=True)
    p.add_argument("--comment-leader", default=None)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None)
    p.add_argument("--store", default=None)
    p.add_argument("--index", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--telemetry", default=None)

    p = sub.add_parser("stats", help="print store and index counts")
    p.add_argument("--store", required=True)
    p.add_argument("--index", default=None)

    p = sub.add_parser("bench-suggest", help="suggest latency benchmark at corpus scale")
    p.add_argument("--tasks", type=int, default=600_000)
    p.add_argument("--queries", type=int, default=1_000)
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-ms", type=float, default=10.0)
    return parser


def _cmd_ingest(args) -> int:
    config = load_config(base_url=args.base_url)
    tag = args.tag or None
    store, report = ingest_dump(args.dump, tag_filter=tag, base_url=config.base_url)
    save_store(store, args.store)
    sys.stdout.write(report.as_text())
    return 0


def _cmd_extract(args) -> int:
    store = load_store(args.store)
    lexicon = load_lexicon(actions_path=args.actions, objects_path=args.objects)
    print(f"lexicon: {len(lexicon.actions)} actions, "
          f"{len(lexicon.generic_objects)} generic objects")
    tasks = extract_corpus(store, lexicon)
    write_tasks_tsv(tasks, args.out)
    print(f"tasks: {len(tasks)}")
    return 0


def _cmd_build_index(args) -> int:
    tasks = read_tasks_tsv(args.tasks)
    index = build_index(tasks)
    save_index(index, args.out)
    print(f"tasks: {index.task_count}")
    return 0


def _cmd_suggest(args) -> int:
    index = load_index(args.index)
    for s in suggest(index, args.partial, args.limit):
        print(f"{s.text}\t{s.source_count}")
    return 0


def _cmd_snippets(args) -> int:
    config = load_config()
    store = load_store(args.store)
    results = retrieve_snippets(
        store, args.task,
        max_threads=config.max_threads,
        max_snippets_per_thread=config.max_snippets_per_thread,
    )
    if not results:
        print("no snippet found", file=sys.stderr)
        return 1
    if args.all:
        for r in results:
            print(f"-- position {r.position} thread_rank {r.thread_rank} "
                  f"answer_score {r.answer_score} {r.source_url}")
            print(r.code.strip("\n"))
    else:
        top = results[0]
        print(f"{config.comment_leader} source: {top.source_url}")
        print(top.code.strip("\n"))
    return 0


def _cmd_assist(args) -> int:
    config = load_config(comment_leader=args.comment_leader)
    store = load_store(args.store)
    path = Path(args.file)
    document = path.read_text(encoding="utf-8")
    found = find_marker_query(document)
    if found is None:
        print("no ?query? marker found", file=sys.stderr)
        return 2
    query, region = found

    def retriever(task):
        return retrieve_snippets(
            store, task,
            max_threads=config.max_threads,
            max_snippets_per_thread=config.max_snippets_per_thread,
        )

    session, edit = begin_session(
        document, query, ORIGIN_QUESTION_MARKS, region,
        retriever=retriever, comment_leader=config.comment_leader,
    )
    if edit is None:
        print("no snippet found", file=sys.stderr)
        return 1
    path.write_text(apply_edit(document, edit), encoding="utf-8")
    print(session.snippets[0].source_url)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(args.config, store_dir=args.store, index_path=args.index, port=args.port)
    try:
        store = load_store(config.store_dir)
        index = load_index(config.index_path)
    except Exception as exc:
        print(f"startup failure: {exc}", file=sys.stderr)
        return 2
    telemetry = TelemetryLog(args.telemetry) if args.telemetry else None
    app = create_app(store, index, config, telemetry)
    uvicorn.run(app, host=args.host, port=config.port)
    return 0


def _cmd_stats(args) -> int:
    from .service import collect_stats

    store = load_store(args.store)
    index = load_index(args.index) if args.index else None
    for key, value in collect_stats(store, index).items():
        print(f"{key}: {value}")
    return 0


def _cmd_bench(args) -> int:
    from .bench import run_bench

    result = run_bench(args.tasks, args.queries, args.limit, args.seed)
    sys.stdout.write(result.as_text())
    ok = result.p95_ms < args.budget_ms
    print(f"p95 budget {args.budget_ms} ms: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


_COMMANDS = {
    "ingest": _cmd_ingest,
    "extract": _cmd_extract,
    "build-index": _cmd_build_index,
    "suggest": _cmd_suggest,
    "snippets": _cmd_snippets,
    "assist": _cmd_assist,
    "serve": _cmd_serve,
    "stats": _cmd_stats,
    "bench-suggest": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
