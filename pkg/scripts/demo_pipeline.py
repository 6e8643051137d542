#!/usr/bin/env python3
"""End-to-end walkthrough on the bundled 20-thread fixture corpus.

Builds a store and index under ./demo_run/, prints suggestions for a
partial task, retrieves snippets, and runs one insert/cycle/restore
session on a small document.
"""

from pathlib import Path

from snipassist.completion import build_index, save_index, suggest
from snipassist.corpus import ingest_dump, save_store
from snipassist.lexicon import load_lexicon
from snipassist.search import retrieve_snippets
from snipassist.session import apply_edit, begin_session, next_snippet, restore
from snipassist.tasks import extract_corpus, write_tasks_tsv

ROOT = Path(__file__).resolve().parent.parent
RUN_DIR = ROOT / "demo_run"


def main() -> None:
    RUN_DIR.mkdir(exist_ok=True)
    store, report = ingest_dump(ROOT / "tests" / "fixtures" / "posts_20.xml")
    save_store(store, RUN_DIR / "store")
    print("ingest:")
    print(report.as_text())

    lexicon = load_lexicon()
    tasks = extract_corpus(store, lexicon)
    write_tasks_tsv(tasks, RUN_DIR / "tasks.tsv")
    index = build_index(tasks)
    save_index(index, RUN_DIR / "tasks.index")
    print(f"extracted {len(tasks)} tasks from {store.question_count} titles\n")

    print('suggest("split string by"):')
    for s in suggest(index, "split string by", 5):
        print(f"  {s.text}\t{s.source_count}\t{s.match_kind}")

    task = "add lines to text file"
    print(f'\nretrieve_snippets("{task}"):')
    results = retrieve_snippets(store, task)
    for r in results[:3]:
        print(f"  #{r.position} thread {r.thread_rank} score {r.answer_score} {r.source_url}")

    document = "class Demo {\n    ?add lines to text file?\n}\n"
    start = document.index("?add")
    session, edit = begin_session(
        document, task, "question-marks", (start, len(task) + 2),
        retriever=lambda t: retrieve_snippets(store, t),
    )
    current = apply_edit(document, edit)
    print("\nafter insertion:")
    print(current)
    current = apply_edit(current, next_snippet(session, current))
    print(f"after one cycle (snippet {session.index + 1} of {len(session.snippets)}):")
    print(current)
    current = apply_edit(current, restore(session, current))
    assert current == document
    print("restored to the original document byte-for-byte")


if __name__ == "__main__":
    main()
