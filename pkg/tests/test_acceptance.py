"""Acceptance suite: one test per criterion, one printed line each."""

import random
import time
from collections import Counter

from snipassist.bench import run_bench
from snipassist.completion import build_index, suggest
from snipassist.search import retrieve_snippets, search_threads
from snipassist.session import (
    TelemetryLog,
    apply_edit,
    begin_session,
    next_snippet,
    rate,
    restore,
    tally_telemetry,
)
from snipassist.tasks import MAX_TASKS_PER_TITLE, extract_tasks

from conftest import FIXTURES
from test_completion import as_tuples, oracle_suggest, random_corpus, random_query
from test_search import oracle_retrieve, random_search_corpus
from test_tasks import VOICE_NOUNS, VOICE_VERBS, _random_title


def _report(number, description):
    print(f"\nACCEPTANCE {number} PASS: {description}")


def test_criterion_1_canonical_title_extraction(lexicon):
    started = time.perf_counter()
    tasks = extract_tasks("Best strategy to add lines of text to a text file", lexicon)
    elapsed = time.perf_counter() - started
    matches = [t for t in tasks if t.text == "add lines to text file"]
    assert len(matches) == 1
    assert elapsed < 1.0
    _report(1, "strategy title yields exactly 'add lines to text file'")


def test_criterion_2_voice_and_gerund_normalization(lexicon):
    started = time.perf_counter()
    table = [(lemma, gerund, participle, noun)
             for lemma, gerund, participle in VOICE_VERBS[:5]
             for noun in VOICE_NOUNS[:4]]
    assert len(table) == 20
    for lemma, gerund, participle, noun in table:
        expected = f"{lemma} {noun}"
        forms = [
            f"{gerund} an {noun}",
            f"{lemma} {noun}",
            f"{noun} {participle}",
            f"{noun} is {participle}",
        ]
        texts = {tuple(t.text for t in extract_tasks(form, lexicon)) for form in forms}
        assert texts == {(expected,)}, (lemma, noun, texts)
    assert time.perf_counter() - started < 1.0
    _report(2, "20-case four-forms table collapses to one task text per verb")


def test_criterion_3_task_cap_fuzz(lexicon):
    rng = random.Random(1109677)
    for _ in range(1000):
        assert len(extract_tasks(_random_title(rng), lexicon)) <= MAX_TASKS_PER_TITLE
    _report(3, "1,000 fuzzed titles never exceed 12 tasks")


def test_criterion_4_suggestion_oracle():
    rng = random.Random(599550)
    for trial in range(100):
        tasks = random_corpus(rng, max_tasks=1000)
        index = build_index(tasks)
        query = random_query(rng, tasks)
        limit = rng.randint(1, 20)
        assert as_tuples(suggest(index, query, limit)) == oracle_suggest(tasks, query, limit), (
            trial, query, limit,
        )
    _report(4, "suggest equals the linear-scan oracle on 100 random pairs")


def test_criterion_5_retrieval_contract(store20):
    def check(store, query):
        results = retrieve_snippets(store, query)
        got = [(r.code, r.answer_id, r.answer_score, r.thread_rank, r.position)
               for r in results]
        assert got == oracle_retrieve(store, query)
        assert len(results) <= 12
        per_thread = Counter(r.thread_rank for r in results)
        assert len(per_thread) <= 4
        assert all(v <= 3 for v in per_thread.values())
        if results:
            assert results[0].position == 1
            # result[0] is the first snippet-bearing answer (in Thread order)
            # of its thread, and that thread outranks every other contributor.
            top_qid = store.get_answer(results[0].answer_id).question_id
            for answer in store.get_thread(top_qid).answers:
                if store.snippets_for_answer(answer.id):
                    assert results[0].answer_id == answer.id
                    break
            assert results[0].thread_rank == min(r.thread_rank for r in results)
            # strict form whenever the top-ranked thread has any snippet
            top_match = search_threads(store, query, k=1)[0]
            top_thread = store.get_thread(top_match.question_id)
            if any(store.snippets_for_answer(a.id) for a in top_thread.answers):
                assert results[0].thread_rank == 1
                assert top_qid == top_match.question_id

    for query in ["add lines to text file", "parse json", "split string by comma",
                  "convert inputstream to string", "generate random integers"]:
        check(store20, query)

    rng = random.Random(26575009)
    words = ["add", "sort", "parse", "json", "list", "string", "file", "map", "android"]
    for _ in range(100):
        store = random_search_corpus(rng)
        query = " ".join(rng.choice(words) for _ in range(rng.randint(1, 4)))
        check(store, query)
    _report(5, "caps and first-snippet rule hold; brute-force equality on 100 corpora")


def test_criterion_6_session_round_trip(store20):
    rng = random.Random(1024)
    queries = ["parse json", "sort list of strings", "add lines to text file",
               "generate random integers", "split string by comma"]
    trials = 0
    while trials < 200:
        query = rng.choice(queries)
        pad_before = "x" * rng.randint(0, 8)
        indent = " " * rng.choice([0, 2, 4, 8])
        doc = f"{pad_before}\n{indent}{query}\n{'y' * rng.randint(0, 5)}\n"
        start = doc.index(query, len(pad_before))
        retriever = lambda task: retrieve_snippets(store20, task)
        session, edit = begin_session(
            doc, query, "selection", (start, len(query)), retriever=retriever,
        )
        assert not session.snippetless
        current = apply_edit(doc, edit)
        k = rng.randint(0, 20)
        for _ in range(k):
            current = apply_edit(current, next_snippet(session, current))
        # periodicity: k nexts leave the same document as k mod n nexts
        session2, edit2 = begin_session(
            doc, query, "selection", (start, len(query)), retriever=retriever,
        )
        reference = apply_edit(doc, edit2)
        for _ in range(k % len(session2.snippets)):
            reference = apply_edit(reference, next_snippet(session2, reference))
        assert current == reference
        current = apply_edit(current, restore(session, current))
        assert current == doc
        trials += 1
    _report(6, "200 begin/cycle/restore trials are byte-identical and periodic")


def test_criterion_7_attribution(store20):
    checked = 0
    for query in ["parse json", "add lines to text file", "sort list of strings",
                  "convert inputstream to string"]:
        doc = f"    {query}\n"
        retriever = lambda task: retrieve_snippets(store20, task)
        session, edit = begin_session(
            doc, query, "content-assist", (4, len(query)), retriever=retriever,
        )
        current = apply_edit(doc, edit)
        for _ in range(len(session.snippets) + 1):  # visit every snippet and wrap
            snippet = session.snippets[session.index]
            first_line = current.splitlines()[0].strip()
            assert first_line.startswith("// source: ")
            assert first_line.endswith(f"/a/{snippet.answer_id}")
            assert "source:" in first_line
            assert snippet.source_url == f"https://stackoverflow.com/a/{snippet.answer_id}"
            checked += 1
            current = apply_edit(current, next_snippet(session, current))
    assert checked >= 10
    _report(7, "every inserted block starts with the source comment of the active snippet")


def test_criterion_8_scale_and_latency():
    result = run_bench(n_tasks=600_000, n_queries=1_000, limit=10, seed=0)
    assert result.task_count == 600_000
    assert result.p95_ms < 10.0, result.as_text()
    assert result.total_seconds < 300.0, result.as_text()
    _report(8, f"600k-entry index; p95 suggest {result.p95_ms:.2f} ms "
               f"(< 10 ms) in {result.total_seconds:.0f}s total")


def test_criterion_9_telemetry_tabulation(store20, tmp_path):
    script_path = FIXTURES / "session_script.tsv"
    rows = []
    with open(script_path, encoding="utf-8") as f:
        assert f.readline().rstrip("\n").split("\t") == ["query", "origin", "cycles", "helpful"]
        for line in f:
            query, origin, cycles, helpful = line.rstrip("\n").split("\t")
            rows.append((query, origin, int(cycles), helpful == "true"))
    assert len(rows) == 101

    telemetry = TelemetryLog(tmp_path / "telemetry.tsv")
    retriever = lambda task: retrieve_snippets(store20, task)
    for query, origin, cycles, helpful in rows:
        surface = f"?{query}?" if origin == "question-marks" else query
        doc = f"{surface}\n"
        session, edit = begin_session(doc, query, origin, (0, len(surface)), retriever=retriever)
        current = apply_edit(doc, edit)
        for _ in range(cycles):
            current = apply_edit(current, next_snippet(session, current))
        rate(session, helpful, telemetry)

    ground_truth = Counter("helpful" if h else "unhelpful" for _, _, _, h in rows)
    tally = tally_telemetry(telemetry.path)
    assert tally == dict(ground_truth)
    assert sum(tally.values()) == 101
    _report(9, f"101 replayed invocations tally to {tally} matching the script")
