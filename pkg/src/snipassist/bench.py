"""Synthetic-corpus generator and suggest latency benchmark."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .completion import build_index, suggest
from .tasks import TaskPhrase, render_task_text

_PREPS = ["to", "from", "in", "on", "by", "with", "of", "for"]

# Syllable pools for word-like nouns. The point is a realistically sized
# vocabulary: the real task corpus spreads ~600k tasks over tens of
# thousands of distinct words, so no single token is present in a large
# fraction of entries.
_ONSETS = ["b", "bl", "br", "c", "ch", "cl", "cr", "d", "dr", "f", "fl", "fr",
           "g", "gr", "h", "j", "k", "l", "m", "n", "p", "pl", "pr", "qu",
           "r", "s", "sc", "sh", "sl", "sp", "st", "str", "t", "th", "tr",
           "v", "w", "z"]
_VOWELS = ["a", "e", "i", "o", "u", "ai", "ea", "io", "ou"]
_CODAS = ["b", "ck", "d", "g", "k", "l", "m", "n", "nd", "ng", "nt", "p",
          "r", "rd", "rm", "s", "sh", "st", "t", "x"]


def _word_pool(count: int, salt: int) -> list[str]:
    words: list[str] = []
    seen: set[str] = set()
    i = 0
    while len(words) < count:
        j = i * 2654435761 + salt
        onset = _ONSETS[j % len(_ONSETS)]
        vowel = _VOWELS[(j ^ (j >> 7)) % len(_VOWELS)]
        coda = _CODAS[(j >> 3) % len(_CODAS)]
        tail = _VOWELS[(j >> 11) % len(_VOWELS)] + _CODAS[(j >> 17) % len(_CODAS)]
        word = onset + vowel + coda + (tail if j % 3 == 0 else "")
        if word not in seen:
            seen.add(word)
            words.append(word)
        i += 1
    return words


def _verbs() -> list[str]:
    from .lexicon import load_lexicon

    return sorted(load_lexicon().actions)


def synthetic_tasks(n: int, seed: int = 0) -> list[TaskPhrase]:
    """Deterministically generate ``n`` unique tasks at corpus scale.

    Verbs cycle fastest so texts cover the whole alphabet; object and PP
    nouns come from generated pools large enough that token frequencies
    resemble a real title corpus. Source sets are drawn from a small shared
    pool so memory stays flat; ranking only needs their sizes.
    """
    source_pool = [frozenset(range(1, size + 1)) for size in range(1, 51)]
    verbs = _verbs()
    objects = _word_pool(2500, salt=seed * 7 + 1)
    pp_nouns = _word_pool(1500, salt=seed * 7 + 5)

    tasks: list[TaskPhrase] = []
    n_verbs = len(verbs)
    per_verb = (n + n_verbs - 1) // n_verbs
    if per_verb > len(objects) * (1 + len(_PREPS) * len(pp_nouns)):
        raise ValueError(f"vocabulary too small for {n} unique tasks")
    for i in range(n):
        verb = verbs[i % n_verbs]
        k = i // n_verbs
        obj_index, variant = divmod(k, 1 + len(_PREPS))
        object_ = objects[obj_index % len(objects)]
        if variant == 0:
            pp = None
        else:
            prep = _PREPS[variant - 1]
            noun = pp_nouns[(k * 40503 + i // (n_verbs * 9)) % len(pp_nouns)]
            pp = f"{prep} {noun}"
        sources = source_pool[(i * 2654435761) % len(source_pool)]
        text = render_task_text(verb, object_, pp)
        tasks.append(TaskPhrase(verb, object_, pp, text, sources))
    return tasks


def random_queries(tasks: list[TaskPhrase], n: int, seed: int = 0) -> list[str]:
    """Realistic query mix: text prefixes plus sparse token fragments."""
    rng = random.Random(seed)
    queries = []
    for _ in range(n):
        text = tasks[rng.randrange(len(tasks))].text
        if rng.random() < 0.75:
            cut = rng.randint(2, len(text))
            queries.append(text[:cut])
        else:
            toks = text.split()
            picked = sorted(rng.sample(range(len(toks)), min(len(toks), rng.randint(1, 3))))
            queries.append(" ".join(toks[i][: rng.randint(1, len(toks[i]))] for i in picked))
    return queries


@dataclass(slots=True)
class BenchResult:
    task_count: int
    build_seconds: float
    query_count: int
    p50_ms: float
    p95_ms: float
    p99_ms: float
    total_seconds: float

    def as_text(self) -> str:
        return (
            f"tasks: {self.task_count}\n"
            f"build_seconds: {self.build_seconds:.2f}\n"
            f"queries: {self.query_count}\n"
            f"p50_ms: {self.p50_ms:.3f}\n"
            f"p95_ms: {self.p95_ms:.3f}\n"
            f"p99_ms: {self.p99_ms:.3f}\n"
            f"total_seconds: {self.total_seconds:.2f}\n"
        )


def run_bench(
    n_tasks: int = 600_000,
    n_queries: int = 1_000,
    limit: int = 10,
    seed: int = 0,
) -> BenchResult:
    started = time.perf_counter()
    tasks = synthetic_tasks(n_tasks, seed=seed)
    build_start = time.perf_counter()
    index = build_index(tasks)
    build_seconds = time.perf_counter() - build_start
    assert index.task_count == n_tasks

    queries = random_queries(tasks, n_queries, seed=seed)
    timings = []
    for q in queries:
        t0 = time.perf_counter()
        suggest(index, q, limit)
        timings.append((time.perf_counter() - t0) * 1000.0)
    timings.sort()

    def pct(p: float) -> float:
        return timings[min(len(timings) - 1, int(p * len(timings)))]

    return BenchResult(
        task_count=index.task_count,
        build_seconds=build_seconds,
        query_count=n_queries,
        p50_ms=pct(0.50),
        p95_ms=pct(0.95),
        p99_ms=pct(0.99),
        total_seconds=time.perf_counter() - started,
    )
