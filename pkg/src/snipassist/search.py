"""Task-to-snippet retrieval over the local corpus.

A lexical title index stands in for an external web search: each question
is scored by the idf weights of the tokens it shares with the query, with
tag matches weighted twice. Snippets are then collected from the top four
threads, walking answers from the highest score down and taking at most
three snippets per thread.
"""

from __future__ import annotations

import math
import re
import weakref
from dataclasses import dataclass

from .config import Config
from .corpus import CorpusStore, Thread
from .lexicon import DETERMINERS

_TOKEN_RE = re.compile(r"\w+")

TAG_WEIGHT = 2.0


def tokenize(text: str) -> set[str]:
    return {t for t in _TOKEN_RE.findall(text.lower()) if t not in DETERMINERS}


@dataclass(frozen=True, slots=True)
class ThreadMatch:
    question_id: int
    lexical_score: float
    question_score: int


@dataclass(frozen=True, slots=True)
class SnippetResult:
    code: str
    source_url: str
    thread_rank: int
    answer_score: int
    answer_id: int
    position: int


class TitleIndex:
    """idf table over question titles and tags; immutable once built.

    idf(t) = ln(1 + N / df(t)) where N is the question count and df(t) the
    number of questions whose title or tags contain t.
    """

    def __init__(self, store: CorpusStore):
        self._title_tokens: dict[int, set[str]] = {}
        self._tag_tokens: dict[int, set[str]] = {}
        df: dict[str, int] = {}
        for q in store.questions():
            title_toks = tokenize(q.title)
            tag_toks = {t for tag in q.tags for t in tokenize(tag)}
            self._title_tokens[q.id] = title_toks
            self._tag_tokens[q.id] = tag_toks
            for tok in title_toks | tag_toks:
                df[tok] = df.get(tok, 0) + 1
        n = store.question_count
        self.idf = {tok: math.log(1.0 + n / count) for tok, count in df.items()}

    def score(self, question_id: int, query_tokens: set[str]) -> float:
        title_toks = self._title_tokens[question_id]
        tag_toks = self._tag_tokens[question_id]
        score = 0.0
        for tok in query_tokens:
            if tok in tag_toks:
                score += TAG_WEIGHT * self.idf[tok]
            elif tok in title_toks:
                score += self.idf[tok]
        return score


_INDEX_CACHE: "weakref.WeakKeyDictionary[CorpusStore, TitleIndex]" = weakref.WeakKeyDictionary()


def _title_index(store: CorpusStore) -> TitleIndex:
    # The store is immutable after build, so caching per store is safe.
    index = _INDEX_CACHE.get(store)
    if index is None:
        index = TitleIndex(store)
        _INDEX_CACHE[store] = index
    return index


def search_threads(store: CorpusStore, query: str, k: int | None = None) -> list[ThreadMatch]:
    """Top-k threads by (lexical score, question score, question id).

    ``k`` defaults to Config.max_threads; the retrieval constants live in
    Config only.
    """
    if k is None:
        k = Config().max_threads
    if not query.strip():
        raise ValueError("query must be non-empty")
    if k < 1:
        raise ValueError("k must be >= 1")
    index = _title_index(store)
    query_tokens = tokenize(query)
    matches = []
    for q in store.questions():
        score = index.score(q.id, query_tokens)
        if score > 0.0:
            matches.append(ThreadMatch(q.id, score, q.score))
    matches.sort(key=lambda m: (-m.lexical_score, -m.question_score, m.question_id))
    return matches[:k]


def collect_thread_snippets(store: CorpusStore, thread: Thread, cap: int) -> list:
    """Up to ``cap`` snippets from one thread, best answers first.

    The cap counts snippets, not answers, so one answer's blocks may be cut
    at the boundary.
    """
    collected = []
    for answer in thread.answers:
        for snippet in store.snippets_for_answer(answer.id):
            collected.append((snippet, answer))
            if len(collected) == cap:
                return collected
    return collected


def retrieve_snippets(
    store: CorpusStore,
    task: str,
    max_threads: int | None = None,
    max_snippets_per_thread: int | None = None,
) -> list[SnippetResult]:
    """Ordered, attributed snippet candidates for a task.

    Returns at most max_threads * max_snippets_per_thread results (defaults
    from Config); the first one always comes from the best snippet-bearing
    answer of the best thread. An empty list means no snippet was found.
    """
    if max_threads is None or max_snippets_per_thread is None:
        config = Config()
        max_threads = config.max_threads if max_threads is None else max_threads
        if max_snippets_per_thread is None:
            max_snippets_per_thread = config.max_snippets_per_thread
    if not task.strip():
        raise ValueError("task must be non-empty")
    results: list[SnippetResult] = []
    position = 1
    for rank, match in enumerate(search_threads(store, task, k=max_threads), start=1):
        thread = store.get_thread(match.question_id)
        for snippet, answer in collect_thread_snippets(store, thread, max_snippets_per_thread):
            results.append(SnippetResult(
                code=snippet.code,
                source_url=snippet.source_url,
                thread_rank=rank,
                answer_score=answer.score,
                answer_id=answer.id,
                position=position,
            ))
            position += 1
    return results
