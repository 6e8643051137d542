"""Ranked type-to-filter index over extracted task phrases.

Matching is case-insensitive with two kinds:

  full-prefix   the entry text starts with the raw query
  token-prefix  every whitespace-separated query token is a prefix of some
                entry token, matched left to right

Full-prefix matches rank before token-prefix matches; within a kind the
order is source_count descending, then text ascending. The empty query is
the degenerate full-prefix case (every entry matches).
"""

from __future__ import annotations

import heapq
import sys
import time
from bisect import bisect_left
from dataclasses import dataclass

from .tasks import TaskPhrase

INDEX_FORMAT = "snipassist-index-v1"

FULL_PREFIX = "full-prefix"
TOKEN_PREFIX = "token-prefix"


class IndexBuildError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class Suggestion:
    text: str
    source_count: int
    match_kind: str


def token_prefix_match(entry_tokens: tuple[str, ...], query_tokens: list[str]) -> bool:
    """True when query tokens prefix-match entry tokens in order."""
    pos = 0
    n = len(entry_tokens)
    for q in query_tokens:
        while pos < n and not entry_tokens[pos].startswith(q):
            pos += 1
        if pos == n:
            return False
        pos += 1
    return True


# Strategy cut-overs; both sides of each cut-over compute identical results.
_RANGE_HEAP_LIMIT = 4096        # full-prefix ranges larger than this walk rank order
_SINGLE_TOKEN_SET_LIMIT = 24576  # one-token queries: candidates are matches
_TOKEN_SET_LIMIT = 8192          # multi-token: per-candidate order checks are pricier


class CompletionIndex:
    """Immutable suggestion index; safe for concurrent readers."""

    def __init__(self, entries: list[TaskPhrase], built_at: float):
        self.entries = entries
        self.built_at = built_at
        self._texts = [e.text for e in entries]
        self._counts = [len(e.sources) for e in entries]
        self._tokens = [tuple(sys.intern(t) for t in e.text.split()) for e in entries]

        token_map: dict[str, list[int]] = {}
        for pos, toks in enumerate(self._tokens):
            for tok in set(toks):
                token_map.setdefault(tok, []).append(pos)
        self.token_map = token_map
        self._vocab = sorted(token_map)

        # Positions in ranking order (source_count desc, text asc), plus the
        # inverse used as an integer sort key.
        self._global_order = sorted(range(len(entries)), key=self._rank_key)
        self._rank_of = [0] * len(entries)
        for rank, pos in enumerate(self._global_order):
            self._rank_of[pos] = rank

        title_ids: set[int] = set()
        for e in entries:
            title_ids.update(e.sources)
        self.corpus_stats = {"task_count": len(entries), "title_count": len(title_ids)}

    @property
    def task_count(self) -> int:
        return len(self.entries)

    def _rank_key(self, pos: int):
        return (-self._counts[pos], self._texts[pos])

    def _prefix_range(self, prefix: str) -> range:
        lo = bisect_left(self._texts, prefix)
        hi = bisect_left(self._texts, _prefix_upper_bound(prefix), lo)
        return range(lo, hi)

    def _top_of_range(self, span: range, limit: int) -> list[int]:
        """Best ``limit`` positions of a contiguous text range, rank order."""
        if len(span) <= limit:
            return sorted(span, key=self._rank_of.__getitem__)
        if len(span) <= _RANGE_HEAP_LIMIT:
            return heapq.nsmallest(limit, span, key=self._rank_of.__getitem__)
        # Huge ranges: walking the global ranking hits the range quickly.
        lo, hi = span.start, span.stop
        picked = []
        for pos in self._global_order:
            if lo <= pos < hi:
                picked.append(pos)
                if len(picked) == limit:
                    break
        return picked

    def _vocab_span(self, token_prefix: str) -> tuple[int, int]:
        lo = bisect_left(self._vocab, token_prefix)
        hi = bisect_left(self._vocab, _prefix_upper_bound(token_prefix), lo)
        return lo, hi

    def _top_token_matches(
        self, query_tokens: list[str], exclude: range, limit: int
    ) -> list[int]:
        """Best ``limit`` ordered token-prefix matches outside ``exclude``."""
        # Cheapest pre-filter: the query token whose prefix-compatible vocab
        # covers the fewest entry positions. Every real match carries every
        # query token, so that token's positions form a superset.
        single = len(query_tokens) == 1
        best_ub, best_span = None, None
        for q in query_tokens:
            lo, hi = self._vocab_span(q)
            ub = sum(len(self.token_map[t]) for t in self._vocab[lo:hi])
            if best_ub is None or ub < best_ub:
                best_ub, best_span = ub, (lo, hi)
        if not best_ub:
            return []

        ex_lo, ex_hi = exclude.start, exclude.stop
        set_limit = _SINGLE_TOKEN_SET_LIMIT if single else _TOKEN_SET_LIMIT
        if best_ub <= set_limit:
            lo, hi = best_span
            candidates = set().union(*(self.token_map[t] for t in self._vocab[lo:hi]))
            if single:
                # Owning one matching token IS the whole match condition.
                matched = [pos for pos in candidates if not ex_lo <= pos < ex_hi]
            else:
                matched = [
                    pos for pos in candidates
                    if not ex_lo <= pos < ex_hi
                    and token_prefix_match(self._tokens[pos], query_tokens)
                ]
            if len(matched) <= limit:
                return sorted(matched, key=self._rank_of.__getitem__)
            return heapq.nsmallest(limit, matched, key=self._rank_of.__getitem__)

        # The pre-filter is useless (every query token is very common), which
        # also means matches sit densely in rank order; walk it and stop early.
        picked = []
        for pos in self._global_order:
            if ex_lo <= pos < ex_hi:
                continue
            if token_prefix_match(self._tokens[pos], query_tokens):
                picked.append(pos)
                if len(picked) == limit:
                    break
        return picked


def _prefix_upper_bound(prefix: str) -> str:
    # Smallest string greater than every string with this prefix; task text
    # never contains U+10FFFF.
    return prefix + "\U0010ffff"


def build_index(tasks: list[TaskPhrase]) -> CompletionIndex:
    """Build the index; tasks must be deduplicated by text and sourced.

    Every entry needs at least one source title so suggestions always carry
    a positive source_count.
    """
    seen: set[str] = set()
    for t in tasks:
        if t.text in seen:
            raise IndexBuildError(f"duplicate task text {t.text!r}; merge before building")
        if not t.sources:
            raise IndexBuildError(f"task {t.text!r} has no sources")
        seen.add(t.text)
    entries = sorted(tasks, key=lambda t: t.text)
    return CompletionIndex(entries, built_at=time.time())


def suggest(index: CompletionIndex, query: str, limit: int) -> list[Suggestion]:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    q = query.lower()
    query_tokens = q.split()

    full_range = index._prefix_range(q)
    results = [
        Suggestion(index._texts[p], index._counts[p], FULL_PREFIX)
        for p in index._top_of_range(full_range, limit)
    ]
    if len(results) >= limit or not query_tokens:
        return results

    for p in index._top_token_matches(query_tokens, full_range, limit - len(results)):
        results.append(Suggestion(index._texts[p], index._counts[p], TOKEN_PREFIX))
    return results


# -- persistence -----------------------------------------------------------


def save_index(index: CompletionIndex, path) -> None:
    """Write the index as a TSV with a versioned header.

    Line 1: format tag, line 2: built_at, line 3: column names, then one
    entry per line. token_map is rebuilt on load.
    """
    from .tasks import TSV_COLUMNS

    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{INDEX_FORMAT}\n")
        f.write(f"built_at\t{index.built_at!r}\n")
        f.write("\t".join(TSV_COLUMNS) + "\n")
        for t in index.entries:
            row = (
                t.text,
                t.verb,
                t.object or "",
                t.prep_phrase or "",
                str(len(t.sources)),
                ",".join(str(s) for s in sorted(t.sources)),
            )
            f.write("\t".join(row) + "\n")


def load_index(path) -> CompletionIndex:
    with open(path, encoding="utf-8") as f:
        fmt = f.readline().strip()
        if fmt != INDEX_FORMAT:
            raise IndexBuildError(f"unsupported index format {fmt!r}")
        built_line = f.readline().rstrip("\n").split("\t")
        built_at = float(built_line[1]) if len(built_line) == 2 else 0.0
        f.readline()  # column header
        entries = []
        for line in f:
            text, verb, obj, pp, _count, sources = line.rstrip("\n").split("\t")
            ids = frozenset(int(s) for s in sources.split(",") if s)
            entries.append(TaskPhrase(verb, obj or None, pp or None, text, ids))
    entries.sort(key=lambda t: t.text)
    return CompletionIndex(entries, built_at=built_at)
