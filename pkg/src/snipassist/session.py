"""One assist invocation: replace a query with an attributed snippet,
cycle alternatives in place, restore, and record telemetry."""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Sequence

from .search import SnippetResult

ORIGIN_CONTENT_ASSIST = "content-assist"
ORIGIN_SELECTION = "selection"
ORIGIN_QUESTION_MARKS = "question-marks"
ORIGINS = (ORIGIN_CONTENT_ASSIST, ORIGIN_SELECTION, ORIGIN_QUESTION_MARKS)

TELEMETRY_FIELDS = ("query", "origin", "cycle_count", "helpful", "timestamp")


class SessionStateError(Exception):
    pass


class EditConflictError(Exception):
    """The document was modified inside the inserted block."""


@dataclass(frozen=True, slots=True)
class DocumentEdit:
    start: int
    removed: str
    inserted: str


def apply_edit(document: str, edit: DocumentEdit) -> str:
    end = edit.start + len(edit.removed)
    if document[edit.start:end] != edit.removed:
        raise EditConflictError("edit does not match the document")
    return document[: edit.start] + edit.inserted + document[end:]


def invert_edit(edit: DocumentEdit) -> DocumentEdit:
    return DocumentEdit(edit.start, edit.inserted, edit.removed)


def find_marker_query(document: str) -> tuple[str, tuple[int, int]] | None:
    """First ``?query?`` marker pair on a single line, or None.

    The query is the trimmed text between the markers; the region spans both
    markers. Pairs with blank interiors are skipped.
    """
    offset = 0
    for line in document.splitlines(keepends=True):
        start = line.find("?")
        while start != -1:
            end = line.find("?", start + 1)
            if end == -1:
                break
            inner = line[start + 1:end]
            if inner.strip():
                return inner.strip(), (offset + start, end - start + 1)
            start = end
        offset += len(line)
    return None


def _leading_indent(document: str, start: int) -> str:
    line_start = document.rfind("\n", 0, start) + 1
    prefix = document[line_start:start]
    return prefix if prefix.strip() == "" else ""


def _render_block(snippet: SnippetResult, indent: str, comment_leader: str) -> str:
    lines = [f"{comment_leader} source: {snippet.source_url}"]
    lines.extend(snippet.code.strip("\n").split("\n"))
    # First line lands where the region began, so only later lines get the
    # indent prefix.
    return ("\n" + indent).join(lines)


class AssistSession:
    """Single-owner state machine for one invocation.

    ``snippets`` is the ordered candidate list; ``index`` points at the one
    currently in the document. A session without snippets never edits.
    """

    def __init__(
        self,
        query: str,
        origin: str,
        snippets: Sequence[SnippetResult],
        comment_leader: str = "//",
    ):
        if origin not in ORIGINS:
            raise ValueError(f"unknown origin {origin!r}")
        self.id = uuid.uuid4().hex
        self.query = query
        self.origin = origin
        self.snippets = list(snippets)
        self.index = 0
        self.cycle_count = 0
        self.rating: bool | None = None
        self.original_text = ""
        self.start = 0
        self.comment_leader = comment_leader
        self._indent = ""
        self._current_block: str | None = None

    @property
    def snippetless(self) -> bool:
        return not self.snippets

    @property
    def inserted(self) -> bool:
        return self._current_block is not None

    def region(self) -> tuple[int, int]:
        block = self._current_block if self.inserted else self.original_text
        return (self.start, len(block))

    def _check_block(self, document: str) -> str:
        assert self._current_block is not None
        end = self.start + len(self._current_block)
        if document[self.start:end] != self._current_block:
            raise EditConflictError("inserted block was modified externally")
        return self._current_block


def begin_session(
    document: str,
    query: str,
    origin: str,
    region: tuple[int, int],
    retriever: Callable[[str], list[SnippetResult]],
    comment_leader: str = "//",
) -> tuple[AssistSession, DocumentEdit | None]:
    """Start a session and build the edit inserting the first snippet.

    The region must currently hold the query's surface form: the bare query
    text, or the marker-wrapped form for the question-marks origin. Returns
    (session, None) when retrieval finds nothing.
    """
    if not query.strip():
        raise ValueError("query must be non-empty")
    start, length = region
    if start < 0 or length <= 0 or start + length > len(document):
        raise ValueError(f"region {region} out of bounds")
    surface = document[start:start + length]
    if origin == ORIGIN_QUESTION_MARKS:
        ok = (
            surface.startswith("?")
            and surface.endswith("?")
            and surface[1:-1].strip() == query
        )
    else:
        ok = surface == query
    if not ok:
        raise ValueError("region text does not match the query surface form")

    session = AssistSession(query, origin, retriever(query), comment_leader)
    session.original_text = surface
    session.start = start
    if session.snippetless:
        return session, None

    session._indent = _leading_indent(document, start)
    block = _render_block(session.snippets[0], session._indent, comment_leader)
    session._current_block = block
    return session, DocumentEdit(start, surface, block)


def next_snippet(session: AssistSession, document: str) -> DocumentEdit:
    """Swap the inserted block for the next candidate, wrapping around."""
    if session.snippetless:
        raise SessionStateError("session has no snippets")
    if not session.inserted:
        raise SessionStateError("no snippet currently inserted")
    old_block = session._check_block(document)
    session.index = (session.index + 1) % len(session.snippets)
    session.cycle_count += 1
    new_block = _render_block(
        session.snippets[session.index], session._indent, session.comment_leader
    )
    session._current_block = new_block
    return DocumentEdit(session.start, old_block, new_block)


def restore(session: AssistSession, document: str) -> DocumentEdit:
    """Put the original region text back, byte for byte."""
    if not session.inserted:
        raise SessionStateError("nothing to restore")
    old_block = session._check_block(document)
    session._current_block = None
    return DocumentEdit(session.start, old_block, session.original_text)


@dataclass(frozen=True, slots=True)
class TelemetryRecord:
    query: str
    origin: str
    cycle_count: int
    final_index: int
    helpful: bool
    timestamp: str


class TelemetryLog:
    """Append-only tab-separated telemetry sink."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, record: TelemetryRecord) -> None:
        line = "\t".join([
            record.query,
            record.origin,
            str(record.cycle_count),
            "true" if record.helpful else "false",
            record.timestamp,
        ])
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(line + "\n")


def rate(
    session: AssistSession,
    helpful: bool,
    telemetry: TelemetryLog | None = None,
) -> TelemetryRecord:
    """Record the one-shot helpfulness answer for a session."""
    if session.rating is not None:
        raise SessionStateError("session already rated")
    session.rating = helpful
    record = TelemetryRecord(
        query=session.query,
        origin=session.origin,
        cycle_count=session.cycle_count,
        final_index=session.index,
        helpful=helpful,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )
    if telemetry is not None:
        telemetry.append(record)
    return record


def tally_telemetry(path: str | Path) -> dict[str, int]:
    """Helpful/unhelpful counts over a telemetry file (Table-style tally)."""
    counts = {"helpful": 0, "unhelpful": 0}
    path = Path(path)
    if not path.exists():
        return counts
    with open(path, encoding="utf-8") as f:
        for line in f:
            fields = line.rstrip("\n").split("\t")
            if len(fields) != len(TELEMETRY_FIELDS):
                continue
            counts["helpful" if fields[3] == "true" else "unhelpful"] += 1
    return counts


def cycle_histogram(path: str | Path) -> dict[int, dict[str, int]]:
    """Invocation counts by number of next-snippet calls, split by rating."""
    hist: dict[int, dict[str, int]] = {}
    path = Path(path)
    if not path.exists():
        return hist
    with open(path, encoding="utf-8") as f:
        for line in f:
            fields = line.rstrip("\n").split("\t")
            if len(fields) != len(TELEMETRY_FIELDS):
                continue
            cycles = int(fields[2])
            bucket = hist.setdefault(cycles, {"helpful": 0, "unhelpful": 0})
            bucket["helpful" if fields[3] == "true" else "unhelpful"] += 1
    return hist
