"""Q&A corpus store: posts-dump ingestion, code block extraction, threads.

The on-disk store is a directory of JSON-lines files plus a meta.json
carrying a format tag. Files are written in sorted order with sorted keys,
so rebuilding from the same dump produces byte-identical contents.
"""

from __future__ import annotations

import html
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

STORE_FORMAT = "snipassist-store-v1"
DEFAULT_BASE_URL = "https://stackoverflow.com"
DEFAULT_TAG_FILTER = "java"


class IngestError(Exception):
    """Raised when a dump file cannot be read or is not a posts dump."""


@dataclass(frozen=True, slots=True)
class Question:
    id: int
    title: str
    tags: tuple[str, ...]
    score: int
    accepted_answer_id: int | None
    body_html: str


@dataclass(frozen=True, slots=True)
class Answer:
    id: int
    question_id: int
    score: int
    body_html: str


@dataclass(frozen=True, slots=True)
class CodeSnippet:
    answer_id: int
    ordinal: int
    code: str
    source_url: str


@dataclass(frozen=True, slots=True)
class Thread:
    question: Question
    answers: tuple[Answer, ...]


@dataclass(slots=True)
class IngestReport:
    """Counts from one ingest run.

    ``skipped`` counts every row not stored: malformed rows, questions
    filtered out by tag, answers whose parent question is absent, and rows
    with an unrecognized PostTypeId.
    """

    questions: int = 0
    answers: int = 0
    snippets: int = 0
    skipped: int = 0

    def as_text(self) -> str:
        return (
            f"questions: {self.questions}\n"
            f"answers: {self.answers}\n"
            f"snippets: {self.snippets}\n"
            f"skipped: {self.skipped}\n"
        )


# Only <pre><code> regions count as snippets; inline <code> is prose markup.
_PRE_CODE_RE = re.compile(
    r"<pre\b[^>]*>\s*<code\b[^>]*>(.*?)</code\s*>\s*</pre\s*>",
    re.IGNORECASE | re.DOTALL,
)
_TAG_RE = re.compile(r"<[^>]+>")
_ROW_TAG_RE = re.compile(r"<row\b")
_TAGS_ATTR_RE = re.compile(r"<([^<>]+)>")


def extract_code_blocks(body_html: str) -> list[str]:
    """Return the text of each well-formed ``<pre><code>`` block, in order.

    Inner tags are stripped before entities are decoded; an unclosed region
    never matches and is ignored. Blocks that are empty after trimming are
    dropped.
    """
    blocks = []
    for match in _PRE_CODE_RE.finditer(body_html):
        code = html.unescape(_TAG_RE.sub("", match.group(1)))
        if code.strip():
            blocks.append(code)
    return blocks


def answer_url(answer_id: int, base_url: str = DEFAULT_BASE_URL) -> str:
    return f"{base_url.rstrip('/')}/a/{answer_id}"


def parse_tags(raw: str) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for tag in _TAGS_ATTR_RE.findall(raw):
        seen.setdefault(tag.strip().lower())
    return tuple(t for t in seen if t)


def _answer_sort_key(answer: Answer, accepted_id: int | None):
    # Highest score first; accepted answer wins ties; lower id is final tie-break.
    return (-answer.score, 0 if answer.id == accepted_id else 1, answer.id)


class CorpusStore:
    """Immutable-after-build store of questions, answers and snippets."""

    def __init__(self, base_url: str = DEFAULT_BASE_URL, tag_filter: str | None = None):
        self.base_url = base_url
        self.tag_filter = tag_filter
        self._questions: dict[int, Question] = {}
        self._answers: dict[int, Answer] = {}
        self._answers_by_question: dict[int, list[Answer]] = {}
        self._snippets_by_answer: dict[int, list[CodeSnippet]] = {}

    # -- construction ----------------------------------------------------

    def _add_question(self, q: Question) -> None:
        self._questions[q.id] = q
        self._answers_by_question[q.id] = []

    def _add_answer(self, a: Answer) -> int:
        self._answers[a.id] = a
        self._answers_by_question[a.question_id].append(a)
        snippets = [
            CodeSnippet(a.id, i, code, answer_url(a.id, self.base_url))
            for i, code in enumerate(extract_code_blocks(a.body_html))
        ]
        self._snippets_by_answer[a.id] = snippets
        return len(snippets)

    def _finalize(self) -> None:
        for qid, answers in self._answers_by_question.items():
            accepted = self._questions[qid].accepted_answer_id
            answers.sort(key=lambda a: _answer_sort_key(a, accepted))

    # -- queries ---------------------------------------------------------

    @property
    def question_count(self) -> int:
        return len(self._questions)

    @property
    def answer_count(self) -> int:
        return len(self._answers)

    @property
    def snippet_count(self) -> int:
        return sum(len(s) for s in self._snippets_by_answer.values())

    def questions(self) -> list[Question]:
        return [self._questions[qid] for qid in sorted(self._questions)]

    def get_question(self, question_id: int) -> Question:
        try:
            return self._questions[question_id]
        except KeyError:
            raise KeyError(f"unknown question id {question_id}") from None

    def get_thread(self, question_id: int) -> Thread:
        question = self.get_question(question_id)
        return Thread(question, tuple(self._answers_by_question[question_id]))

    def get_answer(self, answer_id: int) -> Answer:
        try:
            return self._answers[answer_id]
        except KeyError:
            raise KeyError(f"unknown answer id {answer_id}") from None

    def snippets_for_answer(self, answer_id: int) -> list[CodeSnippet]:
        return list(self._snippets_by_answer.get(answer_id, ()))


def build_store(
    questions,
    answers=(),
    base_url: str = DEFAULT_BASE_URL,
    tag_filter: str | None = None,
) -> CorpusStore:
    """Assemble a store from already-built Question/Answer values.

    Answers whose question is absent are rejected outright; use ingest_dump
    for tolerant parsing of raw dumps.
    """
    store = CorpusStore(base_url=base_url, tag_filter=tag_filter)
    for question in questions:
        if question.id in store._questions:
            raise ValueError(f"duplicate question id {question.id}")
        store._add_question(question)
    for answer in answers:
        if answer.question_id not in store._questions:
            raise ValueError(f"answer {answer.id} references unknown question")
        if answer.id in store._answers:
            raise ValueError(f"duplicate answer id {answer.id}")
        store._add_answer(answer)
    store._finalize()
    return store


def _parse_row(line: str) -> dict[str, str] | None:
    try:
        elem = ET.fromstring(line)
    except ET.ParseError:
        return None
    if elem.tag != "row":
        return None
    return dict(elem.attrib)


def _iter_row_lines(path: Path):
    try:
        handle = open(path, encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read dump {path}: {exc}") from exc
    with handle:
        for lineno, line in enumerate(handle, start=1):
            if _ROW_TAG_RE.search(line):
                yield lineno, line.strip()


def ingest_dump(
    path: str | Path,
    tag_filter: str | None = DEFAULT_TAG_FILTER,
    base_url: str = DEFAULT_BASE_URL,
) -> tuple[CorpusStore, IngestReport]:
    """Build a fresh store from a posts dump.

    Two passes over the rows file: questions first, then answers, so answer
    rows may precede their parent question. A malformed row is skipped and
    counted, never fatal; only an unreadable file aborts.
    """
    path = Path(path)
    store = CorpusStore(base_url=base_url, tag_filter=tag_filter)
    report = IngestReport()

    for _lineno, line in _iter_row_lines(path):
        attrs = _parse_row(line)
        if attrs is None:
            report.skipped += 1
            continue
        if attrs.get("PostTypeId") != "1":
            continue
        question = _question_from_attrs(attrs)
        if question is None or question.id in store._questions:
            report.skipped += 1
            continue
        if tag_filter is not None and tag_filter.lower() not in question.tags:
            report.skipped += 1
            continue
        store._add_question(question)
        report.questions += 1

    for _lineno, line in _iter_row_lines(path):
        attrs = _parse_row(line)
        if attrs is None:
            continue  # already counted in pass one
        post_type = attrs.get("PostTypeId")
        if post_type == "1":
            continue
        if post_type != "2":
            report.skipped += 1
            continue
        answer = _answer_from_attrs(attrs)
        if answer is None or answer.id in store._answers:
            report.skipped += 1
            continue
        if answer.question_id not in store._questions:
            report.skipped += 1
            continue
        report.snippets += store._add_answer(answer)
        report.answers += 1

    store._finalize()
    return store, report


def _int_or_none(value: str | None) -> int | None:
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        return None


def _question_from_attrs(attrs: dict[str, str]) -> Question | None:
    qid = _int_or_none(attrs.get("Id"))
    title = (attrs.get("Title") or "").strip()
    if qid is None or qid <= 0 or not title:
        return None
    return Question(
        id=qid,
        title=title,
        tags=parse_tags(attrs.get("Tags", "")),
        score=_int_or_none(attrs.get("Score")) or 0,
        accepted_answer_id=_int_or_none(attrs.get("AcceptedAnswerId")),
        body_html=attrs.get("Body", ""),
    )


def _answer_from_attrs(attrs: dict[str, str]) -> Answer | None:
    aid = _int_or_none(attrs.get("Id"))
    parent = _int_or_none(attrs.get("ParentId"))
    if aid is None or aid <= 0 or parent is None or parent <= 0:
        return None
    return Answer(
        id=aid,
        question_id=parent,
        score=_int_or_none(attrs.get("Score")) or 0,
        body_html=attrs.get("Body", ""),
    )


# -- persistence ---------------------------------------------------------


def save_store(store: CorpusStore, store_dir: str | Path) -> None:
    store_dir = Path(store_dir)
    store_dir.mkdir(parents=True, exist_ok=True)
    meta = {
        "format": STORE_FORMAT,
        "base_url": store.base_url,
        "tag_filter": store.tag_filter,
        "questions": store.question_count,
        "answers": store.answer_count,
        "snippets": store.snippet_count,
    }
    _write_json(store_dir / "meta.json", meta)
    with open(store_dir / "questions.jsonl", "w", encoding="utf-8") as f:
        for q in store.questions():
            f.write(_dump_line({
                "id": q.id,
                "title": q.title,
                "tags": list(q.tags),
                "score": q.score,
                "accepted_answer_id": q.accepted_answer_id,
                "body_html": q.body_html,
            }))
    with open(store_dir / "answers.jsonl", "w", encoding="utf-8") as f:
        for aid in sorted(store._answers):
            a = store._answers[aid]
            f.write(_dump_line({
                "id": a.id,
                "question_id": a.question_id,
                "score": a.score,
                "body_html": a.body_html,
            }))
    with open(store_dir / "snippets.jsonl", "w", encoding="utf-8") as f:
        for aid in sorted(store._snippets_by_answer):
            for s in store._snippets_by_answer[aid]:
                f.write(_dump_line({
                    "answer_id": s.answer_id,
                    "ordinal": s.ordinal,
                    "code": s.code,
                    "source_url": s.source_url,
                }))


def load_store(store_dir: str | Path) -> CorpusStore:
    store_dir = Path(store_dir)
    meta_path = store_dir / "meta.json"
    if not meta_path.exists():
        raise IngestError(f"no store at {store_dir} (missing meta.json)")
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    if meta.get("format") != STORE_FORMAT:
        raise IngestError(f"unsupported store format {meta.get('format')!r}")

    store = CorpusStore(base_url=meta["base_url"], tag_filter=meta.get("tag_filter"))
    with open(store_dir / "questions.jsonl", encoding="utf-8") as f:
        for line in f:
            row = json.loads(line)
            store._add_question(Question(
                id=row["id"],
                title=row["title"],
                tags=tuple(row["tags"]),
                score=row["score"],
                accepted_answer_id=row["accepted_answer_id"],
                body_html=row["body_html"],
            ))
    with open(store_dir / "answers.jsonl", encoding="utf-8") as f:
        for line in f:
            row = json.loads(line)
            answer = Answer(
                id=row["id"],
                question_id=row["question_id"],
                score=row["score"],
                body_html=row["body_html"],
            )
            store._add_answer(answer)
    store._finalize()
    return store


def _dump_line(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8")
