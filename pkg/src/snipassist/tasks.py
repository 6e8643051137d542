"""Task phrase extraction from question titles.

A task is a verb with a direct object and/or a single prepositional phrase,
e.g. "add lines to text file". Candidates come from deterministic patterns
over the tagged token stream:

  (a) verb + object NP                       "add lines"
  (b) verb + object NP + one PP              "add lines to text file"
  (c) verb + PP only                         "add to collection"
  (d) passive NP [is|was|are|were] participle -> verb + NP
  (e) gerunds behave like (a)-(c) after lemmatization

A verb with an object and several trailing PPs yields the object-only
variant plus one variant per single PP; multi-PP combinations are never
emitted. Candidates in a negation scope are dropped, determiners removed,
and at most 12 deduplicated tasks survive per title.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import CorpusStore
from .lexicon import Lexicon
from .tagger import (
    ADV,
    BE,
    BOUND,
    CODE,
    CONJ,
    DET,
    GER,
    NEG,
    NOUN,
    PART,
    PREP,
    PREP_INF,
    Token,
    VERB,
    normalize_title,
)

MAX_TASKS_PER_TITLE = 12

_SPACE_RE = re.compile(r"\s+")


@dataclass(frozen=True, slots=True)
class TaskPhrase:
    verb: str
    object: str | None
    prep_phrase: str | None
    text: str
    sources: frozenset[int]


def render_task_text(verb: str, object: str | None, prep_phrase: str | None) -> str:
    parts = [verb]
    if object:
        parts.append(object)
    if prep_phrase:
        parts.append(prep_phrase)
    return " ".join(parts)


def make_task(
    verb: str,
    object: str | None,
    prep_phrase: str | None,
    sources: frozenset[int] = frozenset(),
) -> TaskPhrase:
    if not object and not prep_phrase:
        raise ValueError("a task needs an object or a prepositional phrase")
    text = render_task_text(verb, object, prep_phrase)
    if text != _SPACE_RE.sub(" ", text).strip() or text != text.lower():
        raise ValueError(f"malformed task text {text!r}")
    return TaskPhrase(verb, object or None, prep_phrase or None, text, sources)


@dataclass(frozen=True, slots=True)
class _Candidate:
    verb: str
    object: str | None
    prep_phrase: str | None
    obj_head: str | None
    negated: bool


_NP_TAGS = (NOUN, CODE)


def _next_is_np_material(tokens: list[Token], i: int) -> bool:
    return i < len(tokens) and tokens[i].tag in _NP_TAGS


def _collect_np(tokens: list[Token], i: int, absorb_end: bool) -> tuple[list[str], int]:
    """Gather one noun phrase starting at ``i``; determiners are dropped.

    Gerunds and participles followed by more nouns act as adjectives
    ("nested loop"); with ``absorb_end`` a trailing verb-shaped token is
    kept as a noun ("bubble sort"), which post-verb objects want but
    clause-initial NPs must not do (it would eat passive participles).
    """
    words: list[str] = []
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if tok.tag == DET or tok.tag == ADV:
            i += 1
            continue
        if tok.tag in _NP_TAGS:
            words.append(tok.text)
            i += 1
            continue
        if tok.tag in (GER, PART) and _next_is_np_material(tokens, i + 1):
            words.append(tok.text)  # adjectival use keeps the surface form
            i += 1
            continue
        if (
            absorb_end
            and tok.tag in (VERB, GER, PART)
            and not _next_is_np_material(tokens, i + 1)
            and (tok.tag != PART or words)
        ):
            words.append(tok.text)
            i += 1
            continue
        break
    return words, i


def _generate(tokens: list[Token], lexicon: Lexicon) -> list[_Candidate]:
    candidates: list[_Candidate] = []
    negated = False
    n = len(tokens)
    i = 0

    def emit(verb: str, obj: list[str], pps: list[tuple[str, list[str]]]) -> None:
        obj_text = " ".join(obj) if obj else None
        obj_head = obj[-1] if obj else None
        if obj:
            candidates.append(_Candidate(verb, obj_text, None, obj_head, negated))
        for prep, np in pps:
            pp_text = prep + " " + " ".join(np)
            candidates.append(_Candidate(verb, obj_text, pp_text, obj_head, negated))

    while i < n:
        tok = tokens[i]
        if tok.tag in (BOUND, CONJ):
            negated = False
            i += 1
            continue
        if tok.tag == NEG:
            negated = True
            i += 1
            continue
        if tok.tag in (VERB, GER):
            verb = tok.lemma or tok.text
            obj, i = _collect_np(tokens, i + 1, absorb_end=True)
            pps: list[tuple[str, list[str]]] = []
            while i < n and tokens[i].tag == PREP:
                np, j = _collect_np(tokens, i + 1, absorb_end=True)
                if not np:
                    break
                pps.append((tokens[i].text, np))
                i = j
            emit(verb, obj, pps)
            continue
        if tok.tag in _NP_TAGS:
            np, j = _collect_np(tokens, i, absorb_end=False)
            k = j
            if k < n and tokens[k].tag == BE:
                k += 1
            if np and k < n and tokens[k].tag == PART:
                verb = tokens[k].lemma or tokens[k].text
                emit(verb, np, [])
                i = k + 1
            else:
                i = j
            continue
        i += 1
    return candidates


def _strip_lead_in(tokens: list[Token], lexicon: Lexicon) -> list[Token]:
    i = 0
    skippable = lexicon.lead_in_words | lexicon.determiners
    while i < len(tokens) and tokens[i].tag != CODE and tokens[i].text in skippable:
        i += 1
    return tokens[i:]


def extract_tasks(
    title: str,
    lexicon: Lexicon,
    source_id: int | None = None,
    limit: int = MAX_TASKS_PER_TITLE,
) -> list[TaskPhrase]:
    """Extract up to ``limit`` task phrases from one title.

    A candidate survives when its verb is a known action or the head noun of
    its object is a generic programming object.
    """
    tokens = _strip_lead_in(normalize_title(title, lexicon), lexicon)
    sources = frozenset() if source_id is None else frozenset({source_id})
    out: list[TaskPhrase] = []
    seen: set[str] = set()
    for cand in _generate(tokens, lexicon):
        if cand.negated:
            continue
        if cand.verb not in lexicon.actions and (
            cand.obj_head is None or cand.obj_head not in lexicon.generic_objects
        ):
            continue
        text = render_task_text(cand.verb, cand.object, cand.prep_phrase)
        if text in seen:
            continue
        seen.add(text)
        out.append(TaskPhrase(cand.verb, cand.object, cand.prep_phrase, text, sources))
        if len(out) >= limit:
            break
    return out


def extract_corpus(store: CorpusStore, lexicon: Lexicon) -> list[TaskPhrase]:
    """Extract tasks from every stored title, merging duplicates by text.

    Output is sorted by text, so repeated runs over the same store are
    identical.
    """
    merged: dict[str, tuple[TaskPhrase, set[int]]] = {}
    for question in store.questions():
        for task in extract_tasks(question.title, lexicon, source_id=question.id):
            entry = merged.get(task.text)
            if entry is None:
                merged[task.text] = (task, set(task.sources))
            else:
                entry[1].add(question.id)
    return [
        TaskPhrase(t.verb, t.object, t.prep_phrase, t.text, frozenset(ids))
        for t, ids in (merged[text] for text in sorted(merged))
    ]


# -- TSV persistence -------------------------------------------------------

TSV_COLUMNS = ("text", "verb", "object", "prep_phrase", "source_count", "sources")


def write_tasks_tsv(tasks: list[TaskPhrase], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("\t".join(TSV_COLUMNS) + "\n")
        for t in tasks:
            row = (
                t.text,
                t.verb,
                t.object or "",
                t.prep_phrase or "",
                str(len(t.sources)),
                ",".join(str(s) for s in sorted(t.sources)),
            )
            f.write("\t".join(row) + "\n")


def read_tasks_tsv(path) -> list[TaskPhrase]:
    tasks = []
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split("\t")
        if tuple(header) != TSV_COLUMNS:
            raise ValueError(f"unexpected tasks TSV header: {header}")
        for line in f:
            text, verb, obj, pp, _count, sources = line.rstrip("\n").split("\t")
            ids = frozenset(int(s) for s in sources.split(",") if s)
            tasks.append(TaskPhrase(verb, obj or None, pp or None, text, ids))
    return tasks
