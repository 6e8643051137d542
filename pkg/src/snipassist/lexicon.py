"""Editable word lists driving task extraction."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

log = logging.getLogger(__name__)

DETERMINERS = frozenset({"a", "an", "the"})
PREPOSITIONS = frozenset({
    "to", "from", "into", "in", "on", "by", "with", "of", "for", "over", "between",
})


def _read_word_file(path: Path) -> list[str]:
    words = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip().lower()
        if line:
            words.append(line)
    return words


def _data_path(name: str) -> Path:
    return Path(str(resources.files("snipassist").joinpath("data", name)))


@dataclass(frozen=True)
class Lexicon:
    """Word lists for the extractor; all entries lowercase.

    ``irregular_verbs`` maps an inflected form to (lemma, kind) where kind is
    "part", "past" or "ger". ``noun_exceptions`` are words whose -ing/-ed
    shape never means a verb here (e.g. "string").
    """

    actions: frozenset[str]
    generic_objects: frozenset[str]
    determiners: frozenset[str] = DETERMINERS
    lead_in_words: frozenset[str] = frozenset()
    irregular_verbs: dict[str, tuple[str, str]] = field(default_factory=dict)
    noun_exceptions: frozenset[str] = frozenset()

    @property
    def known_verbs(self) -> frozenset[str]:
        return self.actions


def load_lexicon(
    actions_path: str | Path | None = None,
    objects_path: str | Path | None = None,
    irregulars_path: str | Path | None = None,
    lead_in_path: str | Path | None = None,
    noun_exceptions_path: str | Path | None = None,
) -> Lexicon:
    """Load the lexicon from text files, defaulting to the bundled lists."""
    actions_path = Path(actions_path) if actions_path else _data_path("actions.txt")
    objects_path = Path(objects_path) if objects_path else _data_path("generic_objects.txt")
    irregulars_path = Path(irregulars_path) if irregulars_path else _data_path("irregular_verbs.txt")
    lead_in_path = Path(lead_in_path) if lead_in_path else _data_path("lead_in_words.txt")
    noun_exceptions_path = (
        Path(noun_exceptions_path) if noun_exceptions_path else _data_path("noun_exceptions.txt")
    )

    actions = frozenset(_read_word_file(actions_path))
    objects = frozenset(_read_word_file(objects_path))
    lead_ins = frozenset(_read_word_file(lead_in_path))
    noun_exceptions = frozenset(_read_word_file(noun_exceptions_path))

    irregulars: dict[str, tuple[str, str]] = {}
    for entry in _read_word_file(irregulars_path):
        parts = entry.split()
        if len(parts) != 3 or parts[2] not in ("part", "past", "ger"):
            raise ValueError(f"bad irregular verb entry: {entry!r}")
        irregulars[parts[0]] = (parts[1], parts[2])

    log.info(
        "lexicon loaded: %d actions, %d generic objects, %d irregular forms",
        len(actions), len(objects), len(irregulars),
    )
    return Lexicon(
        actions=actions,
        generic_objects=objects,
        lead_in_words=lead_ins,
        irregular_verbs=irregulars,
        noun_exceptions=noun_exceptions,
    )
