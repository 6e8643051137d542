"""Rule-based tokenizer, part-of-speech tagger and verb lemmatizer.

Titles are tagged with a small deterministic tag set; no statistical model
is involved, so identical input always yields identical tags.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass

from .lexicon import DETERMINERS, PREPOSITIONS, Lexicon

# Tag constants.
VERB = "VERB"          # base-form action verb ("add", "sort")
GER = "VERB-GER"       # gerund ("sorting")
PART = "VERB-PART"     # participle ("returned", "written")
PREP = "PREP"
PREP_INF = "PREP-INF"  # "to" introducing an infinitive ("to add")
DET = "DET"
NOUN = "NOUN"
CODE = "CODE"          # code-like token, noun role ("arraylist<integer>")
BE = "BE"
NEG = "NEG"
CONJ = "CONJ"
ADV = "ADV"
BOUND = "BOUND"        # clause boundary (punctuation)

_BE_WORDS = frozenset({"is", "was", "are", "were"})
_CONJ_WORDS = frozenset({"and", "or", "but", "then", "vs", "versus"})

_MARKUP_RE = re.compile(
    r"</?(?:a|b|i|em|strong|code|pre|p|br|span|tt|kbd|h[1-6])\b[^>]*>",
    re.IGNORECASE,
)
_CAMEL_RE = re.compile(r"[a-z][A-Z]")
_EDGE_QUOTES = "\"'`“”‘’"
_LEAD_PUNCT = "([{<" + _EDGE_QUOTES
_TRAIL_PUNCT = ")]}>,;:!?." + _EDGE_QUOTES
_CLAUSE_PUNCT = set(",;:.!?)]}")


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    tag: str
    lemma: str | None = None


def _is_code_like(raw: str) -> bool:
    return "." in raw or "()" in raw or "::" in raw or bool(_CAMEL_RE.search(raw))


def _split_raw(title: str) -> list[tuple[str, bool]]:
    """Split into (token, boundary_after) pairs, isolating edge punctuation."""
    out = []
    for raw in title.split():
        boundary = False
        tok = raw.strip(_EDGE_QUOTES)
        if tok and not any(c.isalnum() for c in tok):
            out.append(("", True))  # bare punctuation ends a clause
            continue
        if tok and not _is_code_like(tok):
            tok = tok.lstrip(_LEAD_PUNCT)
            stripped = tok.rstrip(_TRAIL_PUNCT)
            if any(c in _CLAUSE_PUNCT for c in tok[len(stripped):]):
                boundary = True
            tok = stripped
        else:
            # Code tokens keep their internal punctuation but still end a
            # clause when followed by , ; : etc.
            stripped = tok.rstrip(",;:!?")
            if tok != stripped:
                boundary = True
                tok = stripped
        if tok:
            out.append((tok, boundary))
        elif boundary or (raw and all(not c.isalnum() for c in raw)):
            out.append(("", True))
    return out


# -- lemmatization ---------------------------------------------------------

_DEFAULT_IRREGULARS: dict[str, tuple[str, str]] | None = None


def _default_irregulars() -> dict[str, tuple[str, str]]:
    global _DEFAULT_IRREGULARS
    if _DEFAULT_IRREGULARS is None:
        from .lexicon import load_lexicon

        _DEFAULT_IRREGULARS = dict(load_lexicon().irregular_verbs)
    return _DEFAULT_IRREGULARS


def _suffix_candidates(word: str) -> list[list[str]]:
    """Candidate lemmas per suffix, most specific suffix first."""
    groups = []
    for suffix in ("ing", "ed", "es", "s"):
        if not word.endswith(suffix) or len(word) <= len(suffix):
            continue
        stem = word[: -len(suffix)]
        if len(stem) < 2:
            continue
        cands = [stem]
        if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
            cands.append(stem[:-1])  # splitting -> split
        if suffix in ("ing", "ed", "es"):
            cands.append(stem + "e")  # removing -> remove, passes -> passe (rejected)
        if stem.endswith("i"):
            cands.append(stem[:-1] + "y")  # copied -> copy
        groups.append(cands)
    return groups


def _heuristic_lemma(word: str, cands: list[str]) -> str:
    stem = cands[0]
    if len(stem) >= 4 and stem[-1] == stem[-2] and stem[-1] not in "aeiouls":
        return stem[:-1]
    if (
        len(stem) >= 3
        and stem[-1] not in "aeiouwxy"
        and stem[-2] in "aeiou"
        and stem[-3] not in "aeiou"
    ):
        return stem + "e"  # consonant-vowel-consonant: cod -> code
    return stem


def lemmatize_verb(
    word: str,
    known: frozenset[str] | set[str] = frozenset(),
    irregulars: dict[str, tuple[str, str]] | None = None,
) -> str:
    """Reduce an inflected verb to its lemma.

    Irregular forms come from the exception table; regular forms strip
    -ing/-ed/-s with doubling and e-restoration, preferring candidates found
    in ``known``. A word matching no rule is returned unchanged.
    """
    w = word.lower().strip()
    if irregulars is None:
        irregulars = _default_irregulars()
    if w in irregulars:
        return irregulars[w][0]
    if w in known:
        return w
    groups = _suffix_candidates(w)
    lemma_pool = {lemma for lemma, _kind in irregulars.values()}
    for cands in groups:
        for cand in cands:
            if cand in known or cand in lemma_pool:
                return cand
    if groups:
        return _heuristic_lemma(w, groups[0])
    return w


# -- tagging ---------------------------------------------------------------


def _gerund_stem_ok(word: str, actions: frozenset[str]) -> bool:
    stem = word[:-3]
    if len(stem) >= 3:
        return True
    return stem + "e" in actions or stem in actions  # "using" -> "use"


def _participle_stem_ok(word: str, actions: frozenset[str]) -> bool:
    stem = word[:-2]
    if len(stem) >= 3:
        return True
    return stem + "e" in actions or stem in actions  # "used" -> "use"


def _tag_word(word: str, lexicon: Lexicon) -> Token:
    if word in lexicon.determiners:
        return Token(word, DET)
    if word in _BE_WORDS:
        return Token(word, BE)
    if word in ("not", "without") or word.endswith("n't"):
        return Token(word, NEG)
    if word in _CONJ_WORDS:
        return Token(word, CONJ)
    if word in lexicon.noun_exceptions:
        return Token(word, NOUN)
    irregular = lexicon.irregular_verbs.get(word)
    if irregular is not None:
        lemma, kind = irregular
        tag = {"part": PART, "past": VERB, "ger": GER}[kind]
        return Token(word, tag, lemma)
    if word in PREPOSITIONS:
        return Token(word, PREP)
    if word in lexicon.actions:
        return Token(word, VERB, word)
    if word.endswith("ing") and _gerund_stem_ok(word, lexicon.actions):
        return Token(word, GER, lemmatize_verb(word, lexicon.actions, lexicon.irregular_verbs))
    if word.endswith("ed") and _participle_stem_ok(word, lexicon.actions):
        return Token(word, PART, lemmatize_verb(word, lexicon.actions, lexicon.irregular_verbs))
    if word.endswith("ly") and len(word) >= 5:
        return Token(word, ADV)
    if word.endswith("s"):
        lemma = lemmatize_verb(word, lexicon.actions, lexicon.irregular_verbs)
        if lemma != word and lemma in lexicon.actions:
            return Token(word, VERB, lemma)  # third person: "returns" -> return
    return Token(word, NOUN)


def normalize_title(title: str, lexicon: Lexicon) -> list[Token]:
    """Strip markup, tokenize and tag a question title.

    Code-like tokens (containing ".", "()", "::" or camelCase) survive as
    single noun-role tokens; everything is lowercased in the output.
    """
    text = html.unescape(title)
    text = _MARKUP_RE.sub(" ", text)

    tokens: list[Token] = []
    for raw, boundary in _split_raw(text):
        if raw:
            if _is_code_like(raw):
                tokens.append(Token(raw.lower(), CODE))
            else:
                tokens.append(_tag_word(raw.lower(), lexicon))
        if boundary:
            tokens.append(Token("", BOUND))

    # "to" directly before a base-form verb marks an infinitive, not a PP.
    for i, tok in enumerate(tokens):
        if tok.tag == PREP and tok.text == "to":
            if i + 1 < len(tokens) and tokens[i + 1].tag == VERB:
                tokens[i] = Token(tok.text, PREP_INF)
    return tokens
