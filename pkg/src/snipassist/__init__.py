"""snipassist: natural-language tasks to ranked, insertable code snippets."""

from .completion import CompletionIndex, Suggestion, build_index, load_index, save_index, suggest
from .config import Config, load_config
from .corpus import (
    Answer,
    CodeSnippet,
    CorpusStore,
    IngestReport,
    Question,
    Thread,
    extract_code_blocks,
    ingest_dump,
    load_store,
    save_store,
)
from .lexicon import Lexicon, load_lexicon
from .search import SnippetResult, ThreadMatch, retrieve_snippets, search_threads
from .session import (
    AssistSession,
    DocumentEdit,
    TelemetryLog,
    apply_edit,
    begin_session,
    find_marker_query,
    next_snippet,
    rate,
    restore,
    tally_telemetry,
)
from .tagger import lemmatize_verb, normalize_title
from .tasks import TaskPhrase, extract_corpus, extract_tasks, read_tasks_tsv, write_tasks_tsv

__version__ = "0.1.0"
