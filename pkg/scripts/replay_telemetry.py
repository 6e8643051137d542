#!/usr/bin/env python3
"""Replay a scripted invocation log through real sessions and tally it.

Script format: TSV with header query/origin/cycles/helpful. Each row runs
begin -> cycles x next -> rate against the fixture corpus, appending to a
telemetry file, then the helpful/unhelpful table is printed alongside the
script's own ground truth.
"""

import argparse
from collections import Counter
from pathlib import Path

from snipassist.corpus import ingest_dump
from snipassist.search import retrieve_snippets
from snipassist.session import (
    TelemetryLog,
    apply_edit,
    begin_session,
    cycle_histogram,
    next_snippet,
    rate,
    tally_telemetry,
)

ROOT = Path(__file__).resolve().parent.parent


def read_script(path: Path):
    rows = []
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split("\t")
        assert header == ["query", "origin", "cycles", "helpful"], header
        for line in f:
            query, origin, cycles, helpful = line.rstrip("\n").split("\t")
            rows.append((query, origin, int(cycles), helpful == "true"))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--script", default=ROOT / "tests" / "fixtures" / "session_script.tsv")
    parser.add_argument("--dump", default=ROOT / "tests" / "fixtures" / "posts_20.xml")
    parser.add_argument("--telemetry", default=ROOT / "demo_run" / "telemetry.tsv")
    args = parser.parse_args()

    store, _ = ingest_dump(args.dump)
    rows = read_script(Path(args.script))
    telemetry_path = Path(args.telemetry)
    telemetry_path.parent.mkdir(parents=True, exist_ok=True)
    telemetry_path.unlink(missing_ok=True)
    telemetry = TelemetryLog(telemetry_path)

    retriever = lambda task: retrieve_snippets(store, task)
    for query, origin, cycles, helpful in rows:
        surface = f"?{query}?" if origin == "question-marks" else query
        document = surface + "\n"
        session, edit = begin_session(document, query, origin, (0, len(surface)),
                                      retriever=retriever)
        current = apply_edit(document, edit)
        for _ in range(cycles):
            current = apply_edit(current, next_snippet(session, current))
        rate(session, helpful, telemetry)

    truth = Counter("helpful" if h else "unhelpful" for _, _, _, h in rows)
    tally = tally_telemetry(telemetry_path)
    print(f"invocations: {len(rows)}")
    print(f"{'':12}{'telemetry':>10}{'script':>10}")
    for key in ("helpful", "unhelpful"):
        print(f"{key:<12}{tally[key]:>10}{truth[key]:>10}")
    assert tally == dict(truth), "telemetry tally does not match the script"

    print("\ninvocations by next-snippet calls (helpful/unhelpful):")
    for cycles, bucket in sorted(cycle_histogram(telemetry_path).items()):
        print(f"  {cycles:>2}: {bucket['helpful']:>3} / {bucket['unhelpful']:>3}")


if __name__ == "__main__":
    main()
