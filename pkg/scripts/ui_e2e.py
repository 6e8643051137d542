#!/usr/bin/env python3
"""Run the web UI's live end-to-end test against a real service instance.

Builds store and index from the fixture dump in a temp directory, starts
the HTTP service with a telemetry file, runs the frontend's live vitest
spec against it, then checks that exactly one helpful rating landed in the
telemetry file.
"""

import json
import os
import socket
import subprocess
import sys
import tempfile
import time
import urllib.request
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def wait_for_service(url: str, timeout: float = 20.0) -> None:
    deadline = time.time() + timeout
    while time.time() < deadline:
        try:
            with urllib.request.urlopen(f"{url}/v1/stats", timeout=2) as response:
                json.load(response)
                return
        except Exception:
            time.sleep(0.25)
    raise RuntimeError("service did not come up in time")


def main() -> int:
    from snipassist.completion import build_index, save_index
    from snipassist.corpus import ingest_dump, save_store
    from snipassist.lexicon import load_lexicon
    from snipassist.tasks import extract_corpus

    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        store, _ = ingest_dump(ROOT / "tests" / "fixtures" / "posts_20.xml")
        save_store(store, tmp_path / "store")
        index = build_index(extract_corpus(store, load_lexicon()))
        save_index(index, tmp_path / "tasks.index")
        telemetry = tmp_path / "telemetry.tsv"

        port = free_port()
        base_url = f"http://127.0.0.1:{port}"
        server = subprocess.Popen(
            [sys.executable, "-m", "snipassist.cli", "serve",
             "--store", str(tmp_path / "store"),
             "--index", str(tmp_path / "tasks.index"),
             "--port", str(port),
             "--telemetry", str(telemetry)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            wait_for_service(base_url)
            env = dict(os.environ, SNIPASSIST_SERVICE=base_url)
            result = subprocess.run(
                ["npm", "test", "--", "test/live.test.ts"],
                cwd=ROOT / "frontend",
                env=env,
            )
            if result.returncode != 0:
                print("live UI test failed", file=sys.stderr)
                return result.returncode
        finally:
            server.terminate()
            server.wait(timeout=10)

        lines = telemetry.read_text().splitlines() if telemetry.exists() else []
        if len(lines) != 1 or lines[0].split("\t")[3] != "true":
            print(f"unexpected telemetry contents: {lines}", file=sys.stderr)
            return 1
        print("live UI loop passed; telemetry recorded one helpful invocation")
        return 0


if __name__ == "__main__":
    sys.exit(main())
