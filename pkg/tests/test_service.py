import pytest
from fastapi.testclient import TestClient

from snipassist.completion import build_index
from snipassist.config import Config
from snipassist.service import create_app
from snipassist.session import TelemetryLog
from snipassist.tasks import extract_corpus


@pytest.fixture()
def app_client(store20, lexicon, tmp_path):
    index = build_index(extract_corpus(store20, lexicon))
    telemetry = TelemetryLog(tmp_path / "telemetry.tsv")
    app = create_app(store20, index, Config(), telemetry)
    with TestClient(app) as client:
        yield client, telemetry


DOC = "class A {\n    ?add lines to text file?\n}\n"


def _marker_region(doc=DOC):
    start = doc.index("?add")
    return {"start": start, "length": len("?add lines to text file?")}


class TestReadEndpoints:
    def test_suggest(self, app_client):
        client, _ = app_client
        body = client.get("/v1/suggest", params={"q": "split string by", "limit": 3}).json()
        assert 1 <= len(body) <= 3
        for item in body:
            assert set(item) == {"text", "source_count", "match_kind"}
            assert item["text"].startswith("split string by")

    def test_suggest_empty_query_returns_top(self, app_client):
        client, _ = app_client
        body = client.get("/v1/suggest", params={"q": "", "limit": 5}).json()
        assert len(body) == 5

    def test_snippets_no_match_is_200_empty(self, app_client):
        client, _ = app_client
        response = client.get("/v1/snippets", params={"task": "unknownzzz"})
        assert response.status_code == 200
        assert response.json() == []

    def test_snippets_fields(self, app_client):
        client, _ = app_client
        body = client.get("/v1/snippets", params={"task": "parse json"}).json()
        assert len(body) == 12
        assert set(body[0]) == {"code", "source_url", "thread_rank", "answer_score", "position"}
        assert [item["position"] for item in body] == list(range(1, 13))

    def test_snippets_empty_task_rejected(self, app_client):
        client, _ = app_client
        assert client.get("/v1/snippets", params={"task": " "}).status_code == 400

    def test_stats(self, app_client):
        client, _ = app_client
        body = client.get("/v1/stats").json()
        assert body["question_count"] == 20
        assert body["answer_count"] == 34
        assert body["snippet_count"] == 42
        assert body["task_count"] > 0


class TestSessionEndpoints:
    def _create(self, client, document=DOC, **overrides):
        payload = {
            "query": "add lines to text file",
            "origin": "question-marks",
            "document": document,
            "region": _marker_region(document),
        }
        payload.update(overrides)
        return client.post("/v1/sessions", json=payload)

    def test_create_inserts_snippet(self, app_client):
        client, _ = app_client
        body = self._create(client).json()
        assert body["index"] == 0
        assert body["count"] > 0
        assert "// source: https://stackoverflow.com/a/" in body["document"]
        assert "?add lines to text file?" not in body["document"]

    def test_region_optional_for_marker_origin(self, app_client):
        client, _ = app_client
        response = self._create(client, region=None)
        assert response.status_code == 200
        assert "// source:" in response.json()["document"]

    def test_next_cycles_index_modulo(self, app_client):
        client, _ = app_client
        created = self._create(client).json()
        count = created["count"]
        indices = []
        for _ in range(2):
            body = client.post(f"/v1/sessions/{created['id']}/next").json()
            indices.append(body["index"])
        assert indices == [1 % count, 2 % count]

    def test_restore_returns_original(self, app_client):
        client, _ = app_client
        created = self._create(client).json()
        client.post(f"/v1/sessions/{created['id']}/next")
        body = client.post(f"/v1/sessions/{created['id']}/restore").json()
        assert body["document"] == DOC

    def test_rate_once(self, app_client):
        client, telemetry = app_client
        created = self._create(client).json()
        response = client.post(f"/v1/sessions/{created['id']}/rate", json={"helpful": True})
        assert response.status_code == 204
        assert telemetry.path.read_text().count("\n") == 1
        response = client.post(f"/v1/sessions/{created['id']}/rate", json={"helpful": False})
        assert response.status_code == 409

    def test_unknown_session_404(self, app_client):
        client, _ = app_client
        assert client.post("/v1/sessions/nope/next").status_code == 404

    def test_bad_origin_rejected(self, app_client):
        client, _ = app_client
        assert self._create(client, origin="telepathy").status_code == 400

    def test_snippetless_session(self, app_client):
        client, _ = app_client
        doc = "?frobnicate gizmo zzz?\n"
        response = client.post("/v1/sessions", json={
            "query": "frobnicate gizmo zzz",
            "origin": "question-marks",
            "document": doc,
            "region": {"start": 0, "length": len(doc) - 1},
        })
        body = response.json()
        assert body["count"] == 0
        assert body["document"] == doc


class TestExpiry:
    def test_zero_ttl_expires_immediately(self, store20, lexicon, tmp_path):
        index = build_index(extract_corpus(store20, lexicon))
        config = Config(session_ttl_seconds=-1)
        app = create_app(store20, index, config)
        with TestClient(app) as client:
            created = client.post("/v1/sessions", json={
                "query": "add lines to text file",
                "origin": "question-marks",
                "document": DOC,
                "region": _marker_region(),
            }).json()
            assert client.post(f"/v1/sessions/{created['id']}/next").status_code == 404


class TestReplayDeterminism:
    GETS = [
        ("/v1/suggest", {"q": "split", "limit": 5}),
        ("/v1/suggest", {"q": "add lines", "limit": 3}),
        ("/v1/snippets", {"task": "parse json"}),
        ("/v1/snippets", {"task": "sort list"}),
        ("/v1/stats", None),
    ]

    def _run(self, store, lexicon):
        # Replays reads plus a whole session flow; session ids are the only
        # non-deterministic output and get normalized away.
        index = build_index(extract_corpus(store, lexicon))
        app = create_app(store, index, Config())
        bodies = []
        with TestClient(app) as client:
            for path, params in self.GETS:
                bodies.append(client.get(path, params=params).json())
            created = client.post("/v1/sessions", json={
                "query": "add lines to text file",
                "origin": "question-marks",
                "document": DOC,
                "region": _marker_region(),
            }).json()
            session_id = created.pop("id")
            bodies.append(created)
            bodies.append(client.post(f"/v1/sessions/{session_id}/next").json())
            bodies.append(client.post(f"/v1/sessions/{session_id}/restore").json())
        return bodies

    def test_replay_yields_identical_bodies(self, store20, lexicon):
        assert self._run(store20, lexicon) == self._run(store20, lexicon)
