"""End-to-end acceptance checks for the whole center.

Each test is one externally meaningful guarantee, self-timed against the
budget it must meet on modest hardware. The terminal summary hook in
conftest.py prints one [PASS]/[FAIL] line per test here.
"""

from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from transcenter import (
    ConflictError,
    RubricScores,
    TranslationCenter,
    ValidationError,
    rubric_total,
)
from transcenter.cli import main as cli_main
from transcenter.config import Config
from transcenter.service import create_app
from transcenter.util import canonical_json_bytes

from conftest import make_config
from helpers import add_member, doc, numbered_catalog, page, seg
from oracles import (
    RUBRIC_CAPS,
    reference_percent_tenths,
    reference_queue,
    replay_tally,
    rubric_for_total,
)

HERE = Path(__file__).parent


class Budget:
    """Wall-clock guard: the block must finish inside the stated seconds."""

    def __init__(self, seconds: float) -> None:
        self.seconds = seconds

    def __enter__(self) -> "Budget":
        self.started = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.elapsed = time.perf_counter() - self.started
        if exc_type is None:
            assert self.elapsed < self.seconds, (
                f"took {self.elapsed:.2f}s, budget is {self.seconds:.0f}s"
            )


def test_rubric_arithmetic():
    with Budget(1):
        names = [name for name, _ in RUBRIC_CAPS]
        ranges = [range(cap + 1) for _, cap in RUBRIC_CAPS]
        count = 0
        for vector in itertools.product(*ranges):
            scores = RubricScores(**dict(zip(names, vector)))
            brute_force = 0
            for value in vector:
                brute_force += value
            assert rubric_total(scores) == brute_force
            count += 1
        assert count == 1024
        assert rubric_total(RubricScores(3, 3, 1, 1, 1, 1, 3)) == 13
        for index, (name, cap) in enumerate(RUBRIC_CAPS):
            too_big = [0] * 7
            too_big[index] = cap + 1
            with pytest.raises(ValidationError):
                RubricScores(**dict(zip(names, too_big)))
            too_small = [0] * 7
            too_small[index] = -1
            with pytest.raises(ValidationError):
                RubricScores(**dict(zip(names, too_small)))


def test_recorded_worksheet_totals():
    with Budget(1):
        worksheets = json.loads((HERE / "data" / "rubric_worksheets.json").read_text("utf-8"))
        totals = []
        for sheet in worksheets["worksheets"]:
            fields = {k: v for k, v in sheet.items() if k != "expected_total"}
            totals.append(rubric_total(RubricScores(**fields)))
        assert totals == [1, 1, 8, 4, 2, 13, 3, 13, 1]
        assert totals == [sheet["expected_total"] for sheet in worksheets["worksheets"]]


def test_priority_queue_matches_oracle():
    with Budget(30):
        rng = random.Random(20260823)
        for trial in range(100):
            center = TranslationCenter(make_config())
            center.import_document(numbered_catalog(rng.randint(1, 100), per_page=7))
            translator = add_member(center, "translator")
            reviewer = add_member(center, "reviewer")
            requesters = [add_member(center, f"req{i:02d}") for i in range(10)]
            for item_id in sorted(center.catalog.items):
                center.catalog.items[item_id].view_count = rng.randint(0, 5000)
                for requester in requesters[: rng.randint(0, 10)]:
                    center.workflow.request_translation(
                        requester.member_id, "item", item_id, "es"
                    )
                if rng.random() < 0.5:
                    record = center.store.submit(
                        item_id, "es", f"es {item_id}", translator.member_id
                    )
                    if rng.random() < 0.7:
                        center.reviews.submit(
                            record.translation_id,
                            reviewer.member_id,
                            RubricScores(**rubric_for_total(rng.randint(0, 13))),
                        )
            rows = [
                (
                    item_id,
                    item.view_count,
                    center.workflow.request_count(item_id, "es"),
                    center.reviews.quality(item_id, "es")
                    if center.store.current(item_id, "es")
                    else None,
                )
                for item_id, item in center.catalog.items.items()
            ]
            expected = reference_queue(rows, center.config.weights)
            ranked = [row.item.id for row in center.catalog.list_items("es", "all", "priority")]
            assert ranked == expected, f"trial {trial} diverged"


def test_exactly_one_current_under_contention():
    import threading

    with Budget(10):
        center = TranslationCenter(make_config())
        center.import_document(doc(page("p", seg("only", "Only"))))
        writers = [add_member(center, f"w{i}") for i in range(10)]
        attempts_per_writer = 10
        outcomes: list[str] = []
        outcome_lock = threading.Lock()
        barrier = threading.Barrier(len(writers))

        def contend(member_id: str, worker: int) -> None:
            rng = random.Random(worker)
            barrier.wait()
            for attempt in range(attempts_per_writer):
                current = center.store.current("only", "es")
                base = current.version if current else None
                if rng.random() < 0.4 and base is not None:
                    base = rng.choice([None, max(1, base - 1)])  # deliberately stale
                try:
                    center.store.submit(
                        "only", "es", f"text {worker}-{attempt}", member_id, base_version=base
                    )
                    result = "ok"
                except ConflictError:
                    result = "conflict"
                with outcome_lock:
                    outcomes.append(result)

        threads = [
            threading.Thread(target=contend, args=(w.member_id, i))
            for i, w in enumerate(writers)
        ]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        assert len(outcomes) == 100
        history = center.store.history("only", "es")
        successes = outcomes.count("ok")
        assert successes + outcomes.count("conflict") == 100
        assert len(history) == successes
        assert [t.version for t in history] == list(range(1, successes + 1))
        assert sum(1 for t in history if t.status == "current") == 1
        assert history[-1].status == "current"
        assert center.check_invariants() == []


def test_progress_meter_rounding():
    with Budget(5):
        rng = random.Random(7)
        pairs = [(0, 0)] + [
            (n, rng.randint(0, n)) for n in (rng.randint(1, 120) for _ in range(49))
        ]
        for n_items, n_translated in pairs:
            center = TranslationCenter(make_config())
            center.import_document(numbered_catalog(n_items) if n_items else {"pages": []})
            ana = add_member(center, "ana")
            for item_id in sorted(center.catalog.items)[:n_translated]:
                center.store.submit(item_id, "es", "x", ana.member_id)
            progress = center.store.progress("es")
            tenths = reference_percent_tenths(n_translated, n_items)
            assert progress.translated_count == n_translated
            assert progress.total_count == n_items
            assert progress.percent == tenths / 10.0
            assert progress.display == f"{tenths // 10}.{tenths % 10}"


def test_export_import_round_trip():
    with Budget(5):
        rng = random.Random(99)
        catalog = numbered_catalog(200, per_page=20)
        source = TranslationCenter(make_config())
        source.import_document(catalog)
        ana = add_member(source, "ana")
        ben = add_member(source, "ben")
        for item_id in sorted(source.catalog.items):
            for lang in ("es", "fr"):
                if rng.random() < 0.6:
                    record = source.store.submit(
                        item_id, lang, f"{lang} {item_id}", ana.member_id
                    )
                    if rng.random() < 0.3:
                        source.store.submit(
                            item_id,
                            lang,
                            f"{lang} {item_id} v2",
                            ben.member_id,
                            base_version=record.version,
                        )
        first = {lang: source.store.export_document(lang) for lang in ("es", "fr")}

        target = TranslationCenter(make_config())
        target.import_document(catalog)
        for lang in ("es", "fr"):
            target.import_document(first[lang])
        second = {lang: target.store.export_document(lang) for lang in ("es", "fr")}

        for lang in ("es", "fr"):
            assert canonical_json_bytes(first[lang]) == canonical_json_bytes(second[lang]), (
                f"{lang} drifted"
            )
        assert target.check_invariants() == []


def test_poll_integrity():
    with Budget(10):
        center = TranslationCenter(make_config())
        members = [add_member(center, f"m{i:02d}") for i in range(20)]
        rng = random.Random(4242)
        for sequence in range(1000):
            n_options = rng.randint(2, 5)
            poll = center.community.create_poll(
                f"Question {sequence}?",
                [f"opt{i}" for i in range(n_options)],
                members[0].member_id,
            )
            ballots = [
                (rng.choice(members).member_id, rng.randrange(n_options))
                for _ in range(rng.randint(0, 30))
            ]
            for member_id, choice in ballots:
                center.community.vote(poll.poll_id, member_id, choice)
            tally = poll.tally()
            expected_tally, expected_voters = replay_tally(n_options, ballots)
            assert tally == expected_tally
            assert sum(tally) == expected_voters
            assert len(poll.votes) == expected_voters


def test_crash_consistency(tmp_path):
    with Budget(120):
        data_dir = str(tmp_path / "crash-data")
        script = str(HERE / "crash_session.py")
        rng = random.Random(1)
        member_count_floor = 0
        for session in range(50):
            fuel = rng.randint(2, 40)
            proc = subprocess.run(
                [sys.executable, script, data_dir, str(session), str(fuel)],
                capture_output=True,
                text=True,
                timeout=60,
            )
            assert proc.returncode in (17, 0), (
                f"session {session} failed unexpectedly:\n{proc.stderr}"
            )
            config = make_config(data_dir=data_dir)
            with TranslationCenter(config) as reopened:
                problems = reopened.check_invariants()
                assert problems == [], f"after session {session}: {problems}"
                members_now = len(reopened.members.all_members())
                assert members_now >= member_count_floor
                member_count_floor = members_now


def test_end_to_end_cli_and_api(tmp_path, capsys):
    with Budget(10):
        config_path = tmp_path / "center.json"
        config_path.write_text(
            json.dumps(
                {
                    "languages": [
                        {"code": "es", "name": "Spanish"},
                        {"code": "fr", "name": "French"},
                    ],
                    "data_dir": str(tmp_path / "data"),
                }
            ),
            encoding="utf-8",
        )
        assert cli_main(
            ["import", "--config", str(config_path), "--file", str(HERE / "data" / "catalog_small.json")]
        ) == 0
        assert capsys.readouterr().out == "3 added, 0 updated\n"

        center = TranslationCenter(Config.from_file(str(config_path)))
        try:
            client = TestClient(create_app(center))
            olga = client.post("/api/members", json={"display_name": "olga"}).json()["token"]
            marco = client.post("/api/members", json={"display_name": "marco"}).json()["token"]

            requested = client.post(
                "/api/requests",
                json={"lang": "es", "page_id": "home"},
                headers={"Authorization": f"Bearer {olga}"},
            )
            assert requested.status_code == 200

            last = None
            for item_id in ("home.welcome", "home.browse", "search.button"):
                last = client.post(
                    f"/api/items/{item_id}/translations",
                    json={"lang": "es", "text": f"es {item_id}"},
                    headers={"Authorization": f"Bearer {marco}"},
                )
                assert last.status_code == 200

            review = client.post(
                f"/api/translations/{last.json()['translation_id']}/reviews",
                json={
                    "rubric": {
                        "structure": 3,
                        "cognates": 3,
                        "meanings": 1,
                        "spellings": 1,
                        "consistency": 1,
                        "punctuation": 1,
                        "message": 3,
                    },
                    "body": "perfect",
                },
                headers={"Authorization": f"Bearer {olga}"},
            )
            assert review.status_code == 200
            assert review.json()["total"] == 13

            quality = client.get("/api/quality/search.button/es").json()
            assert quality["quality"] == 1.0

            headers = {"Authorization": f"Bearer {olga}"}
            first_visit = client.get("/api/binder", headers=headers).json()
            delivered = {n["item_id"] for n in first_visit["notifications"]}
            assert delivered == {"home.welcome", "home.browse"}
            second_visit = client.get("/api/binder", headers=headers).json()
            assert second_visit["notifications"] == []
        finally:
            center.close()

        assert cli_main(["stats", "--config", str(config_path), "--lang", "es"]) == 0
        assert capsys.readouterr().out == "es 3/3 100.0%\n"
