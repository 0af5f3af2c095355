from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transcenter import ConflictError, NotFoundError, ValidationError
from transcenter.store import percent_tenths
from transcenter.util import canonical_json_bytes

from helpers import add_member, doc, numbered_catalog, page, seg, small_catalog
from oracles import reference_percent_tenths


@pytest.fixture
def loaded(center):
    center.import_document(small_catalog())
    return center


@pytest.fixture
def ana(loaded):
    return add_member(loaded, "ana")


def test_first_submission_is_version_one(loaded, ana):
    record = loaded.store.submit("home.welcome", "es", "Bienvenido", ana.member_id)
    assert record.version == 1
    assert record.status == "current"
    assert loaded.store.current("home.welcome", "es") is record


def test_edit_supersedes(loaded, ana):
    first = loaded.store.submit("home.welcome", "es", "Bienvenido", ana.member_id)
    second = loaded.store.submit(
        "home.welcome", "es", "Bienvenida", ana.member_id, base_version=1
    )
    assert second.version == 2
    assert second.status == "current"
    assert loaded.store.get(first.translation_id).status == "superseded"
    assert loaded.store.current("home.welcome", "es").text == "Bienvenida"


def test_edit_without_base_version_conflicts(loaded, ana):
    loaded.store.submit("home.welcome", "es", "Bienvenido", ana.member_id)
    with pytest.raises(ConflictError) as exc_info:
        loaded.store.submit("home.welcome", "es", "Hola", ana.member_id)
    assert exc_info.value.current_version == 1
    assert exc_info.value.current_text == "Bienvenido"


def test_stale_base_version_conflicts_with_actual_current(loaded, ana):
    loaded.store.submit("home.welcome", "es", "v1", ana.member_id)
    loaded.store.submit("home.welcome", "es", "v2", ana.member_id, base_version=1)
    with pytest.raises(ConflictError) as exc_info:
        loaded.store.submit("home.welcome", "es", "v3", ana.member_id, base_version=1)
    assert exc_info.value.current_version == 2
    assert exc_info.value.current_text == "v2"
    # detail travels in the error payload for the API layer
    assert exc_info.value.detail["current_version"] == 2


def test_submit_validations(loaded, ana):
    with pytest.raises(ValidationError):
        loaded.store.submit("home.welcome", "es", "   ", ana.member_id)
    with pytest.raises(NotFoundError):
        loaded.store.submit("nope", "es", "x", ana.member_id)
    with pytest.raises(NotFoundError):
        loaded.store.submit("home.welcome", "xx", "x", ana.member_id)
    with pytest.raises(NotFoundError):
        loaded.store.submit("home.welcome", "es", "x", "m99999999")
    with pytest.raises(ValidationError):
        loaded.store.submit("home.welcome", "es", "x", ana.member_id, base_version=0)


def test_versions_stay_dense_through_stale(loaded, ana):
    loaded.store.submit("search.button", "es", "Buscar", ana.member_id)
    changed = small_catalog()
    changed["pages"][1]["segments"][0]["text"] = "Find"
    loaded.import_document(changed)
    assert loaded.store.current("search.button", "es") is None
    # translating the new text continues the version sequence
    record = loaded.store.submit("search.button", "es", "Encontrar", ana.member_id)
    assert record.version == 2
    versions = [t.version for t in loaded.store.history("search.button", "es")]
    assert versions == [1, 2]


def test_history_requires_known_item(loaded):
    with pytest.raises(NotFoundError):
        loaded.store.history("nope", "es")


def test_comments_thread_and_survive_edits(loaded, ana):
    first = loaded.store.add_comment("home.welcome", "es", ana.member_id, "thoughts?")
    reply = loaded.store.add_comment(
        "home.welcome", "es", ana.member_id, "agreed", parent_id=first.comment_id
    )
    assert reply.parent_id == first.comment_id
    loaded.store.submit("home.welcome", "es", "v1", ana.member_id)
    loaded.store.submit("home.welcome", "es", "v2", ana.member_id, base_version=1)
    assert len(loaded.store.comments("home.welcome", "es")) == 2


def test_comment_parent_must_share_thread(loaded, ana):
    other = loaded.store.add_comment("home.browse", "es", ana.member_id, "elsewhere")
    with pytest.raises(NotFoundError):
        loaded.store.add_comment(
            "home.welcome", "es", ana.member_id, "reply", parent_id=other.comment_id
        )
    # same item, different language is a different thread too
    with pytest.raises(NotFoundError):
        loaded.store.add_comment(
            "home.browse", "fr", ana.member_id, "reply", parent_id=other.comment_id
        )


def test_comment_validations(loaded, ana):
    with pytest.raises(ValidationError):
        loaded.store.add_comment("home.welcome", "es", ana.member_id, "  ")
    with pytest.raises(NotFoundError):
        loaded.store.add_comment("home.welcome", "es", ana.member_id, "x", parent_id="c999")


def test_comment_mirrors_to_language_forum(loaded, ana):
    loaded.store.add_comment("home.welcome", "es", ana.member_id, "first")
    loaded.store.add_comment("home.welcome", "es", ana.member_id, "second")
    threads = loaded.community.threads(kind="language", lang="es")
    assert len(threads) == 1
    assert threads[0].title == "Item home.welcome"
    assert [p.body for p in threads[0].posts] == ["first", "second"]


def test_comment_mirror_disabled(center):
    center.config.auto_forum_mirror = False
    center.import_document(small_catalog())
    ana = add_member(center, "ana")
    center.store.add_comment("home.welcome", "es", ana.member_id, "quiet")
    assert center.community.threads(kind="language") == []


def test_progress_counts_current_only(loaded, ana):
    assert loaded.store.progress("es").translated_count == 0
    loaded.store.submit("home.welcome", "es", "v1", ana.member_id)
    loaded.store.submit("home.browse", "es", "v1", ana.member_id)
    progress = loaded.store.progress("es")
    assert (progress.translated_count, progress.total_count) == (2, 3)
    assert progress.display == "66.7"
    assert progress.percent == 66.7


def test_progress_unregistered_language_reads_zero(loaded):
    progress = loaded.store.progress("xx")
    assert (progress.translated_count, progress.total_count) == (0, 0)
    assert progress.display == "0.0"


def test_progress_examples():
    assert percent_tenths(0, 10) == 0
    assert percent_tenths(3, 4) == 750
    assert percent_tenths(1, 3) == 333
    assert percent_tenths(2, 3) == 667
    assert percent_tenths(0, 0) == 0
    assert percent_tenths(1, 8) == 125  # exact .5 rounds up


@given(translated=st.integers(min_value=0, max_value=10_000), total=st.integers(min_value=0, max_value=10_000))
def test_percent_matches_decimal_oracle(translated, total):
    if translated > total:
        translated, total = total, translated
    assert percent_tenths(translated, total) == reference_percent_tenths(translated, total)


def test_export_lists_untranslated_as_null(loaded, ana):
    loaded.store.submit("home.browse", "es", "Explorar", ana.member_id)
    document = loaded.store.export_document("es")
    by_id = {entry["id"]: entry for entry in document["items"]}
    assert by_id["home.browse"] == {"id": "home.browse", "text": "Explorar", "version": 1}
    assert by_id["home.welcome"] == {"id": "home.welcome", "text": None, "version": None}
    assert [e["id"] for e in document["items"]] == sorted(by_id)


def test_export_empty_catalog(center):
    document = center.store.export_document("es")
    assert document["items"] == []
    assert document["generated_at"] == "1970-01-01T00:00:00+00:00"


def test_export_import_export_round_trip(loaded, ana):
    loaded.store.submit("home.welcome", "es", "v1", ana.member_id)
    loaded.store.submit("home.welcome", "es", "v2", ana.member_id, base_version=1)
    loaded.store.submit("search.button", "es", "Buscar", ana.member_id)
    first = canonical_json_bytes(loaded.store.export_document("es"))

    from conftest import make_config
    from transcenter import TranslationCenter

    fresh = TranslationCenter(make_config())
    fresh.import_document(small_catalog())
    summary = fresh.import_document(loaded.store.export_document("es"))
    assert (summary.added, summary.updated) == (2, 0)
    second = canonical_json_bytes(fresh.store.export_document("es"))
    assert first == second
    # synthesized history keeps versions dense and attribution explicit
    history = fresh.store.history("home.welcome", "es")
    assert [t.version for t in history] == [1, 2]
    assert {t.author_id for t in history} == {"[import]"}
    assert fresh.check_invariants() == []


def test_reimport_identical_translations_is_noop(loaded, ana):
    loaded.store.submit("home.welcome", "es", "v1", ana.member_id)
    exported = loaded.store.export_document("es")
    summary = loaded.import_document(exported)
    assert (summary.added, summary.updated) == (0, 0)
    assert loaded.store.current("home.welcome", "es").author_id == ana.member_id


def test_translation_import_updates_changed_text(loaded, ana):
    loaded.store.submit("home.welcome", "es", "old", ana.member_id)
    incoming = loaded.store.export_document("es")
    for entry in incoming["items"]:
        if entry["id"] == "home.welcome":
            entry["text"] = "new"
    summary = loaded.import_document(incoming)
    assert (summary.added, summary.updated) == (0, 1)
    current = loaded.store.current("home.welcome", "es")
    assert current.text == "new"
    assert current.version == 2


def test_translation_import_validations(loaded):
    with pytest.raises(ValidationError, match="lang"):
        loaded.import_document({"lang": "", "generated_at": "x", "items": []})
    with pytest.raises(ValidationError, match="generated_at"):
        loaded.import_document({"lang": "es", "items": []})
    base = {"lang": "es", "generated_at": "1970-01-01T00:00:00+00:00"}
    with pytest.raises(ValidationError, match="items"):
        loaded.import_document({**base, "items": "nope"})
    with pytest.raises(ValidationError, match="not in the catalog"):
        loaded.import_document({**base, "items": [{"id": "ghost", "text": "x", "version": 1}]})
    with pytest.raises(ValidationError, match="duplicate"):
        loaded.import_document(
            {
                **base,
                "items": [
                    {"id": "home.welcome", "text": "x", "version": 1},
                    {"id": "home.welcome", "text": "y", "version": 1},
                ],
            }
        )
    with pytest.raises(ValidationError, match="version"):
        loaded.import_document({**base, "items": [{"id": "home.welcome", "text": "x", "version": 0}]})


def test_exactly_one_current_under_contention(loaded, ana):
    import threading

    item, lang = "home.welcome", "es"
    loaded.store.submit(item, lang, "seed", ana.member_id)
    attempts = 100
    outcomes: list[str] = []
    outcomes_lock = threading.Lock()
    barrier = threading.Barrier(10)

    def contend(worker: int) -> None:
        barrier.wait()
        for i in range(attempts // 10):
            base = loaded.store.current(item, lang).version
            try:
                loaded.store.submit(item, lang, f"w{worker}.{i}", ana.member_id, base_version=base)
                result = "win"
            except ConflictError:
                result = "conflict"
            with outcomes_lock:
                outcomes.append(result)

    threads = [threading.Thread(target=contend, args=(n,)) for n in range(10)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    assert len(outcomes) == attempts
    wins = outcomes.count("win")
    history = loaded.store.history(item, lang)
    assert [t.version for t in history] == list(range(1, wins + 2))
    assert sum(1 for t in history if t.status == "current") == 1
    assert loaded.check_invariants() == []


def test_authored_items_sorted(loaded, ana):
    loaded.store.submit("search.button", "es", "Buscar", ana.member_id)
    loaded.store.submit("home.welcome", "fr", "Bienvenue", ana.member_id)
    assert loaded.store.authored_items(ana.member_id) == [
        ("home.welcome", "fr", 1),
        ("search.button", "es", 1),
    ]
    assert loaded.store.authored_count(ana.member_id) == 2
