from __future__ import annotations

import pytest

from transcenter import NotFoundError, ParseError, ValidationError
from transcenter.catalog import parse_exchange_document

from helpers import add_member, doc, page, seg, small_catalog


def test_import_counts_added(center):
    summary = center.import_document(small_catalog())
    assert (summary.added, summary.updated) == (3, 0)
    assert set(center.catalog.items) == {"home.welcome", "home.browse", "search.button"}
    assert center.catalog.pages["home"].segment_ids == ["home.welcome", "home.browse"]


def test_import_empty_document(center):
    summary = center.import_document({"pages": []})
    assert (summary.added, summary.updated) == (0, 0)
    assert center.catalog.items == {}


def test_reimport_identical_is_noop(center):
    center.import_document(small_catalog())
    summary = center.import_document(small_catalog())
    assert (summary.added, summary.updated) == (0, 0)


def test_reimport_changed_text_supersedes_and_marks_stale(center):
    center.import_document(small_catalog())
    author = add_member(center, "ana")
    record = center.store.submit("search.button", "es", "Buscar", author.member_id)
    changed = small_catalog()
    changed["pages"][1]["segments"][0]["text"] = "Search everywhere"
    summary = center.import_document(changed)
    assert (summary.added, summary.updated) == (0, 1)
    assert center.catalog.get("search.button").source_text == "Search everywhere"
    assert center.store.get(record.translation_id).status == "stale"
    assert center.store.current("search.button", "es") is None


def test_duplicate_segment_id_rejected(center):
    bad = doc(page("p1", seg("x.one", "One"), seg("x.one", "Uno")))
    with pytest.raises(ValidationError, match="duplicate segment id"):
        center.import_document(bad)
    assert center.catalog.items == {}


def test_empty_text_rejected(center):
    with pytest.raises(ValidationError, match="must be non-empty"):
        center.import_document(doc(page("p1", seg("x.one", "   "))))


def test_bad_category_rejected(center):
    with pytest.raises(ValidationError, match="category"):
        center.import_document(doc(page("p1", seg("x.one", "One", category="banner"))))


def test_failed_import_changes_nothing(center):
    center.import_document(small_catalog())
    bad = small_catalog()
    bad["pages"][0]["segments"][1]["category"] = "nope"
    with pytest.raises(ValidationError):
        center.import_document(bad)
    # the valid first page must not have been half-applied
    assert center.catalog.get("home.welcome").source_text == "Welcome to the library"
    assert len(center.catalog.items) == 3


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc_info:
        parse_exchange_document('{"pages": [\n  {"page_id": }\n]}')
    assert exc_info.value.line == 2
    assert exc_info.value.column is not None


def test_parse_rejects_non_object():
    with pytest.raises(ParseError):
        parse_exchange_document("[1, 2]")


def test_list_items_filters(center):
    center.import_document(small_catalog())
    author = add_member(center, "ana")
    center.store.submit("home.browse", "es", "Explorar", author.member_id)

    untranslated = center.catalog.list_items("es", "untranslated", "id")
    translated = center.catalog.list_items("es", "translated", "id")
    everything = center.catalog.list_items("es", "all", "id")

    assert [r.item.id for r in untranslated] == ["home.welcome", "search.button"]
    assert [r.item.id for r in translated] == ["home.browse"]
    assert [r.item.id for r in everything] == ["home.browse", "home.welcome", "search.button"]


def test_list_items_union_disjoint(center):
    center.import_document(small_catalog())
    author = add_member(center, "ana")
    center.store.submit("home.welcome", "es", "Bienvenido", author.member_id)

    untranslated = {r.item.id for r in center.catalog.list_items("es", "untranslated")}
    translated = {r.item.id for r in center.catalog.list_items("es", "translated")}
    everything = {r.item.id for r in center.catalog.list_items("es", "all")}
    assert untranslated | translated == everything
    assert untranslated & translated == set()


def test_list_items_priority_tie_break(center):
    center.import_document(doc(page("p1", seg("c", "C"), seg("a", "A"), seg("b", "B"))))
    rows = center.catalog.list_items("es", "all", "priority")
    assert [r.item.id for r in rows] == ["a", "b", "c"]
    assert len({r.priority for r in rows}) == 1


def test_list_items_rejects_unknown_language(center):
    center.import_document(small_catalog())
    with pytest.raises(NotFoundError):
        center.catalog.list_items("xx", "all", "id")


def test_list_items_rejects_bad_filter_and_order(center):
    center.import_document(small_catalog())
    with pytest.raises(ValidationError):
        center.catalog.list_items("es", "stale", "id")
    with pytest.raises(ValidationError):
        center.catalog.list_items("es", "all", "views")


def test_record_view_increments(center):
    center.import_document(small_catalog())
    assert center.catalog.record_view("home.welcome") == 1
    for _ in range(41):
        center.catalog.record_view("home.welcome")
    assert center.catalog.get("home.welcome").view_count == 42


def test_record_view_unknown_item(center):
    with pytest.raises(NotFoundError):
        center.catalog.record_view("nope")


def test_record_view_concurrent(center):
    import threading

    center.import_document(small_catalog())
    barrier = threading.Barrier(8)

    def hammer():
        barrier.wait()
        for _ in range(25):
            center.catalog.record_view("search.button")

    threads = [threading.Thread(target=hammer) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert center.catalog.get("search.button").view_count == 200


def test_context_snippet_untranslated(center):
    center.import_document(small_catalog())
    snippet = center.catalog.context_snippet("home.browse", "es")
    assert snippet == "Welcome to [[Browse Collections]] today"


def test_context_snippet_uses_current_translation(center):
    center.import_document(small_catalog())
    author = add_member(center, "ana")
    center.store.submit("home.browse", "es", "Explorar colecciones", author.member_id)
    snippet = center.catalog.context_snippet("home.browse", "es")
    assert snippet == "Welcome to [[Explorar colecciones]] today"


def test_context_snippet_empty_contexts(center):
    center.import_document(small_catalog())
    assert center.catalog.context_snippet("search.button", "es") == "[[Search]]"


def test_context_snippet_exactly_one_highlight(center):
    center.import_document(small_catalog())
    for item_id in center.catalog.items:
        snippet = center.catalog.context_snippet(item_id, "es")
        assert snippet.count("[[") == 1
        assert snippet.count("]]") == 1
        assert snippet.index("[[") < snippet.index("]]")


def test_page_preview_mixes_translated_segments(center):
    center.import_document(small_catalog())
    author = add_member(center, "ana")
    center.store.submit("home.welcome", "es", "Bienvenido a la biblioteca", author.member_id)
    preview = center.catalog.page_preview("home.browse", "es")
    assert preview == "Bienvenido a la biblioteca [[Browse Collections]]"
