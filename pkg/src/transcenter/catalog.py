"""Catalog of translatable items extracted from source pages.

Items are the unit of work: one interface string with its occurrence
context, a category, and a view counter that feeds priority scoring.
Items arrive through catalog-exchange documents (JSON, one ``pages`` list
of segment records) rather than by scraping live markup.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from typing import TYPE_CHECKING, Any

from .errors import NotFoundError, ParseError, ValidationError
from .util import ts_from_str, ts_to_str, utc_now

if TYPE_CHECKING:
    from .center import TranslationCenter

CATEGORIES = ("menu_link", "informational_text", "button", "heading", "other")

HIGHLIGHT_OPEN = "[["
HIGHLIGHT_CLOSE = "]]"

FILTERS = ("untranslated", "translated", "all")
ORDERS = ("priority", "id")


@dataclass
class Item:
    """One translatable interface string."""

    id: str
    source_text: str
    source_lang: str
    page_id: str
    category: str
    context_before: str = ""
    context_after: str = ""
    view_count: int = 0
    created_at: datetime = field(default_factory=utc_now)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "source_text": self.source_text,
            "source_lang": self.source_lang,
            "page_id": self.page_id,
            "category": self.category,
            "context_before": self.context_before,
            "context_after": self.context_after,
            "view_count": self.view_count,
            "created_at": ts_to_str(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Item:
        return cls(
            id=data["id"],
            source_text=data["source_text"],
            source_lang=data["source_lang"],
            page_id=data["page_id"],
            category=data["category"],
            context_before=data["context_before"],
            context_after=data["context_after"],
            view_count=data["view_count"],
            created_at=ts_from_str(data["created_at"]),
        )


@dataclass
class SourcePage:
    """A page of the source site and the ordered segments it contributes."""

    page_id: str
    url_or_path: str
    title: str
    segment_ids: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "page_id": self.page_id,
            "url_or_path": self.url_or_path,
            "title": self.title,
            "segment_ids": list(self.segment_ids),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SourcePage:
        return cls(
            page_id=data["page_id"],
            url_or_path=data["url_or_path"],
            title=data["title"],
            segment_ids=list(data["segment_ids"]),
        )


@dataclass(frozen=True)
class ImportSummary:
    added: int
    updated: int


@dataclass(frozen=True)
class ListedItem:
    item: Item
    status: str  # "translated" | "untranslated"
    priority: float


def parse_exchange_document(text: str) -> dict[str, Any]:
    """Parse raw JSON text into a document, reporting the failing position."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
        ) from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be a JSON object")
    return doc


def _require_str(record: dict[str, Any], key: str, path: str, allow_empty: bool = False) -> str:
    if key not in record:
        raise ValidationError(f"{path}: missing required field '{key}'")
    value = record[key]
    if not isinstance(value, str):
        raise ValidationError(f"{path}.{key}: expected a string")
    if not allow_empty and not value.strip():
        raise ValidationError(f"{path}.{key}: must be non-empty")
    return value


def _validate_catalog_document(doc: dict[str, Any]) -> list[dict[str, Any]]:
    """Check the whole document up front so a failed import changes nothing."""
    if not isinstance(doc.get("pages"), list):
        raise ValidationError("document must have a top-level 'pages' list")
    seen_segments: set[str] = set()
    seen_pages: set[str] = set()
    pages: list[dict[str, Any]] = []
    for p_idx, page in enumerate(doc["pages"]):
        path = f"pages[{p_idx}]"
        if not isinstance(page, dict):
            raise ValidationError(f"{path}: expected an object")
        page_id = _require_str(page, "page_id", path)
        url = _require_str(page, "url", path)
        title = _require_str(page, "title", path, allow_empty=True)
        if page_id in seen_pages:
            raise ValidationError(f"{path}.page_id: duplicate page id '{page_id}'")
        seen_pages.add(page_id)
        if not isinstance(page.get("segments"), list):
            raise ValidationError(f"{path}.segments: expected a list")
        segments: list[dict[str, str]] = []
        for s_idx, seg in enumerate(page["segments"]):
            spath = f"{path}.segments[{s_idx}]"
            if not isinstance(seg, dict):
                raise ValidationError(f"{spath}: expected an object")
            seg_id = _require_str(seg, "id", spath)
            text = _require_str(seg, "text", spath)
            category = _require_str(seg, "category", spath)
            before = _require_str(seg, "context_before", spath, allow_empty=True)
            after = _require_str(seg, "context_after", spath, allow_empty=True)
            if category not in CATEGORIES:
                raise ValidationError(
                    f"{spath}.category: '{category}' is not one of: {', '.join(CATEGORIES)}"
                )
            if seg_id in seen_segments:
                raise ValidationError(f"{spath}.id: duplicate segment id '{seg_id}'")
            seen_segments.add(seg_id)
            segments.append(
                {
                    "id": seg_id,
                    "text": text,
                    "category": category,
                    "context_before": before,
                    "context_after": after,
                }
            )
        pages.append({"page_id": page_id, "url": url, "title": title, "segments": segments})
    return pages


class Catalog:
    """Item and page registry plus the listing and reading operations."""

    def __init__(self, center: TranslationCenter) -> None:
        self._center = center
        self.items: dict[str, Item] = {}
        self.pages: dict[str, SourcePage] = {}

    # -- lookups

    def get(self, item_id: str) -> Item:
        item = self.items.get(item_id)
        if item is None:
            raise NotFoundError(f"unknown item '{item_id}'")
        return item

    def get_page(self, page_id: str) -> SourcePage:
        page = self.pages.get(page_id)
        if page is None:
            raise NotFoundError(f"unknown page '{page_id}'")
        return page

    # -- import

    def import_document(self, doc: dict[str, Any]) -> ImportSummary:
        """Apply a catalog-exchange document atomically.

        A segment with a known id and identical text is a no-op; a known id
        with changed text supersedes the item and marks its translations
        stale. Validation runs before any state changes.
        """
        pages = _validate_catalog_document(doc)
        center = self._center
        with center.mutate():
            added = updated = 0
            for page in pages:
                self.pages[page["page_id"]] = SourcePage(
                    page_id=page["page_id"],
                    url_or_path=page["url"],
                    title=page["title"],
                    segment_ids=[seg["id"] for seg in page["segments"]],
                )
                for seg in page["segments"]:
                    existing = self.items.get(seg["id"])
                    if existing is None:
                        self.items[seg["id"]] = Item(
                            id=seg["id"],
                            source_text=seg["text"],
                            source_lang=center.config.source_lang,
                            page_id=page["page_id"],
                            category=seg["category"],
                            context_before=seg["context_before"],
                            context_after=seg["context_after"],
                        )
                        added += 1
                    elif existing.source_text == seg["text"]:
                        pass  # identical text: full no-op by contract
                    else:
                        existing.source_text = seg["text"]
                        existing.category = seg["category"]
                        existing.context_before = seg["context_before"]
                        existing.context_after = seg["context_after"]
                        existing.page_id = page["page_id"]
                        center.store.mark_stale(seg["id"])
                        updated += 1
            return ImportSummary(added, updated)

    # -- reading

    def list_items(self, lang: str, filter: str = "all", order: str = "priority") -> list[ListedItem]:
        """Work queue listing: items with status and priority, in the requested order."""
        center = self._center
        center.require_language(lang)
        if filter not in FILTERS:
            raise ValidationError(f"unknown filter '{filter}', expected one of: {', '.join(FILTERS)}")
        if order not in ORDERS:
            raise ValidationError(f"unknown order '{order}', expected one of: {', '.join(ORDERS)}")
        with center.locked():
            rows = []
            for item in self.items.values():
                status = "translated" if center.store.current(item.id, lang) else "untranslated"
                if filter != "all" and status != filter:
                    continue
                rows.append(ListedItem(item, status, center.workflow.compute_priority(item.id, lang)))
        if order == "priority":
            rows.sort(key=lambda row: (-row.priority, row.item.id))
        else:
            rows.sort(key=lambda row: row.item.id)
        return rows

    def record_view(self, item_id: str) -> int:
        """Bump the item's view counter by one; returns the new count."""
        with self._center.mutate():
            item = self.get(item_id)
            item.view_count += 1
            return item.view_count

    def context_snippet(self, item_id: str, lang: str) -> str:
        """The item in its stored context, highlighted, translated where possible."""
        center = self._center
        with center.locked():
            item = self.get(item_id)
            current = center.store.current(item.id, lang)
            display = current.text if current else item.source_text
            return f"{item.context_before}{HIGHLIGHT_OPEN}{display}{HIGHLIGHT_CLOSE}{item.context_after}"

    def page_preview(self, item_id: str, lang: str) -> str:
        """Assemble the originating page, rendering every translated segment in ``lang``."""
        center = self._center
        with center.locked():
            item = self.get(item_id)
            page = self.pages.get(item.page_id)
            segment_ids = list(page.segment_ids) if page else []
            if item_id not in segment_ids:
                segment_ids.append(item_id)  # keep the highlight even for orphaned segments
            parts = []
            for seg_id in segment_ids:
                seg = self.items.get(seg_id)
                if seg is None:
                    continue
                current = center.store.current(seg_id, lang)
                text = current.text if current else seg.source_text
                if seg_id == item_id:
                    text = f"{HIGHLIGHT_OPEN}{text}{HIGHLIGHT_CLOSE}"
                parts.append(text)
            return " ".join(parts)

    # -- persistence

    def dump_state(self) -> dict[str, Any]:
        return {
            "items": [item.to_dict() for item in sorted(self.items.values(), key=lambda i: i.id)],
            "pages": [page.to_dict() for page in sorted(self.pages.values(), key=lambda p: p.page_id)],
        }

    def load_state(self, data: dict[str, Any]) -> None:
        self.items = {raw["id"]: Item.from_dict(raw) for raw in data["items"]}
        self.pages = {raw["page_id"]: SourcePage.from_dict(raw) for raw in data["pages"]}
