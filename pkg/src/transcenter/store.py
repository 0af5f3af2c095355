"""Versioned translations per (item, language), comment threads, progress and export.

Each (item, language) slot holds a dense version history 1..n with at most
one ``current`` version. Edits use optimistic concurrency: the writer names
the version it edited (``base_version``) and loses with a conflict error if
someone else got there first. A catalog re-import that changes an item's
source text marks its current translations ``stale``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import TYPE_CHECKING, Any

from .catalog import ImportSummary
from .errors import ConflictError, NotFoundError, ValidationError
from .util import EPOCH, ts_from_str, ts_to_str, utc_now

if TYPE_CHECKING:
    from .center import TranslationCenter

STATUS_CURRENT = "current"
STATUS_SUPERSEDED = "superseded"
STATUS_STALE = "stale"


@dataclass
class Translation:
    """One version of one item's translation into one language."""

    translation_id: str
    item_id: str
    lang: str
    text: str
    author_id: str
    version: int
    status: str
    created_at: datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "translation_id": self.translation_id,
            "item_id": self.item_id,
            "lang": self.lang,
            "text": self.text,
            "author_id": self.author_id,
            "version": self.version,
            "status": self.status,
            "created_at": ts_to_str(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Translation:
        return cls(
            translation_id=data["translation_id"],
            item_id=data["item_id"],
            lang=data["lang"],
            text=data["text"],
            author_id=data["author_id"],
            version=data["version"],
            status=data["status"],
            created_at=ts_from_str(data["created_at"]),
        )


@dataclass
class TranslationComment:
    """Public comment on an (item, language) thread; threads survive edits."""

    comment_id: str
    item_id: str
    lang: str
    author_id: str
    body: str
    created_at: datetime
    parent_id: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "comment_id": self.comment_id,
            "item_id": self.item_id,
            "lang": self.lang,
            "author_id": self.author_id,
            "body": self.body,
            "created_at": ts_to_str(self.created_at),
            "parent_id": self.parent_id,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TranslationComment:
        return cls(
            comment_id=data["comment_id"],
            item_id=data["item_id"],
            lang=data["lang"],
            author_id=data["author_id"],
            body=data["body"],
            created_at=ts_from_str(data["created_at"]),
            parent_id=data["parent_id"],
        )


@dataclass(frozen=True)
class Progress:
    lang: str
    translated_count: int
    total_count: int
    percent: float
    display: str


def percent_tenths(translated: int, total: int) -> int:
    """Tenths of a percent with exact round-half-up; pure integer arithmetic."""
    if total <= 0:
        return 0
    q, rem = divmod(1000 * translated, total)
    if 2 * rem >= total:
        q += 1
    return q


class TranslationStore:
    """Translations keyed by (item, language), with comments and exchange documents."""

    def __init__(self, center: TranslationCenter) -> None:
        self._center = center
        self._slots: dict[tuple[str, str], list[Translation]] = {}
        self._by_id: dict[str, Translation] = {}
        self._comments: dict[tuple[str, str], list[TranslationComment]] = {}
        self._comment_index: dict[str, TranslationComment] = {}

    # -- lookups

    @staticmethod
    def _slot_current(slot: list[Translation]) -> Translation | None:
        for record in slot:
            if record.status == STATUS_CURRENT:
                return record
        return None

    def current(self, item_id: str, lang: str) -> Translation | None:
        """The unique current translation, or None. Does not check item existence."""
        return self._slot_current(self._slots.get((item_id, lang), []))

    def current_translation(self, item_id: str, lang: str) -> Translation | None:
        """Like :meth:`current` but rejects unknown items."""
        with self._center.locked():
            self._center.catalog.get(item_id)
            return self.current(item_id, lang)

    def history(self, item_id: str, lang: str) -> list[Translation]:
        """All versions for the slot, ascending; unknown items are an error."""
        with self._center.locked():
            self._center.catalog.get(item_id)
            return sorted(self._slots.get((item_id, lang), []), key=lambda t: t.version)

    def get(self, translation_id: str) -> Translation:
        record = self._by_id.get(translation_id)
        if record is None:
            raise NotFoundError(f"unknown translation '{translation_id}'")
        return record

    # -- writing

    def submit(
        self,
        item_id: str,
        lang: str,
        text: str,
        author_id: str,
        base_version: int | None = None,
    ) -> Translation:
        """Create the first version or, with ``base_version``, an edit.

        Exactly one writer wins each version slot; everyone else gets a
        conflict error carrying the version that actually won.
        """
        center = self._center
        with center.mutate():
            center.catalog.get(item_id)
            center.require_language(lang)
            center.members.get(author_id)
            if not isinstance(text, str) or not text.strip():
                raise ValidationError("translation text must be non-empty")
            if base_version is not None and (not isinstance(base_version, int) or base_version < 1):
                raise ValidationError("base_version must be a positive integer")
            slot = self._slots.setdefault((item_id, lang), [])
            current = self._slot_current(slot)
            if current is not None:
                if base_version is None:
                    raise ConflictError(
                        "a current translation exists; pass base_version to edit it",
                        current_version=current.version,
                        current_text=current.text,
                    )
                if base_version != current.version:
                    raise ConflictError(
                        f"base_version {base_version} is stale, current version is {current.version}",
                        current_version=current.version,
                        current_text=current.text,
                    )
                current.status = STATUS_SUPERSEDED
            version = slot[-1].version + 1 if slot else 1
            record = Translation(
                translation_id=center.new_id("t"),
                item_id=item_id,
                lang=lang,
                text=text,
                author_id=author_id,
                version=version,
                status=STATUS_CURRENT,
                created_at=utc_now(),
            )
            slot.append(record)
            self._by_id[record.translation_id] = record
            return record

    def mark_stale(self, item_id: str) -> None:
        """Invalidate current translations after the source text changed (all languages)."""
        for (iid, _lang), slot in self._slots.items():
            if iid != item_id:
                continue
            current = self._slot_current(slot)
            if current is not None:
                current.status = STATUS_STALE

    # -- comments

    def add_comment(
        self,
        item_id: str,
        lang: str,
        author_id: str,
        body: str,
        parent_id: str | None = None,
    ) -> TranslationComment:
        center = self._center
        with center.mutate():
            center.catalog.get(item_id)
            center.require_language(lang)
            center.members.get(author_id)
            if not isinstance(body, str) or not body.strip():
                raise ValidationError("comment body must be non-empty")
            if parent_id is not None:
                parent = self._comment_index.get(parent_id)
                if parent is None or parent.item_id != item_id or parent.lang != lang:
                    raise NotFoundError(f"no comment '{parent_id}' in this thread")
            comment = TranslationComment(
                comment_id=center.new_id("c"),
                item_id=item_id,
                lang=lang,
                author_id=author_id,
                body=body,
                created_at=utc_now(),
                parent_id=parent_id,
            )
            self._comments.setdefault((item_id, lang), []).append(comment)
            self._comment_index[comment.comment_id] = comment
            if center.config.auto_forum_mirror:
                center.community.mirror_item_comment(item_id, lang, author_id, body)
            return comment

    def comments(self, item_id: str, lang: str) -> list[TranslationComment]:
        with self._center.locked():
            self._center.catalog.get(item_id)
            return list(self._comments.get((item_id, lang), []))

    # -- aggregate reads

    def progress(self, lang: str) -> Progress:
        """Per-language meter; an unregistered language reads as 0 of 0."""
        center = self._center
        with center.locked():
            if lang not in center.config.languages:
                return Progress(lang, 0, 0, 0.0, "0.0")
            total = len(center.catalog.items)
            translated = sum(1 for item_id in center.catalog.items if self.current(item_id, lang))
            tenths = percent_tenths(translated, total)
            return Progress(lang, translated, total, tenths / 10.0, f"{tenths // 10}.{tenths % 10}")

    def authored_items(self, member_id: str) -> list[tuple[str, str, int]]:
        """(item, lang, version) tuples the member wrote, any status, sorted."""
        with self._center.locked():
            return sorted(
                (t.item_id, t.lang, t.version)
                for t in self._by_id.values()
                if t.author_id == member_id
            )

    def authored_count(self, member_id: str) -> int:
        return len(self.authored_items(member_id))

    def all_slots(self) -> list[tuple[tuple[str, str], list[Translation]]]:
        """Every (item, lang) slot with its full history; for integrity checks."""
        return sorted((key, sorted(slot, key=lambda t: t.version)) for key, slot in self._slots.items())

    def comment_links(self) -> list[tuple[str, str, str, bool]]:
        """(item, lang, author, parent-resolves) per comment; for integrity checks."""
        out = []
        for comment in self._comment_index.values():
            parent_ok = True
            if comment.parent_id is not None:
                parent = self._comment_index.get(comment.parent_id)
                parent_ok = (
                    parent is not None
                    and parent.item_id == comment.item_id
                    and parent.lang == comment.lang
                )
            out.append((comment.item_id, comment.lang, comment.author_id, parent_ok))
        return out

    # -- exchange documents

    def export_document(self, lang: str) -> dict[str, Any]:
        """Translation-exchange document for one language, items sorted by id.

        ``generated_at`` is the newest current translation's timestamp, so
        identical content always exports to identical bytes.
        """
        center = self._center
        with center.locked():
            center.require_language(lang)
            entries: list[dict[str, Any]] = []
            newest: datetime | None = None
            for item_id in sorted(center.catalog.items):
                current = self.current(item_id, lang)
                if current is None:
                    entries.append({"id": item_id, "text": None, "version": None})
                else:
                    entries.append({"id": item_id, "text": current.text, "version": current.version})
                    if newest is None or current.created_at > newest:
                        newest = current.created_at
            return {
                "lang": lang,
                "generated_at": ts_to_str(newest if newest is not None else EPOCH),
                "items": entries,
            }

    def import_document(self, doc: dict[str, Any]) -> ImportSummary:
        """Load a translation-exchange document; the inverse of export.

        Because exchange documents carry no history, a fresh slot is filled
        with placeholder versions 1..v-1 (same text, superseded) so version
        density holds; records are attributed to the reserved import member
        and stamped with the document's ``generated_at``.
        """
        center = self._center
        with center.mutate():
            lang = doc.get("lang")
            if not isinstance(lang, str) or not lang:
                raise ValidationError("document must carry a 'lang' string")
            center.require_language(lang)
            generated_raw = doc.get("generated_at")
            if not isinstance(generated_raw, str):
                raise ValidationError("document must carry a 'generated_at' timestamp")
            try:
                stamp = ts_from_str(generated_raw)
            except ValueError as exc:
                raise ValidationError(f"generated_at is not an ISO-8601 timestamp: {exc}") from exc
            if not isinstance(doc.get("items"), list):
                raise ValidationError("document must carry an 'items' list")

            plan: list[tuple[str, str, int]] = []
            seen: set[str] = set()
            for idx, raw in enumerate(doc["items"]):
                path = f"items[{idx}]"
                if not isinstance(raw, dict):
                    raise ValidationError(f"{path}: expected an object")
                item_id = raw.get("id")
                if not isinstance(item_id, str) or not item_id:
                    raise ValidationError(f"{path}.id: must be a non-empty string")
                if item_id in seen:
                    raise ValidationError(f"{path}.id: duplicate item id '{item_id}'")
                seen.add(item_id)
                if item_id not in center.catalog.items:
                    raise ValidationError(f"{path}.id: item '{item_id}' is not in the catalog")
                text = raw.get("text")
                version = raw.get("version")
                if text is None and version is None:
                    continue  # untranslated entry
                if not isinstance(text, str) or not text.strip():
                    raise ValidationError(f"{path}.text: must be a non-empty string or null")
                if not isinstance(version, int) or isinstance(version, bool) or version < 1:
                    raise ValidationError(f"{path}.version: must be a positive integer or null")
                plan.append((item_id, text, version))

            author = center.ensure_import_member()
            added = updated = 0
            for item_id, text, version in plan:
                slot = self._slots.setdefault((item_id, lang), [])
                current = self._slot_current(slot)
                if current is not None:
                    if current.text == text:
                        continue
                    current.status = STATUS_SUPERSEDED
                    self._append_import_record(slot, item_id, lang, text, author.member_id, stamp)
                    updated += 1
                elif slot:
                    # stale or superseded history: continue the version sequence
                    self._append_import_record(slot, item_id, lang, text, author.member_id, stamp)
                    added += 1
                else:
                    for filler in range(1, version):
                        self._append_import_record(
                            slot, item_id, lang, text, author.member_id, stamp, status=STATUS_SUPERSEDED
                        )
                    self._append_import_record(slot, item_id, lang, text, author.member_id, stamp)
                    added += 1
            return ImportSummary(added, updated)

    def _append_import_record(
        self,
        slot: list[Translation],
        item_id: str,
        lang: str,
        text: str,
        author_id: str,
        stamp: datetime,
        status: str = STATUS_CURRENT,
    ) -> None:
        record = Translation(
            translation_id=self._center.new_id("t"),
            item_id=item_id,
            lang=lang,
            text=text,
            author_id=author_id,
            version=slot[-1].version + 1 if slot else 1,
            status=status,
            created_at=stamp,
        )
        slot.append(record)
        self._by_id[record.translation_id] = record

    # -- persistence

    def dump_state(self) -> dict[str, Any]:
        return {
            "translations": [
                t.to_dict()
                for t in sorted(self._by_id.values(), key=lambda t: (t.item_id, t.lang, t.version))
            ],
            "comments": [
                c.to_dict() for c in sorted(self._comment_index.values(), key=lambda c: c.comment_id)
            ],
        }

    def load_state(self, data: dict[str, Any]) -> None:
        self._slots = {}
        self._by_id = {}
        self._comments = {}
        self._comment_index = {}
        for raw in data["translations"]:
            record = Translation.from_dict(raw)
            self._slots.setdefault((record.item_id, record.lang), []).append(record)
            self._by_id[record.translation_id] = record
        for slot in self._slots.values():
            slot.sort(key=lambda t: t.version)
        for raw in data["comments"]:
            comment = TranslationComment.from_dict(raw)
            self._comments.setdefault((comment.item_id, comment.lang), []).append(comment)
            self._comment_index[comment.comment_id] = comment
        for thread in self._comments.values():
            thread.sort(key=lambda c: c.comment_id)
