"""Work routing: priority scores, translation requests, random picks, binders.

The queue score blends how often an item is seen, how often it has been
asked for, and how good its translation currently is. Untranslated items
get a flat boost instead of the quality term so they surface first by
default; all weights are operator-tunable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from datetime import datetime
from typing import TYPE_CHECKING, Any

from .errors import NotFoundError, ValidationError
from .util import ts_from_str, ts_to_str, utc_now

if TYPE_CHECKING:
    from .center import TranslationCenter

REQUEST_KINDS = ("item", "page")


@dataclass(frozen=True)
class PriorityWeights:
    """Knobs for the queue score. All must be finite and non-negative."""

    views: float = 1.0
    requests: float = 2.0
    quality: float = 1.0
    untranslated: float = 3.0

    def validate(self) -> None:
        for name in ("views", "requests", "quality", "untranslated"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"weight '{name}' must be a number")
            if not math.isfinite(value) or value < 0:
                raise ValidationError(f"weight '{name}' must be finite and non-negative")

    def to_dict(self) -> dict[str, float]:
        return {
            "views": self.views,
            "requests": self.requests,
            "quality": self.quality,
            "untranslated": self.untranslated,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PriorityWeights:
        if not isinstance(data, dict):
            raise ValidationError("weights must be an object")
        unknown = set(data) - {"views", "requests", "quality", "untranslated"}
        if unknown:
            raise ValidationError(f"unknown weight '{sorted(unknown)[0]}'")
        weights = cls(**data)
        weights.validate()
        return weights


@dataclass
class TranslationRequest:
    request_id: str
    requester_id: str
    kind: str
    target_id: str
    lang: str
    created_at: datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "request_id": self.request_id,
            "requester_id": self.requester_id,
            "kind": self.kind,
            "target_id": self.target_id,
            "lang": self.lang,
            "created_at": ts_to_str(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TranslationRequest:
        return cls(
            request_id=data["request_id"],
            requester_id=data["requester_id"],
            kind=data["kind"],
            target_id=data["target_id"],
            lang=data["lang"],
            created_at=ts_from_str(data["created_at"]),
        )


@dataclass(frozen=True)
class BinderEntry:
    """One row in a member's binder: something they asked for that now exists."""

    item_id: str
    lang: str
    text: str
    version: int


@dataclass(frozen=True)
class Binder:
    member_id: str
    authored: list[tuple[str, str, int]]
    delivered: list[BinderEntry]


class Workflow:
    """Owns requests, per-slot request tallies, watches, and the queue math."""

    def __init__(self, center: TranslationCenter) -> None:
        self._center = center
        self._requests: dict[tuple[str, str, str, str], TranslationRequest] = {}
        self._request_counts: dict[tuple[str, str], int] = {}
        # member -> (item, lang) -> notified yet?
        self._watches: dict[str, dict[tuple[str, str], bool]] = {}

    # -- priority

    def request_count(self, item_id: str, lang: str) -> int:
        return self._request_counts.get((item_id, lang), 0)

    def compute_priority(
        self, item_id: str, lang: str, weights: PriorityWeights | None = None
    ) -> float:
        """Queue score for one slot; higher means more urgent."""
        center = self._center
        item = center.catalog.get(item_id)
        center.require_language(lang)
        w = weights if weights is not None else center.config.weights
        base = w.views * math.log2(1 + item.view_count) + w.requests * self.request_count(
            item_id, lang
        )
        if center.store.current(item_id, lang) is None:
            return base + w.untranslated
        quality = center.reviews.quality(item_id, lang)
        return base + w.quality * (1.0 - quality)

    # -- requests

    def request_translation(
        self, requester_id: str, kind: str, target_id: str, lang: str
    ) -> dict[str, int]:
        """Ask for an item or a whole page; repeats by the same member are no-ops.

        Returns the post-request tally for every affected item, so callers
        can see what moved.
        """
        center = self._center
        with center.mutate():
            center.members.get(requester_id)
            center.require_language(lang)
            if kind not in REQUEST_KINDS:
                raise ValidationError(f"request kind must be one of {REQUEST_KINDS}")
            if kind == "item":
                center.catalog.get(target_id)
                item_ids = [target_id]
            else:
                page = center.catalog.get_page(target_id)
                item_ids = list(page.segment_ids)
            key = (requester_id, kind, target_id, lang)
            if key not in self._requests:
                self._requests[key] = TranslationRequest(
                    request_id=center.new_id("q"),
                    requester_id=requester_id,
                    kind=kind,
                    target_id=target_id,
                    lang=lang,
                    created_at=utc_now(),
                )
                for item_id in item_ids:
                    slot = (item_id, lang)
                    self._request_counts[slot] = self._request_counts.get(slot, 0) + 1
            watches = self._watches.setdefault(requester_id, {})
            for item_id in item_ids:
                watches.setdefault((item_id, lang), False)
            return {item_id: self.request_count(item_id, lang) for item_id in sorted(item_ids)}

    # -- random pick

    def next_random_item(self, lang: str, seed: int | None = None) -> str:
        """A random item needing work: untranslated ones first, else anything."""
        center = self._center
        with center.locked():
            center.require_language(lang)
            all_ids = sorted(center.catalog.items)
            if not all_ids:
                raise NotFoundError("the catalog is empty")
            pool = [i for i in all_ids if center.store.current(i, lang) is None]
            if not pool:
                pool = all_ids
            rng = random.Random(seed)
            return rng.choice(pool)

    # -- binder

    def binder_of(self, member_id: str) -> Binder:
        """What the member wrote plus fulfilled requests, each delivered once.

        Delivery is pull-based: a watch whose slot gained a current
        translation shows up the first time the binder is read, then stays
        quiet unless the slot changes hands again (we keep it marked).
        """
        center = self._center
        with center.mutate():
            center.members.get(member_id)
            authored = center.store.authored_items(member_id)
            delivered: list[BinderEntry] = []
            watches = self._watches.get(member_id, {})
            for (item_id, lang), notified in sorted(watches.items()):
                if notified:
                    continue
                current = center.store.current(item_id, lang)
                if current is None:
                    continue
                watches[(item_id, lang)] = True
                delivered.append(
                    BinderEntry(item_id=item_id, lang=lang, text=current.text, version=current.version)
                )
            return Binder(member_id=member_id, authored=authored, delivered=delivered)

    def watches_of(self, member_id: str) -> list[dict[str, Any]]:
        """The member's watch list with notification state, stable order."""
        with self._center.locked():
            self._center.members.get(member_id)
            return [
                {"item_id": item_id, "lang": lang, "notified": notified}
                for (item_id, lang), notified in sorted(
                    self._watches.get(member_id, {}).items()
                )
            ]

    def watch_links(self) -> list[tuple[str, str, str]]:
        """(member, item, lang) per watch; for integrity checks."""
        return sorted(
            (member_id, item_id, lang)
            for member_id, slots in self._watches.items()
            for (item_id, lang) in slots
        )

    # -- persistence

    def dump_state(self) -> dict[str, Any]:
        return {
            "requests": [
                r.to_dict() for r in sorted(self._requests.values(), key=lambda r: r.request_id)
            ],
            "request_counts": [
                [item_id, lang, count]
                for (item_id, lang), count in sorted(self._request_counts.items())
            ],
            "watches": [
                [member_id, item_id, lang, notified]
                for member_id, slots in sorted(self._watches.items())
                for (item_id, lang), notified in sorted(slots.items())
            ],
        }

    def load_state(self, data: dict[str, Any]) -> None:
        self._requests = {}
        self._request_counts = {}
        self._watches = {}
        for raw in data["requests"]:
            request = TranslationRequest.from_dict(raw)
            self._requests[(request.requester_id, request.kind, request.target_id, request.lang)] = (
                request
            )
        for item_id, lang, count in data["request_counts"]:
            self._request_counts[(item_id, lang)] = count
        for member_id, item_id, lang, notified in data["watches"]:
            self._watches.setdefault(member_id, {})[(item_id, lang)] = notified
