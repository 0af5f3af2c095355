"""Peer review scored against a fixed seven-category rubric.

Categories and ceilings: sentence structure 0-3, cognate handling 0-3,
word meanings 0-1, spellings 0-1, terminology consistency 0-1,
punctuation 0-1, overall message 0-3. A flawless translation totals 13.

Quality for a slot is the mean of review totals over the *current*
translation version, scaled to [0, 1]; an unreviewed slot sits at 0.5.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import TYPE_CHECKING, Any

from .errors import SelfReviewError, ValidationError
from .util import ts_from_str, ts_to_str, utc_now

if TYPE_CHECKING:
    from .center import TranslationCenter

_LIMITS = {
    "structure": 3,
    "cognates": 3,
    "meanings": 1,
    "spellings": 1,
    "consistency": 1,
    "punctuation": 1,
    "message": 3,
}

PERFECT_TOTAL = 13
UNREVIEWED_QUALITY = 0.5


@dataclass(frozen=True)
class RubricScores:
    """One filled-in rubric worksheet. Every field is clamped at construction."""

    structure: int
    cognates: int
    meanings: int
    spellings: int
    consistency: int
    punctuation: int
    message: int

    def __post_init__(self) -> None:
        for name, limit in _LIMITS.items():
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(f"rubric score '{name}' must be an integer")
            if not 0 <= value <= limit:
                raise ValidationError(f"rubric score '{name}' must be between 0 and {limit}")

    def total(self) -> int:
        return sum(getattr(self, name) for name in _LIMITS)

    def to_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in _LIMITS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RubricScores:
        if not isinstance(data, dict):
            raise ValidationError("rubric scores must be an object")
        unknown = set(data) - set(_LIMITS)
        if unknown:
            raise ValidationError(f"unknown rubric field '{sorted(unknown)[0]}'")
        missing = set(_LIMITS) - set(data)
        if missing:
            raise ValidationError(f"missing rubric field '{sorted(missing)[0]}'")
        return cls(**{name: data[name] for name in _LIMITS})


def rubric_total(scores: RubricScores) -> int:
    return scores.total()


def rubric_limits() -> dict[str, int]:
    return dict(_LIMITS)


@dataclass
class Review:
    review_id: str
    translation_id: str
    reviewer_id: str
    rubric: RubricScores
    body: str
    created_at: datetime

    def total(self) -> int:
        return self.rubric.total()

    def to_dict(self) -> dict[str, Any]:
        return {
            "review_id": self.review_id,
            "translation_id": self.translation_id,
            "reviewer_id": self.reviewer_id,
            "rubric": self.rubric.to_dict(),
            "body": self.body,
            "created_at": ts_to_str(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Review:
        return cls(
            review_id=data["review_id"],
            translation_id=data["translation_id"],
            reviewer_id=data["reviewer_id"],
            rubric=RubricScores.from_dict(data["rubric"]),
            body=data["body"],
            created_at=ts_from_str(data["created_at"]),
        )


class ReviewBoard:
    """Collects reviews per translation version and derives slot quality."""

    def __init__(self, center: TranslationCenter) -> None:
        self._center = center
        self._by_translation: dict[str, list[Review]] = {}
        self._by_id: dict[str, Review] = {}

    def submit(
        self,
        translation_id: str,
        reviewer_id: str,
        rubric: RubricScores,
        body: str = "",
    ) -> Review:
        """File a review; a reviewer re-reviewing the same version replaces their old one."""
        center = self._center
        with center.mutate():
            translation = center.store.get(translation_id)
            center.members.get(reviewer_id)
            if translation.author_id == reviewer_id:
                raise SelfReviewError("translators cannot review their own work")
            if not isinstance(body, str):
                raise ValidationError("review body must be a string")
            existing = self._by_translation.setdefault(translation_id, [])
            existing[:] = [r for r in existing if r.reviewer_id != reviewer_id]
            review = Review(
                review_id=center.new_id("r"),
                translation_id=translation_id,
                reviewer_id=reviewer_id,
                rubric=rubric,
                body=body,
                created_at=utc_now(),
            )
            existing.append(review)
            self._by_id[review.review_id] = review
            return review

    def reviews_for(self, translation_id: str) -> list[Review]:
        with self._center.locked():
            self._center.store.get(translation_id)
            return list(self._by_translation.get(translation_id, []))

    def quality(self, item_id: str, lang: str) -> float:
        """Mean review total over the current version, scaled to [0, 1].

        Reviews bind to a version, so submitting an edit resets quality to
        the unreviewed default until the new version is scored.
        """
        with self._center.locked():
            current = self._center.store.current(item_id, lang)
            if current is None:
                return UNREVIEWED_QUALITY
            reviews = self._by_translation.get(current.translation_id, [])
            if not reviews:
                return UNREVIEWED_QUALITY
            return sum(r.total() for r in reviews) / (PERFECT_TOTAL * len(reviews))

    def review_count(self, translation_id: str) -> int:
        return len(self._by_translation.get(translation_id, []))

    def all_reviews(self) -> list[Review]:
        return sorted(self._by_id.values(), key=lambda r: r.review_id)

    # -- persistence

    def dump_state(self) -> dict[str, Any]:
        return {
            "reviews": [
                r.to_dict() for r in sorted(self._by_id.values(), key=lambda r: r.review_id)
            ]
        }

    def load_state(self, data: dict[str, Any]) -> None:
        self._by_translation = {}
        self._by_id = {}
        for raw in data["reviews"]:
            review = Review.from_dict(raw)
            self._by_translation.setdefault(review.translation_id, []).append(review)
            self._by_id[review.review_id] = review
        for bucket in self._by_translation.values():
            bucket.sort(key=lambda r: r.review_id)


__all__ = [
    "PERFECT_TOTAL",
    "UNREVIEWED_QUALITY",
    "Review",
    "ReviewBoard",
    "RubricScores",
    "rubric_limits",
    "rubric_total",
]
