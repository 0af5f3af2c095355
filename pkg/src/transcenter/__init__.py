"""A self-hostable community translation center.

Volunteers translate a catalog of interface strings; work is ordered by a
priority queue, translations are versioned with optimistic concurrency,
quality comes from rubric-based peer review, and a glossary, forums and
polls let the community settle disputes without a moderator layer.
"""

from .catalog import Catalog, Item, ListedItem, SourcePage
from .center import Session, TranslationCenter
from .community import ForumPost, ForumThread, GlossaryEntry, Member, Poll
from .config import Config, Language
from .errors import (
    AuthError,
    CenterError,
    ConflictError,
    DataDirLockedError,
    NotFoundError,
    ParseError,
    SelfReviewError,
    StartupError,
    StateError,
    ValidationError,
)
from .review import Review, RubricScores, rubric_total
from .store import Progress, Translation, TranslationComment
from .workflow import Binder, PriorityWeights, TranslationRequest

__version__ = "0.1.0"

__all__ = [
    "AuthError",
    "Binder",
    "Catalog",
    "CenterError",
    "Config",
    "ConflictError",
    "DataDirLockedError",
    "ForumPost",
    "ForumThread",
    "GlossaryEntry",
    "Item",
    "Language",
    "ListedItem",
    "Member",
    "NotFoundError",
    "ParseError",
    "Poll",
    "PriorityWeights",
    "Progress",
    "Review",
    "RubricScores",
    "SelfReviewError",
    "Session",
    "SourcePage",
    "StartupError",
    "StateError",
    "Translation",
    "TranslationCenter",
    "TranslationComment",
    "TranslationRequest",
    "ValidationError",
    "rubric_total",
]
