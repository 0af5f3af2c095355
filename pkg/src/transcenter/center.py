"""The translation center facade: one object owning every manager.

All mutation funnels through :meth:`TranslationCenter.mutate`, which holds
the process-wide lock and writes a snapshot on the way out, so anything a
caller observed as done is also on disk. Managers reach each other through
the center rather than directly; that keeps the dependency graph a star.
"""

from __future__ import annotations

import secrets
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timedelta
from threading import RLock
from typing import Any, Iterator

from .catalog import Catalog, ImportSummary
from .community import Community, Member, MemberRegistry
from .config import Config, Language
from .errors import AuthError, NotFoundError, ValidationError
from .persistence import SnapshotStore
from .review import ReviewBoard
from .store import TranslationStore
from .util import ts_to_str, utc_now
from .workflow import Workflow

SESSION_TTL = timedelta(days=7)

# Reserved author for records loaded from exchange documents. The brackets
# cannot appear in registered display names, so it can never be impersonated.
IMPORT_MEMBER_ID = "[import]"


@dataclass
class Session:
    token: str
    member_id: str
    expires_at: datetime

    def __repr__(self) -> str:  # keep tokens out of logs and tracebacks
        return f"Session(member_id={self.member_id!r}, expires_at={ts_to_str(self.expires_at)!r})"


class TranslationCenter:
    """Facade over catalog, translations, reviews, workflow and community."""

    def __init__(self, config: Config) -> None:
        config.validate()
        self.config = config
        self._lock = RLock()
        self._mutation_depth = 0
        self._counters: dict[str, int] = {}
        self._sessions: dict[str, Session] = {}
        self.catalog = Catalog(self)
        self.store = TranslationStore(self)
        self.reviews = ReviewBoard(self)
        self.workflow = Workflow(self)
        self.members = MemberRegistry(self)
        self.community = Community(self)
        self._snapshots: SnapshotStore | None = None
        if config.data_dir is not None:
            self._snapshots = SnapshotStore(config.data_dir)
            state = self._snapshots.load()
            if state is not None:
                self._load_state(state)
            else:
                self._snapshots.write(self.dump_state())

    # -- locking and persistence

    @contextmanager
    def locked(self) -> Iterator[None]:
        with self._lock:
            yield

    @contextmanager
    def mutate(self) -> Iterator[None]:
        """Run a mutation under the lock; persist once the outermost one succeeds."""
        with self._lock:
            self._mutation_depth += 1
            try:
                yield
            except BaseException:
                self._mutation_depth -= 1
                raise
            self._mutation_depth -= 1
            if self._mutation_depth == 0 and self._snapshots is not None:
                self._snapshots.write(self.dump_state())

    def new_id(self, prefix: str) -> str:
        with self._lock:
            count = self._counters.get(prefix, 0) + 1
            self._counters[prefix] = count
            return f"{prefix}{count:08d}"

    def close(self) -> None:
        with self._lock:
            if self._snapshots is not None:
                self._snapshots.write(self.dump_state())
                self._snapshots.release()
                self._snapshots = None

    def __enter__(self) -> TranslationCenter:
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    # -- languages

    def require_language(self, lang: str) -> Language:
        language = self.config.languages.get(lang)
        if language is None:
            raise NotFoundError(f"'{lang}' is not a configured language")
        return language

    def languages(self) -> list[Language]:
        return [self.config.languages[code] for code in sorted(self.config.languages)]

    # -- members and sessions

    def register_member(
        self, display_name: str, langs: list[str] | None = None
    ) -> tuple[Member, Session]:
        member = self.members.register(display_name, langs)
        return member, self.issue_session(member.member_id)

    def login(self, display_name: str) -> tuple[Member, Session]:
        """Name-only sign-in; accounts carry no secrets worth guarding."""
        with self._lock:
            member = self.members.find_by_name(display_name)
            if member is None or member.is_system:
                raise AuthError(f"no member named '{display_name}'")
            return member, self.issue_session(member.member_id)

    def issue_session(self, member_id: str, ttl: timedelta = SESSION_TTL) -> Session:
        with self._lock:
            self.members.get(member_id)
            session = Session(
                token=secrets.token_urlsafe(32),
                member_id=member_id,
                expires_at=utc_now() + ttl,
            )
            self._sessions[session.token] = session
            return session

    def resolve_session(self, token: str) -> Member:
        with self._lock:
            session = self._sessions.get(token)
            if session is not None and session.expires_at <= utc_now():
                del self._sessions[token]
                session = None
            if session is None:
                raise AuthError("unknown or expired session token")
            return self.members.get(session.member_id)

    def ensure_import_member(self) -> Member:
        return self.members.ensure_system_member(IMPORT_MEMBER_ID, IMPORT_MEMBER_ID)

    # -- exchange documents

    def import_document(self, doc: Any) -> ImportSummary:
        """Route a parsed exchange document to the catalog or translation loader."""
        if not isinstance(doc, dict):
            raise ValidationError("exchange document must be an object")
        if "pages" in doc:
            return self.catalog.import_document(doc)
        if "lang" in doc and "items" in doc:
            return self.store.import_document(doc)
        raise ValidationError("unrecognized exchange document: expected 'pages' or 'lang'+'items'")

    # -- health

    def check_invariants(self) -> list[str]:
        """Cross-check every structural rule; a healthy center returns []."""
        problems: list[str] = []
        with self._lock:
            items = self.catalog.items
            pages = self.catalog.pages
            member_ids = {m.member_id for m in self.members.all_members()}
            langs = set(self.config.languages)

            for page_id, page in pages.items():
                for sid in page.segment_ids:
                    if sid not in items:
                        problems.append(f"page {page_id} lists missing item {sid}")
            for item_id, item in items.items():
                if item.page_id is not None and item.page_id not in pages:
                    problems.append(f"item {item_id} points at missing page {item.page_id}")
                if item.view_count < 0:
                    problems.append(f"item {item_id} has negative view count")

            for (item_id, lang), slot in self.store.all_slots():
                if item_id not in items:
                    problems.append(f"translations exist for missing item {item_id}")
                if lang not in langs:
                    problems.append(f"translations exist for unconfigured language {lang}")
                versions = [t.version for t in slot]
                if versions != list(range(1, len(slot) + 1)):
                    problems.append(f"slot ({item_id}, {lang}) versions are not dense: {versions}")
                currents = [t for t in slot if t.status == "current"]
                if len(currents) > 1:
                    problems.append(f"slot ({item_id}, {lang}) has {len(currents)} current versions")
                for record in slot:
                    if record.author_id not in member_ids:
                        problems.append(
                            f"translation {record.translation_id} by unknown member {record.author_id}"
                        )
                    if record.status not in ("current", "superseded", "stale"):
                        problems.append(
                            f"translation {record.translation_id} has status {record.status!r}"
                        )

            for review in self.reviews.all_reviews():
                try:
                    translation = self.store.get(review.translation_id)
                except NotFoundError:
                    problems.append(f"review {review.review_id} targets a missing translation")
                    continue
                if review.reviewer_id not in member_ids:
                    problems.append(f"review {review.review_id} by unknown member")
                if review.reviewer_id == translation.author_id:
                    problems.append(f"review {review.review_id} is a self-review")

            for item_id, lang, author_id, parent_ok in self.store.comment_links():
                if item_id not in items:
                    problems.append(f"comment thread on missing item {item_id}")
                if lang not in langs:
                    problems.append(f"comment thread in unconfigured language {lang}")
                if author_id not in member_ids:
                    problems.append(f"comment by unknown member {author_id}")
                if not parent_ok:
                    problems.append(f"comment on ({item_id}, {lang}) has a dangling parent")

            for member_id, item_id, lang in self.workflow.watch_links():
                if member_id not in member_ids:
                    problems.append(f"watch held by unknown member {member_id}")
                if item_id not in items:
                    problems.append(f"watch on missing item {item_id}")
                if lang not in langs:
                    problems.append(f"watch in unconfigured language {lang}")

            for poll in self.community.polls():
                for voter, choice in poll.votes.items():
                    if voter not in member_ids:
                        problems.append(f"poll {poll.poll_id} has a vote by unknown member {voter}")
                    if not 0 <= choice < len(poll.options):
                        problems.append(f"poll {poll.poll_id} has an out-of-range vote {choice}")

            for thread in self.community.threads():
                for post in thread.posts:
                    if post.author_id not in member_ids:
                        problems.append(
                            f"thread {thread.thread_id} post by unknown member {post.author_id}"
                        )
        return problems

    # -- snapshots

    def dump_state(self) -> dict[str, Any]:
        with self._lock:
            return {
                "counters": dict(sorted(self._counters.items())),
                "catalog": self.catalog.dump_state(),
                "store": self.store.dump_state(),
                "reviews": self.reviews.dump_state(),
                "workflow": self.workflow.dump_state(),
                "members": self.members.dump_state(),
                "community": self.community.dump_state(),
            }

    def _load_state(self, state: dict[str, Any]) -> None:
        self._counters = dict(state["counters"])
        self.catalog.load_state(state["catalog"])
        self.store.load_state(state["store"])
        self.reviews.load_state(state["reviews"])
        self.workflow.load_state(state["workflow"])
        self.members.load_state(state["members"])
        self.community.load_state(state["community"])
