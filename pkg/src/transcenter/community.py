"""Members and the social layer: glossary, forums, polls, translator directory.

The glossary keeps competing variants side by side instead of forcing a
winner; disputes can be attached to a poll. Forums come in four rooms
(general, help, suggestion, per-language) and item comment threads are
mirrored into the matching language room so discussion is findable both
ways.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime
from typing import TYPE_CHECKING, Any

from .errors import ConflictError, NotFoundError, StateError, ValidationError
from .util import ts_from_str, ts_to_str, utc_now

if TYPE_CHECKING:
    from .center import TranslationCenter

FORUM_KINDS = ("general", "help", "suggestion", "language")

_NAME_RE = re.compile(r"^[\w .\-]+$")


@dataclass
class Member:
    member_id: str
    display_name: str
    langs: list[str]
    joined_at: datetime
    contact_opt_in: bool = False
    contact_info: str = ""
    is_system: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "member_id": self.member_id,
            "display_name": self.display_name,
            "langs": list(self.langs),
            "joined_at": ts_to_str(self.joined_at),
            "contact_opt_in": self.contact_opt_in,
            "contact_info": self.contact_info,
            "is_system": self.is_system,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Member:
        return cls(
            member_id=data["member_id"],
            display_name=data["display_name"],
            langs=list(data["langs"]),
            joined_at=ts_from_str(data["joined_at"]),
            contact_opt_in=data["contact_opt_in"],
            contact_info=data["contact_info"],
            is_system=data["is_system"],
        )


class MemberRegistry:
    def __init__(self, center: TranslationCenter) -> None:
        self._center = center
        self._members: dict[str, Member] = {}
        self._by_name: dict[str, str] = {}

    def register(self, display_name: str, langs: list[str] | None = None) -> Member:
        center = self._center
        with center.mutate():
            if not isinstance(display_name, str):
                raise ValidationError("display name must be a string")
            name = display_name.strip()
            if not name or not _NAME_RE.match(name):
                raise ValidationError(
                    "display name may use letters, digits, spaces, dots, hyphens and underscores"
                )
            if name.casefold() in self._by_name:
                raise ConflictError(f"display name '{name}' is taken")
            for lang in langs or []:
                center.require_language(lang)
            member = Member(
                member_id=center.new_id("m"),
                display_name=name,
                langs=sorted(set(langs or [])),
                joined_at=utc_now(),
            )
            self._members[member.member_id] = member
            self._by_name[name.casefold()] = member.member_id
            return member

    def ensure_system_member(self, member_id: str, display_name: str) -> Member:
        """Reserved accounts skip name validation so their names stay unregisterable."""
        existing = self._members.get(member_id)
        if existing is not None:
            return existing
        member = Member(
            member_id=member_id,
            display_name=display_name,
            langs=[],
            joined_at=utc_now(),
            is_system=True,
        )
        self._members[member_id] = member
        self._by_name[display_name.casefold()] = member_id
        return member

    def get(self, member_id: str) -> Member:
        member = self._members.get(member_id)
        if member is None:
            raise NotFoundError(f"unknown member '{member_id}'")
        return member

    def find_by_name(self, display_name: str) -> Member | None:
        member_id = self._by_name.get(display_name.strip().casefold())
        return self._members.get(member_id) if member_id is not None else None

    def update(
        self,
        member_id: str,
        langs: list[str] | None = None,
        contact_opt_in: bool | None = None,
        contact_info: str | None = None,
    ) -> Member:
        center = self._center
        with center.mutate():
            member = self.get(member_id)
            if langs is not None:
                for lang in langs:
                    center.require_language(lang)
                member.langs = sorted(set(langs))
            if contact_opt_in is not None:
                if not isinstance(contact_opt_in, bool):
                    raise ValidationError("contact_opt_in must be a boolean")
                member.contact_opt_in = contact_opt_in
            if contact_info is not None:
                if not isinstance(contact_info, str):
                    raise ValidationError("contact_info must be a string")
                member.contact_info = contact_info
            return member

    def all_members(self) -> list[Member]:
        return sorted(self._members.values(), key=lambda m: m.member_id)

    def dump_state(self) -> dict[str, Any]:
        return {"members": [m.to_dict() for m in self.all_members()]}

    def load_state(self, data: dict[str, Any]) -> None:
        self._members = {}
        self._by_name = {}
        for raw in data["members"]:
            member = Member.from_dict(raw)
            self._members[member.member_id] = member
            self._by_name[member.display_name.casefold()] = member.member_id


@dataclass
class GlossaryVariant:
    """One proposed rendering of a term; region_note captures dialect splits."""

    text: str
    author_id: str
    created_at: datetime
    region_note: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "text": self.text,
            "author_id": self.author_id,
            "created_at": ts_to_str(self.created_at),
            "region_note": self.region_note,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GlossaryVariant:
        return cls(
            data["text"], data["author_id"], ts_from_str(data["created_at"]), data["region_note"]
        )


@dataclass
class GlossaryComment:
    comment_id: str
    author_id: str
    body: str
    created_at: datetime
    parent_id: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "comment_id": self.comment_id,
            "author_id": self.author_id,
            "body": self.body,
            "created_at": ts_to_str(self.created_at),
            "parent_id": self.parent_id,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GlossaryComment:
        return cls(
            data["comment_id"],
            data["author_id"],
            data["body"],
            ts_from_str(data["created_at"]),
            data["parent_id"],
        )


@dataclass
class GlossaryEntry:
    """A source term, its definition, and every proposed rendering per language."""

    term: str
    definition: str
    variants: dict[str, list[GlossaryVariant]] = field(default_factory=dict)
    comments: list[GlossaryComment] = field(default_factory=list)
    poll_id: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "term": self.term,
            "definition": self.definition,
            "variants": {
                lang: [v.to_dict() for v in variants]
                for lang, variants in sorted(self.variants.items())
            },
            "comments": [c.to_dict() for c in self.comments],
            "poll_id": self.poll_id,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GlossaryEntry:
        return cls(
            term=data["term"],
            definition=data["definition"],
            variants={
                lang: [GlossaryVariant.from_dict(v) for v in variants]
                for lang, variants in data["variants"].items()
            },
            comments=[GlossaryComment.from_dict(c) for c in data["comments"]],
            poll_id=data["poll_id"],
        )


@dataclass
class ForumPost:
    post_id: str
    author_id: str
    body: str
    created_at: datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "post_id": self.post_id,
            "author_id": self.author_id,
            "body": self.body,
            "created_at": ts_to_str(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ForumPost:
        return cls(data["post_id"], data["author_id"], data["body"], ts_from_str(data["created_at"]))


@dataclass
class ForumThread:
    thread_id: str
    kind: str
    lang: str | None
    title: str
    created_at: datetime
    posts: list[ForumPost] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "thread_id": self.thread_id,
            "kind": self.kind,
            "lang": self.lang,
            "title": self.title,
            "created_at": ts_to_str(self.created_at),
            "posts": [p.to_dict() for p in self.posts],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ForumThread:
        return cls(
            thread_id=data["thread_id"],
            kind=data["kind"],
            lang=data["lang"],
            title=data["title"],
            created_at=ts_from_str(data["created_at"]),
            posts=[ForumPost.from_dict(p) for p in data["posts"]],
        )


@dataclass
class Poll:
    poll_id: str
    question: str
    options: list[str]
    creator_id: str
    scope: str
    created_at: datetime
    closed: bool = False
    votes: dict[str, int] = field(default_factory=dict)

    def tally(self) -> list[int]:
        counts = [0] * len(self.options)
        for choice in self.votes.values():
            counts[choice] += 1
        return counts

    def to_dict(self) -> dict[str, Any]:
        return {
            "poll_id": self.poll_id,
            "question": self.question,
            "options": list(self.options),
            "creator_id": self.creator_id,
            "scope": self.scope,
            "created_at": ts_to_str(self.created_at),
            "closed": self.closed,
            "votes": dict(sorted(self.votes.items())),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Poll:
        return cls(
            poll_id=data["poll_id"],
            question=data["question"],
            options=list(data["options"]),
            creator_id=data["creator_id"],
            scope=data["scope"],
            created_at=ts_from_str(data["created_at"]),
            closed=data["closed"],
            votes=dict(data["votes"]),
        )


class Community:
    """Glossary, forums and polls; member records live in :class:`MemberRegistry`."""

    def __init__(self, center: TranslationCenter) -> None:
        self._center = center
        self._glossary: dict[str, GlossaryEntry] = {}
        self._threads: dict[str, ForumThread] = {}
        self._polls: dict[str, Poll] = {}
        # (lang, item_id) -> thread_id for mirrored item discussions
        self._mirror_threads: dict[tuple[str, str], str] = {}

    # -- glossary

    def add_glossary_entry(
        self,
        term: str,
        definition: str,
        author_id: str,
        lang: str | None = None,
        variant: str | None = None,
        region_note: str | None = None,
    ) -> GlossaryEntry:
        """Create or extend an entry; terms are case-insensitive, variants append-only."""
        center = self._center
        with center.mutate():
            center.members.get(author_id)
            if not isinstance(term, str) or not term.strip():
                raise ValidationError("glossary term must be non-empty")
            term = term.strip()
            key = term.casefold()
            entry = self._glossary.get(key)
            if entry is None:
                entry = GlossaryEntry(term=term, definition="")
                self._glossary[key] = entry
            if isinstance(definition, str) and definition.strip():
                entry.definition = definition.strip()
            if variant is not None:
                if lang is None:
                    raise ValidationError("a variant needs a language")
                center.require_language(lang)
                if not isinstance(variant, str) or not variant.strip():
                    raise ValidationError("glossary variant must be non-empty")
                variants = entry.variants.setdefault(lang, [])
                if not any(v.text == variant.strip() and v.region_note == region_note for v in variants):
                    variants.append(
                        GlossaryVariant(
                            text=variant.strip(),
                            author_id=author_id,
                            created_at=utc_now(),
                            region_note=region_note,
                        )
                    )
            return entry

    def glossary_entry(self, term: str) -> GlossaryEntry:
        entry = self._glossary.get(term.strip().casefold())
        if entry is None:
            raise NotFoundError(f"no glossary entry for '{term}'")
        return entry

    def glossary_entries(self) -> list[GlossaryEntry]:
        return sorted(self._glossary.values(), key=lambda e: e.term.casefold())

    def add_glossary_comment(
        self, term: str, author_id: str, body: str, parent_id: str | None = None
    ) -> GlossaryComment:
        center = self._center
        with center.mutate():
            center.members.get(author_id)
            entry = self.glossary_entry(term)
            if not isinstance(body, str) or not body.strip():
                raise ValidationError("comment body must be non-empty")
            if parent_id is not None and not any(c.comment_id == parent_id for c in entry.comments):
                raise NotFoundError(f"no comment '{parent_id}' on this entry")
            comment = GlossaryComment(
                comment_id=center.new_id("gc"),
                author_id=author_id,
                body=body,
                created_at=utc_now(),
                parent_id=parent_id,
            )
            entry.comments.append(comment)
            return comment

    def attach_glossary_poll(self, term: str, poll_id: str) -> GlossaryEntry:
        center = self._center
        with center.mutate():
            entry = self.glossary_entry(term)
            self.get_poll(poll_id)
            entry.poll_id = poll_id
            return entry

    # -- forums

    def create_thread(
        self, kind: str, title: str, author_id: str, body: str, lang: str | None = None
    ) -> ForumThread:
        center = self._center
        with center.mutate():
            center.members.get(author_id)
            if kind not in FORUM_KINDS:
                raise ValidationError(f"forum kind must be one of {FORUM_KINDS}")
            if kind == "language":
                if lang is None:
                    raise ValidationError("language threads need a language")
                center.require_language(lang)
            elif lang is not None:
                raise ValidationError(f"'{kind}' threads do not take a language")
            if not isinstance(title, str) or not title.strip():
                raise ValidationError("thread title must be non-empty")
            thread = ForumThread(
                thread_id=center.new_id("f"),
                kind=kind,
                lang=lang,
                title=title.strip(),
                created_at=utc_now(),
            )
            self._threads[thread.thread_id] = thread
            self._append_post(thread, author_id, body)
            return thread

    def get_thread(self, thread_id: str) -> ForumThread:
        thread = self._threads.get(thread_id)
        if thread is None:
            raise NotFoundError(f"unknown thread '{thread_id}'")
        return thread

    def threads(self, kind: str | None = None, lang: str | None = None) -> list[ForumThread]:
        with self._center.locked():
            if kind is not None and kind not in FORUM_KINDS:
                raise ValidationError(f"forum kind must be one of {FORUM_KINDS}")
            out = [
                t
                for t in self._threads.values()
                if (kind is None or t.kind == kind) and (lang is None or t.lang == lang)
            ]
            return sorted(out, key=lambda t: t.thread_id)

    def add_post(self, thread_id: str, author_id: str, body: str) -> ForumPost:
        center = self._center
        with center.mutate():
            center.members.get(author_id)
            thread = self.get_thread(thread_id)
            return self._append_post(thread, author_id, body)

    def _append_post(self, thread: ForumThread, author_id: str, body: str) -> ForumPost:
        if not isinstance(body, str) or not body.strip():
            raise ValidationError("post body must be non-empty")
        stamp = utc_now()
        if thread.posts and thread.posts[-1].created_at > stamp:
            stamp = thread.posts[-1].created_at  # keep (created_at, post_id) strictly increasing
        post = ForumPost(
            post_id=f"p{len(thread.posts) + 1:08d}",
            author_id=author_id,
            body=body,
            created_at=stamp,
        )
        thread.posts.append(post)
        return post

    def mirror_item_comment(self, item_id: str, lang: str, author_id: str, body: str) -> ForumThread:
        """Echo an item comment into the language room, one thread per (lang, item)."""
        thread_id = self._mirror_threads.get((lang, item_id))
        if thread_id is None:
            thread = ForumThread(
                thread_id=self._center.new_id("f"),
                kind="language",
                lang=lang,
                title=f"Item {item_id}",
                created_at=utc_now(),
            )
            self._threads[thread.thread_id] = thread
            self._mirror_threads[(lang, item_id)] = thread.thread_id
        else:
            thread = self._threads[thread_id]
        self._append_post(thread, author_id, body)
        return thread

    # -- polls

    def create_poll(
        self, question: str, options: list[str], creator_id: str, scope: str = "global"
    ) -> Poll:
        center = self._center
        with center.mutate():
            center.members.get(creator_id)
            if not isinstance(question, str) or not question.strip():
                raise ValidationError("poll question must be non-empty")
            if not isinstance(options, list) or len(options) < 2:
                raise ValidationError("polls need at least two options")
            cleaned = []
            for option in options:
                if not isinstance(option, str) or not option.strip():
                    raise ValidationError("poll options must be non-empty strings")
                cleaned.append(option.strip())
            if len(set(cleaned)) != len(cleaned):
                raise ValidationError("poll options must be distinct")
            if scope != "global":
                center.require_language(scope)
            poll = Poll(
                poll_id=center.new_id("v"),
                question=question.strip(),
                options=cleaned,
                creator_id=creator_id,
                scope=scope,
                created_at=utc_now(),
            )
            self._polls[poll.poll_id] = poll
            return poll

    def get_poll(self, poll_id: str) -> Poll:
        poll = self._polls.get(poll_id)
        if poll is None:
            raise NotFoundError(f"unknown poll '{poll_id}'")
        return poll

    def polls(self) -> list[Poll]:
        return sorted(self._polls.values(), key=lambda p: p.poll_id)

    def vote(self, poll_id: str, member_id: str, option_index: int) -> Poll:
        """Cast or change a vote; one ballot per member, rejected once closed."""
        center = self._center
        with center.mutate():
            center.members.get(member_id)
            poll = self.get_poll(poll_id)
            if poll.closed:
                raise StateError("the poll is closed")
            if (
                not isinstance(option_index, int)
                or isinstance(option_index, bool)
                or not 0 <= option_index < len(poll.options)
            ):
                raise ValidationError(f"option index must be in [0, {len(poll.options) - 1}]")
            poll.votes[member_id] = option_index
            return poll

    def close_poll(self, poll_id: str) -> Poll:
        """Administrative action; idempotent. Authorization happens at the API layer."""
        with self._center.mutate():
            poll = self.get_poll(poll_id)
            poll.closed = True
            return poll

    # -- directory

    def directory_list(self) -> list[dict[str, Any]]:
        """Opted-in members only; nothing about anyone else ever leaves this call."""
        center = self._center
        with center.locked():
            rows = []
            for member in center.members.all_members():
                if not member.contact_opt_in or member.is_system:
                    continue
                rows.append(
                    {
                        "member_id": member.member_id,
                        "display_name": member.display_name,
                        "contact_info": member.contact_info,
                        "langs": list(member.langs),
                        "items_translated_count": center.store.authored_count(member.member_id),
                    }
                )
            rows.sort(key=lambda r: (r["display_name"].casefold(), r["member_id"]))
            return rows

    # -- persistence

    def dump_state(self) -> dict[str, Any]:
        return {
            "glossary": [e.to_dict() for e in self.glossary_entries()],
            "threads": [t.to_dict() for t in sorted(self._threads.values(), key=lambda t: t.thread_id)],
            "polls": [p.to_dict() for p in self.polls()],
            "mirror_threads": [
                [lang, item_id, thread_id]
                for (lang, item_id), thread_id in sorted(self._mirror_threads.items())
            ],
        }

    def load_state(self, data: dict[str, Any]) -> None:
        self._glossary = {}
        self._threads = {}
        self._polls = {}
        self._mirror_threads = {}
        for raw in data["glossary"]:
            entry = GlossaryEntry.from_dict(raw)
            self._glossary[entry.term.casefold()] = entry
        for raw in data["threads"]:
            thread = ForumThread.from_dict(raw)
            self._threads[thread.thread_id] = thread
        for raw in data["polls"]:
            poll = Poll.from_dict(raw)
            self._polls[poll.poll_id] = poll
        for lang, item_id, thread_id in data["mirror_threads"]:
            self._mirror_threads[(lang, item_id)] = thread_id
