"""HTTP+JSON API over the whole center.

Reads are public; anything that writes needs a session token (Bearer), and
catalog import/export plus poll closing need the administrator token from
the config. Every error leaves as ``{"error": {"code", "message", ...}}``
with a stable machine-readable code, and responses sort everything so the
same state always serializes the same way.
"""

from __future__ import annotations

import importlib.resources
import secrets as secretlib
import socket
from pathlib import Path
from typing import Any

import uvicorn
from fastapi import FastAPI, Header, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .catalog import parse_exchange_document
from .center import TranslationCenter
from .community import Member, Poll
from .config import Config
from .errors import AuthError, CenterError, NotFoundError, StartupError, ValidationError
from .review import RubricScores
from .store import Translation
from .util import canonical_json_bytes, ts_to_str

_STATUS_BY_CODE = {
    "validation": 400,
    "not_found": 404,
    "conflict": 409,
    "auth": 401,
    "state": 409,
    "startup": 500,
    "error": 500,
}


class RegisterBody(BaseModel):
    display_name: str
    langs: list[str] | None = None


class LoginBody(BaseModel):
    display_name: str


class MemberUpdateBody(BaseModel):
    langs: list[str] | None = None
    contact_opt_in: bool | None = None
    contact_info: str | None = None


class TranslationBody(BaseModel):
    lang: str
    text: str
    base_version: int | None = None


class CommentBody(BaseModel):
    lang: str
    body: str
    parent_id: str | None = None


class RequestBody(BaseModel):
    lang: str
    item_id: str | None = None
    page_id: str | None = None


class ReviewBody(BaseModel):
    rubric: dict[str, Any]
    body: str = ""


class GlossaryBody(BaseModel):
    term: str
    definition: str = ""
    lang: str | None = None
    variant: str | None = None
    region_note: str | None = None


class GlossaryCommentBody(BaseModel):
    body: str
    parent_id: str | None = None


class ThreadBody(BaseModel):
    kind: str
    title: str
    body: str
    lang: str | None = None


class PostBody(BaseModel):
    body: str


class PollBody(BaseModel):
    question: str
    options: list[str]
    scope: str = "global"


class VoteBody(BaseModel):
    option_index: int


def _bearer_token(authorization: str | None) -> str:
    if not authorization:
        raise AuthError("missing Authorization header")
    scheme, _, token = authorization.partition(" ")
    if scheme.lower() != "bearer" or not token.strip():
        raise AuthError("expected 'Authorization: Bearer <token>'")
    return token.strip()


def _translation_view(translation: Translation) -> dict[str, Any]:
    return translation.to_dict()


def _poll_view(poll: Poll) -> dict[str, Any]:
    """Public poll shape: tallies, never individual ballots."""
    return {
        "poll_id": poll.poll_id,
        "question": poll.question,
        "options": list(poll.options),
        "scope": poll.scope,
        "created_at": poll.to_dict()["created_at"],
        "closed": poll.closed,
        "tally": poll.tally(),
        "voter_count": len(poll.votes),
    }


def _session_view(member: Member, token: str, expires_at: str) -> dict[str, Any]:
    return {"member": member.to_dict(), "token": token, "expires_at": expires_at}


def create_app(center: TranslationCenter) -> FastAPI:
    # interactive docs disabled; /docs is our tutorial/FAQ namespace
    app = FastAPI(docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.center = center

    @app.exception_handler(CenterError)
    async def center_error_handler(request: Request, exc: CenterError) -> JSONResponse:
        body: dict[str, Any] = {"code": exc.code, "message": exc.message}
        if exc.detail:
            body["detail"] = exc.detail
        return JSONResponse(
            status_code=_STATUS_BY_CODE.get(exc.code, 500), content={"error": body}
        )

    @app.exception_handler(StarletteHTTPException)
    async def http_error_handler(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        # unknown routes, bad methods, etc. wear the same envelope as our errors
        code = {401: "auth", 404: "not_found", 405: "validation", 409: "conflict"}.get(
            exc.status_code, "error"
        )
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": {"code": code, "message": str(exc.detail)}},
        )

    @app.exception_handler(RequestValidationError)
    async def request_error_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
        errors = [
            {"loc": [str(part) for part in err.get("loc", [])], "msg": str(err.get("msg", ""))}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "validation",
                    "message": "invalid request",
                    "detail": {"errors": errors},
                }
            },
        )

    def require_member(authorization: str | None) -> Member:
        return center.resolve_session(_bearer_token(authorization))

    def require_admin(authorization: str | None) -> None:
        expected = center.config.admin_token
        if not expected:
            raise AuthError("no administrator token is configured")
        token = _bearer_token(authorization)
        if not secretlib.compare_digest(token, expected):
            raise AuthError("administrator token required")

    # -- languages and progress

    @app.get("/api/languages")
    def get_languages() -> list[dict[str, Any]]:
        return [lang.to_dict() for lang in center.languages()]

    @app.get("/api/progress/{lang}")
    def get_progress(lang: str) -> dict[str, Any]:
        progress = center.store.progress(lang)
        return {
            "lang": progress.lang,
            "translated_count": progress.translated_count,
            "total_count": progress.total_count,
            "percent": progress.percent,
            "display": progress.display,
        }

    # -- items

    @app.get("/api/items")
    def get_items(lang: str, filter: str = "all", order: str = "priority") -> list[dict[str, Any]]:
        rows = center.catalog.list_items(lang, filter=filter, order=order)
        return [
            {**row.item.to_dict(), "status": row.status, "priority": row.priority} for row in rows
        ]

    @app.get("/api/items/{item_id}")
    def get_item(item_id: str) -> dict[str, Any]:
        with center.locked():
            item = center.catalog.get(item_id)
            data = item.to_dict()
            page = center.catalog.pages.get(item.page_id)
            data["page"] = page.to_dict() if page else None
            return data

    @app.get("/api/items/{item_id}/context")
    def get_context(item_id: str, lang: str) -> dict[str, Any]:
        center.require_language(lang)
        return {
            "item_id": item_id,
            "lang": lang,
            "snippet": center.catalog.context_snippet(item_id, lang),
            "page_preview": center.catalog.page_preview(item_id, lang),
        }

    @app.post("/api/items/{item_id}/view")
    def post_view(item_id: str, authorization: str | None = Header(default=None)) -> dict[str, Any]:
        require_member(authorization)
        return {"item_id": item_id, "view_count": center.catalog.record_view(item_id)}

    # -- translations

    @app.get("/api/items/{item_id}/translations")
    def get_translations(item_id: str, lang: str) -> dict[str, Any]:
        center.require_language(lang)
        with center.locked():
            history = center.store.history(item_id, lang)
            current = center.store.current(item_id, lang)
            return {
                "item_id": item_id,
                "lang": lang,
                "current": _translation_view(current) if current else None,
                "history": [_translation_view(t) for t in history],
            }

    @app.post("/api/items/{item_id}/translations")
    def post_translation(
        item_id: str, body: TranslationBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        record = center.store.submit(
            item_id, body.lang, body.text, member.member_id, base_version=body.base_version
        )
        return _translation_view(record)

    @app.get("/api/items/{item_id}/comments")
    def get_comments(item_id: str, lang: str) -> list[dict[str, Any]]:
        center.require_language(lang)
        return [c.to_dict() for c in center.store.comments(item_id, lang)]

    @app.post("/api/items/{item_id}/comments")
    def post_comment(
        item_id: str, body: CommentBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        comment = center.store.add_comment(
            item_id, body.lang, member.member_id, body.body, parent_id=body.parent_id
        )
        return comment.to_dict()

    # -- workflow

    @app.post("/api/requests")
    def post_request(
        body: RequestBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        if (body.item_id is None) == (body.page_id is None):
            raise ValidationError("pass exactly one of item_id or page_id")
        kind = "item" if body.item_id is not None else "page"
        target = body.item_id if body.item_id is not None else body.page_id
        counts = center.workflow.request_translation(member.member_id, kind, target, body.lang)
        return {"lang": body.lang, "counts": counts}

    @app.get("/api/binder")
    def get_binder(authorization: str | None = Header(default=None)) -> dict[str, Any]:
        member = require_member(authorization)
        binder = center.workflow.binder_of(member.member_id)
        return {
            "member_id": binder.member_id,
            "translated_items": [
                {"item_id": i, "lang": lang, "version": v} for i, lang, v in binder.authored
            ],
            "notifications": [
                {"item_id": e.item_id, "lang": e.lang, "text": e.text, "version": e.version}
                for e in binder.delivered
            ],
            "watches": center.workflow.watches_of(member.member_id),
        }

    @app.get("/api/random")
    def get_random(lang: str, seed: int | None = None) -> dict[str, Any]:
        return {"lang": lang, "item_id": center.workflow.next_random_item(lang, seed=seed)}

    # -- reviews

    @app.post("/api/translations/{translation_id}/reviews")
    def post_review(
        translation_id: str, body: ReviewBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        rubric = RubricScores.from_dict(body.rubric)
        review = center.reviews.submit(translation_id, member.member_id, rubric, body=body.body)
        data = review.to_dict()
        data["total"] = review.total()
        return data

    @app.get("/api/quality/{item_id}/{lang}")
    def get_quality(item_id: str, lang: str) -> dict[str, Any]:
        center.require_language(lang)
        with center.locked():
            center.catalog.get(item_id)
            current = center.store.current(item_id, lang)
            return {
                "item_id": item_id,
                "lang": lang,
                "quality": center.reviews.quality(item_id, lang),
                "review_count": (
                    center.reviews.review_count(current.translation_id) if current else 0
                ),
            }

    # -- glossary

    @app.get("/api/glossary")
    def get_glossary() -> list[dict[str, Any]]:
        with center.locked():
            return [entry.to_dict() for entry in center.community.glossary_entries()]

    @app.post("/api/glossary")
    def post_glossary(
        body: GlossaryBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        entry = center.community.add_glossary_entry(
            body.term,
            body.definition,
            member.member_id,
            lang=body.lang,
            variant=body.variant,
            region_note=body.region_note,
        )
        return entry.to_dict()

    @app.get("/api/glossary/{term}/comments")
    def get_glossary_comments(term: str) -> list[dict[str, Any]]:
        with center.locked():
            return [c.to_dict() for c in center.community.glossary_entry(term).comments]

    @app.post("/api/glossary/{term}/comments")
    def post_glossary_comment(
        term: str, body: GlossaryCommentBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        comment = center.community.add_glossary_comment(
            term, member.member_id, body.body, parent_id=body.parent_id
        )
        return comment.to_dict()

    # -- forums

    @app.get("/api/forums")
    def get_forums(kind: str | None = None, lang: str | None = None) -> list[dict[str, Any]]:
        threads = center.community.threads(kind=kind, lang=lang)
        return [
            {
                "thread_id": t.thread_id,
                "kind": t.kind,
                "lang": t.lang,
                "title": t.title,
                "created_at": t.to_dict()["created_at"],
                "post_count": len(t.posts),
            }
            for t in threads
        ]

    @app.post("/api/forums")
    def post_forum(
        body: ThreadBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        thread = center.community.create_thread(
            body.kind, body.title, member.member_id, body.body, lang=body.lang
        )
        return thread.to_dict()

    @app.get("/api/forums/{thread_id}/posts")
    def get_posts(thread_id: str) -> dict[str, Any]:
        with center.locked():
            return center.community.get_thread(thread_id).to_dict()

    @app.post("/api/forums/{thread_id}/posts")
    def post_post(
        thread_id: str, body: PostBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        post = center.community.add_post(thread_id, member.member_id, body.body)
        data = post.to_dict()
        data["thread_id"] = thread_id
        return data

    # -- polls

    @app.get("/api/polls")
    def get_polls() -> list[dict[str, Any]]:
        with center.locked():
            return [_poll_view(p) for p in center.community.polls()]

    @app.post("/api/polls")
    def post_poll(body: PollBody, authorization: str | None = Header(default=None)) -> dict[str, Any]:
        member = require_member(authorization)
        poll = center.community.create_poll(
            body.question, body.options, member.member_id, scope=body.scope
        )
        return _poll_view(poll)

    @app.post("/api/polls/{poll_id}/votes")
    def post_vote(
        poll_id: str, body: VoteBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        poll = center.community.vote(poll_id, member.member_id, body.option_index)
        return _poll_view(poll)

    @app.post("/api/polls/{poll_id}/close")
    def post_close_poll(
        poll_id: str, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        require_admin(authorization)
        return _poll_view(center.community.close_poll(poll_id))

    # -- directory and membership

    @app.get("/api/directory")
    def get_directory() -> list[dict[str, Any]]:
        return center.community.directory_list()

    @app.post("/api/members")
    def post_member(body: RegisterBody) -> dict[str, Any]:
        member, session = center.register_member(body.display_name, body.langs)
        return _session_view(member, session.token, ts_to_str(session.expires_at))

    @app.post("/api/members/me")
    def post_member_update(
        body: MemberUpdateBody, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        member = require_member(authorization)
        updated = center.members.update(
            member.member_id,
            langs=body.langs,
            contact_opt_in=body.contact_opt_in,
            contact_info=body.contact_info,
        )
        return updated.to_dict()

    @app.post("/api/sessions")
    def post_session(body: LoginBody) -> dict[str, Any]:
        member, session = center.login(body.display_name)
        return _session_view(member, session.token, ts_to_str(session.expires_at))

    # -- exchange documents (admin)

    @app.get("/api/export/{lang}")
    def get_export(lang: str, authorization: str | None = Header(default=None)) -> Response:
        require_admin(authorization)
        doc = center.store.export_document(lang)
        return Response(content=canonical_json_bytes(doc), media_type="application/json")

    @app.post("/api/import")
    async def post_import(
        request: Request, authorization: str | None = Header(default=None)
    ) -> dict[str, Any]:
        require_admin(authorization)
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ValidationError(f"document is not valid UTF-8: {exc}") from exc
        summary = center.import_document(parse_exchange_document(text))
        return {"added": summary.added, "updated": summary.updated}

    # -- static documentation

    def read_doc(name: str) -> str:
        if center.config.docs_dir:
            path = Path(center.config.docs_dir) / f"{name}.md"
            if not path.is_file():
                raise NotFoundError(f"no document '{name}' in the docs directory")
            return path.read_text(encoding="utf-8")
        resource = importlib.resources.files("transcenter").joinpath("docs", f"{name}.md")
        return resource.read_text(encoding="utf-8")

    @app.get("/docs/tutorial")
    def get_tutorial() -> PlainTextResponse:
        return PlainTextResponse(read_doc("tutorial"), media_type="text/markdown; charset=utf-8")

    @app.get("/docs/faq")
    def get_faq() -> PlainTextResponse:
        return PlainTextResponse(read_doc("faq"), media_type="text/markdown; charset=utf-8")

    return app


def serve(config: Config) -> None:
    """Run the service until interrupted; state flushes on the way down."""
    center = TranslationCenter(config)
    try:
        app = create_app(center)
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        try:
            probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
            probe.bind((config.listen_host, config.listen_port))
        except OSError as exc:
            raise StartupError(
                f"cannot listen on {config.listen_host}:{config.listen_port}: {exc}"
            ) from exc
        finally:
            probe.close()
        uvicorn.run(app, host=config.listen_host, port=config.listen_port, log_level="info")
    finally:
        center.close()
