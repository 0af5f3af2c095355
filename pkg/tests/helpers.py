"""Builders shared across test modules: exchange documents and quick members."""

from __future__ import annotations

from typing import Any

from transcenter import TranslationCenter


def seg(
    seg_id: str,
    text: str,
    category: str = "other",
    before: str = "",
    after: str = "",
) -> dict[str, str]:
    return {
        "id": seg_id,
        "text": text,
        "category": category,
        "context_before": before,
        "context_after": after,
    }


def page(page_id: str, *segments: dict[str, str], url: str | None = None, title: str = "") -> dict[str, Any]:
    return {
        "page_id": page_id,
        "url": url if url is not None else f"/{page_id}.html",
        "title": title or page_id,
        "segments": list(segments),
    }


def doc(*pages: dict[str, Any]) -> dict[str, Any]:
    return {"pages": list(pages)}


def small_catalog() -> dict[str, Any]:
    """Two pages, three segments; the fixture most tests start from."""
    return doc(
        page(
            "home",
            seg("home.welcome", "Welcome to the library", category="heading"),
            seg(
                "home.browse",
                "Browse Collections",
                category="menu_link",
                before="Welcome to ",
                after=" today",
            ),
        ),
        page("search", seg("search.button", "Search", category="button")),
    )


def numbered_catalog(n_items: int, per_page: int = 10) -> dict[str, Any]:
    pages = []
    for start in range(0, n_items, per_page):
        page_no = start // per_page
        segments = [
            seg(f"p{page_no:03d}.s{i:03d}", f"Source text {i}") for i in range(start, min(start + per_page, n_items))
        ]
        pages.append(page(f"p{page_no:03d}", *segments))
    return doc(*pages)


def add_member(center: TranslationCenter, name: str, langs: list[str] | None = None):
    member, _session = center.register_member(name, langs)
    return member
