"""Operator configuration: languages, network binding, storage, tuning knobs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .errors import StartupError, ValidationError
from .workflow import PriorityWeights

# Characters Spanish keyboards miss on other layouts; shown as click-to-insert buttons.
SPANISH_PALETTE = ["á", "é", "í", "ó", "ú", "ü", "ñ", "¿", "¡"]


@dataclass(frozen=True)
class Language:
    """A target language plus the special characters its editor should offer."""

    code: str
    name: str
    palette: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "name": self.name, "palette": list(self.palette)}


@dataclass
class Config:
    languages: dict[str, Language]
    source_lang: str = "en"
    listen_host: str = "127.0.0.1"
    listen_port: int = 8080
    data_dir: str | None = None
    docs_dir: str | None = None
    auto_forum_mirror: bool = True
    admin_token: str | None = None
    weights: PriorityWeights = field(default_factory=PriorityWeights)

    def validate(self) -> None:
        if not self.languages:
            raise ValidationError("at least one target language is required")
        for code, language in self.languages.items():
            if code != language.code:
                raise ValidationError(f"language key '{code}' does not match code '{language.code}'")
            if not code or not language.name:
                raise ValidationError("language code and name must be non-empty")
        if self.source_lang in self.languages:
            raise ValidationError("the source language cannot also be a target language")
        if not isinstance(self.listen_port, int) or not 1 <= self.listen_port <= 65535:
            raise ValidationError("listen_port must be in [1, 65535]")
        if self.admin_token is not None and not isinstance(self.admin_token, str):
            raise ValidationError("admin_token must be a string")
        self.weights.validate()

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Config:
        if not isinstance(data, dict):
            raise ValidationError("configuration must be an object")
        known = {
            "languages",
            "source_lang",
            "listen_host",
            "listen_port",
            "data_dir",
            "docs_dir",
            "auto_forum_mirror",
            "admin_token",
            "weights",
        }
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown configuration key '{sorted(unknown)[0]}'")
        raw_langs = data.get("languages")
        if not isinstance(raw_langs, list):
            raise ValidationError("configuration needs a 'languages' list")
        languages: dict[str, Language] = {}
        for raw in raw_langs:
            if not isinstance(raw, dict) or not isinstance(raw.get("code"), str):
                raise ValidationError("each language needs a 'code' and a 'name'")
            code = raw["code"]
            if code in languages:
                raise ValidationError(f"duplicate language '{code}'")
            palette = raw.get("palette")
            if palette is None:
                palette = list(SPANISH_PALETTE) if code == "es" else []
            if not isinstance(palette, list) or not all(isinstance(ch, str) for ch in palette):
                raise ValidationError(f"palette for '{code}' must be a list of strings")
            languages[code] = Language(code=code, name=raw.get("name", code), palette=palette)
        weights = data.get("weights")
        config = cls(
            languages=languages,
            source_lang=data.get("source_lang", "en"),
            listen_host=data.get("listen_host", "127.0.0.1"),
            listen_port=data.get("listen_port", 8080),
            data_dir=data.get("data_dir"),
            docs_dir=data.get("docs_dir"),
            auto_forum_mirror=data.get("auto_forum_mirror", True),
            admin_token=data.get("admin_token"),
            weights=PriorityWeights.from_dict(weights) if weights is not None else PriorityWeights(),
        )
        config.validate()
        return config

    @classmethod
    def from_file(cls, path: str) -> Config:
        """Load and validate a JSON config.

        An unreadable file is a startup (I/O) problem; bad content inside a
        readable file is a validation problem. Callers map the two to
        different exit codes.
        """
        try:
            with open(path, encoding="utf-8") as handle:
                raw = handle.read()
        except OSError as exc:
            raise StartupError(f"cannot read configuration file {path}: {exc}") from exc
        try:
            data = json.loads(raw)
        except ValueError as exc:
            raise ValidationError(f"configuration file {path} is not valid JSON: {exc}") from exc
        try:
            return cls.from_dict(data)
        except ValidationError as exc:
            raise ValidationError(f"configuration file {path}: {exc}") from exc

    @classmethod
    def default(cls) -> Config:
        """In-memory two-language setup, handy for tests and demos."""
        return cls(
            languages={
                "es": Language("es", "Spanish", list(SPANISH_PALETTE)),
                "fr": Language("fr", "French", ["à", "â", "ç", "é", "è", "ê", "ë", "î", "ô", "û"]),
            }
        )
