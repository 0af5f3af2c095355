"""Administrator command line: run the service, move catalogs, print stats.

import/export/stats open the data directory directly, so they work with the
service stopped; against a running service's directory they refuse and exit 2.

Exit codes: 0 success, 1 validation problem (bad flags, bad documents,
unknown languages), 2 I/O problem (unreadable files, locked or corrupt
data directory).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .catalog import parse_exchange_document
from .center import TranslationCenter
from .config import Config
from .errors import CenterError, StartupError, ValidationError
from .util import canonical_json_bytes

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

STATS_LINE_GRAMMAR = "<lang> <translated>/<total> <percent>%"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; we want a catchable error and exit 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> _Parser:
    parser = _Parser(prog="transcenter", description="Community translation center.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    serve_p = sub.add_parser("serve", help="run the HTTP service")
    serve_p.add_argument("--config", default="center.json", help="path to the JSON config file")
    serve_p.set_defaults(func=cmd_serve)

    import_p = sub.add_parser("import", help="load a catalog or translation exchange document")
    import_p.add_argument("--config", default="center.json", help="path to the JSON config file")
    import_p.add_argument("--file", required=True, help="exchange document to load")
    import_p.set_defaults(func=cmd_import)

    export_p = sub.add_parser("export", help="write one language's translations to a file")
    export_p.add_argument("--config", default="center.json", help="path to the JSON config file")
    export_p.add_argument("--lang", required=True, help="target language code")
    export_p.add_argument("--out", required=True, help="output path for the exchange document")
    export_p.set_defaults(func=cmd_export)

    stats_p = sub.add_parser(
        "stats",
        help="print per-language progress",
        description=f"Prints one line per language: {STATS_LINE_GRAMMAR}",
    )
    stats_p.add_argument("--config", default="center.json", help="path to the JSON config file")
    stats_p.add_argument("--lang", default=None, help="limit output to one language")
    stats_p.set_defaults(func=cmd_stats)

    return parser


def _open_center(config_path: str) -> TranslationCenter:
    config = Config.from_file(config_path)
    if config.data_dir is None:
        raise ValidationError("this command needs a data_dir in the config")
    return TranslationCenter(config)


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve  # deferred: keeps import/export/stats light

    serve(Config.from_file(args.config))
    return EXIT_OK


def cmd_import(args: argparse.Namespace) -> int:
    doc = parse_exchange_document(Path(args.file).read_text(encoding="utf-8"))
    with _open_center(args.config) as center:
        summary = center.import_document(doc)
    print(f"{summary.added} added, {summary.updated} updated")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    with _open_center(args.config) as center:
        doc = center.store.export_document(args.lang)
    Path(args.out).write_bytes(canonical_json_bytes(doc))
    print(f"exported {args.lang} to {args.out}")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    with _open_center(args.config) as center:
        if args.lang is not None:
            center.require_language(args.lang)
            langs = [args.lang]
        else:
            langs = sorted(center.config.languages)
        for lang in langs:
            progress = center.store.progress(lang)
            print(f"{lang} {progress.translated_count}/{progress.total_count} {progress.display}%")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)
    try:
        return args.func(args)
    except StartupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CenterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except KeyboardInterrupt:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
