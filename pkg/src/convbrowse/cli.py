"""Command line entry points: chat REPL, HTTP service, and debug dumps."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import dialog, element_bots, service
from .context_tree import build_context_tree, tree_to_dict
from .errors import ConvBrowseError
from .locator import PageLocator
from .nlu import DEFAULT_TEMPLATES, dataset_to_tsv, generate_training_data, templates_from_config
from .pages import FetchConfig, load_page

_BOT_TYPES = ("text", "list", "table", "form")


def _load_template_config(path: str):
    """Read a template/pattern file: template lists plus bot inventories."""
    config = json.loads(Path(path).read_text(encoding="utf-8"))
    inventories = {k: v for k, v in config.items() if k in _BOT_TYPES}
    if inventories:
        element_bots.configure_inventories(inventories)
    template_kinds = {k: v for k, v in config.items() if k in ("selection", "link", "builtin")}
    if template_kinds:
        return templates_from_config(template_kinds)
    return DEFAULT_TEMPLATES


def _common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--site", required=True, help="site root: directory or HTTP origin")
    parser.add_argument("--tau", type=float, default=None, help="confidence threshold override")
    parser.add_argument("--debug", action="store_true", help="include selection debug output")
    parser.add_argument("--templates", default=None, help="JSON template/pattern file")


def _policy(args) -> dialog.PolicyConfig:
    if args.tau is not None:
        return dialog.PolicyConfig(tau=args.tau)
    return dialog.PolicyConfig()


def _templates(args):
    if args.templates:
        return _load_template_config(args.templates)
    return DEFAULT_TEMPLATES


def cmd_repl(args) -> int:
    templates = _templates(args)
    locator = PageLocator(args.site, args.page)
    try:
        session, reply = dialog.open_session(
            locator, config=_policy(args), fetch=FetchConfig(), templates=templates
        )
    except (ConvBrowseError, ValueError, OSError) as exc:
        print(f"could not open {args.page} under {args.site}: {exc}", file=sys.stderr)
        return 2
    print(f"bot> {reply.text}")
    if args.debug:
        _print_debug(reply)
    prompt = "you> " if sys.stdin.isatty() else ""
    while True:
        try:
            line = input(prompt)
        except EOFError:
            return 0
        if line.strip().lower() in ("quit", "exit"):
            return 0
        if not line.strip():
            continue
        reply = dialog.handle_utterance(session, line)
        print(f"bot> {reply.text}")
        if args.debug:
            _print_debug(reply)


def _print_debug(reply: dialog.BotReply) -> None:
    debug = reply.debug
    print(
        f"[debug] intent={debug.intent} confidence={debug.confidence:.3f} "
        f"bot={debug.bot} page={debug.page}"
    )


def cmd_serve(args) -> int:
    templates = _templates(args)
    try:
        config = service.ServiceConfig(
            site_root=args.site,
            listen_address=args.listen,
            tau=args.tau,
            templates=tuple(templates),
            debug=args.debug,
        )
        service.serve(config)
    except (ValueError, OSError) as exc:
        print(f"could not start service: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_dump_tree(args) -> int:
    try:
        page = load_page(PageLocator(args.site, args.page))
        tree = build_context_tree(page)
    except ConvBrowseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    print(json.dumps(tree_to_dict(tree), indent=2))
    return 0


def cmd_dump_dataset(args) -> int:
    templates = _templates(args)
    try:
        page = load_page(PageLocator(args.site, args.page))
        tree = build_context_tree(page)
    except ConvBrowseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    print(dataset_to_tsv(generate_training_data(tree, templates)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convbrowse",
        description="Chat with an annotated website from the terminal or over HTTP.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    repl = sub.add_parser("repl", help="interactive chat session in the terminal")
    _common_options(repl)
    repl.add_argument("--page", default="home.html", help="page to open first")
    repl.set_defaults(func=cmd_repl)

    srv = sub.add_parser("serve", help="run the HTTP chat service")
    _common_options(srv)
    srv.add_argument("--listen", default="127.0.0.1:8080", help="host:port to bind")
    srv.set_defaults(func=cmd_serve)

    dump_tree = sub.add_parser("dump-tree", help="print a page's context tree as JSON")
    _common_options(dump_tree)
    dump_tree.add_argument("--page", default="home.html")
    dump_tree.set_defaults(func=cmd_dump_tree)

    dump_dataset = sub.add_parser("dump-dataset", help="print a page's training data as TSV")
    _common_options(dump_dataset)
    dump_dataset.add_argument("--page", default="home.html")
    dump_dataset.set_defaults(func=cmd_dump_dataset)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
