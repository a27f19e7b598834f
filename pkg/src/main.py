import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import BaseModel

from .cli.router import router
from .cli.schemas import ErrorResponse
from .config import settings
from .exceptions import VChowError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vchow",
        description="Local and global mod-l invariants of elliptic curves over F_q(t)",
    )
    parser.add_argument("--json", action="store_true", help="emit one JSON document")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in router.commands.values():
        sub = subparsers.add_parser(command.name, help=command.help)
        for flags, options in command.arguments:
            sub.add_argument(*flags, **options)
        sub.set_defaults(handler=command.handler)
    return parser


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    logger = logging.getLogger(__name__)
    try:
        payload, text = args.handler(args)
    except VChowError as e:
        logger.debug(f"{args.command} failed: {e!r}")
        if args.json:
            print(ErrorResponse(error=e.to_dict()).model_dump_json(indent=2))
        else:
            print(f"error [{e.code}]: {e}", file=sys.stderr)
        return e.exit_code
    if args.json:
        if isinstance(payload, BaseModel):
            print(payload.model_dump_json(indent=2))
        else:
            print(json.dumps(payload, indent=2))
    else:
        print(text)
    return 0
