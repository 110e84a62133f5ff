from __future__ import annotations

import argparse
import importlib
import logging
import sys
from typing import List, NoReturn, Optional, Sequence

from addcomp.errors import EXIT_FAILURE, LabError, UsageError, format_error_line
from addcomp.manpage import print_man_page
from addcomp.pipeline import run_pipeline
from addcomp.pipeline.command import PipelineCommand
from addcomp.tools import iter_tool_specs

# Importing a command module registers its tools.
COMMAND_MODULES = ("corpus", "genmodel", "vectors", "composition", "stats", "reduce", "evaluation")
for _module in COMMAND_MODULES:
    importlib.import_module(f"addcomp.commands.{_module}")

logger = logging.getLogger(__name__)


class LabArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports malformed command lines as UsageError."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(
        prog="addcomp",
        description="Experiments on the additive composition of distributional word vectors.",
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=LabArgumentParser)
    subparsers.required = True

    for spec in iter_tool_specs():
        spec.tool.register(subparsers)
    PipelineCommand(parser_factory=build_parser, executor=run_pipeline).register(subparsers)
    man = subparsers.add_parser("man", help="Print the addcomp manual page.")
    man.set_defaults(func=lambda _args: print_man_page(stream=sys.stdout) or 0, command="man")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.WARNING)
    args: Optional[argparse.Namespace] = None
    try:
        args = build_parser().parse_args(list(sys.argv[1:] if argv is None else argv))
        return args.func(args)
    except LabError as exc:
        print(exc.error_line(), file=sys.stderr)
        return exc.exit_code
    except Exception as exc:
        logger.debug("unhandled failure", exc_info=True)
        print(format_error_line("failure", EXIT_FAILURE, str(exc), getattr(args, "command", None)), file=sys.stderr)
        return EXIT_FAILURE


def run(subcommand: str, argv: Sequence[str] = ()) -> int:
    """Run one subcommand programmatically; returns the process exit status."""

    return main([subcommand, *argv])


def cli() -> None:
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    cli()
