from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable

from ..errors import LabError
from .core import PipelineDefinition, build_pipeline_definition, run_pipeline
from .types import PipelineStageError

SHARED_OPTIONS = ("config", "seed", "out")


class PipelineCommand:
    """The ``pipeline`` subcommand: chains registered tools separated by '='."""

    def __init__(
        self,
        *,
        parser_factory: Callable[[], argparse.ArgumentParser],
        executor: Callable[[PipelineDefinition], object] = run_pipeline,
        definition_builder: Callable[..., PipelineDefinition] = build_pipeline_definition,
    ) -> None:
        self._parser_factory = parser_factory
        self._executor = executor
        self._definition_builder = definition_builder

    def register(self, subparsers) -> None:
        parser = subparsers.add_parser("pipeline", help="Chain tools into one run, stages separated by '='.")
        parser.add_argument("-i", "--input", type=Path, help="Co-occurrence table handed to the first stage.")
        for option, kind, noun in (("--config", Path, "JSON config"), ("--seed", int, "seed"), ("--out", Path, "report directory")):
            parser.add_argument(option, type=kind, help=f"Default {noun} for stages that do not give one.")
        parser.add_argument(
            "stages",
            nargs=argparse.REMAINDER,
            help="Stages, e.g. = synth-cooc = vectors --lambda 0,1 = bias --lambda 0,1",
        )
        parser.set_defaults(func=self.execute, command="pipeline")

    def execute(self, args: argparse.Namespace) -> int:
        try:
            if not args.stages:
                raise PipelineStageError("Give at least one stage after '='.")
            definition = self._definition_builder(
                args.stages,
                self._parser_factory,
                input_path=args.input,
                shared={name: getattr(args, name) for name in SHARED_OPTIONS},
            )
            self._executor(definition)
        except LabError as exc:
            print(exc.error_line(), file=sys.stderr)
            return exc.exit_code
        print(f"Pipeline finished: {len(definition.stages)} stage(s)")
        return 0
