from __future__ import annotations

import argparse
import logging
import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

from ..config import LabConfig
from ..errors import LabError
from ..pipeline.core import PipelineOutputSpec
from ..pipeline.stage_runner import PipelineStageRunner
from ..pipeline.types import LabArtifact


def parse_lambdas(text: str) -> tuple:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


@dataclass(frozen=True)
class StageCaps:
    """What a tool may do when it runs inside a pipeline."""

    allow_stage_input: bool = False
    input_args: Tuple[str, ...] = ("table",)


class LabTool(ABC):
    """One addcomp subcommand; standalone runs and pipeline stages share ``execute``."""

    name: str
    help_text: str
    # report names under --out, checked for clashes between stages
    outputs: Sequence[str] = ()
    # inputs a pipeline supplies through -i
    input_args: Tuple[str, ...] = ("table",)
    # other input files that must exist
    file_args: Tuple[str, ...] = ()
    allow_stage_input: bool = False

    def register(self, subparsers) -> None:
        parser = subparsers.add_parser(self.name, help=self.help_text)
        parser.add_argument("--config", type=Path, help="JSON config file.")
        parser.add_argument("--seed", type=int, help="Top-level random seed (overrides the config).")
        parser.add_argument("--out", type=Path, help="Report directory (overrides the config).")
        parser.add_argument("-v", "--verbose", action="store_true", help="Log progress at INFO level.")
        self.configure_parser(parser)
        parser.set_defaults(
            command=self.name,
            func=self.run,
            pipeline_func=self.run_pipeline,
            pipeline_caps=StageCaps(self.allow_stage_input, tuple(self.input_args)),
            pipeline_output_spec=PipelineOutputSpec(self.output_paths),
        )

    @abstractmethod
    def configure_parser(self, parser) -> None:
        """Add the tool's own arguments."""

    @abstractmethod
    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        ...

    def overrides(self, args) -> dict:
        """Dotted config keys set by the tool's flags."""

        return {}

    def resolve_config(self, args) -> LabConfig:
        base = LabConfig.load(args.config) if getattr(args, "config", None) else LabConfig()
        out = getattr(args, "out", None)
        return base.with_overrides(
            seed=getattr(args, "seed", None),
            out=None if out is None else str(out),
            **self.overrides(args),
        )

    def runner(self, args, artifact: Optional[LabArtifact]) -> PipelineStageRunner:
        if getattr(args, "verbose", False):
            logging.getLogger("addcomp").setLevel(logging.INFO)
        config = self.resolve_config(args)
        given = [getattr(args, name, None) for name in (*self.input_args, *self.file_args)]
        config.require_paths(
            config.corpus.path,
            config.eval.phrase_dataset,
            config.eval.analogy_dataset,
            *(str(path) for path in given if path is not None),
        )
        return PipelineStageRunner(self.name, args, artifact, config)

    def run(self, args) -> int:
        try:
            self.execute(self.runner(args, None))
        except LabError as exc:
            exc.stage = exc.stage or self.name
            print(exc.error_line(), file=sys.stderr)
            return exc.exit_code
        return 0

    def run_pipeline(self, args, artifact: Optional[LabArtifact]) -> LabArtifact:
        return self.execute(self.runner(args, artifact))

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        """Report file names for this invocation; tools with per-lambda files override it."""

        return self.outputs

    def output_paths(self, args) -> Tuple[Path, ...]:
        config = self.resolve_config(args)
        return tuple(Path(config.out) / name for name in self.output_names(args, config))


def add_table_argument(parser) -> None:
    parser.add_argument(
        "--table",
        type=Path,
        help="Co-occurrence table written by count or synth-cooc (pipelines pass it with -i).",
    )


def add_lambda_argument(parser) -> None:
    parser.add_argument(
        "--lambda",
        dest="lambdas",
        type=parse_lambdas,
        help="Comma-separated lambda values of the F transform, e.g. 0,0.5,1.",
    )
