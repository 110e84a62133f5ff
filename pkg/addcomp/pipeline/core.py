from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..corpus.table import read_table
from ..errors import LabError, UsageError
from .types import LabArtifact, PipelineStageError

StageFunc = Callable[[argparse.Namespace, LabArtifact], LabArtifact]
SEPARATOR = "="


class PipelineOutputSpec:
    """Describes the report files a stage writes for a given set of arguments."""

    def __init__(self, paths: Callable[[argparse.Namespace], Sequence[Path]]) -> None:
        self._paths = paths

    def resolve(self, args: argparse.Namespace) -> Tuple[Path, ...]:
        return tuple(Path(path) for path in self._paths(args))


@dataclass(frozen=True)
class PipelineStage:
    """One parsed stage: the tool name, its argv slice and the bound handler."""

    name: str
    argv: Tuple[str, ...]
    namespace: argparse.Namespace
    handler: StageFunc
    writes: Tuple[Path, ...] = ()

    def describe(self) -> str:
        return " ".join(self.argv) or self.name

    def __call__(self, artifact: LabArtifact) -> LabArtifact:
        return self.handler(self.namespace, artifact)


@dataclass(frozen=True)
class PipelineDefinition:
    stages: Tuple[PipelineStage, ...]
    input_path: Optional[Path] = None
    owners: Dict[Path, int] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not self.stages:
            raise PipelineStageError("The pipeline has no stages.", stage=None)

    def __len__(self) -> int:
        return len(self.stages)


def iter_stage_argv(tokens: Sequence[str]) -> Iterator[List[str]]:
    """Split ``= a --x 1 = b`` into ``[a, --x, 1]`` and ``[b]``; a leading separator is optional."""

    chunk: List[str] = []
    seen_stage = False
    for position, token in enumerate(tokens):
        if token != SEPARATOR:
            chunk.append(token)
            continue
        if chunk:
            yield chunk
            seen_stage = True
            chunk = []
        elif seen_stage or position > 0:
            raise PipelineStageError("Empty stage between '=' separators.", stage=None)
    if chunk:
        yield chunk


def _namespace_for(parser_factory: Callable[[], argparse.ArgumentParser], argv: Sequence[str]) -> argparse.Namespace:
    command = argv[0]
    if command == "pipeline":
        raise UsageError("Pipelines cannot be nested.", stage=command)
    try:
        namespace = parser_factory().parse_args(argv)
    except UsageError as exc:
        raise UsageError(f"Bad arguments for stage '{command}': {exc}", stage=command) from exc
    if getattr(namespace, "pipeline_func", None) is None:
        raise PipelineStageError(f"'{command}' cannot run as a pipeline stage.", stage=command)
    return namespace


def _apply_shared(namespace: argparse.Namespace, shared: Mapping[str, object]) -> None:
    for key, value in shared.items():
        if value is not None and getattr(namespace, key, None) is None:
            setattr(namespace, key, value)


def _reject_stage_inputs(name: str, namespace: argparse.Namespace) -> None:
    caps = getattr(namespace, "pipeline_caps", None)
    if caps is None or getattr(caps, "allow_stage_input", False):
        return
    for arg in getattr(caps, "input_args", ()):
        if getattr(namespace, arg, None) is not None:
            raise PipelineStageError(
                f"--{arg} is not accepted inside a pipeline (stage '{name}'); "
                f"the table comes from the previous stage. Use: addcomp pipeline -i <table> = {name} [options] ...",
                stage=name,
            )


def _claim_outputs(owners: Dict[Path, int], index: int, stage: PipelineStage) -> None:
    for path in stage.writes:
        earlier = owners.setdefault(path, index)
        if earlier != index:
            raise PipelineStageError(
                f"Stage {index} ({stage.name}) would overwrite {path}, already written by stage {earlier}.",
                stage=stage.name,
            )


def build_pipeline_definition(
    raw_tokens: Sequence[str],
    parser_factory: Callable[[], argparse.ArgumentParser],
    *,
    input_path: Optional[Path] = None,
    shared: Optional[Mapping[str, object]] = None,
) -> PipelineDefinition:
    """Parse every stage; ``shared`` fills stage options the stage left unset (config, seed, out)."""

    stages: List[PipelineStage] = []
    owners: Dict[Path, int] = {}
    for index, argv in enumerate(iter_stage_argv(raw_tokens), start=1):
        namespace = _namespace_for(parser_factory, argv)
        _apply_shared(namespace, shared or {})
        name = getattr(namespace, "command", argv[0])
        _reject_stage_inputs(name, namespace)
        spec = getattr(namespace, "pipeline_output_spec", None)
        stage = PipelineStage(
            name=name,
            argv=tuple(argv),
            namespace=namespace,
            handler=namespace.pipeline_func,
            writes=spec.resolve(namespace) if spec is not None else (),
        )
        _claim_outputs(owners, index, stage)
        stages.append(stage)
    return PipelineDefinition(tuple(stages), input_path=Path(input_path) if input_path else None, owners=owners)


def run_pipeline(pipeline_definition: PipelineDefinition) -> LabArtifact:
    if pipeline_definition.input_path is None:
        artifact = LabArtifact()
    else:
        table = read_table(pipeline_definition.input_path)
        artifact = LabArtifact(vocab=table.vocab, table=table)

    for index, stage in enumerate(pipeline_definition.stages, start=1):
        print(f"Conducting {stage.name} (tool) [stage {index}]: {stage.describe()}", file=sys.stderr, flush=True)
        try:
            artifact = stage(artifact)
        except LabError as exc:
            exc.stage = exc.stage or stage.name
            raise
        except Exception as exc:
            raise PipelineStageError(f"Stage '{stage.name}' failed: {exc}", stage=stage.name) from exc
        if not isinstance(artifact, LabArtifact):
            raise PipelineStageError(f"Stage '{stage.name}' returned {type(artifact).__name__}.", stage=stage.name)
    return artifact
