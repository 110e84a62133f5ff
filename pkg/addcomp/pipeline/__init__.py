from .core import (
    PipelineDefinition,
    PipelineOutputSpec,
    PipelineStage,
    build_pipeline_definition,
    run_pipeline,
)
from .stage_runner import PipelineStageRunner
from .types import LabArtifact, PipelineStageError

__all__ = [
    "LabArtifact",
    "PipelineDefinition",
    "PipelineOutputSpec",
    "PipelineStage",
    "PipelineStageError",
    "PipelineStageRunner",
    "build_pipeline_definition",
    "run_pipeline",
]
