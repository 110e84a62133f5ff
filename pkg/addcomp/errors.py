from __future__ import annotations

import json
from typing import Optional

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_MISSING_FILE = 4


class LabError(RuntimeError):
    """Base class for every failure raised by the addcomp library."""

    code = "failure"
    exit_code = EXIT_FAILURE

    def __init__(self, message: str, stage: Optional[str] = None) -> None:
        self.stage = stage
        super().__init__(message)

    def error_line(self) -> str:
        """Render the single machine-readable stderr line for this failure."""

        return format_error_line(self.code, self.exit_code, str(self), self.stage)


class ConfigError(LabError):
    """Raised when a configuration file or override is malformed."""

    code = "config"
    exit_code = EXIT_CONFIG


class InputFileError(LabError):
    """Raised when a referenced input file is missing or unreadable."""

    code = "missing-file"
    exit_code = EXIT_MISSING_FILE


class UsageError(LabError):
    """Raised for malformed command lines and unknown subcommands."""

    code = "usage"
    exit_code = EXIT_USAGE


class CorpusDecodeError(LabError):
    code = "decode"


class ParameterError(LabError, ValueError):
    code = "parameter"


class DomainError(LabError, ValueError):
    code = "domain"


class TargetLookupError(LabError, KeyError):
    code = "lookup"

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message.
        return str(self.args[0]) if self.args else ""


class NormalizationError(LabError):
    code = "normalization"


class StatisticsError(LabError):
    code = "statistics"


class FitError(LabError):
    code = "fit"


class ReportError(LabError):
    code = "report"


class EvaluationError(LabError):
    code = "evaluation"


class TrainingError(LabError):
    code = "training"


def format_error_line(code: str, exit_code: int, message: str, stage: Optional[str] = None) -> str:
    payload = {"code": code, "exit": exit_code, "message": message, "stage": stage}
    return "error: " + json.dumps(payload, sort_keys=True, ensure_ascii=False)
