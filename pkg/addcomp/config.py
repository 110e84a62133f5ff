from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional, Tuple, Type, TypeVar

from .errors import ConfigError, InputFileError
from .utils import config_digest

T = TypeVar("T")


@dataclass(frozen=True)
class CorpusSection:
    path: Optional[str] = None
    min_count: int = 1
    target_min_count: int = 1
    skip_tokens: Tuple[str, ...] = ()
    shards: int = 1
    workers: int = 1


@dataclass(frozen=True)
class ContextSection:
    word_window: int = 5
    phrase_window: int = 4
    nearfar: bool = False


@dataclass(frozen=True)
class SyntheticSection:
    alpha1: float = 0.95
    theta1: float = 1.0
    alpha2: float = 0.95
    theta2: float = 1.0
    n_targets: int = 4000
    tokens_per_target: int = 1000
    phrase_fraction: float = 1.0
    n_context: int = 5000
    max_pi: float = 0.6


@dataclass(frozen=True)
class VectorsSection:
    lambdas: Tuple[float, ...] = (0.0,)
    offsets: str = "computed"


@dataclass(frozen=True)
class BiasSection:
    epsilon: float = 0.0


@dataclass(frozen=True)
class ReduceSection:
    dim: int = 200
    oversample: int = 10
    power_iters: int = 2
    normalize: bool = True
    loss: str = "l2"
    epochs: int = 200
    learning_rate: float = 0.05
    decay: float = 0.0
    batch_size: int = 64
    k: float = 2.0
    x_max: float = 10.0


@dataclass(frozen=True)
class EvalSection:
    phrase_dataset: Optional[str] = None
    analogy_dataset: Optional[str] = None
    runs: int = 1


@dataclass(frozen=True)
class LabConfig:
    """Effective experiment configuration: JSON file values plus flag overrides."""

    seed: int = 0
    out: str = "reports"
    corpus: CorpusSection = field(default_factory=CorpusSection)
    context: ContextSection = field(default_factory=ContextSection)
    synthetic: SyntheticSection = field(default_factory=SyntheticSection)
    vectors: VectorsSection = field(default_factory=VectorsSection)
    bias: BiasSection = field(default_factory=BiasSection)
    reduce: ReduceSection = field(default_factory=ReduceSection)
    eval: EvalSection = field(default_factory=EvalSection)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, object]) -> "LabConfig":
        if not isinstance(mapping, Mapping):
            raise ConfigError("Config must be a JSON object.")
        sections = {
            "corpus": CorpusSection,
            "context": ContextSection,
            "synthetic": SyntheticSection,
            "vectors": VectorsSection,
            "bias": BiasSection,
            "reduce": ReduceSection,
            "eval": EvalSection,
        }
        unknown = set(mapping) - set(sections) - {"seed", "out"}
        if unknown:
            raise ConfigError(f"Unknown config section(s): {', '.join(sorted(unknown))}.")

        values: dict = {}
        if "seed" in mapping:
            values["seed"] = _coerce("seed", mapping["seed"], int)
        if "out" in mapping:
            values["out"] = _coerce("out", mapping["out"], str)
        for name, section_type in sections.items():
            raw = mapping.get(name)
            if raw is None:
                continue
            values[name] = _section_from_mapping(name, raw, section_type)
        config = cls(**values)
        config.validate()
        return config

    @classmethod
    def load(cls, path: Path) -> "LabConfig":
        path = Path(path)
        if not path.is_file():
            raise InputFileError(f"Config file not found: {path}")
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"Malformed config {path}: {exc}") from exc
        except (OSError, UnicodeDecodeError) as exc:
            raise InputFileError(f"Failed to read config {path}: {exc}") from exc
        return cls.from_mapping(payload)

    def validate(self) -> None:
        if self.context.word_window < 1 or self.context.phrase_window < 1:
            raise ConfigError("context windows must be >= 1.")
        if self.corpus.min_count < 1 or self.corpus.target_min_count < 1:
            raise ConfigError("corpus min counts must be >= 1.")
        if self.corpus.shards < 1 or self.corpus.workers < 1:
            raise ConfigError("corpus shards and workers must be >= 1.")
        if self.vectors.offsets not in ("computed", "zero"):
            raise ConfigError("vectors.offsets must be 'computed' or 'zero'.")
        if not self.vectors.lambdas:
            raise ConfigError("vectors.lambdas must not be empty.")
        if self.reduce.loss not in ("l2", "glove", "sgns"):
            raise ConfigError("reduce.loss must be one of l2, glove, sgns.")
        if self.eval.runs < 1:
            raise ConfigError("eval.runs must be >= 1.")
        if not 0.0 <= self.synthetic.phrase_fraction <= 1.0:
            raise ConfigError("synthetic.phrase_fraction must lie in [0, 1].")

    def with_overrides(self, **overrides: Any) -> "LabConfig":
        """Apply dotted-path overrides such as ``{"reduce.dim": 50}``; ``None`` values are ignored."""

        config = self
        for dotted, value in overrides.items():
            if value is None:
                continue
            section_name, _, key = dotted.partition(".")
            if not key:
                config = replace(config, **{section_name: value})
                continue
            section = getattr(config, section_name)
            config = replace(config, **{section_name: replace(section, **{key: value})})
        config.validate()
        return config

    def to_mapping(self) -> dict:
        return asdict(self)

    @property
    def config_hash(self) -> str:
        return config_digest(self.to_mapping())

    def require_paths(self, *paths: Optional[str]) -> None:
        for raw in paths:
            if raw is None:
                continue
            if not Path(raw).exists():
                raise InputFileError(f"Input file not found: {raw}")


def _section_from_mapping(name: str, raw: object, section_type: Type[T]) -> T:
    if not isinstance(raw, Mapping):
        raise ConfigError(f"Config section '{name}' must be an object.")
    known = {item.name: item for item in fields(section_type)}
    unknown = set(raw) - set(known)
    if unknown:
        raise ConfigError(f"Unknown key(s) in '{name}': {', '.join(sorted(unknown))}.")
    defaults = section_type()
    values = {}
    for key, value in raw.items():
        default = getattr(defaults, key)
        values[key] = _coerce(f"{name}.{key}", value, type(default) if default is not None else str)
    return section_type(**values)


def _coerce(label: str, value: object, kind: type) -> object:
    if value is None:
        return None
    if kind is tuple:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"'{label}' must be an array.")
        return tuple(value)
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"'{label}' must be true or false.")
        return value
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"'{label}' must be an integer.")
        return value
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"'{label}' must be a number.")
        return float(value)
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"'{label}' must be a string.")
        return value
    return value
