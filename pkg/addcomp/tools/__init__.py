from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .base import LabTool


@dataclass(frozen=True)
class ToolSpec:
    """A registered subcommand and the experiment family it belongs to."""

    name: str
    tool: LabTool
    category: str = "default"


_TOOLS: Dict[str, ToolSpec] = {}


def register_tool(tool: LabTool, *, category: str = "default") -> ToolSpec:
    """Add ``tool`` to the CLI; registering the same name twice keeps the first entry."""

    return _TOOLS.setdefault(tool.name, ToolSpec(name=tool.name, tool=tool, category=category))


def iter_tool_specs(*, category: Optional[str] = None) -> Tuple[ToolSpec, ...]:
    """Registered tools in registration order, optionally restricted to one category."""

    return tuple(spec for spec in _TOOLS.values() if category in (None, spec.category))
