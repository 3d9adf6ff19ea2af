"""
Run reports for the `threefold` command.

Reports serialize with sorted keys so the same invocation always prints the
same results object; only ``timing`` varies between runs.
"""
import json
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List

from conicbundle import __version__
from conicbundle.exceptions import ConicBundleError


@dataclass
class RunReport:
    command: str
    field: str
    inputs: Dict[str, Any] = dataclass_field(default_factory=dict)
    results: Dict[str, Any] = dataclass_field(default_factory=dict)
    timing: float = 0.0
    version: str = __version__

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "field": self.field,
            "inputs": self.inputs,
            "results": self.results,
            "timing": round(self.timing, 6),
            "version": self.version,
        }

    def results_json(self) -> str:
        return json.dumps(self.results, sort_keys=True)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"field: {self.field}"]
        lines.extend(_flatten("", self.results))
        lines.append(f"timing: {self.timing:.3f}s")
        return "\n".join(lines)


def _flatten(prefix: str, value: Any) -> List[str]:
    """``key: value`` lines; nested dicts join keys with dots."""
    if isinstance(value, dict):
        out = []
        for key in sorted(value):
            out.extend(_flatten(f"{prefix}.{key}" if prefix else str(key), value[key]))
        return out
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        out = []
        for i, item in enumerate(value):
            out.extend(_flatten(f"{prefix}[{i}]", item))
        return out
    if isinstance(value, bool):
        value = str(value).lower()
    elif isinstance(value, list):
        value = json.dumps(value)
    return [f"{prefix}: {value}"]


def error_payload(exc: ConicBundleError) -> str:
    return json.dumps({"error": exc.as_dict()}, sort_keys=True, indent=2, default=str)
