from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, field_validator


_MISSING = object()

CONTEXT_PARAMS = ("d", "a", "mu", "seed", "jobs")


class ParamSchema(BaseModel):
    type: str
    default: Any = _MISSING
    description: str = ""

    model_config = {"arbitrary_types_allowed": True}

    @field_validator("type")
    @classmethod
    def check_type(cls, v: str) -> str:
        allowed = {"str", "int", "bool", "list"}
        if v not in allowed:
            raise ValueError(f"type must be one of {allowed}, got '{v}'")
        return v


class SuiteSchema(BaseModel):
    name: str
    description: str = ""
    params: dict[str, ParamSchema] = {}


TYPE_MAP = {"str": str, "int": int, "bool": bool, "list": list}


def load_suite(suite_dir: Path) -> SuiteSchema:
    path = suite_dir / "suite.json"
    if not path.exists():
        raise FileNotFoundError(f"suite.json not found in {suite_dir}")
    with open(path) as f:
        data = json.load(f)
    return SuiteSchema(**data)


def merge_params(schema: SuiteSchema, provided: dict[str, Any]) -> dict[str, Any]:
    merged = {}
    for name, param in schema.params.items():
        if name in provided:
            val = provided[name]
        elif param.default is not _MISSING:
            val = param.default
        else:
            raise ValueError(f"Missing required param '{name}' (no default)")
        if val is None:
            merged[name] = None
            continue
        expected = TYPE_MAP[param.type]
        # bool is an int subclass; keep them apart
        if not isinstance(val, expected) or (expected is int and isinstance(val, bool)):
            raise TypeError(f"Param '{name}' expected {param.type}, got {type(val).__name__}")
        merged[name] = val
    unknown = set(provided) - set(schema.params)
    if unknown:
        raise ValueError(f"Unknown params: {unknown}")
    return merged


def describe_params(schema: SuiteSchema) -> list[dict]:
    out = []
    for name, param in schema.params.items():
        entry = {"name": name, "type": param.type, "description": param.description}
        if param.default is not _MISSING:
            entry["default"] = param.default
        out.append(entry)
    return out
