"""Experiment configuration shared by the CLI and the scripts."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

COMMANDS = ("radical", "tower", "topology", "quasiinv", "oracle-battery")
FORMATS = ("json", "csv")


@dataclass
class ExperimentConfig:
    command: str
    group: str | None = None
    options: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if not isinstance(self.options, dict):
            raise ValueError("options must be a mapping")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_json(Path(path).read_text())
