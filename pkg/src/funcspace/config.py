"""Flat key-value run configuration with section headers.

The format is deliberately dependency-free and byte-stable under a
parse/write round trip:

    # funcspace configuration
    [grid]
    ratio = 0.8408964152537145
    [run]
    jobs = 1
    out = out
    [budgets]
    PW-01 = 64
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

from .errors import FuncspaceError

DEFAULT_RATIO = 2.0 ** -0.25


@dataclass
class RunConfig:
    grid_ratio: float = DEFAULT_RATIO
    t_min: float = 2.0 ** -40
    jobs: int = 1
    out_dir: str = "out"
    corpus_path: Optional[str] = None
    stability_tol: float = 0.10
    budgets: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not (0 < self.grid_ratio < 1):
            raise FuncspaceError("grid ratio must lie in (0, 1)")
        if self.jobs < 1:
            raise FuncspaceError("jobs must be >= 1")
        for key, val in self.budgets.items():
            if val <= 0:
                raise FuncspaceError(f"budget for {key} must be positive")

    def budget_for(self, check_id: str, default: float) -> float:
        return self.budgets.get(check_id, default)

    def to_text(self) -> str:
        lines = ["# funcspace configuration", "[grid]",
                 f"ratio = {self.grid_ratio!r}",
                 f"t_min = {self.t_min!r}",
                 "[run]",
                 f"jobs = {self.jobs}",
                 f"out = {self.out_dir}",
                 f"stability_tol = {self.stability_tol!r}"]
        if self.corpus_path:
            lines.append(f"corpus = {self.corpus_path}")
        if self.budgets:
            lines.append("[budgets]")
            for key in sorted(self.budgets):
                lines.append(f"{key} = {self.budgets[key]!r}")
        return "\n".join(lines) + "\n"


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    section = ""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            continue
        if "=" not in line:
            raise FuncspaceError(f"bad config line: {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if section == "grid":
            if key == "ratio":
                cfg.grid_ratio = float(val)
            elif key == "t_min":
                cfg.t_min = float(val)
            else:
                raise FuncspaceError(f"unknown grid key {key!r}")
        elif section == "run":
            if key == "jobs":
                cfg.jobs = int(val)
            elif key == "out":
                cfg.out_dir = val
            elif key == "corpus":
                cfg.corpus_path = val
            elif key == "stability_tol":
                cfg.stability_tol = float(val)
            else:
                raise FuncspaceError(f"unknown run key {key!r}")
        elif section == "budgets":
            cfg.budgets[key] = float(val)
        else:
            raise FuncspaceError(f"unknown config section {section!r}")
    cfg.__post_init__()
    return cfg


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
