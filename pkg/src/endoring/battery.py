"""Layer criterion versus brute-force oracle over a fixed battery of groups."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from . import _batch
from .endo import Endo, end_order
from .groups import PGroup
from .radical import layer_decomposition, radical_membership, radical_oracle_mask

DEFAULT_BATTERY: tuple[str, ...] = (
    "2^1",
    "2^2",
    "2^1+2^1",
    "2^1+2^2",
    "2^2+2^2",
    "2^1+2^1+2^2",
    "2^1+2^2+2^3",
    "3^1",
    "3^1+3^1",
    "3^1+3^2",
)


@dataclass
class BatteryResult:
    group: str
    order_end: int
    order_radical: int
    agrees: bool
    quotient_count_ok: bool
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.agrees and self.quotient_count_ok


def load_battery(path: str | Path) -> list[PGroup]:
    """Read ``{"groups": [...]}`` or a bare JSON list of group literals."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("groups", [])
    if not data:
        raise ValueError(f"battery file {path} lists no groups")
    return [PGroup.parse(lit) for lit in data]


def check_group(A: PGroup, criterion: Callable[[Endo], bool] = radical_membership) -> BatteryResult:
    E, mask = radical_oracle_mask(A)
    witness = None
    agrees = True
    for f, in_j in zip(_batch.to_endos(A, E), mask):
        if criterion(f) != bool(in_j):
            agrees = False
            witness = {**f.to_json(), "oracle_in_radical": bool(in_j)}
            break
    n_j = int(mask.sum())
    count_ok = end_order(A) // n_j == layer_decomposition(A).quotient_order
    return BatteryResult(A.literal, end_order(A), n_j, agrees, count_ok, witness)


def run_battery(
    groups: Iterable[PGroup] | None = None, criterion: Callable[[Endo], bool] = radical_membership
) -> list[BatteryResult]:
    groups = [PGroup.parse(g) for g in DEFAULT_BATTERY] if groups is None else list(groups)
    return [check_group(A, criterion) for A in groups]
