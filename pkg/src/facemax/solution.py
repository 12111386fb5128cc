"""Result record shared by the exact, approximate and brute-force solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import RotationEmbedding


@dataclass
class Solution:
    value: int
    embedding: RotationEmbedding
    realized: tuple[int, ...]
    mode: str
    factor: float = 1.0
    theorem: str = ""
    runtime: float = 0.0
    heuristic: bool = False  # true when the reported factor carries no guarantee
    stats: dict = field(default_factory=dict)

    @property
    def factor_label(self) -> str:
        if self.factor == 1.0:
            return "1"
        label = f"{self.factor:g}"
        return label + " (heuristic, guarantee void)" if self.heuristic else label
