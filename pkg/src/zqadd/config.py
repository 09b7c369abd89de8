"""Run configuration shared by the CLI and the verification suite."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field


PROFILES = ("smoke", "desk", "deep")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    workers: int = 1
    budget_nodes: int = 50_000_000
    budget_seconds: float = 600.0
    profile: str = "desk"

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ValueError(f"profile must be one of {PROFILES}")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def derived_seed(self, label: str, index: int = 0) -> int:
        """A stable per-task seed: independent tasks get independent
        streams regardless of scheduling order."""
        digest = hashlib.sha256(f"{self.seed}/{label}/{index}".encode()).digest()
        return int.from_bytes(digest[:8], "big")

    def rng(self, label: str, index: int = 0) -> random.Random:
        return random.Random(self.derived_seed(label, index))
