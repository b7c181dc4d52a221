"""Run configuration shared by the CLI, gallery constructions and verifiers."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import FieldError
from .fields import is_prime

ENV_GB_PAIRS = "CREMONA_GB_PAIRS"
ENV_ENUM_BUDGET = "CREMONA_ENUM_BUDGET"


@dataclass(frozen=True)
class RunConfig:
    """Budgets, prime, seed and output knobs for a verification run."""

    prime: int = 101
    extension_bound: int = 3
    gb_pair_budget: int = 200_000
    gb_degree_cap: int = 30
    enumeration_budget: int = 200_000
    trials: int = 30
    seed: int = 20240
    retry_budget: int = 50
    output: str | None = None
    timings: bool = False

    def __post_init__(self):
        if not is_prime(self.prime):
            raise FieldError(f"{self.prime} is not prime")
        for name in ("gb_pair_budget", "gb_degree_cap", "enumeration_budget", "trials", "retry_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_env(cls, **overrides):
        """Defaults, then environment variables, then explicit overrides."""
        base = {}
        if ENV_GB_PAIRS in os.environ:
            base["gb_pair_budget"] = int(os.environ[ENV_GB_PAIRS])
        if ENV_ENUM_BUDGET in os.environ:
            base["enumeration_budget"] = int(os.environ[ENV_ENUM_BUDGET])
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)

    def with_prime(self, p):
        return replace(self, prime=p)
