import os
from dataclasses import dataclass, fields

ENV_PREFIX = "MST_FORTIFY_"


@dataclass(frozen=True, kw_only=True)
class Limits:
    """Size guards for the exhaustive parts of the library."""

    max_partition_vertices: int = 10
    max_cut_vertices: int = 12
    max_oracle_vertices: int = 8
    max_oracle_target: int = 5
    max_oracle_candidates: int = 2_000_000

    @classmethod
    def from_env(cls) -> "Limits":
        overrides = {}
        for field in fields(cls):
            value = os.getenv(ENV_PREFIX + field.name.upper())
            if value:
                overrides[field.name] = int(value)
        return cls(**overrides)


def current_limits(limits: Limits | None = None) -> Limits:
    return limits or Limits.from_env()
