"""Configuration management for qhyper."""

import os
from dataclasses import dataclass, field
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


@dataclass
class Settings:
    """Run-time settings loaded from environment variables."""

    # Determinism
    seed: int = field(default_factory=lambda: _env_int("QHYPER_SEED", 0))

    # Specialized-q membership
    samples: int = field(default_factory=lambda: _env_int("QHYPER_SAMPLES", 3))

    # Membership resource limits
    max_dim: int = field(default_factory=lambda: _env_int("QHYPER_MAX_DIM", 200_000))
    max_rows: int = field(default_factory=lambda: _env_int("QHYPER_MAX_ROWS", 1_000_000))

    # Exact mode is the default below these sizes
    exact_max_degree: int = field(default_factory=lambda: _env_int("QHYPER_EXACT_MAX_DEGREE", 4))
    exact_max_alphabet: int = field(default_factory=lambda: _env_int("QHYPER_EXACT_MAX_ALPHABET", 30))

    threads: int = field(default_factory=lambda: _env_int("QHYPER_THREADS", 1))

    # Cache
    cache_entries: int = field(default_factory=lambda: _env_int("QHYPER_CACHE_ENTRIES", 256))

    log_level: str = field(default_factory=lambda: os.getenv("QHYPER_LOG_LEVEL", "WARNING").upper())

    def validate(self) -> list[str]:
        """Validate settings and return a list of problems (empty when usable)."""
        problems = []

        if self.samples < 1:
            problems.append(f"QHYPER_SAMPLES must be >= 1 (got {self.samples})")
        if self.max_dim < 1:
            problems.append(f"QHYPER_MAX_DIM must be >= 1 (got {self.max_dim})")
        if self.max_rows < 1:
            problems.append(f"QHYPER_MAX_ROWS must be >= 1 (got {self.max_rows})")
        if self.threads < 1:
            problems.append(f"QHYPER_THREADS must be >= 1 (got {self.threads})")
        if self.cache_entries < 0:
            problems.append(f"QHYPER_CACHE_ENTRIES must be >= 0 (got {self.cache_entries})")

        return problems

    def prefers_exact(self, degree: int, alphabet_size: int) -> bool:
        """Whether a membership query of this size defaults to exact mode."""
        return degree <= self.exact_max_degree and alphabet_size <= self.exact_max_alphabet


# Global settings instance
settings = Settings()
