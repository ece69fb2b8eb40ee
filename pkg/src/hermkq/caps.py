"""Enumeration guard rails shared by every search in the package."""

import os

DEFAULT_CAP = 2**20


class CapExceeded(Exception):
    """A brute-force search space is larger than the configured cap."""


def global_cap() -> int:
    """Current cap; the HERMKQ_CAP environment variable overrides the default."""
    raw = os.environ.get("HERMKQ_CAP")
    if raw is None:
        return DEFAULT_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError("HERMKQ_CAP must be positive")
    return cap


def check_cap(size: int, what: str, cap: int | None = None) -> None:
    limit = cap if cap is not None else global_cap()
    if size > limit:
        raise CapExceeded(f"{what}: search space {size} exceeds cap {limit}")
