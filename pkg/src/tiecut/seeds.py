"""Deterministic RNG stream derivation.

All randomness in the package flows through named child streams of a
single integer seed.  Streams are derived with ``numpy``'s
``SeedSequence`` spawn keys, so two runs with the same seed are
bitwise identical while distinct paths are statistically independent.

Path components may be non-negative integers or short strings; strings
are folded into integers by their byte content, so the mapping is
stable across processes and platforms.
"""

from __future__ import annotations

import numpy as np

__all__ = ["derive_rng", "child_seed"]


def _as_key(part) -> int:
    if isinstance(part, (bool, float)):
        raise TypeError(f"stream path components must be int or str, got {part!r}")
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError(f"stream path components must be non-negative, got {part}")
        return int(part)
    if isinstance(part, str):
        # Offset by 1 so the empty string cannot collide with integer 0.
        return int.from_bytes(part.encode("utf-8"), "little") * 2 + 1
    raise TypeError(f"stream path components must be int or str, got {part!r}")


def derive_rng(seed: int, *path) -> np.random.Generator:
    """Return a generator for the child stream ``seed / path``.

    Parameters
    ----------
    seed : int
        Master seed, non-negative.
    *path : int or str
        Stream name, e.g. ``derive_rng(s, "edges")`` or
        ``derive_rng(s, "ties", replicate, "harmonic")``.
    """
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    key = tuple(_as_key(p) for p in path)
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=key))


def child_seed(seed: int, *path) -> int:
    """Derive a plain integer seed for the child stream ``seed / path``.

    Useful where an API takes a seed rather than a generator (tie
    breaking, per-replicate configs).
    """
    return int(derive_rng(seed, *path).integers(0, 2**63))
