"""Deterministic seed derivation for hierarchical generators.

Python's builtin hash() is salted per process, so derived seeds go through
SHA-256 instead. Same inputs always give the same child seed, across runs
and platforms.
"""

from __future__ import annotations

import hashlib
import random

MAX_SEED = 2**64


def derive_seed(*parts: int | str) -> int:
    """Mix a root seed and a path of labels/indices into a 64-bit child seed."""
    digest = hashlib.sha256("\x1f".join(str(p) for p in parts).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % MAX_SEED


def rng_for(*parts: int | str) -> random.Random:
    """A fresh RNG keyed by the given seed path."""
    return random.Random(derive_seed(*parts))
