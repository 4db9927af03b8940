"""Counter-style deterministic randomness with explicit seed splitting.

Every random choice in the library derives from a 64-bit master seed plus
a label path, e.g. ``split(seed, "ldd", level, rep)``.  There is no global
RNG state, so concurrent or re-ordered invocations see the same streams.
"""
from __future__ import annotations

import hashlib
import random

_MASK = (1 << 64) - 1


def split(seed: int, *labels) -> int:
    """Derive a child seed from (seed, labels) via a keyed hash."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(seed) & _MASK).encode())
    for lab in labels:
        h.update(b"/")
        h.update(str(lab).encode())
    return int.from_bytes(h.digest(), "little")


def rng(seed: int, *labels) -> random.Random:
    """A stdlib Random seeded from the split of (seed, labels)."""
    return random.Random(split(seed, *labels))
