"""Named, versioned sub-seed derivation.

Every randomized component derives an independent child seed from
(version tag, base seed, path), so parallel or reordered generation cannot
change results and regenerating with the same spec is byte-identical.
"""

from __future__ import annotations

import hashlib

import numpy as np

RNG_VERSION = "divgraph-rng-v1"


def subseed(seed: int, *path: object) -> int:
    """64-bit child seed for the given base seed and derivation path."""
    text = "|".join([RNG_VERSION, str(int(seed))] + [str(p) for p in path])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def rng(seed: int, *path: object) -> np.random.Generator:
    """Deterministic generator for the given base seed and derivation path."""
    return np.random.Generator(np.random.PCG64(subseed(seed, *path)))
