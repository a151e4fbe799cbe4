"""Deterministic random-number streams.

Every source of randomness in the package flows from an integer master seed.
Child streams are derived from ``(seed, key...)`` with ``SeedSequence`` spawn
keys, so results are identical no matter how work is scheduled across
processes or how many workers run.
"""

from __future__ import annotations

import numpy as np


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    """Return the generator for stream ``key`` under master ``seed``.

    The same ``(seed, key)`` always yields the same stream; distinct keys give
    statistically independent streams.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))
