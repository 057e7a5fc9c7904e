"""Seeded random streams.

Every generator in the package is built from an explicit unsigned seed via
Philox, a counter-based bit generator, so that streams can be derived per
path or per block without shared state.
"""

import numpy as np


def generator(seed, *key):
    """Independent ``numpy.random.Generator`` for ``seed`` and an optional key path."""
    if seed < 0:
        raise ValueError(f"seed must be an unsigned integer, got {seed}")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed, *key):
    """Deterministic 63-bit child seed of ``seed`` along ``key``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
