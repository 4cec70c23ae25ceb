"""Deterministic random streams.

Every random quantity is drawn from numpy's PCG64 bit generator seeded by
``SeedSequence([seed, *keys])``. A stream is a pure function of the master
seed and its keys, so work can be split across threads or processes in any
order without changing results, and results are reproducible on any machine
running the same numpy major version.
"""

import secrets

import numpy as np

# Stream keys. Never renumber: they are part of the reproducibility contract.
BOOTSTRAP_STREAM = 1
SUBSAMPLE_STREAM = 2
SUBSAMPLE_BOOTSTRAP_STREAM = 3


def substream(seed: int, *keys: int) -> np.random.Generator:
    """Create the generator for (seed, *keys).

    Args:
        seed: Master seed, 0 <= seed < 2**64.
        keys: Non-negative integers identifying the stream.

    Returns:
        An independent PCG64-backed Generator.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *keys])))


def derive_seed(seed: int, *keys: int) -> int:
    """Derive a 64-bit child seed from (seed, *keys)."""
    state = np.random.SeedSequence([seed, *keys]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def random_seed() -> int:
    """Draw a fresh 64-bit master seed from the OS entropy pool."""
    return secrets.randbits(64)
