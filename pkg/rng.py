"""
Seeded random number generation
All draws come from numpy's PCG64; trial seeds are derived by hashing
"""
import hashlib

import numpy as np

GENERATOR_NAME = 'pcmas-pcg64-v1'


def derive_seed(base: int, *keys) -> int:
    """Stable 64-bit seed from a base seed and any repr-able keys"""
    digest = hashlib.blake2b(repr((int(base),) + keys).encode('utf-8'), digest_size=8)
    return int.from_bytes(digest.digest(), 'little')


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))
