"""Counter-based random streams.

Every random draw in the package goes through :func:`stream`, which keys a
Philox generator with ``seed XOR counter``. Two calls with the same pair always
produce the same numbers, independent of call order or process layout.
"""

import numpy as np

MASK64 = (1 << 64) - 1


def stream(seed: int, counter: int = 0) -> np.random.Generator:
    key = (int(seed) ^ int(counter)) & MASK64
    return np.random.Generator(np.random.Philox(key=key))


def derive_seed(seed: int, counter: int) -> int:
    """A 64-bit child seed, for handing a stream to another operation."""
    return int(stream(seed, counter).integers(0, 1 << 63, dtype=np.int64))
