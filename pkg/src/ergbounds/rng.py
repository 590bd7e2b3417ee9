"""Counter-based uniform draws keyed by (seed, trial, index).

Philox is a counter-based generator: the k-th 64-bit output under a given key
is a pure function of the key and k. We key each trial with
``(trial << 64) | seed`` and read output ``e`` for canonical edge ``e``, so
edge draws do not depend on evaluation order and trials are disjoint streams.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / (1 << 53)


def _key(seed: int, trial: int) -> int:
    if trial < 0:
        raise ValueError("trial must be non-negative")
    return ((trial & MASK64) << 64) | (seed & MASK64)


def stream(seed: int, trial: int) -> np.random.Generator:
    """Generator over the (seed, trial) stream, for non-edge randomness."""
    return np.random.Generator(np.random.Philox(key=_key(seed, trial)))


def uniforms(seed: int, trial: int, count: int, start: int = 0) -> np.ndarray:
    """Uniforms in [0, 1) at stream positions ``start .. start+count-1``."""
    bg = np.random.Philox(key=_key(seed, trial))
    # four outputs per counter step; skip whole blocks then drop the remainder
    block, offset = divmod(start, 4)
    if block:
        bg.advance(block)
    raw = bg.random_raw(count + offset)[offset:]
    return (raw >> np.uint64(11)).astype(np.float64) * _INV_2_53


def uniform_at(seed: int, trial: int, index: int) -> float:
    return float(uniforms(seed, trial, 1, start=index)[0])
