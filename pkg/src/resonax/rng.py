"""Counter-based candidate streams for reproducible Monte Carlo.

Candidates are produced in fixed-size chunks; chunk c draws from a Philox
generator keyed by (seed, c), so the value of candidate i depends only on
(seed, i) and never on how chunks are scheduled across workers.  Any scheduler
that evaluates chunks independently and reduces partial results in chunk-index
order reproduces identical bits.

CHUNK_SIZE is part of the stream protocol; changing it changes every stream.
"""

from __future__ import annotations

import numpy as np

CHUNK_SIZE = 8192

_MASK64 = (1 << 64) - 1


def chunk_uniforms(seed: int, chunk_index: int, columns: int, size: int = CHUNK_SIZE) -> np.ndarray:
    """Uniform [0,1) draws of shape (size, columns) for one chunk of the stream."""
    key = np.array([seed & _MASK64, chunk_index & _MASK64], dtype=np.uint64)
    generator = np.random.Generator(np.random.Philox(key=key))
    return generator.random((size, columns))


def chunk_points(radii, seed: int, chunk_index: int, extra_columns: int = 0, size: int = CHUNK_SIZE):
    """One chunk of uniform candidates from the polydisc with the given radii.

    Per candidate the first n uniforms are disc radii, the next n are angles;
    any extra_columns uniforms follow and are returned untouched (used e.g.
    for torus parameters).  Returns (points (size, n) complex, extras).
    """
    radii = np.asarray(radii, dtype=np.float64)
    n = radii.shape[0]
    u = chunk_uniforms(seed, chunk_index, 2 * n + extra_columns, size)
    points = radii * np.sqrt(u[:, :n]) * np.exp(2j * np.pi * u[:, n : 2 * n])
    extras = u[:, 2 * n :]
    return points, extras
