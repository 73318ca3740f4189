"""Pairwise-parity encoding of n logical bits into k = n(n-1)/2 physical bits.

Physical bit g_ij = b_i xor b_j for every unordered pair 1 <= i < j <= n.
Pairs are laid out in row-major upper-triangular order:

    (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n)

which matches np.triu_indices(n, 1). The map b -> g is 2-to-1 (b and its
complement encode the same word), so logical readout fixes the gauge b_1 = 0.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DimensionError, InvalidPairError

__all__ = [
    "num_pairs",
    "num_logical",
    "pair_index",
    "index_pair",
    "pair_table",
    "as_bits",
    "encode",
    "logical_readout",
    "consecutive_bits",
    "consecutive_indices",
    "logical_from_consecutive",
]


def num_pairs(n: int) -> int:
    """Number of physical bits for n logical bits."""
    return n * (n - 1) // 2


def num_logical(k: int) -> int:
    """Invert k = n(n-1)/2. Raises DimensionError if k is not a pair count."""
    n = (1 + math.isqrt(1 + 8 * k)) // 2
    if n < 2 or num_pairs(n) != k:
        raise DimensionError(f"word length {k} is not n(n-1)/2 for any n >= 2")
    return n


def pair_index(i: int, j: int, n: int) -> int:
    """Linear index of the pair (i, j) with 1 <= i < j <= n."""
    if not 1 <= i < j <= n:
        raise InvalidPairError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


def index_pair(k: int, n: int) -> tuple[int, int]:
    """Pair (i, j) sitting at linear index k; inverse of pair_index."""
    if not 0 <= k < num_pairs(n):
        raise InvalidPairError(f"index {k} out of range for n={n} ({num_pairs(n)} pairs)")
    return pair_table(n)[k]


@lru_cache(maxsize=None)
def pair_table(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs (i, j), 1 <= i < j <= n, in linear index order."""
    return tuple((i, j) for i in range(1, n) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def _triu(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(n, 1)
    iu.setflags(write=False)
    ju.setflags(write=False)
    return iu, ju


def as_bits(seq) -> np.ndarray:
    """Coerce to a 1-D uint8 array of 0/1. Accepts strings like "0110"."""
    if isinstance(seq, str):
        if not set(seq) <= {"0", "1"}:
            raise ValueError(f"bit string may only contain 0 and 1, got {seq!r}")
        seq = [int(c) for c in seq]
    a = np.asarray(seq)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D bit sequence, got shape {a.shape}")
    if a.size and not np.isin(a, (0, 1)).all():
        raise ValueError("bits must be 0 or 1")
    return a.astype(np.uint8)


def encode(bits) -> np.ndarray:
    """Physical word g with g_ij = b_i xor b_j, in pair index order."""
    b = as_bits(bits)
    if b.size < 2:
        raise DimensionError(f"need at least 2 logical bits, got {b.size}")
    iu, ju = _triu(b.size)
    return b[iu] ^ b[ju]


def logical_readout(g) -> np.ndarray:
    """Gauge-fixed logical word from a physical word: b_1 = 0, b_j = g_1j.

    Only exact on codewords; a noisy word reads out whatever its first
    row says.
    """
    g = as_bits(g)
    n = num_logical(g.size)
    b = np.zeros(n, dtype=np.uint8)
    b[1:] = g[: n - 1]
    return b


@lru_cache(maxsize=None)
def consecutive_indices(n: int) -> np.ndarray:
    """Linear indices of the consecutive pairs (1,2), (2,3), ..., (n-1,n)."""
    idx = np.array([pair_index(i, i + 1, n) for i in range(1, n)], dtype=np.intp)
    idx.setflags(write=False)
    return idx


def consecutive_bits(g) -> np.ndarray:
    """The n-1 bits g_(i,i+1). They fix the logical word up to global flip,
    so two physical words agree logically iff they agree on this slice."""
    g = as_bits(g)
    n = num_logical(g.size)
    return g[consecutive_indices(n)]


def logical_from_consecutive(c) -> np.ndarray:
    """Chain consecutive parities into the gauge-fixed logical word.

    b_1 = 0 and b_(i+1) = b_i xor c_i, so b_j is the running xor of
    c_1 .. c_(j-1).
    """
    c = as_bits(c)
    b = np.zeros(c.size + 1, dtype=np.uint8)
    np.bitwise_xor.accumulate(c, out=b[1:])
    return b
