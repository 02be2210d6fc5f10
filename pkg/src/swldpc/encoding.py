"""Systematic encoding: only the parity block is ever transmitted.

The staircase makes encoding a single forward pass: row i's parity bit is
the XOR of its systematic entries and the previous parity bit, so the whole
block is the prefix-XOR of the per-row systematic parities. Cost is linear
in the number of ones in the matrix.
"""

from __future__ import annotations

import numpy as np

from .codes import CodeSpec, SparseParityMatrix

__all__ = ["encode", "compression_rate"]


def as_bit_array(bits, length: int, name: str) -> np.ndarray:
    """Validate and convert a bit sequence to a uint8 array of given length."""
    arr = np.asarray(bits)
    if arr.ndim != 1 or arr.size != length:
        raise ValueError(f"{name} must be a flat sequence of {length} bits, got shape {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must contain only 0s and 1s")
    return arr.astype(np.uint8)


def encode(h: SparseParityMatrix, x) -> np.ndarray:
    """Compress source block x to its parity block z of length n - k.

    z[0] is the parity of row 0's systematic entries; each later z[i] adds
    row i's systematic parity onto z[i-1] (all mod 2).
    """
    x = as_bit_array(x, h.k, "source block")
    plan = h.encode_plan()
    csum = np.concatenate([[0], np.cumsum(x[plan.col], dtype=np.int64)])
    row_parity = (csum[plan.ptr[1:]] - csum[plan.ptr[:-1]]) & 1
    z = np.cumsum(row_parity, dtype=np.int64) & 1
    return z.astype(np.uint8)


def compression_rate(spec: CodeSpec) -> float:
    """Parity bits per source bit, (n - k) / k."""
    return (spec.n - spec.k) / spec.k
