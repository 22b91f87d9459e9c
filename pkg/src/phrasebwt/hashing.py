"""Rolling polynomial hash over fixed-length byte windows.

The hash of a window c1..cw is sum(c_i * base^(w-i)) mod m.  A window is a
phrase trigger when its hash is 0 modulo p.  Correctness of the pipeline
never depends on the hash being collision-free (triggers are defined by the
hash value itself), but the constants must be identical across every
artifact that is later combined.
"""

from __future__ import annotations

import numpy as np

from .params import ParseParams


class RollingHash:
    """Incremental window hash: push one byte in, one byte out, O(1) each."""

    def __init__(self, params: ParseParams):
        self.base = params.hash_base
        self.mod = params.hash_mod
        # base^(w-1) used to remove the outgoing byte
        self.out_factor = pow(self.base, params.w - 1, self.mod)
        self.value = 0

    def reset(self, window: bytes) -> int:
        """Initialize from a full window, returning its hash."""
        h = 0
        for b in window:
            h = (h * self.base + b) % self.mod
        self.value = h
        return h

    def roll(self, outgoing: int, incoming: int) -> int:
        """Shift the window one byte: drop `outgoing`, append `incoming`."""
        h = (self.value - outgoing * self.out_factor) % self.mod
        self.value = (h * self.base + incoming) % self.mod
        return self.value


def window_hash(window: bytes, params: ParseParams) -> int:
    """Hash one window from scratch."""
    h = 0
    for b in window:
        h = (h * params.hash_base + b) % params.hash_mod
    return h


def all_window_hashes(data: bytes, params: ParseParams) -> np.ndarray:
    """Hashes of every w-window of data, as uint64, vectorized.

    Returns an array of length len(data) - w + 1 (empty if data is shorter
    than w).  Equivalent to hashing each window from scratch; products stay
    below 2**64 because the modulus fits 32 bits.
    """
    w = params.w
    n = len(data)
    if n < w:
        return np.zeros(0, dtype=np.uint64)
    arr = np.frombuffer(data, dtype=np.uint8).astype(np.uint64)
    base = np.uint64(params.hash_base)
    mod = np.uint64(params.hash_mod)
    count = n - w + 1
    h = np.zeros(count, dtype=np.uint64)
    for i in range(w):
        h = (h * base + arr[i : i + count]) % mod
    return h
