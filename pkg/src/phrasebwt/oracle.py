"""Brute-force reference implementations, for tests and `verify` only.

Everything here recomputes results from first principles and shares no
parsing or sorting code with the production path (only the alphabet
constants and padding convention).  Inputs are capped: this module is for
desk-scale cross-checking, not real workloads.

Suffix order convention (same as the production builder): every string is
padded with w separator bytes; separators of different strings behave as
distinct symbols ranked by (dataset order, string order); the character
preceding a string's first suffix is its final separator.
"""

from __future__ import annotations

import numpy as np

from .alphabet import SEPARATOR
from .errors import OracleSizeError
from .normalize import SequenceCollection
from .params import ParseParams

DEFAULT_SIZE_CAP = 1_000_000


def _rank_doubling_order(symbols: np.ndarray) -> np.ndarray:
    """Sort all suffixes of an integer sequence; returns the suffix order."""
    n = len(symbols)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.argsort(symbols, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    sorted_vals = symbols[order]
    rank[order] = np.cumsum(np.concatenate(([0], (np.diff(sorted_vals) != 0).astype(np.int64))))
    k = 1
    while rank[order[-1]] != n - 1:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        changed = (rank[order][1:] != rank[order][:-1]) | (second[order][1:] != second[order][:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(np.concatenate(([0], changed.astype(np.int64))))
        rank = new_rank
        k *= 2
    return order


def naive_multi_bwt(
    collections: list[SequenceCollection],
    w: int,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> bytes:
    """Multi-string BWT of all strings of all collections, by suffix sorting.

    Strings are taken in (collection, string) order.  The output has one
    character per padded text position.
    """
    strings = [seq for coll in collections for seq in coll.sequences]
    total = sum(len(s) + w for s in strings)
    if total > size_cap:
        raise OracleSizeError(f"padded input is {total} chars, cap is {size_cap}")

    # Integer alphabet: 0 marks end-of-string (excluded from output),
    # 1+r is the separator of string r, letters sit above all separators.
    n_strings = len(strings)
    letter_base = 1 + n_strings
    parts = []
    for r, s in enumerate(strings):
        arr = np.frombuffer(s, dtype=np.uint8).astype(np.int64) + letter_base
        parts.append(arr)
        parts.append(np.full(w, 1 + r, dtype=np.int64))
        parts.append(np.zeros(1, dtype=np.int64))
    symbols = np.concatenate(parts)

    # For each position: the storage byte it emits into the BWT when the
    # suffix that follows it is ranked, and whether it is a real text
    # position (end markers are not).
    out_char = np.empty(len(symbols), dtype=np.uint8)
    is_text = np.zeros(len(symbols), dtype=bool)
    pos = 0
    for s in strings:
        length = len(s) + w
        is_text[pos : pos + length] = True
        # preceding characters, circular within the padded string
        out_char[pos] = SEPARATOR
        if len(s) > 0:
            block = np.frombuffer(s, dtype=np.uint8)
            out_char[pos + 1 : pos + len(s) + 1] = block
        out_char[pos + len(s) + 1 : pos + length] = SEPARATOR
        pos += length + 1

    order = _rank_doubling_order(symbols)
    keep = is_text[order]
    return out_char[order[keep]].tobytes()


def naive_window_hashes(data: bytes, params: ParseParams) -> np.ndarray:
    """Hash of every w-window of data, each evaluated independently.

    Organized as a sum of per-offset power terms, unlike the production
    Horner scan, so the two paths make independent mistakes.
    """
    w, base, mod = params.w, params.hash_base, params.hash_mod
    n = len(data)
    if n < w:
        return np.zeros(0, dtype=np.uint64)
    arr = np.frombuffer(data, dtype=np.uint8).astype(np.uint64)
    count = n - w + 1
    acc = np.zeros(count, dtype=np.uint64)
    for j in range(w):
        power = np.uint64(pow(base, w - 1 - j, mod))
        acc = (acc + arr[j : j + count] * power) % np.uint64(mod)
    return acc


def naive_window_scan(seq: bytes, params: ParseParams) -> list[tuple[int, bytes]]:
    """Trigger positions and window contents of one padded sequence."""
    padded = seq + bytes([SEPARATOR]) * params.w
    hashes = naive_window_hashes(padded, params)
    out = []
    for i in np.nonzero(hashes % np.uint64(params.p) == 0)[0]:
        i = int(i)
        out.append((i, padded[i : i + params.w]))
    return out
