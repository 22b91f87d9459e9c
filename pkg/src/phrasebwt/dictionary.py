"""Phrase dictionaries: storage, packing, suffix order.

A dictionary is the byte-sorted set of distinct phrases of one parsed
collection with per-phrase occurrence counts.  In storage the phrases are
concatenated, each followed by a 0x01 terminator; `d_size` counts the
concatenation including terminators.  Suffixes of that concatenation are
the unit everything downstream works with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .alphabet import CODE_OF_BYTE, END_OF_DICT, PHRASE_TERMINATOR, SEPARATOR, SYMBOLS
from .errors import ParamsMismatchError
from .params import ParseParams

_CODES = np.full(256, 255, dtype=np.uint8)
for _b, _c in CODE_OF_BYTE.items():
    _CODES[_b] = _c
_BYTES = np.frombuffer(SYMBOLS, dtype=np.uint8)


def suffix_array(data: bytes | np.ndarray) -> np.ndarray:
    """Suffix order of a byte string, by rank doubling.

    Lexicographic byte order; a suffix that is a prefix of another sorts
    first.  Returns int64 offsets.
    """
    if isinstance(data, (bytes, bytearray, memoryview)):
        arr = np.frombuffer(bytes(data), dtype=np.uint8).astype(np.int64)
    else:
        arr = np.asarray(data, dtype=np.int64)
    n = len(arr)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(arr, return_inverse=True)
    rank = rank.astype(np.int64)
    span = 1
    while rank.max() != n - 1:
        key = rank * np.int64(n + 1)
        key[: n - span] += rank[span:] + 1
        order = np.argsort(key, kind="stable")
        _, rank = np.unique(key, return_inverse=True)
        rank = rank.astype(np.int64)
        span *= 2
    out = np.empty(n, dtype=np.int64)
    out[rank] = np.arange(n, dtype=np.int64)
    return out


class _PhraseStore:
    """Shared offset machinery over a sorted-or-concatenated phrase list."""

    phrases: list[bytes]
    occ: np.ndarray
    params: ParseParams

    @cached_property
    def dict_string(self) -> bytes:
        return b"".join(p + bytes([PHRASE_TERMINATOR]) for p in self.phrases)

    @cached_property
    def phrase_end(self) -> np.ndarray:
        """Content end of each phrase = offset of its terminator."""
        lengths = np.fromiter((len(p) for p in self.phrases), dtype=np.int64, count=len(self.phrases))
        return np.cumsum(lengths + 1) - 1

    @cached_property
    def content_start(self) -> np.ndarray:
        starts = np.empty(len(self.phrases), dtype=np.int64)
        starts[0] = 0
        starts[1:] = self.phrase_end[:-1] + 1
        return starts

    @property
    def d_size(self) -> int:
        return len(self.dict_string)

    @property
    def total_padded_length(self) -> int:
        """Sum of occ * (len - w): one slot per padded text character."""
        lengths = np.fromiter((len(p) for p in self.phrases), dtype=np.int64, count=len(self.phrases))
        return int(np.sum(self.occ * (lengths - self.params.w)))

    def build_suffix_array(self) -> np.ndarray:
        return suffix_array(self.dict_string)


@dataclass
class Dictionary(_PhraseStore):
    """Sorted distinct phrases of one collection, with occurrence counts."""

    phrases: list[bytes]
    occ: np.ndarray
    dataset_id: int
    params: ParseParams

    def __post_init__(self):
        self.occ = np.asarray(self.occ, dtype=np.int64)

    @classmethod
    def from_counts(cls, counts: dict[bytes, int], dataset_id: int, params: ParseParams) -> "Dictionary":
        phrases = sorted(counts)
        occ = np.fromiter((counts[p] for p in phrases), dtype=np.int64, count=len(phrases))
        return cls(phrases=phrases, occ=occ, dataset_id=dataset_id, params=params)

    @property
    def string_count(self) -> int:
        """Strings in the source collection; each contributes exactly one
        phrase starting with the separator run."""
        return int(sum(int(o) for p, o in zip(self.phrases, self.occ) if p[0] == SEPARATOR))

    def validate_against(self, other_params: ParseParams) -> None:
        other_params.require_same(self.params, f"dictionary for dataset {self.dataset_id}")


@dataclass
class ConcatDictionary(_PhraseStore):
    """Per-dataset dictionaries laid end to end, provenance preserved."""

    phrases: list[bytes]
    occ: np.ndarray
    dataset_of: np.ndarray
    params: ParseParams
    dataset_sizes: list[int] = field(default_factory=list)


def concat_dictionaries(dicts: list[Dictionary]) -> ConcatDictionary:
    if not dicts:
        raise ValueError("no dictionaries to concatenate")
    params = dicts[0].params
    for d in dicts[1:]:
        if d.params != params:
            raise ParamsMismatchError(
                f"dataset {d.dataset_id} was parsed with {d.params}, expected {params}"
            )
    phrases: list[bytes] = []
    occ_parts = []
    ds_parts = []
    sizes = []
    for idx, d in enumerate(dicts):
        phrases.extend(d.phrases)
        occ_parts.append(d.occ)
        ds_parts.append(np.full(len(d.phrases), idx, dtype=np.int64))
        sizes.append(d.d_size)
    return ConcatDictionary(
        phrases=phrases,
        occ=np.concatenate(occ_parts),
        dataset_of=np.concatenate(ds_parts),
        params=params,
        dataset_sizes=sizes,
    )


class PackedDictionary:
    """3 bits per character over the eight storage symbols.

    The packed stream covers the dictionary concatenation plus the final
    end-of-dictionary symbol, most significant bits first, zero-padded to a
    byte boundary.  Code order equals byte order, so packed comparisons can
    work on blocks of twenty 3-bit codes (60 bits) at a time.
    """

    BLOCK_SYMBOLS = 20

    def __init__(self, packed: bytes, n_symbols: int, params: ParseParams):
        self.packed = packed
        self.n_symbols = n_symbols
        self.params = params

    @classmethod
    def pack(cls, store: _PhraseStore) -> "PackedDictionary":
        data = store.dict_string + bytes([END_OF_DICT])
        return cls.pack_bytes(data, store.params)

    @classmethod
    def pack_bytes(cls, data: bytes, params: ParseParams) -> "PackedDictionary":
        codes = _CODES[np.frombuffer(data, dtype=np.uint8)]
        if codes.size and codes.max() > 7:
            raise ValueError("data contains bytes outside the storage alphabet")
        bits = np.zeros((len(codes), 3), dtype=np.uint8)
        bits[:, 0] = codes >> 2
        bits[:, 1] = (codes >> 1) & 1
        bits[:, 2] = codes & 1
        return cls(np.packbits(bits.ravel(), bitorder="big").tobytes(), len(codes), params)

    def unpack(self) -> bytes:
        return self.unpack_range(0, self.n_symbols)

    def unpack_range(self, start: int, count: int) -> bytes:
        """Decode `count` symbols starting at symbol offset `start`."""
        if count <= 0:
            return b""
        end = min(start + count, self.n_symbols)
        count = end - start
        bit0 = start * 3
        byte0, bit_in = divmod(bit0, 8)
        nbytes = (bit_in + count * 3 + 7) // 8
        chunk = np.frombuffer(self.packed[byte0 : byte0 + nbytes], dtype=np.uint8)
        bits = np.unpackbits(chunk, bitorder="big")[bit_in : bit_in + count * 3]
        codes = bits[0::3].astype(np.uint8) << 2 | bits[1::3] << 1 | bits[2::3]
        return _BYTES[codes].tobytes()

    @property
    def nbytes(self) -> int:
        return len(self.packed)

    def _block(self, symbol_offset: int) -> int:
        """60-bit integer holding 20 symbols, zero-padded past the end."""
        bit0 = symbol_offset * 3
        byte0 = bit0 // 8
        chunk = self.packed[byte0 : byte0 + 9]
        value = int.from_bytes(chunk.ljust(9, b"\x00"), "big")
        return (value >> (72 - (bit0 - byte0 * 8) - 60)) & ((1 << 60) - 1)

    def compare(self, a: int, b: int) -> int:
        """Order of the suffixes starting at symbol offsets a and b.

        Matches byte-wise comparison of the unpacked suffixes; a suffix that
        runs off the end behaves as if padded with the lowest symbol.
        """
        if a == b:
            return 0
        n = self.n_symbols
        step = self.BLOCK_SYMBOLS
        pos = 0
        limit = n - min(a, b)
        while pos < limit:
            block_a = self._block(a + pos)
            block_b = self._block(b + pos)
            if block_a != block_b:
                return -1 if block_a < block_b else 1
            pos += step
        # one suffix exhausted with a common prefix: the shorter sorts first
        return -1 if a > b else 1


def compare_suffixes(a: int, b: int, store) -> int:
    """Three-way order of two suffixes of a dictionary concatenation.

    `store` is a Dictionary/ConcatDictionary (plain bytes) or a
    PackedDictionary.  Order is plain byte order with terminators included,
    identical between the two representations.
    """
    if isinstance(store, PackedDictionary):
        return store.compare(a, b)
    data = store.dict_string
    if a == b:
        return 0
    n = len(data)
    chunk = 64
    pos = 0
    while True:
        ca = data[a + pos : min(a + pos + chunk, n)]
        cb = data[b + pos : min(b + pos + chunk, n)]
        if ca != cb:
            # bytes comparison already puts a strict prefix first
            return -1 if ca < cb else 1
        if len(ca) < chunk:
            # equal all the way to the end of the data; shorter suffix first
            return -1 if a > b else 1
        pos += chunk
