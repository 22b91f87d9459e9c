"""Parsing parameters carried by every artifact header."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParamsMismatchError

# Defaults.  The window length of 20 is a good general-purpose choice for
# making sub-collections dissimilar; the modulus default of 100 targets
# large inputs and should be lowered for small test data.  The hash base
# and modulus are frozen constants: artifacts are only mergeable when all
# four values match.  The modulus fits 32 bits so window hashes can be
# recomputed with vectorized uint64 arithmetic.
DEFAULT_W = 20
DEFAULT_P = 100
DEFAULT_HASH_BASE = 263
DEFAULT_HASH_MOD = 4294967291  # largest 32-bit prime


@dataclass(frozen=True)
class ParseParams:
    w: int = DEFAULT_W
    p: int = DEFAULT_P
    hash_base: int = DEFAULT_HASH_BASE
    hash_mod: int = DEFAULT_HASH_MOD

    def __post_init__(self):
        if self.w < 2:
            raise ValueError(f"window length must be >= 2, got {self.w}")
        if self.p < 1:
            raise ValueError(f"trigger modulus must be >= 1, got {self.p}")
        if not (1 < self.hash_base < self.hash_mod):
            raise ValueError("hash base must satisfy 1 < base < mod")
        if self.hash_mod >= 1 << 32:
            raise ValueError("hash modulus must fit in 32 bits")

    def require_same(self, other: "ParseParams", what: str = "artifact") -> None:
        if self != other:
            raise ParamsMismatchError(
                f"{what} was produced with {other}, expected {self}"
            )
