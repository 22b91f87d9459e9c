"""Storage alphabet shared by every stage.

The working alphabet has eight symbols with a fixed total order:

    0x00 < 0x01 < 0x02 < 'A' < 'C' < 'G' < 'T' < 'X'

0x00 ends a dictionary file, 0x01 terminates each phrase inside a
dictionary, and 0x02 separates strings (each string is stored with a
run of w copies of 0x02 after its last character).  The 3-bit codes
used by packed dictionaries follow the same order, so comparing codes
is the same as comparing bytes.
"""

END_OF_DICT = 0x00
PHRASE_TERMINATOR = 0x01
SEPARATOR = 0x02

LETTERS = b"ACGT"
PLACEHOLDER = ord("X")

# All storage symbols in sort order.
SYMBOLS = bytes([END_OF_DICT, PHRASE_TERMINATOR, SEPARATOR]) + LETTERS + bytes([PLACEHOLDER])

# byte value -> 3-bit code, and back
CODE_OF_BYTE = {b: i for i, b in enumerate(SYMBOLS)}
BYTE_OF_CODE = {i: b for i, b in enumerate(SYMBOLS)}

# Lowest byte value a sequence letter can have; anything below is a sentinel.
FIRST_LETTER = ord("A")


def is_letter(byte: int) -> bool:
    return byte >= FIRST_LETTER


def check_normalized(seq: bytes) -> None:
    """Raise if seq contains bytes outside {A, C, G, T, X}."""
    allowed = frozenset(LETTERS + bytes([PLACEHOLDER]))
    bad = set(seq) - allowed
    if bad:
        raise ValueError(f"sequence contains non-normalized bytes: {sorted(bad)}")
