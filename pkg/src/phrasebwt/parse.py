"""Sliding-window phrase parsing of normalized sequence collections.

Every string is padded with w separator bytes.  A window whose hash is 0
modulo p (and, when a restriction set is given, whose content is in that
set) ends the current phrase; the window bytes are kept in both the ending
phrase and the next one, so consecutive phrases overlap by exactly w
characters.  The all-separator window at the end of the padded string
always ends the last phrase.

The first phrase of each string is stored with a leading run of w
separator bytes standing for the start-of-string boundary.  With that
convention every padded character sits in exactly one phrase outside that
phrase's final w characters, which is what the BWT construction counts on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .alphabet import SEPARATOR, check_normalized
from .dictionary import Dictionary
from .hashing import all_window_hashes
from .normalize import SequenceCollection
from .params import ParseParams

logger = logging.getLogger(__name__)


@dataclass
class Parse:
    """Phrase ids (indices into the sorted dictionary), one array per string."""

    dataset_id: int
    ids_per_string: list[np.ndarray]

    @property
    def total_phrases(self) -> int:
        return sum(len(ids) for ids in self.ids_per_string)


def pad(seq: bytes, w: int) -> bytes:
    return seq + bytes([SEPARATOR]) * w


def collect_triggers(coll: SequenceCollection, params: ParseParams) -> set[bytes]:
    """All distinct w-windows of the padded sequences whose hash is 0 mod p.

    Boundary windows that reach into the separator padding are included;
    the shared-trigger census depends on seeing them.
    """
    p = np.uint64(params.p)
    triggers: set[bytes] = set()
    for seq in coll.sequences:
        padded = pad(seq, params.w)
        hashes = all_window_hashes(padded, params)
        for i in np.nonzero(hashes % p == 0)[0]:
            triggers.add(padded[int(i) : int(i) + params.w])
    return triggers


def break_positions(padded: bytes, params: ParseParams, allowed: frozenset[bytes] | None) -> list[int]:
    """Window offsets that end a phrase, terminal window included.

    Only windows starting before the padding run are hash-tested; the final
    all-separator window ends the string unconditionally.
    """
    w = params.w
    last = len(padded) - w  # offset of the all-separator window
    hashes = all_window_hashes(padded, params)
    hits = np.nonzero(hashes[:last] % np.uint64(params.p) == 0)[0]
    if allowed is None:
        breaks = [int(i) for i in hits]
    else:
        breaks = [int(i) for i in hits if padded[int(i) : int(i) + w] in allowed]
    breaks.append(last)
    return breaks


def phrases_of_string(seq: bytes, params: ParseParams, allowed: frozenset[bytes] | None) -> list[bytes]:
    w = params.w
    padded = pad(seq, w)
    breaks = break_positions(padded, params, allowed)
    out = [bytes([SEPARATOR]) * w + padded[: breaks[0] + w]]
    for prev, cur in zip(breaks, breaks[1:]):
        out.append(padded[prev : cur + w])
    return out


def parse_collection(
    coll: SequenceCollection,
    params: ParseParams,
    allowed: frozenset[bytes] | set[bytes] | None = None,
) -> tuple[Dictionary, Parse]:
    """Parse every string of the collection into phrases.

    Returns the sorted dictionary with occurrence counts and the parse as
    phrase-id sequences.  With `allowed` given, only windows in that set
    break phrases.
    """
    if allowed is not None and not isinstance(allowed, frozenset):
        allowed = frozenset(allowed)
    counts: dict[bytes, int] = {}
    per_string: list[list[bytes]] = []
    for seq in coll.sequences:
        check_normalized(seq)
        phrases = phrases_of_string(seq, params, allowed)
        per_string.append(phrases)
        for ph in phrases:
            counts[ph] = counts.get(ph, 0) + 1

    dictionary = Dictionary.from_counts(counts, coll.dataset_id, params)
    id_of = {ph: i for i, ph in enumerate(dictionary.phrases)}
    parse = Parse(
        dataset_id=coll.dataset_id,
        ids_per_string=[
            np.fromiter((id_of[ph] for ph in phrases), dtype=np.int64, count=len(phrases))
            for phrases in per_string
        ],
    )

    if all(len(ids) == 1 for ids in parse.ids_per_string):
        logger.warning(
            "dataset %d parsed into one phrase per string; "
            "memory benefits of phrase parsing vanish",
            coll.dataset_id,
        )
    return dictionary, parse


def expand(parse: Parse, dictionary: Dictionary) -> list[bytes]:
    """Rebuild the padded strings from a parse (phrases overlap by w)."""
    w = dictionary.params.w
    out = []
    for ids in parse.ids_per_string:
        parts = [dictionary.phrases[int(i)][w:] for i in ids]
        out.append(b"".join(parts))
    return out


def unpad(padded: bytes, w: int) -> bytes:
    if padded[-w:] != bytes([SEPARATOR]) * w:
        raise ValueError("string does not end with the separator run")
    return padded[:-w]
