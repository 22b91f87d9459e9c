"""Ingest FASTA or plain text into normalized sequence collections.

Normalization removes record structure (headers, newlines), uppercases
soft-masked acgt, and maps every other byte to 'X'.  Each FASTA record
(or plain-text line) becomes one string of the collection, in input order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

from .errors import IngestionError

# byte -> normalized byte; identity for ACGT, case fold for acgt, X otherwise
_TABLE = bytearray(ord("X") for _ in range(256))
for _c in b"ACGT":
    _TABLE[_c] = _c
    _TABLE[_c + 32] = _c
_TABLE = bytes(_TABLE)


@dataclass
class SequenceCollection:
    """An ordered list of normalized byte strings from one input."""

    dataset_id: int
    sequences: list[bytes] = field(default_factory=list)
    source_name: str = ""

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.sequences)


def normalize_record(raw: bytes) -> bytes:
    return raw.translate(_TABLE)


def _fasta_records(stream: BinaryIO) -> Iterable[tuple[str, bytes]]:
    name = None
    chunks: list[bytes] = []
    for line in stream:
        line = line.rstrip(b"\r\n")
        if line.startswith(b">"):
            if name is not None:
                yield name, b"".join(chunks)
            name = line[1:].split(b" ", 1)[0].decode("ascii", "replace") or "<unnamed>"
            chunks = []
        elif name is None:
            raise IngestionError("FASTA input does not start with a '>' header")
        else:
            chunks.append(line)
    if name is not None:
        yield name, b"".join(chunks)


def normalize(stream: BinaryIO, fmt: str, dataset_id: int = 0, source_name: str = "") -> SequenceCollection:
    """Read a FASTA or plain stream and return the normalized collection.

    Plain format treats each line as one sequence.  Empty records and empty
    input are rejected.
    """
    coll = SequenceCollection(dataset_id=dataset_id, source_name=source_name)
    if fmt == "fasta":
        for name, raw in _fasta_records(stream):
            if not raw:
                raise IngestionError(f"FASTA record {name!r} has no sequence bytes")
            coll.sequences.append(normalize_record(raw))
    elif fmt == "plain":
        for lineno, line in enumerate(stream, start=1):
            line = line.rstrip(b"\r\n")
            if not line:
                raise IngestionError(f"line {lineno} is empty")
            coll.sequences.append(normalize_record(line))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if not coll.sequences:
        raise IngestionError("input contains no sequences")
    return coll


def write_collection(coll: SequenceCollection, stream: BinaryIO) -> None:
    """Binary container: u64le sequence count, then u64le length + bytes each."""
    stream.write(len(coll.sequences).to_bytes(8, "little"))
    for seq in coll.sequences:
        stream.write(len(seq).to_bytes(8, "little"))
        stream.write(seq)


def read_collection(stream: BinaryIO, dataset_id: int = 0, source_name: str = "") -> SequenceCollection:
    def take(n: int) -> bytes:
        data = stream.read(n)
        if len(data) != n:
            raise IngestionError("truncated sequence container")
        return data

    count = int.from_bytes(take(8), "little")
    coll = SequenceCollection(dataset_id=dataset_id, source_name=source_name)
    for _ in range(count):
        length = int.from_bytes(take(8), "little")
        coll.sequences.append(take(length))
    return coll
