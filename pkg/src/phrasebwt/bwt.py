"""Multi-string BWT construction from a dictionary and a parse.

The output is the BWT of the padded text (every string followed by w
separator bytes), with suffixes of different strings tie-broken by string
order.  Construction walks the dictionary suffix array:

  * proper phrase suffixes of length >= w group the text suffixes; groups
    whose occurrences are all preceded by one distinct character are filled
    directly (the easy pass),
  * the remaining groups are gaps whose characters are ordered by the rank
    of the parse suffix that follows each occurrence (the hard pass),
  * the w text positions per string that sit inside the separator run are
    emitted as a fixed per-string block, since their order depends only on
    string rank, never on content.

Each string's block is w-1 separator bytes followed by the character that
precedes the full separator run, i.e. the string's last character.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .alphabet import SEPARATOR
from .dictionary import Dictionary
from .normalize import SequenceCollection
from .params import ParseParams
from .parse import Parse, parse_collection

BOUNDARY, EASY, HARD = 0, 1, 2


@dataclass
class SuffixClass:
    """Classification of one dictionary suffix array entry."""

    valid: bool
    unique: bool = False
    occ: int = 0
    phrase_id: int = -1
    prec_char: int | None = None


@dataclass
class Gap:
    """A run of BWT positions left blank by the easy pass.

    `members` holds (phrase id, preceding char) for every phrase ending
    with the gap's suffix; start is -1 for the string-boundary gap.
    """

    start: int
    width: int
    members: list[tuple[int, int]]


@dataclass
class EasyFillResult:
    boundary_chars: bytearray
    boundary_gap: Gap | None
    letter_region: bytearray
    letter_mask: np.ndarray
    gaps: list[Gap]
    easy_written: int


@dataclass
class BuildStats:
    total_length: int
    string_count: int
    easy_written: int
    hard_written: int
    boundary_pad: int
    phrase_count: int
    parse_length: int
    mask: np.ndarray | None = field(default=None, repr=False)

    @property
    def easy_fraction(self) -> float:
        return self.easy_written / self.total_length if self.total_length else 0.0


def classify(offset: int, dictionary: Dictionary) -> SuffixClass:
    """Classify the dictionary suffix starting at `offset`.

    Uniqueness aggregates over every phrase that ends with the same suffix,
    not just the phrase containing the offset.  Reference implementation
    used by tests; the builder runs a vectorized equivalent.
    """
    w = dictionary.params.w
    n_phrases = len(dictionary.phrases)
    i = int(np.searchsorted(dictionary.phrase_end, offset, side="right"))
    if i >= n_phrases:
        return SuffixClass(valid=False)
    q = offset - int(dictionary.content_start[i])
    phrase = dictionary.phrases[i]
    if q < 1 or len(phrase) - q < w:
        return SuffixClass(valid=False, phrase_id=i)
    content = phrase[q:]
    prec = set()
    for other in dictionary.phrases:
        if len(other) > len(content) and other.endswith(content):
            prec.add(other[len(other) - len(content) - 1])
    unique = len(prec) == 1
    return SuffixClass(
        valid=True,
        unique=unique,
        occ=int(dictionary.occ[i]),
        phrase_id=i,
        prec_char=prec.pop() if unique else None,
    )


def _lcp_array(data: bytes, sa: np.ndarray) -> np.ndarray:
    """lcp[r] = longest common prefix of sa[r-1] and sa[r] (Kasai)."""
    n = len(sa)
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n, dtype=np.int64)
    lcp = np.zeros(n, dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = int(sa[r - 1])
        max_h = n - max(i, j)
        while h < max_h and data[i + h] == data[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def easy_fill(dictionary: Dictionary, sad: np.ndarray) -> EasyFillResult:
    """One pass over the dictionary suffix array.

    Unique groups are written; non-unique groups become gaps.  The running
    position advances by the group's total occurrence count either way, so
    the final position equals the padded text length.
    """
    w = dictionary.params.w
    data = dictionary.dict_string
    occ = dictionary.occ
    n_phrases = len(dictionary.phrases)
    string_count = dictionary.string_count
    total = dictionary.total_padded_length
    letter_total = total - w * string_count

    phrase = np.minimum(
        np.searchsorted(dictionary.phrase_end, sad, side="right"), n_phrases - 1
    )
    q = sad - dictionary.content_start[phrase]
    suffix_len = dictionary.phrase_end[phrase] - sad
    valid = (q >= 1) & (suffix_len >= w)
    first = np.frombuffer(data, dtype=np.uint8)[sad]
    lcp = _lcp_array(data, sad)

    boundary_chars = bytearray(string_count)
    boundary_gap: Gap | None = None
    region = bytearray(letter_total)
    mask = np.zeros(letter_total, dtype=np.uint8)
    gaps: list[Gap] = []
    easy_written = 0
    wrap_slots = 0

    pos = 0
    # current group state
    group_len = -1
    group_members: list[tuple[int, int]] = []
    group_prec: set[int] = set()
    group_occ = 0
    group_boundary = False
    run_min_lcp = 0

    def flush():
        nonlocal pos, easy_written, boundary_gap
        if group_len < 0:
            return
        width = group_occ
        if group_boundary:
            if width != string_count:
                raise AssertionError(
                    f"separator-run group covers {width} strings, expected {string_count}"
                )
            if len(group_prec) == 1:
                boundary_chars[:] = bytes([next(iter(group_prec))]) * width
                easy_written += width
            else:
                boundary_gap = Gap(start=-1, width=width, members=list(group_members))
            return
        if len(group_prec) == 1:
            ch = next(iter(group_prec))
            region[pos : pos + width] = bytes([ch]) * width
            mask[pos : pos + width] = EASY
            easy_written += width
        else:
            gaps.append(Gap(start=pos, width=width, members=list(group_members)))
            mask[pos : pos + width] = HARD
        pos += width

    for k in range(len(sad)):
        run_min_lcp = min(run_min_lcp, int(lcp[k])) if k else 0
        if not valid[k]:
            continue
        length = int(suffix_len[k])
        off = int(sad[k])
        if first[k] == SEPARATOR and length > w:
            # suffix inside the leading separator run of a first phrase;
            # its slots are the separator bytes of the per-string block
            wrap_slots += int(occ[phrase[k]])
            continue
        is_boundary = first[k] == SEPARATOR  # length == w: the pure run
        same = (
            group_len == length
            and run_min_lcp >= length
            and group_boundary == is_boundary
        )
        if not same:
            flush()
            group_len = length
            group_members = []
            group_prec = set()
            group_occ = 0
            group_boundary = is_boundary
        run_min_lcp = length  # reset tracking relative to this entry
        pid = int(phrase[k])
        group_members.append((pid, data[off - 1]))
        group_prec.add(data[off - 1])
        group_occ += int(occ[pid])
    flush()

    if pos != letter_total:
        raise AssertionError(
            f"easy fill wrote {pos} letter slots, expected {letter_total}; "
            "occurrence counts are corrupt"
        )
    if wrap_slots != (w - 1) * string_count:
        raise AssertionError(
            f"separator-run slots {wrap_slots} != (w-1)*strings "
            f"{(w - 1) * string_count}"
        )
    if boundary_gap is None and not any(boundary_chars) and string_count:
        raise AssertionError("no pure separator-run suffix group was seen")
    return EasyFillResult(
        boundary_chars=boundary_chars,
        boundary_gap=boundary_gap,
        letter_region=region,
        letter_mask=mask,
        gaps=gaps,
        easy_written=easy_written,
    )


def _parse_symbol_sequence(parse: Parse, n_phrases: int) -> np.ndarray:
    """Ids shifted above per-string end sentinels ranked by string order."""
    n_strings = len(parse.ids_per_string)
    parts = []
    for r, ids in enumerate(parse.ids_per_string):
        parts.append(ids + np.int64(n_strings))
        parts.append(np.array([r], dtype=np.int64))
    return np.concatenate(parts)


def _parse_suffix_ranks(parse: Parse, dictionary: Dictionary) -> tuple[np.ndarray, np.ndarray]:
    """(id positions in the symbol sequence, rank of every sequence suffix).

    Ranks compare id sequences by dictionary order; a suffix ending at a
    string boundary sorts below any continuing one, and boundaries of
    different strings sort by string rank.
    """
    from .dictionary import suffix_array as _sa

    seq = _parse_symbol_sequence(parse, len(dictionary.phrases))
    order = _sa(seq)
    rank = np.empty(len(seq), dtype=np.int64)
    rank[order] = np.arange(len(seq), dtype=np.int64)
    id_positions = np.nonzero(seq >= len(parse.ids_per_string))[0]
    return id_positions, rank


def parse_bwt(parse: Parse, dictionary: Dictionary) -> np.ndarray:
    """BWT of the parse: for every parse suffix in rank order (suffixes at
    string starts excluded, empty end-of-string suffixes included), the id
    of the phrase preceding it."""
    id_positions, rank = _parse_suffix_ranks(parse, dictionary)
    seq = _parse_symbol_sequence(parse, len(dictionary.phrases))
    n_strings = len(parse.ids_per_string)
    followers = rank[id_positions + 1]
    ids = seq[id_positions] - n_strings
    return ids[np.argsort(followers)]


def hard_fill(result: EasyFillResult, parse: Parse, dictionary: Dictionary) -> int:
    """Fill every gap, ordering characters by follower parse-suffix rank.

    Returns the number of characters written.
    """
    if not result.gaps and result.boundary_gap is None:
        return 0
    id_positions, rank = _parse_suffix_ranks(parse, dictionary)
    seq = _parse_symbol_sequence(parse, len(dictionary.phrases))
    n_strings = len(parse.ids_per_string)
    phrase_at = seq[id_positions] - n_strings
    follower = rank[id_positions + 1]

    # follower ranks grouped by phrase id, each group sorted ascending
    order = np.lexsort((follower, phrase_at))
    sorted_phrase = phrase_at[order]
    sorted_rank = follower[order]
    starts = np.searchsorted(sorted_phrase, np.arange(len(dictionary.phrases) + 1))

    written = 0

    def fill(gap: Gap) -> bytes:
        ranks_parts = []
        chars_parts = []
        for pid, ch in gap.members:
            lo, hi = starts[pid], starts[pid + 1]
            ranks_parts.append(sorted_rank[lo:hi])
            chars_parts.append(np.full(hi - lo, ch, dtype=np.uint8))
        ranks = np.concatenate(ranks_parts)
        chars = np.concatenate(chars_parts)
        if len(ranks) != gap.width:
            raise AssertionError(
                f"gap expects {gap.width} characters, gathered {len(ranks)}"
            )
        return chars[np.argsort(ranks)].tobytes()

    if result.boundary_gap is not None:
        result.boundary_chars[:] = fill(result.boundary_gap)
        written += result.boundary_gap.width
    for gap in result.gaps:
        result.letter_region[gap.start : gap.start + gap.width] = fill(gap)
        written += gap.width
    return written


def assemble(result: EasyFillResult, w: int, keep_mask: bool = False):
    """Concatenate the per-string boundary blocks and the letter region."""
    string_count = len(result.boundary_chars)
    parts = bytearray()
    for r in range(string_count):
        parts += bytes([SEPARATOR]) * (w - 1)
        parts.append(result.boundary_chars[r])
    parts += result.letter_region
    mask = None
    if keep_mask:
        boundary_easy = result.boundary_gap is None
        head = np.empty(w * string_count, dtype=np.uint8)
        head[:] = BOUNDARY
        head[w - 1 :: w] = EASY if boundary_easy else HARD
        mask = np.concatenate([head, result.letter_mask])
    return bytes(parts), mask


def build_bwt_from_parse(
    dictionary: Dictionary,
    parse: Parse,
    keep_mask: bool = False,
) -> tuple[bytes, BuildStats]:
    sad = dictionary.build_suffix_array()
    result = easy_fill(dictionary, sad)
    hard_written = hard_fill(result, parse, dictionary)
    bwt, mask = assemble(result, dictionary.params.w, keep_mask=keep_mask)
    string_count = dictionary.string_count
    stats = BuildStats(
        total_length=len(bwt),
        string_count=string_count,
        easy_written=result.easy_written,
        hard_written=hard_written,
        boundary_pad=(dictionary.params.w - 1) * string_count,
        phrase_count=len(dictionary.phrases),
        parse_length=parse.total_phrases,
        mask=mask,
    )
    return bwt, stats


def build_bwt(
    coll: SequenceCollection,
    params: ParseParams,
    allowed: frozenset[bytes] | set[bytes] | None = None,
    keep_mask: bool = False,
) -> tuple[bytes, BuildStats]:
    """Parse a collection and build its multi-string BWT."""
    dictionary, parse = parse_collection(coll, params, allowed)
    return build_bwt_from_parse(dictionary, parse, keep_mask=keep_mask)
