"""Virtual word model and the scalar helpers built on it.

All sorters in this package operate on ``numpy.int64`` arrays whose
values are treated as *virtual words* of a configurable width ``w``.
The most significant bit of a virtual word is the **tag bit**: setting
it converts the word into a *node*, and the remaining ``w - 1`` bits
become the node's *record*.  Keys must therefore fit in ``w - 1`` bits,
i.e. lie in ``[0, 2**(w-1))``.

``w`` is capped at 63 so that a full virtual word (tag bit included)
still fits in a signed 64-bit integer; the arithmetic in the hot loops
never touches the host sign bit.
"""

from dataclasses import dataclass
from math import ceil, log2
from typing import Optional

from .errors import OutOfIntervalError, WordRangeError

MIN_WIDTH = 4
MAX_WIDTH = 63


@dataclass(frozen=True)
class WordConfig:
    """Fixed parameters of the virtual word.

    Attributes
    ----------
    w:
        Virtual word width in bits, ``MIN_WIDTH <= w <= MAX_WIDTH``.
    tag_mask:
        ``1 << (w - 1)``; the node tag bit.
    value_mask:
        ``tag_mask - 1``; masks the key/record bits of a word.
    """

    w: int
    tag_mask: int
    value_mask: int

    def __init__(self, w: int = MAX_WIDTH):
        if not MIN_WIDTH <= w <= MAX_WIDTH:
            raise WordRangeError(
                f"word width must be in [{MIN_WIDTH}, {MAX_WIDTH}], got {w}"
            )
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "tag_mask", 1 << (w - 1))
        object.__setattr__(self, "value_mask", (1 << (w - 1)) - 1)

    @property
    def max_key(self) -> int:
        """Largest sortable key: ``2**(w-1) - 1``."""
        return self.value_mask

    def pos_bits(self, n: int) -> int:
        """Bits needed to address a position in a segment of length ``n``."""
        return ceil(log2(n)) if n > 1 else 1

    def pack_split(self, n: int) -> int:
        """Record bit-budget left for a count once a position is packed in.

        A node whose occurrence count fits below this split can carry its
        own former position inside the record; larger counts need a
        separate companion word during storage.
        """
        return self.w - 1 - self.pos_bits(n)


def is_node(word: int, cfg: WordConfig) -> bool:
    """True if the word's tag bit is set."""
    return bool(word & cfg.tag_mask)


def encode_node(record: int, cfg: WordConfig) -> int:
    """Build a node word carrying ``record`` in its low ``w - 1`` bits."""
    if not 0 <= record <= cfg.value_mask:
        raise WordRangeError(f"record {record} does not fit in {cfg.w - 1} bits")
    return cfg.tag_mask | record


def decode_record(word: int, cfg: WordConfig) -> int:
    """Extract the record of a node word (the low ``w - 1`` bits)."""
    return word & cfg.value_mask


@dataclass(frozen=True)
class Interval:
    """The practiced interval of one pass.

    Keys ``k`` with ``delta <= k < delta + span`` hash into the imaginary
    linear subspace that starts ``base`` slots into the segment; keys at
    or above ``delta + span`` stay unpracticed until a later pass, and
    keys below ``delta`` are leftovers of an enclosing pass.
    """

    delta: int
    span: int
    base: int = 0


def linear_hash(key: int, iv: Interval) -> int:
    """Slot index (relative to the segment) for ``key``: one key per node."""
    d = key - iv.delta
    if d < 0 or d >= iv.span:
        raise OutOfIntervalError(f"key {key} outside [{iv.delta}, {iv.delta + iv.span})")
    return iv.base + d


def linear_unhash(index: int, iv: Interval) -> int:
    """Inverse of :func:`linear_hash`."""
    return iv.delta + (index - iv.base)


def super_hash(key: int, delta: int, cfg: WordConfig) -> tuple:
    """Slot and bit for ``key`` when each node records ``w - 1`` keys.

    Returns ``(j, k)``: the key is remembered as bit ``k`` of the record
    of the node at relative slot ``j``.  The caller guarantees
    ``0 <= key - delta < (w - 1) * n`` for the live segment length ``n``.
    """
    d = key - delta
    if d < 0:
        raise OutOfIntervalError(f"key {key} below interval start {delta}")
    return d // (cfg.w - 1), d % (cfg.w - 1)


def super_unhash(j: int, k: int, delta: int, cfg: WordConfig) -> int:
    """Inverse of :func:`super_hash`."""
    return delta + j * (cfg.w - 1) + k


def epsilon(n: int, cfg: WordConfig) -> int:
    """Interval shrink needed so companion words can always be found.

    When positions of a segment of length ``n`` are addressable alongside
    any possible count inside one record (``2 * ceil(log2 n) < w``), no
    shrink is needed.  Otherwise the practiced interval is narrowed by
    ``eps`` and the subspace shifted ``eps`` slots right, so storage has
    both the slack and the idle words to give every overfull node a
    companion.

    A node is overfull when its count reaches ``thr = 2**(w-1-ceil(log2
    n))``, i.e. its key occupies at least ``thr + 1`` segment words, so
    at most ``n // (thr + 1)`` nodes can be overfull at once; ``eps``
    covers that exactly (``ceil((n/2)/thr)`` alone falls short of it for
    ``thr >= 2``, e.g. four keys of three occurrences each in a 12-word
    segment at ``w = 6``).
    """
    if n < 1 or n > cfg.tag_mask:
        raise WordRangeError(f"segment length {n} not in [1, {cfg.tag_mask}]")
    lg = cfg.pos_bits(n)
    if 2 * lg < cfg.w:
        return 0
    thr = 1 << (cfg.w - 1 - lg)
    eps = -(-(n // 2) // thr)  # ceil((n/2) / thr)
    demand = n // (thr + 1)
    return max(eps, demand)


@dataclass(frozen=True)
class PracticeSummary:
    """What one practicing pass learned about its segment.

    ``n_distinct`` nodes were created, absorbing ``n_companion`` repeat
    occurrences; ``n_deferred`` words lay at or above the interval, the
    smallest of them being ``delta_next`` (``None`` when nothing was
    deferred).
    """

    n_distinct: int
    n_companion: int
    n_deferred: int
    delta_next: Optional[int]


@dataclass(frozen=True)
class StorageLayout:
    """Where storage left the short-term memory of a pass.

    The memory occupies ``n_distinct + eps_used`` words at the front of
    the segment: packed nodes carry position and count in one record,
    and ``eps_used`` overfull nodes each own a companion word holding
    the position.
    """

    n_distinct: int
    eps_used: int
    pack_split: int
