"""Counting-variant sorting: practice, store, partition, retrieve.

One pass of the sequential driver turns the front of the unsorted
segment into *short-term memory* — a compact run of node words, each
remembering a distinct key (by former position) and its occurrence
count — then expands that memory back into sorted keys:

1. practice: hash every in-interval key to its slot; first occurrence
   becomes a tagged node, repeats bump the node's record.
2. store: compact nodes to the front.  A count too large to share a
   record with its position takes a second memory word (a *companion*),
   paid for by destroying one idle word — the interval was narrowed by
   ``epsilon`` up front precisely so enough idles exist.
3. partition: gather the surviving idle words right after the memory so
   the deferred keys end up in the final tail.
4. retrieve: walk the memory right-to-left and write each key
   ``count + 1`` times, filling the segment front exactly.

The recursive driver instead stacks the memories of successive passes
and unwinds them back-to-front, which needs no partitioning.
"""

from typing import Callable, Optional

import numpy as np

from .backend import active
from .counters import OpCounters
from .errors import CorruptStateError, WordRangeError
from .words import (
    Interval,
    PracticeSummary,
    StorageLayout,
    WordConfig,
    epsilon,
)

TraceFn = Callable[[str, int, np.ndarray], None]


def check_words(S: np.ndarray, cfg: WordConfig) -> tuple:
    """Validate keys against the word model; returns ``(min, max)``."""
    n = len(S)
    if n > cfg.tag_mask:
        raise WordRangeError(
            f"{n} words exceed the {cfg.tag_mask} node slots of w={cfg.w}"
        )
    k = active()
    mn, mx = k.min_max(S, 0, n)
    if mn < 0 or mx > cfg.max_key:
        raise WordRangeError(
            f"keys must lie in [0, {cfg.max_key}], saw [{mn}, {mx}]"
        )
    return int(mn), int(mx)


def practice(
    S: np.ndarray,
    iv: Interval,
    cfg: WordConfig,
    lo: int = 0,
    hi: Optional[int] = None,
    counters: Optional[OpCounters] = None,
) -> PracticeSummary:
    """One counting practice pass over ``S[lo:hi]`` (see module docs)."""
    hi = len(S) if hi is None else hi
    k = active()
    n_d, n_c, n_def, dnext, moves, created = k.practice(
        S, lo, hi, iv.delta, iv.base, iv.span, cfg.tag_mask
    )
    if counters is not None:
        counters.moves += int(moves)
        counters.node_creations += int(created)
    return PracticeSummary(
        int(n_d), int(n_c), int(n_def), int(dnext) if dnext >= 0 else None
    )


def store_nodes(
    S: np.ndarray,
    summary: PracticeSummary,
    iv: Interval,
    cfg: WordConfig,
    lo: int = 0,
    hi: Optional[int] = None,
    counters: Optional[OpCounters] = None,
) -> StorageLayout:
    """Compact this pass's nodes into short-term memory at ``S[lo:]``."""
    hi = len(S) if hi is None else hi
    seg = hi - lo
    split = cfg.pack_split(seg)
    k = active()
    eps_used, stored, moves, status = k.store_nodes(
        S, lo, hi, iv.delta, iv.span, split, cfg.tag_mask, iv.base
    )
    if counters is not None:
        counters.moves += int(moves)
    if status != 0:
        raise CorruptStateError(
            f"storage failed (status {status}): needed companion "
            f"{eps_used} of budget {iv.base}"
        )
    if stored != summary.n_distinct + eps_used:
        raise CorruptStateError(
            f"stored {stored} memory words for {summary.n_distinct} nodes "
            f"and {eps_used} companions"
        )
    return StorageLayout(summary.n_distinct, int(eps_used), split)


def partition_tail(
    S: np.ndarray,
    pivot: int,
    lo: int,
    hi: Optional[int] = None,
    cfg: Optional[WordConfig] = None,
    counters: Optional[OpCounters] = None,
) -> int:
    """Move words whose value plane is <= pivot before the rest.

    Tag bits do not participate and do not move.  Returns the size of
    the low side.
    """
    cfg = cfg or WordConfig()
    hi = len(S) if hi is None else hi
    k = active()
    n_low, moves = k.partition_values(S, lo, hi, pivot, cfg.tag_mask)
    if counters is not None:
        counters.moves += int(moves)
    return int(n_low)


def retrieve_sequential(
    S: np.ndarray,
    layout: StorageLayout,
    n_companion: int,
    iv: Interval,
    cfg: WordConfig,
    lo: int = 0,
    counters: Optional[OpCounters] = None,
) -> int:
    """Expand memory at ``S[lo:]`` into its sorted keys, in place.

    Writes exactly ``n_distinct + n_companion`` keys starting at ``lo``;
    returns that count.
    """
    mem_hi = lo + layout.n_distinct + layout.eps_used
    write_end = lo + layout.n_distinct + n_companion
    k = active()
    written, moves, status = k.retrieve_packed(
        S, lo, mem_hi, write_end, iv.delta, iv.base, layout.pack_split, cfg.tag_mask
    )
    if counters is not None:
        counters.moves += int(moves)
    if status != 0 or written != layout.n_distinct + n_companion:
        raise CorruptStateError(
            f"retrieval wrote {written} of {layout.n_distinct + n_companion} "
            f"keys (status {status})"
        )
    return int(written)


def _run_pass(S, head, n, delta, cfg, counters):
    """Practice + store for one pass; shared by both drivers."""
    seg = n - head
    eps = epsilon(seg, cfg)
    iv = Interval(delta, seg - eps, eps)
    summary = practice(S, iv, cfg, lo=head, hi=n, counters=counters)
    layout = store_nodes(S, summary, iv, cfg, lo=head, hi=n, counters=counters)
    return iv, summary, layout


def sort_associative(
    S: np.ndarray,
    cfg: Optional[WordConfig] = None,
    counters: Optional[OpCounters] = None,
    trace: Optional[TraceFn] = None,
) -> OpCounters:
    """Sort ``S`` in place, one practice/store/retrieve cycle per pass."""
    cfg = cfg or WordConfig()
    counters = counters if counters is not None else OpCounters()
    n = len(S)
    if n == 0:
        return counters
    check_words(S, cfg)
    k = active()
    head = 0
    while head < n:
        counters.passes += 1
        mn, _ = k.min_max(S, head, n)
        iv, summary, layout = _run_pass(S, head, n, int(mn), cfg, counters)
        if trace is not None:
            trace("practice", counters.passes, S.copy())
        live = summary.n_distinct + summary.n_companion
        mem = layout.n_distinct + layout.eps_used
        n_low = partition_tail(
            S, iv.delta + iv.span - 1, head + mem, n, cfg, counters
        )
        if n_low != summary.n_companion - layout.eps_used:
            raise CorruptStateError(
                f"{n_low} idle words after storage, expected "
                f"{summary.n_companion - layout.eps_used}"
            )
        if trace is not None:
            trace("partition", counters.passes, S.copy())
        retrieve_sequential(
            S, layout, summary.n_companion, iv, cfg, lo=head, counters=counters
        )
        if trace is not None:
            trace("retrieve", counters.passes, S.copy())
        head += live
    return counters


def sort_associative_recursive(
    S: np.ndarray,
    cfg: Optional[WordConfig] = None,
    counters: Optional[OpCounters] = None,
    trace: Optional[TraceFn] = None,
) -> OpCounters:
    """Sort ``S`` in place, stacking pass memories and unwinding once.

    Each pass leaves its short-term memory in place and descends into
    the tail; no partitioning happens.  The unwind retrieves memories
    newest-first, writing sorted keys right-to-left from the array end,
    which is guaranteed not to overtake the unread memories.  Control
    state is four words per level.
    """
    cfg = cfg or WordConfig()
    counters = counters if counters is not None else OpCounters()
    n = len(S)
    if n == 0:
        return counters
    mn, _ = check_words(S, cfg)
    k = active()
    stack = []
    head = 0
    delta = mn
    while True:
        counters.passes += 1
        iv, summary, layout = _run_pass(S, head, n, delta, cfg, counters)
        if trace is not None:
            trace("practice", counters.passes, S.copy())
        stack.append((layout.n_distinct, layout.eps_used, delta, head))
        if len(stack) > counters.max_depth:
            counters.max_depth = len(stack)
        head += layout.n_distinct + layout.eps_used
        if summary.n_deferred == 0:
            break
        delta = summary.delta_next
    write_end = n
    level = len(stack)
    while stack:
        n_d, eps_used, delta, h = stack.pop()
        seg = n - h
        eps = epsilon(seg, cfg)
        written, moves, status = k.retrieve_packed(
            S, h, h + n_d + eps_used, write_end, delta, eps,
            cfg.pack_split(seg), cfg.tag_mask,
        )
        counters.moves += int(moves)
        if status != 0:
            raise CorruptStateError(f"unwind retrieval failed (status {status})")
        write_end -= int(written)
        if trace is not None:
            trace("retrieve", level, S.copy())
        level -= 1
    if write_end != 0:
        raise CorruptStateError(
            f"unwind left {write_end} words unwritten at the front"
        )
    return counters
