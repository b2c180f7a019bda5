"""Improved counting variant: nodes stay put, records park at the front.

The practiced interval of a pass spans the whole live segment (no
``epsilon`` shrink, no companions).  After practicing, records and
positions are never packed together:

* ``store_records`` swaps the k-th node's record into the *value plane*
  of the k-th segment word.  Tag bits do not move, so every node keeps
  marking its position — which is the key it stands for.
* the tail is partitioned on value planes only, gathering idle words
  directly behind the record park;
* ``retrieve_node_scan`` walks tag bits right-to-left, pairs the k-th
  node from the right with the record at index k, clears the tag and
  writes the node's key (masked, preserving remaining tags) over the
  output run.

Because everything after practicing happens in the value planes while
tags pin the nodes, a segment whose keys all lie within ``segment
length`` of the minimum sorts in exactly one pass — in particular any
array with ``max - min < n`` does.

The distinct-keys sibling packs ``w - 1`` keys into each node as a
bitmap, shrinking memory a further ``w - 1``-fold; duplicate keys are
detected (the bit is already set) and rejected.
"""

from typing import Callable, Optional

import numpy as np

from .backend import active
from .counters import OpCounters
from .core import check_words, practice
from .errors import CorruptStateError, DuplicateKeyError
from .words import Interval, PracticeSummary, WordConfig

TraceFn = Callable[[str, int, np.ndarray], None]


def store_records(
    S: np.ndarray,
    n_distinct: int,
    cfg: WordConfig,
    lo: int = 0,
    hi: Optional[int] = None,
    counters: Optional[OpCounters] = None,
) -> None:
    """Park the k-th node's record in the value plane of ``S[lo + k]``."""
    hi = len(S) if hi is None else hi
    k = active()
    stored, moves, status = k.store_records(S, lo, hi, n_distinct, cfg.tag_mask)
    if counters is not None:
        counters.moves += int(moves)
    if status != 0:
        raise CorruptStateError(
            f"found {stored} tagged words while parking {n_distinct} records"
        )


def retrieve_node_scan(
    S: np.ndarray,
    summary: PracticeSummary,
    delta: int,
    cfg: WordConfig,
    lo: int = 0,
    hi: Optional[int] = None,
    counters: Optional[OpCounters] = None,
) -> int:
    """Expand parked records into sorted keys; returns keys written."""
    hi = len(S) if hi is None else hi
    k = active()
    moves, status = k.retrieve_node_scan(
        S, lo, hi, summary.n_distinct, summary.n_companion, delta, cfg.tag_mask
    )
    if counters is not None:
        counters.moves += int(moves)
    if status != 0:
        raise CorruptStateError(f"node-scan retrieval failed (status {status})")
    return summary.n_distinct + summary.n_companion


def sort_improved(
    S: np.ndarray,
    cfg: Optional[WordConfig] = None,
    counters: Optional[OpCounters] = None,
    trace: Optional[TraceFn] = None,
) -> OpCounters:
    """Sort ``S`` in place; a single pass whenever ``max - min < n``."""
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
        seg = n - head
        mn, _ = k.min_max(S, head, n)
        iv = Interval(int(mn), seg, 0)
        summary = practice(S, iv, cfg, lo=head, hi=n, counters=counters)
        if trace is not None:
            trace("practice", counters.passes, S.copy())
        store_records(S, summary.n_distinct, cfg, lo=head, hi=n, counters=counters)
        if trace is not None:
            trace("store", counters.passes, S.copy())
        _partition_idle(S, head, n, summary, iv, cfg, counters)
        if trace is not None:
            trace("partition", counters.passes, S.copy())
        retrieve_node_scan(
            S, summary, iv.delta, cfg, lo=head, hi=n, counters=counters
        )
        if trace is not None:
            trace("retrieve", counters.passes, S.copy())
        head += summary.n_distinct + summary.n_companion
    return counters


def _partition_idle(S, head, n, summary, iv, cfg, counters):
    """Gather idle value planes directly behind the record park."""
    k = active()
    n_low, moves = k.partition_values(
        S, head + summary.n_distinct, n, iv.delta + iv.span - 1, cfg.tag_mask
    )
    if counters is not None:
        counters.moves += int(moves)
    if n_low != summary.n_companion:
        raise CorruptStateError(
            f"{n_low} idle words in the tail, expected {summary.n_companion}"
        )
    return int(n_low)


def sort_distinct_improved(
    S: np.ndarray,
    cfg: Optional[WordConfig] = None,
    counters: Optional[OpCounters] = None,
    trace: Optional[TraceFn] = None,
) -> OpCounters:
    """Sort distinct keys in place, ``w - 1`` keys recorded per node.

    A single pass covers any input whose keys fit within
    ``(w - 1) * n`` of the minimum.  Raises
    :class:`~assocsort.errors.DuplicateKeyError` on a repeated key.
    """
    cfg = cfg or WordConfig()
    counters = counters if counters is not None else OpCounters()
    n = len(S)
    if n == 0:
        return counters
    check_words(S, cfg)
    k = active()
    wm1 = cfg.w - 1
    head = 0
    while head < n:
        counters.passes += 1
        seg = n - head
        mn, _ = k.min_max(S, head, n)
        delta = int(mn)
        span = min(wm1 * seg, cfg.tag_mask)
        n_d, n_c, n_def, dnext, moves, created, dup = k.practice_super(
            S, head, n, delta, span, wm1, cfg.tag_mask
        )
        counters.moves += int(moves)
        counters.node_creations += int(created)
        if dup >= 0:
            raise DuplicateKeyError(f"key {int(dup)} occurs more than once")
        summary = PracticeSummary(
            int(n_d), int(n_c), int(n_def), int(dnext) if dnext >= 0 else None
        )
        if trace is not None:
            trace("practice", counters.passes, S.copy())
        store_records(S, summary.n_distinct, cfg, lo=head, hi=n, counters=counters)
        if trace is not None:
            trace("store", counters.passes, S.copy())
        pivot = min(delta + span - 1, cfg.max_key)
        n_low, moves = k.partition_values(
            S, head + summary.n_distinct, n, pivot, cfg.tag_mask
        )
        counters.moves += int(moves)
        if n_low != summary.n_companion:
            raise CorruptStateError(
                f"{n_low} idle words in the tail, expected {summary.n_companion}"
            )
        if trace is not None:
            trace("partition", counters.passes, S.copy())
        rmoves, status = k.retrieve_super(
            S, head, n, summary.n_distinct, summary.n_companion, delta, wm1,
            cfg.tag_mask,
        )
        counters.moves += int(rmoves)
        if status != 0:
            raise CorruptStateError(f"bitmap retrieval failed (status {status})")
        if trace is not None:
            trace("retrieve", counters.passes, S.copy())
        head += summary.n_distinct + summary.n_companion
    return counters
