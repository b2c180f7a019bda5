"""Rank sorting of (key, payload) element pairs.

Keys live in one ``int64`` array and payloads in a parallel one;
elements move together, but all node bookkeeping happens in the key
array alone.  Each pass:

1. ``practice_rank`` — counting practice; the payload of a consumed key
   waits at its node's slot.
2. ``accumulate_records`` — prefix sums turn counts into the index of
   the last slot of each key's sorted run.
3. ``repractice_idle`` — every idle word re-hashes to its node and takes
   the node's current record as a destination ticket, decrementing the
   record; afterwards a node's record is its own destination.
4. ``reactivate`` — a single scan delivers every element: tickets and
   nodes to their slots (nodes chain, moving at most once), deferred
   keys packed right after the sorted prefix.  A placed node's record
   becomes its former slot index.
5. ``restore_keys`` — the sorted prefix is rewritten as keys:
   ``delta + record`` at each node, repeated over its run.
"""

from typing import Callable, Optional, Tuple

import numpy as np

from .backend import active
from .counters import OpCounters
from .errors import CorruptStateError, WordRangeError
from .words import WordConfig

TraceFn = Callable[[str, int, np.ndarray], None]


def sort_by_key(
    K: np.ndarray,
    P: np.ndarray,
    cfg: Optional[WordConfig] = None,
    counters: Optional[OpCounters] = None,
    trace: Optional[TraceFn] = None,
) -> OpCounters:
    """Sort keys ``K`` in place, carrying ``P[i]`` with ``K[i]``.

    The sort is not stable: equal keys keep their payloads but may
    exchange relative order.
    """
    cfg = cfg or WordConfig()
    counters = counters if counters is not None else OpCounters()
    n = len(K)
    if len(P) != n:
        raise ValueError(f"payload length {len(P)} != key length {n}")
    if n == 0:
        return counters
    if n > cfg.tag_mask:
        raise WordRangeError(
            f"{n} elements exceed the {cfg.tag_mask} node slots of w={cfg.w}"
        )
    k = active()
    mn, mx = k.min_max(K, 0, n)
    if mn < 0 or mx > cfg.max_key:
        raise WordRangeError(
            f"keys must lie in [0, {cfg.max_key}], saw [{int(mn)}, {int(mx)}]"
        )
    head = 0
    while head < n:
        counters.passes += 1
        seg = n - head
        mn, _ = k.min_max(K, head, n)
        delta = int(mn)
        n_d, n_c, n_def, dnext, moves, created = k.practice_rank(
            K, P, head, n, delta, seg, cfg.tag_mask
        )
        counters.moves += int(moves)
        counters.node_creations += int(created)
        if trace is not None:
            trace("practice", counters.passes, K.copy())
        n_nodes, total = k.accumulate_records(K, head, n, cfg.tag_mask)
        if n_nodes != n_d or total != n_d + n_c:
            raise CorruptStateError(
                f"accumulation saw {n_nodes} nodes/{total} elements, "
                f"practice reported {n_d}/{n_d + n_c}"
            )
        if trace is not None:
            trace("accumulate", counters.passes, K.copy())
        n_tickets, status = k.repractice_idle(K, head, n, delta, seg, cfg.tag_mask)
        if status != 0 or n_tickets != n_c:
            raise CorruptStateError(
                f"ticketing failed (status {status}, {n_tickets} of {n_c})"
            )
        if trace is not None:
            trace("repractice", counters.passes, K.copy())
        moves, status = k.reactivate(K, P, head, n, n_d + n_c, cfg.tag_mask)
        counters.moves += int(moves)
        if status != 0:
            raise CorruptStateError(f"reactivation failed (status {status})")
        if trace is not None:
            trace("reactivate", counters.passes, K.copy())
        moves, status = k.restore_keys(
            K, head, head + n_d + n_c, delta, cfg.tag_mask
        )
        counters.moves += int(moves)
        if status != 0:
            raise CorruptStateError(f"key restoration failed (status {status})")
        if trace is not None:
            trace("restore", counters.passes, K.copy())
        head += n_d + n_c
    return counters


def argsort_keys(
    keys: np.ndarray,
    cfg: Optional[WordConfig] = None,
    counters: Optional[OpCounters] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Sorted copy of ``keys`` plus the permutation that produced it.

    Returns ``(sorted_keys, perm)`` with
    ``sorted_keys[i] == keys[perm[i]]``; ``keys`` itself is untouched.
    """
    K = np.array(keys, dtype=np.int64, copy=True)
    P = np.arange(len(K), dtype=np.int64)
    sort_by_key(K, P, cfg=cfg, counters=counters)
    return K, P
