"""Hot loops shared by every sorting variant.

Each function is a straight-line scalar loop over an ``int64`` array with
explicit ``lo``/``hi`` bounds, so callers never materialise views.  The
:mod:`assocsort.backend` module compiles these with numba when that
backend is active; the same functions run unmodified under plain CPython
as the numpy fallback path, and both paths produce identical arrays and
counter values.

Conventions
-----------
* ``tag`` is the node tag bit (``1 << (w - 1)``); ``tag - 1`` masks the
  key/record bits.
* Former positions held in records are relative to ``lo``.
* Kernels return plain tuples of integers.  Where a ``status`` element is
  present, 0 means success and the negative ``STATUS_*`` codes below
  describe the invariant that failed; kernels never raise.
* ``moves`` counts words written to the array (a swap is two moves);
  record updates in place do not count.
"""

import numpy as np

STATUS_OK = 0
# A companion was needed but the interval shrink budget was exhausted,
# or the storage write cursor had no room for the companion pair.
STATUS_OVERFULL = -1
# No idle word could be found to sacrifice for a companion, or the
# short-term memory was malformed during retrieval.
STATUS_NO_IDLE = -2
# A retrieval write would have clobbered unread state.
STATUS_COLLISION = -3
# The number of tagged words did not match the practice summary.
STATUS_TAG_SCAN = -4
# A practiced word's hash slot did not hold a node.
STATUS_BAD_HASH = -5
# An untagged word appeared before the first node of a sorted prefix.
STATUS_BAD_PREFIX = -6
# The scan cursor overtook the pack cursor, or keys were not a permutation
# of the claimed interval.
STATUS_CURSOR = -7


def min_max(S, lo, hi):
    """Smallest and largest word in ``S[lo:hi]`` (caller ensures non-empty)."""
    mn = S[lo]
    mx = S[lo]
    for i in range(lo + 1, hi):
        v = S[i]
        if v < mn:
            mn = v
        if v > mx:
            mx = v
    return mn, mx


def cycle_leader(S, lo, hi, delta):
    """Permute distinct keys covering [delta, delta + hi - lo) into place.

    Follows each displacement cycle from its leader.  Returns
    ``(moves, status)``; a duplicate or out-of-range key surfaces as
    STATUS_CURSOR instead of looping forever.
    """
    n = hi - lo
    moves = 0
    for i in range(lo, hi):
        v = S[i]
        moved = False
        while v - delta != i - lo:
            d = v - delta
            if d < 0 or d >= n or moves > 2 * n:
                return moves, STATUS_CURSOR
            j = lo + d
            t = S[j]
            S[j] = v
            v = t
            moves += 1
            moved = True
        if moved:
            S[i] = v
            moves += 1
    return moves, STATUS_OK


def implicit_practice(S, lo, hi, delta):
    """One practicing pass for distinct keys, nodes implied by position.

    A key inside the interval [delta, delta + hi - lo) is swapped toward
    its slot until the scan position holds a settled key; each placement
    counts one distinct key.  Returns
    ``(n_distinct, delta_next, moves, status)`` with ``delta_next = -1``
    when every word was practiced.
    """
    n = hi - lo
    n_d = 0
    dnext = -1
    moves = 0
    i = lo
    while i < hi:
        v = S[i]
        d = v - delta
        if d < 0 or d >= n:
            if dnext < 0 or v < dnext:
                dnext = v
            i += 1
        elif d == i - lo:
            n_d += 1
            i += 1
        else:
            # A second copy of a settled key would swap forever.
            if moves > 2 * n:
                return n_d, dnext, moves, STATUS_CURSOR
            j = lo + d
            S[i] = S[j]
            S[j] = v
            moves += 2
            # Keys placed behind the scan are never examined again; keys
            # placed ahead of it are counted when the scan finds them
            # settled, so counting both here would double-count.
            if j < i:
                n_d += 1
    return n_d, dnext, moves, STATUS_OK


def collect_fixpoints(S, lo, hi, delta):
    """Compact words sitting at their own slot to the front, in order.

    Displaced words are unpracticed (their slot test can never pass), so
    a plain stable two-finger sweep is safe.  Returns ``(count, moves)``.
    """
    wr = lo
    moves = 0
    for i in range(lo, hi):
        if S[i] - delta == i - lo:
            if wr != i:
                t = S[wr]
                S[wr] = S[i]
                S[i] = t
                moves += 2
            wr += 1
    return wr - lo, moves


def practice(S, lo, hi, delta, base, span, tag):
    """One counting practice pass over ``S[lo:hi]``.

    Keys in [delta, delta + span) hash to slot ``lo + base + key - delta``.
    The first occurrence turns its slot into a node (displacing the slot's
    word to the scan position); repeats bump the node's record.  Words at
    or above the interval are deferred; words below ``delta`` are idle
    leftovers of an enclosing pass and are skipped.

    Returns ``(n_distinct, n_companion, n_deferred, delta_next, moves,
    created)`` with ``delta_next = -1`` when nothing was deferred.
    """
    n_d = 0
    n_c = 0
    n_def = 0
    dnext = -1
    moves = 0
    created = 0
    i = lo
    while i < hi:
        v = S[i]
        if v & tag:
            i += 1
            continue
        d = v - delta
        if d < 0:
            i += 1
            continue
        if d >= span:
            n_def += 1
            if dnext < 0 or v < dnext:
                dnext = v
            i += 1
            continue
        j = lo + base + d
        t = S[j]
        if t & tag:
            S[j] = t + 1
            n_c += 1
            i += 1
        else:
            S[i] = t
            S[j] = tag
            moves += 1
            created += 1
            n_d += 1
            # The displaced word is re-examined unless it came from the
            # already-scanned prefix, where it was counted before.
            if j < i:
                i += 1
    return n_d, n_c, n_def, dnext, moves, created


def store_nodes(S, lo, hi, delta, span, pack_split, tag, eps_budget):
    """Compact tagged nodes into short-term memory at ``S[lo:]``.

    A node whose count fits below ``1 << pack_split`` packs position and
    count into one record.  An overfull node takes two memory words —
    record then position — paid for by destroying one idle word (a word
    whose value lies in the practiced interval); at most ``eps_budget``
    nodes may be overfull.  Displaced non-node words are preserved.

    Returns ``(eps_used, stored, moves, status)`` where ``stored`` is the
    memory length in words.
    """
    thr = 1 << pack_split
    vmask = tag - 1
    wr = lo
    eps_used = 0
    moves = 0
    for i in range(lo, hi):
        x = S[i]
        if not x & tag:
            continue
        cnt = x & vmask
        fp = i - lo
        if cnt < thr:
            packed = tag | (fp << pack_split) | cnt
            if wr != i:
                S[i] = S[wr]
                moves += 1
            S[wr] = packed
            moves += 1
            wr += 1
            continue
        eps_used += 1
        if eps_used > eps_budget:
            return eps_used, wr - lo, moves, STATUS_OVERFULL
        if wr >= i:
            return eps_used, wr - lo, moves, STATUS_OVERFULL
        # Find an idle word to sacrifice for the companion slot.
        q = wr
        while q < hi:
            y = S[q]
            if not y & tag:
                dq = y - delta
                if 0 <= dq < span:
                    break
            q += 1
        if q == hi:
            return eps_used, wr - lo, moves, STATUS_NO_IDLE
        node = tag | cnt
        if q == wr:
            if wr + 1 == i:
                S[wr] = node
                S[i] = fp
                moves += 2
            else:
                S[i] = S[wr + 1]
                S[wr] = node
                S[wr + 1] = fp
                moves += 3
        elif q == wr + 1:
            S[i] = S[wr]
            S[wr] = node
            S[wr + 1] = fp
            moves += 3
        else:
            if wr + 1 == i:
                S[q] = S[wr]
                S[wr] = node
                S[i] = fp
                moves += 3
            else:
                S[q] = S[wr + 1]
                S[i] = S[wr]
                S[wr] = node
                S[wr + 1] = fp
                moves += 4
        wr += 2
    return eps_used, wr - lo, moves, STATUS_OK


def partition_values(S, lo, hi, pivot, tag):
    """Two-finger partition of the value planes of ``S[lo:hi]``.

    Words whose low ``w - 1`` bits are <= ``pivot`` move to the front.
    Tag bits stay where they are; only value planes swap.  Returns
    ``(n_low, moves)``.
    """
    vmask = tag - 1
    l = lo
    r = hi - 1
    moves = 0
    while l <= r:
        a = S[l] & vmask
        if a <= pivot:
            l += 1
            continue
        b = S[r] & vmask
        if b > pivot:
            r -= 1
            continue
        S[l] = (S[l] & tag) | b
        S[r] = (S[r] & tag) | a
        moves += 2
        l += 1
        r -= 1
    return l - lo, moves


def retrieve_packed(S, lo, mem_hi, write_end, delta, base, pack_split, tag):
    """Expand short-term memory ``S[lo:mem_hi]`` into sorted keys.

    Memory is read right-to-left: a tagged word packs position and count;
    an untagged word is an overfull node's position and the tagged word
    before it holds the count.  Keys are written right-to-left ending at
    ``write_end - 1``.  Returns ``(written, moves, status)``.
    """
    vmask = tag - 1
    cmask = (1 << pack_split) - 1
    r = mem_hi - 1
    o = write_end - 1
    moves = 0
    while r >= lo:
        x = S[r]
        if x & tag:
            rec = x & vmask
            fp = rec >> pack_split
            cnt = rec & cmask
        else:
            fp = x
            r -= 1
            if r < lo:
                return 0, moves, STATUS_NO_IDLE
            y = S[r]
            if not y & tag:
                return 0, moves, STATUS_NO_IDLE
            cnt = y & vmask
        key = delta + (fp - base)
        for _ in range(cnt + 1):
            if o < r:
                return 0, moves, STATUS_COLLISION
            S[o] = key
            o -= 1
            moves += 1
        r -= 1
    return (write_end - 1) - o, moves, STATUS_OK


def store_records(S, lo, hi, n_d, tag):
    """Move the k-th node's record into the value plane of ``S[lo + k]``.

    Value planes swap; tag bits stay put, so every node keeps marking its
    slot (the key it stands for) while its count is parked at the front.
    Returns ``(stored, moves, status)``.
    """
    vmask = tag - 1
    k = lo
    moves = 0
    for p in range(lo, hi):
        if not S[p] & tag:
            continue
        if p != k:
            a = S[k]
            b = S[p]
            S[k] = (a & tag) | (b & vmask)
            S[p] = (b & tag) | (a & vmask)
            moves += 2
        k += 1
        if k - lo == n_d:
            break
    if k - lo != n_d:
        return k - lo, moves, STATUS_TAG_SCAN
    return k - lo, moves, STATUS_OK


def retrieve_node_scan(S, lo, hi, n_d, n_c, delta, tag):
    """Emit sorted keys from node positions, records parked at the front.

    Nodes are located by scanning tag bits right-to-left; the k-th node
    from the right pairs with the record in the value plane of
    ``S[lo + k]``.  Each node's tag is cleared before its key is written
    ``count + 1`` times, the writes masked so surviving tags are
    preserved.  Returns ``(moves, status)``.
    """
    vmask = tag - 1
    o = lo + n_d + n_c - 1
    p = hi - 1
    moves = 0
    for k in range(n_d - 1, -1, -1):
        while p >= lo and not S[p] & tag:
            p -= 1
        if p < lo:
            return moves, STATUS_TAG_SCAN
        cnt = S[lo + k] & vmask
        key = delta + (p - lo)
        S[p] = S[p] & vmask
        for _ in range(cnt + 1):
            if o < lo + k:
                return moves, STATUS_COLLISION
            S[o] = (S[o] & tag) | key
            o -= 1
            moves += 1
        p -= 1
    if o != lo - 1:
        return moves, STATUS_COLLISION
    return moves, STATUS_OK


def practice_super(S, lo, hi, delta, span_keys, wm1, tag):
    """Practice pass recording ``wm1`` distinct keys per node as bits.

    Key ``delta + d`` maps to bit ``d % wm1`` of the node at slot
    ``lo + d // wm1``.  A repeated key is reported, not recorded.
    Returns ``(n_distinct, n_companion, n_deferred, delta_next, moves,
    created, dup_key)`` with ``dup_key = -1`` when all keys were unique;
    ``n_companion`` counts keys folded into an existing node.
    """
    n_d = 0
    n_c = 0
    n_def = 0
    dnext = -1
    moves = 0
    created = 0
    i = lo
    while i < hi:
        v = S[i]
        if v & tag:
            i += 1
            continue
        d = v - delta
        if d < 0:
            i += 1
            continue
        if d >= span_keys:
            n_def += 1
            if dnext < 0 or v < dnext:
                dnext = v
            i += 1
            continue
        j = lo + d // wm1
        b = 1 << (d % wm1)
        t = S[j]
        if t & tag:
            if t & b:
                return n_d, n_c, n_def, dnext, moves, created, v
            S[j] = t | b
            n_c += 1
            i += 1
        else:
            S[i] = t
            S[j] = tag | b
            moves += 1
            created += 1
            n_d += 1
            if j < i:
                i += 1
    return n_d, n_c, n_def, dnext, moves, created, -1


def retrieve_super(S, lo, hi, n_d, n_c, delta, wm1, tag):
    """Emit sorted keys from bitmap nodes, records parked at the front.

    Like :func:`retrieve_node_scan`, but each record is a bitmap: bit
    ``t`` of the k-th node from the right stands for key
    ``delta + (p - lo) * wm1 + t``.  Bits are emitted high-to-low so the
    right-to-left writes produce ascending keys.  Returns
    ``(moves, status)``.
    """
    vmask = tag - 1
    o = lo + n_d + n_c - 1
    p = hi - 1
    moves = 0
    for k in range(n_d - 1, -1, -1):
        while p >= lo and not S[p] & tag:
            p -= 1
        if p < lo:
            return moves, STATUS_TAG_SCAN
        rec = S[lo + k] & vmask
        key0 = delta + (p - lo) * wm1
        S[p] = S[p] & vmask
        for t in range(wm1 - 1, -1, -1):
            if rec & (1 << t):
                if o < lo + k:
                    return moves, STATUS_COLLISION
                S[o] = (S[o] & tag) | (key0 + t)
                o -= 1
                moves += 1
        p -= 1
    if o != lo - 1:
        return moves, STATUS_COLLISION
    return moves, STATUS_OK


def practice_rank(K, P, lo, hi, delta, span, tag):
    """Counting practice over parallel key/payload arrays.

    Same protocol as :func:`practice` with ``base = 0``, except elements
    move as (key, payload) pairs: the payload of a key consumed into a
    node stays at the node's slot.  Returns the same tuple as
    :func:`practice`.
    """
    n_d = 0
    n_c = 0
    n_def = 0
    dnext = -1
    moves = 0
    created = 0
    i = lo
    while i < hi:
        v = K[i]
        if v & tag:
            i += 1
            continue
        d = v - delta
        if d < 0:
            i += 1
            continue
        if d >= span:
            n_def += 1
            if dnext < 0 or v < dnext:
                dnext = v
            i += 1
            continue
        j = lo + d
        t = K[j]
        if t & tag:
            K[j] = t + 1
            n_c += 1
            i += 1
        else:
            K[i] = t
            K[j] = tag
            pp = P[i]
            P[i] = P[j]
            P[j] = pp
            moves += 3
            created += 1
            n_d += 1
            if j < i:
                i += 1
    return n_d, n_c, n_def, dnext, moves, created


def accumulate_records(K, lo, hi, tag):
    """Turn per-node counts into inclusive rank prefix sums, in place.

    After this, a node's record is the index of the *last* slot of its
    key's run in the sorted order.  Returns ``(n_nodes, total)``.
    """
    vmask = tag - 1
    n_nodes = 0
    total = 0
    for q in range(lo, hi):
        x = K[q]
        if x & tag:
            total += (x & vmask) + 1
            K[q] = tag | (total - 1)
            n_nodes += 1
    return n_nodes, total


def repractice_idle(K, lo, hi, delta, span, tag):
    """Hand every idle word a destination ticket drawn from its node.

    An untagged word whose key lies in the interval re-hashes to its
    node, takes the node's current record as its destination (relative
    to ``lo``), and the record is decremented.  After the sweep each
    node's record is the *first* slot of its run — which is where the
    node itself must go.  Returns ``(n_tickets, status)``.
    """
    vmask = tag - 1
    made = 0
    for q in range(lo, hi):
        x = K[q]
        if x & tag:
            continue
        d = x - delta
        if d < 0 or d >= span:
            continue
        j = lo + d
        y = K[j]
        if not y & tag:
            return made, STATUS_BAD_HASH
        K[q] = y & vmask
        K[j] = y - 1
        made += 1
    return made, STATUS_OK


def reactivate(K, P, lo, hi, n_sorted, tag):
    """Move every element of the segment to its final slot for this pass.

    Three kinds of words: nodes (tagged; destination = own record), idle
    tickets (untagged, value < n_sorted; destination = value), and
    deferred keys (untagged, value >= n_sorted; packed after the sorted
    prefix in scan order).  Nodes are displaced at most once, along a
    chain of node-into-node placements that ends in the scan hole.
    A placed node's record is rewritten to its former slot index so the
    key can be reconstructed later.  Returns ``(moves, status)``.
    """
    vmask = tag - 1
    moves = 0
    kc = lo + n_sorted  # pack cursor for deferred keys
    i = lo
    while i < hi:
        x = K[i]
        if x & tag:
            i += 1
            continue
        if x < n_sorted:
            q = lo + x
            if q == i:
                i += 1
                continue
            y = K[q]
            if not y & tag:
                K[i] = y
                K[q] = x
                pp = P[i]
                P[i] = P[q]
                P[q] = pp
                moves += 3
                continue
            # Ticket claims a node's slot: place the ticket, then walk the
            # chain of displaced nodes until one lands in the hole at i.
            K[q] = x
            curp = P[q]
            P[q] = P[i]
            moves += 2
            former = x
            cur = y
            while True:
                dd = cur & vmask
                qq = lo + dd
                if qq == i:
                    K[i] = tag | former
                    P[i] = curp
                    moves += 2
                    break
                z = K[qq]
                pz = P[qq]
                K[qq] = tag | former
                P[qq] = curp
                moves += 2
                if z & tag:
                    cur = z
                    curp = pz
                    former = dd
                else:
                    K[i] = z
                    P[i] = pz
                    moves += 2
                    break
            continue
        # Deferred key.
        if i >= kc:
            if i == kc:
                kc += 1
                i += 1
                continue
            return moves, STATUS_CURSOR
        if i >= lo + n_sorted:
            i += 1  # already packed
            continue
        if kc >= hi:
            return moves, STATUS_CURSOR
        y = K[kc]
        if not y & tag:
            K[i] = y
            K[kc] = x
            pp = P[i]
            P[i] = P[kc]
            P[kc] = pp
            moves += 3
            kc += 1
            continue
        K[kc] = x
        curp = P[kc]
        P[kc] = P[i]
        moves += 2
        former = kc - lo
        kc += 1
        cur = y
        while True:
            dd = cur & vmask
            qq = lo + dd
            if qq == i:
                K[i] = tag | former
                P[i] = curp
                moves += 2
                break
            z = K[qq]
            pz = P[qq]
            K[qq] = tag | former
            P[qq] = curp
            moves += 2
            if z & tag:
                cur = z
                curp = pz
                former = dd
            else:
                K[i] = z
                P[i] = pz
                moves += 2
                break
        continue
    return moves, STATUS_OK


def restore_keys(K, lo, hi_sorted, delta, tag):
    """Rewrite the sorted prefix's words as keys.

    A node's record is its former hash slot, so its key is
    ``delta + record``; it is overwritten in place and the key repeats
    for every following untagged word of the run.  Returns
    ``(moves, status)``.
    """
    vmask = tag - 1
    key = -1
    moves = 0
    for q in range(lo, hi_sorted):
        x = K[q]
        if x & tag:
            key = delta + (x & vmask)
        elif key < 0:
            return moves, STATUS_BAD_PREFIX
        K[q] = key
        moves += 1
    return moves, STATUS_OK


def partition_msb(S, lo, hi, bit):
    """Full-word two-finger partition on one bit (clear bit first)."""
    l = lo
    r = hi - 1
    moves = 0
    while l <= r:
        if not S[l] & bit:
            l += 1
        elif S[r] & bit:
            r -= 1
        else:
            t = S[l]
            S[l] = S[r]
            S[r] = t
            moves += 2
            l += 1
            r -= 1
    return l - lo, moves


def add_const(S, lo, hi, c):
    """Add ``c`` to every word of ``S[lo:hi]``; returns words written."""
    for i in range(lo, hi):
        S[i] += c
    return hi - lo


def radix_pass(src, dst, n, shift):
    """One stable 8-bit counting pass of an LSD radix sort."""
    counts = np.zeros(256, dtype=np.int64)
    for i in range(n):
        counts[(src[i] >> shift) & 0xFF] += 1
    total = 0
    for b in range(256):
        c = counts[b]
        counts[b] = total
        total += c
    for i in range(n):
        d = (src[i] >> shift) & 0xFF
        dst[counts[d]] = src[i]
        counts[d] += 1
    return n
