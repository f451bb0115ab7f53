"""Set-partition generators used by the graph-polynomial module.

The full enumeration walks restricted-growth strings; the fixed-block-count
and minimum-block-size variants exist so that high-order coefficients can be
assembled without touching the full Bell-number-sized space.
"""

from __future__ import annotations

import itertools


def set_partitions(items):
    """Yield all partitions of ``items`` as tuples of tuples.

    Partitions are produced in restricted-growth-string order; blocks keep
    the element order of ``items`` and are sorted by first element.
    """
    items = list(items)
    n = len(items)
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i, maxval):
        if i == n:
            nblocks = maxval + 1
            blocks = [[] for _ in range(nblocks)]
            for pos, b in enumerate(rgs):
                blocks[b].append(items[pos])
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(maxval + 2):
            rgs[i] = b
            yield from rec(i + 1, max(maxval, b))

    yield from rec(1, 0)


def set_partitions_k(items, k: int):
    """Yield partitions of ``items`` into exactly ``k`` nonempty blocks."""
    items = list(items)
    n = len(items)
    if k < 0:
        raise ValueError("block count must be nonnegative")
    if n == 0:
        if k == 0:
            yield ()
        return
    if k == 0 or k > n:
        return
    for part in set_partitions(items):
        if len(part) == k:
            yield part


def partitions_min_block(items, blocks: int, min_size: int):
    """Partitions of ``items`` into exactly ``blocks`` blocks of size >= min_size.

    Recursive first-element anchoring: the smallest remaining item picks its
    block mates, which keeps every partition unique.
    """
    items = sorted(items)

    def rec(remaining, blocks_left):
        if not remaining:
            if blocks_left == 0:
                yield ()
            return
        if blocks_left == 0:
            return
        if len(remaining) < blocks_left * min_size:
            return
        head, rest = remaining[0], remaining[1:]
        max_extra = len(rest) - (blocks_left - 1) * min_size
        for s in range(min_size - 1, max_extra + 1):
            for mates in itertools.combinations(rest, s):
                block = (head,) + mates
                left = [x for x in rest if x not in set(mates)]
                for tail in rec(left, blocks_left - 1):
                    yield (block,) + tail

    yield from rec(items, blocks)


def bell_number(n: int) -> int:
    """Bell number via the triangle recurrence (used only for sanity checks)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]
