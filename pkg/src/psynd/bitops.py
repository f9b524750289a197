"""Bit-parallel kernels on Python big integers.

A mask of width ``w`` models membership on ``w`` consecutive integers,
bit ``i`` being the ``i``-th position counted from the low end.  All
kernels here are pure functions of plain ints so they stay trivially
thread-safe and easy to oracle against naive set code.
"""

from __future__ import annotations

from typing import Iterator, Optional, Tuple


def mask_of(width: int) -> int:
    return (1 << width) - 1


def smear_down(x: int, b: int) -> int:
    """Union of right-shifts of ``x`` by 0..b (dilation by the shift set [0,b]).

    Doubling ladder: if ``y`` covers shifts 0..c then ``y | (y >> s)``
    covers 0..c+s for any s <= c+1.
    """
    if b < 0:
        raise ValueError("negative shift bound")
    y = x
    covered = 0
    while covered < b:
        step = min(covered + 1, b - covered)
        y |= y >> step
        covered += step
    return y


def and_reduce(x: int, k: int) -> int:
    """AND of right-shifts of ``x`` by 0..k-1.

    Bit ``i`` of the result is set iff bits i..i+k-1 of ``x`` are all set,
    i.e. a run of length ``k`` starts at ``i``.
    """
    if k < 1:
        raise ValueError("run length must be >= 1")
    y = x
    covered = 1
    while covered < k:
        step = min(covered, k - covered)
        y &= y >> step
        covered += step
    return y


def lowest_set_bit(x: int) -> Optional[int]:
    if x == 0:
        return None
    return (x & -x).bit_length() - 1


def longest_run(x: int, width: int) -> Tuple[int, Optional[int]]:
    """Length and lowest start of the longest run of set bits in ``x``.

    Binary search on the run length; each probe is O(log) big-int ops.
    Returns (0, None) when ``x`` is zero.
    """
    if x == 0:
        return 0, None
    lo, hi = 1, width
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if and_reduce(x, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo, lowest_set_bit(and_reduce(x, lo))


def has_run(x: int, k: int) -> Optional[int]:
    """Lowest start of a run of ``k`` set bits, or None."""
    return lowest_set_bit(and_reduce(x, k))


def iter_bits(x: int) -> Iterator[int]:
    """Yield set-bit positions in increasing order.

    Scans byte-wise so very wide, sparse masks do not pay per-bit
    big-int shifts.
    """
    if x == 0:
        return
    nbytes = (x.bit_length() + 7) // 8
    raw = x.to_bytes(nbytes, "little")
    base = 0
    for byte in raw:
        while byte:
            low = byte & -byte
            yield base + low.bit_length() - 1
            byte ^= low
        base += 8


def popcount(x: int) -> int:
    return x.bit_count()
