"""Finite-window set structure: syndetic, thick, and piecewise-syndetic certificates.

A :class:`WindowSet` models an integer set restricted to an interval
``[lo, hi]``; a :class:`GridSet` models a planar set restricted to a box.
Detection ops return small certificate objects that can always be
re-verified against the raw set by a direct membership scan, and all
piecewise-syndetic claims are made only on the shift-shrunk interior of
the window so that a finite truncation never manufactures a witness the
underlying unbounded set would not have.

Shift sets are restricted to intervals ``[0, b]`` (boxes in 2D).  This
loses no witnesses: a union of shifts over any finite set F is contained
in the union over the interval ``[0, max F]``, so interval search
dominates.  It also turns detection into dilation + longest-run
(largest-rectangle) kernels on bitmasks.

All objects are immutable after construction and every operation is a
pure function, safe to call concurrently.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from . import bitops
from .errors import (
    BadBoundError,
    EmptySetError,
    NoRowError,
    NotPartitionError,
)

_BITMAP_MAGIC = b"PSYN"
_VERSION_1D = 1
_VERSION_2D = 2


class WindowSet:
    """Immutable subset of the integer interval ``[lo, hi]``.

    Membership is bit-indexed: bit ``i`` of ``mask`` corresponds to the
    integer ``lo + i``.  Queries are total on the window and False
    outside it.
    """

    __slots__ = ("lo", "hi", "mask")

    def __init__(self, lo: int, hi: int, mask: int = 0):
        if lo > hi:
            raise ValueError(f"empty window: lo={lo} > hi={hi}")
        width = hi - lo + 1
        if mask < 0 or mask >> width:
            raise ValueError("mask has bits outside the window")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("WindowSet is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_members(cls, lo: int, hi: int, members: Iterable[int]) -> "WindowSet":
        mask = 0
        for m in members:
            if not lo <= m <= hi:
                raise ValueError(f"member {m} outside window [{lo},{hi}]")
            mask |= 1 << (m - lo)
        return cls(lo, hi, mask)

    @classmethod
    def from_predicate(cls, lo: int, hi: int, pred: Callable[[int], bool]) -> "WindowSet":
        mask = 0
        bit = 1
        for n in range(lo, hi + 1):
            if pred(n):
                mask |= bit
            bit <<= 1
        return cls(lo, hi, mask)

    @classmethod
    def full(cls, lo: int, hi: int) -> "WindowSet":
        return cls(lo, hi, bitops.mask_of(hi - lo + 1))

    @classmethod
    def empty(cls, lo: int, hi: int) -> "WindowSet":
        return cls(lo, hi, 0)

    # -- basic queries -----------------------------------------------

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, n: int) -> bool:
        if not self.lo <= n <= self.hi:
            return False
        return bool(self.mask >> (n - self.lo) & 1)

    def members(self) -> Iterator[int]:
        for i in bitops.iter_bits(self.mask):
            yield self.lo + i

    def count(self) -> int:
        return bitops.popcount(self.mask)

    def is_empty(self) -> bool:
        return self.mask == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WindowSet)
            and self.lo == other.lo
            and self.hi == other.hi
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi, self.mask))

    def __repr__(self) -> str:
        return f"WindowSet([{self.lo},{self.hi}], {self.count()} members)"

    # -- set algebra (same window only) ------------------------------

    def _check_same_window(self, other: "WindowSet") -> None:
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("window mismatch")

    def union(self, other: "WindowSet") -> "WindowSet":
        self._check_same_window(other)
        return WindowSet(self.lo, self.hi, self.mask | other.mask)

    def intersect(self, other: "WindowSet") -> "WindowSet":
        self._check_same_window(other)
        return WindowSet(self.lo, self.hi, self.mask & other.mask)

    def complement(self) -> "WindowSet":
        return WindowSet(self.lo, self.hi, self.mask ^ bitops.mask_of(self.width))

    def shift(self, t: int) -> "WindowSet":
        """Translate the set and its window by ``t``."""
        return WindowSet(self.lo + t, self.hi + t, self.mask)

    def restrict(self, lo: int, hi: int) -> "WindowSet":
        """Restriction to a subwindow of the current window."""
        if lo < self.lo or hi > self.hi:
            raise ValueError("restriction exceeds window")
        sub = (self.mask >> (lo - self.lo)) & bitops.mask_of(hi - lo + 1)
        return WindowSet(lo, hi, sub)

    # -- serialization -----------------------------------------------

    def to_json_obj(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "members": list(self.members())}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "WindowSet":
        return cls.from_members(int(obj["lo"]), int(obj["hi"]), obj["members"])

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "WindowSet":
        return cls.from_json_obj(json.loads(text))

    def to_bitmap_bytes(self) -> bytes:
        """Raw bitmap: magic, version u16, lo/hi i64, 64-bit LE words."""
        words = (self.width + 63) // 64
        head = _BITMAP_MAGIC + struct.pack("<Hqq", _VERSION_1D, self.lo, self.hi)
        return head + self.mask.to_bytes(words * 8, "little")

    @classmethod
    def from_bitmap_bytes(cls, raw: bytes) -> "WindowSet":
        if raw[:4] != _BITMAP_MAGIC:
            raise ValueError("bad magic")
        version, lo, hi = struct.unpack_from("<Hqq", raw, 4)
        if version != _VERSION_1D:
            raise ValueError(f"unsupported bitmap version {version}")
        width = hi - lo + 1
        words = (width + 63) // 64
        body = raw[4 + 18 : 4 + 18 + words * 8]
        mask = int.from_bytes(body, "little") & bitops.mask_of(width)
        return cls(lo, hi, mask)


class GridSet:
    """Immutable subset of the integer box ``[mlo,mhi] x [nlo,nhi]``.

    Stored row-major: ``rows[m - mlo]`` is the bitmask over the n-range
    of row ``m``.
    """

    __slots__ = ("mlo", "mhi", "nlo", "nhi", "rows")

    def __init__(self, box: Tuple[int, int, int, int], rows: Sequence[int]):
        mlo, mhi, nlo, nhi = box
        if mlo > mhi or nlo > nhi:
            raise ValueError("empty box")
        if len(rows) != mhi - mlo + 1:
            raise ValueError("row count does not match box")
        w = nhi - nlo + 1
        for r in rows:
            if r < 0 or r >> w:
                raise ValueError("row mask outside box")
        object.__setattr__(self, "mlo", mlo)
        object.__setattr__(self, "mhi", mhi)
        object.__setattr__(self, "nlo", nlo)
        object.__setattr__(self, "nhi", nhi)
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("GridSet is immutable")

    @classmethod
    def from_members(
        cls, box: Tuple[int, int, int, int], members: Iterable[Tuple[int, int]]
    ) -> "GridSet":
        mlo, mhi, nlo, nhi = box
        rows = [0] * (mhi - mlo + 1)
        for m, n in members:
            if not (mlo <= m <= mhi and nlo <= n <= nhi):
                raise ValueError(f"member {(m, n)} outside box")
            rows[m - mlo] |= 1 << (n - nlo)
        return cls(box, rows)

    @classmethod
    def from_predicate(
        cls, box: Tuple[int, int, int, int], pred: Callable[[int, int], bool]
    ) -> "GridSet":
        mlo, mhi, nlo, nhi = box
        rows = []
        for m in range(mlo, mhi + 1):
            r = 0
            bit = 1
            for n in range(nlo, nhi + 1):
                if pred(m, n):
                    r |= bit
                bit <<= 1
            rows.append(r)
        return cls(box, rows)

    @classmethod
    def full(cls, box: Tuple[int, int, int, int]) -> "GridSet":
        mlo, mhi, nlo, nhi = box
        row = bitops.mask_of(nhi - nlo + 1)
        return cls(box, [row] * (mhi - mlo + 1))

    @classmethod
    def empty(cls, box: Tuple[int, int, int, int]) -> "GridSet":
        mlo, mhi, _, _ = box
        return cls(box, [0] * (mhi - mlo + 1))

    @property
    def box(self) -> Tuple[int, int, int, int]:
        return (self.mlo, self.mhi, self.nlo, self.nhi)

    @property
    def n_width(self) -> int:
        return self.nhi - self.nlo + 1

    @property
    def m_width(self) -> int:
        return self.mhi - self.mlo + 1

    def __contains__(self, point: Tuple[int, int]) -> bool:
        m, n = point
        if not (self.mlo <= m <= self.mhi and self.nlo <= n <= self.nhi):
            return False
        return bool(self.rows[m - self.mlo] >> (n - self.nlo) & 1)

    def members(self) -> Iterator[Tuple[int, int]]:
        for i, r in enumerate(self.rows):
            m = self.mlo + i
            for j in bitops.iter_bits(r):
                yield (m, self.nlo + j)

    def count(self) -> int:
        return sum(bitops.popcount(r) for r in self.rows)

    def is_empty(self) -> bool:
        return all(r == 0 for r in self.rows)

    def intersect(self, other: "GridSet") -> "GridSet":
        if self.box != other.box:
            raise ValueError("box mismatch")
        return GridSet(self.box, [a & b for a, b in zip(self.rows, other.rows)])

    def restrict(self, box: Tuple[int, int, int, int]) -> "GridSet":
        """Restriction to a sub-box of the current box."""
        mlo, mhi, nlo, nhi = box
        if mlo < self.mlo or mhi > self.mhi or nlo < self.nlo or nhi > self.nhi:
            raise ValueError("restriction exceeds box")
        keep = bitops.mask_of(nhi - nlo + 1)
        shift = nlo - self.nlo
        rows = [
            (self.rows[m - self.mlo] >> shift) & keep for m in range(mlo, mhi + 1)
        ]
        return GridSet(box, rows)

    def n_projection(self) -> WindowSet:
        """{ n : some (m, n) is a member }, as a WindowSet over the n-range."""
        acc = 0
        for r in self.rows:
            acc |= r
        return WindowSet(self.nlo, self.nhi, acc)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GridSet)
            and self.box == other.box
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.box, self.rows))

    def __repr__(self) -> str:
        return f"GridSet({self.box}, {self.count()} members)"

    def to_json_obj(self) -> dict:
        return {"box": list(self.box), "members": [list(p) for p in self.members()]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "GridSet":
        box = tuple(int(v) for v in obj["box"])
        return cls.from_members(box, [tuple(p) for p in obj["members"]])

    def to_bitmap_bytes(self) -> bytes:
        words = (self.n_width + 63) // 64
        head = _BITMAP_MAGIC + struct.pack(
            "<Hqqqq", _VERSION_2D, self.mlo, self.mhi, self.nlo, self.nhi
        )
        body = b"".join(r.to_bytes(words * 8, "little") for r in self.rows)
        return head + body

    @classmethod
    def from_bitmap_bytes(cls, raw: bytes) -> "GridSet":
        if raw[:4] != _BITMAP_MAGIC:
            raise ValueError("bad magic")
        version, mlo, mhi, nlo, nhi = struct.unpack_from("<Hqqqq", raw, 4)
        if version != _VERSION_2D:
            raise ValueError(f"unsupported bitmap version {version}")
        words = (nhi - nlo + 1 + 63) // 64
        off = 4 + 2 + 32
        rows = []
        w_mask = bitops.mask_of(nhi - nlo + 1)
        for _ in range(mhi - mlo + 1):
            rows.append(int.from_bytes(raw[off : off + words * 8], "little") & w_mask)
            off += words * 8
        return cls((mlo, mhi, nlo, nhi), rows)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SyndeticCert:
    """Every length-``gap_bound`` subinterval of ``checked_interval`` meets the set."""

    gap_bound: int
    checked_interval: Tuple[int, int]

    def to_json_obj(self) -> dict:
        return {
            "type": "syndetic",
            "gap_bound": self.gap_bound,
            "checked_interval": list(self.checked_interval),
        }


@dataclass(frozen=True)
class SyndeticRefutation:
    """First length-N subinterval missing the set, with the containing gap size."""

    gap: int
    location: int
    length: int

    def to_json_obj(self) -> dict:
        return {
            "type": "syndetic_refutation",
            "gap": self.gap,
            "location": self.location,
            "length": self.length,
        }


@dataclass(frozen=True)
class ThickCert:
    """``[run_start, run_start+run_length-1]`` is contained in the set."""

    run_start: Optional[int]
    run_length: int

    def to_json_obj(self) -> dict:
        return {"type": "thick", "run_start": self.run_start, "run_length": self.run_length}


@dataclass(frozen=True)
class PwsCert:
    """Dilating the set by the shift interval [0, shift_bound] covers ``interval``.

    ``interval`` is (start, length); it always lies inside the
    shift_bound-shrunk window, so re-dilation of the raw window set
    reproduces it.
    """

    shift_bound: int
    interval: Tuple[int, int]

    def to_json_obj(self) -> dict:
        return {
            "type": "pws",
            "shift_bound": self.shift_bound,
            "interval": {"start": self.interval[0], "length": self.interval[1]},
        }


@dataclass(frozen=True)
class PwsCert2D:
    """Dilating by the shift box [0,b1]x[0,b2] covers the rectangle.

    ``rect`` is (m0, n0, w, h): rows m0..m0+w-1, columns n0..n0+h-1.
    """

    shift_box: Tuple[int, int]
    rect: Tuple[int, int, int, int]

    def to_json_obj(self) -> dict:
        return {
            "type": "pws2d",
            "shift_box": list(self.shift_box),
            "rect": list(self.rect),
        }


@dataclass(frozen=True)
class Syndetic2DCert:
    l_bound: int
    checked_box: Tuple[int, int, int, int]

    def to_json_obj(self) -> dict:
        return {
            "type": "syndetic2d",
            "l_bound": self.l_bound,
            "checked_box": list(self.checked_box),
        }


@dataclass(frozen=True)
class Syndetic2DRefutation:
    l_bound: int
    point: Tuple[int, int]

    def to_json_obj(self) -> dict:
        return {
            "type": "syndetic2d_refutation",
            "l_bound": self.l_bound,
            "point": list(self.point),
        }


@dataclass(frozen=True)
class GapSummary:
    """Interior max gap plus boundary lead-in/tail-out gap lower bounds.

    The boundary distances are only lower bounds on gaps of any
    unbounded extension of the windowed set, so they are reported
    separately rather than folded into ``max_gap``.
    """

    max_gap: int
    lead_in: int
    tail_out: int


# ---------------------------------------------------------------------------
# 1D operations
# ---------------------------------------------------------------------------


def gap_summary(s: WindowSet) -> GapSummary:
    if s.is_empty():
        raise EmptySetError("gap of empty set")
    first = bitops.lowest_set_bit(s.mask)
    last = s.mask.bit_length() - 1
    inner = s.mask >> first
    # longest run of zeros strictly between members = longest run of ones
    # in the complement of the span
    span_width = last - first + 1
    holes = (inner ^ bitops.mask_of(span_width)) & bitops.mask_of(span_width)
    zrun, _ = bitops.longest_run(holes, span_width)
    return GapSummary(max_gap=zrun + 1 if zrun else 1 if s.count() > 1 else 0,
                      lead_in=first, tail_out=s.width - 1 - last)


def max_gap(s: WindowSet) -> int:
    """Maximum difference between consecutive members (0 for a singleton)."""
    g = gap_summary(s)
    return g.max_gap


def syndetic_certificate(
    s: WindowSet, n: int
) -> Union[SyndeticCert, SyndeticRefutation]:
    """Certify that every length-``n`` subinterval of the N-shrunk interior meets ``s``.

    The checked interval is ``[lo+n, hi-n]``; windows touching the
    boundary are excluded because the underlying unbounded set is
    unknown there.
    """
    if n < 1:
        raise BadBoundError(f"N must be >= 1, got {n}")
    lo, hi = s.lo + n, s.hi - n
    if lo > hi or hi - lo + 1 < n:
        # interior too small to contain any length-n window: vacuous cert
        return SyndeticCert(gap_bound=n, checked_interval=(lo, hi))
    inner = s.restrict(lo, hi)
    width = inner.width
    holes = inner.mask ^ bitops.mask_of(width)
    start = bitops.has_run(holes, n)
    if start is None:
        return SyndeticCert(gap_bound=n, checked_interval=(lo, hi))
    loc = lo + start
    # containing gap: distance between the set members (or window edges)
    # surrounding the failing interval
    below = s.restrict(s.lo, loc - 1) if loc - 1 >= s.lo else None
    above = s.restrict(loc, s.hi)
    prev_member = None
    if below is not None and not below.is_empty():
        prev_member = below.lo + below.mask.bit_length() - 1
    nxt = bitops.lowest_set_bit(above.mask)
    next_member = above.lo + nxt if nxt is not None else None
    left = prev_member if prev_member is not None else s.lo - 1
    right = next_member if next_member is not None else s.hi + 1
    return SyndeticRefutation(gap=right - left, location=loc, length=n)


def longest_run(s: WindowSet) -> ThickCert:
    length, start = bitops.longest_run(s.mask, s.width)
    if start is None:
        return ThickCert(run_start=None, run_length=0)
    return ThickCert(run_start=s.lo + start, run_length=length)


def dilate(s: WindowSet, b: int) -> WindowSet:
    """Union of translates ``s - i`` for i in [0, b], on the b-shrunk window.

    Positions above ``hi - b`` are dropped: there the dilation of an
    unbounded extension would depend on members beyond the window.
    """
    if b < 0:
        raise BadBoundError("shift bound must be >= 0")
    if b >= s.width:
        raise BadBoundError("shift bound exceeds window")
    new_width = s.width - b
    mask = bitops.smear_down(s.mask, b) & bitops.mask_of(new_width)
    return WindowSet(s.lo, s.hi - b, mask)


def pws_witness(s: WindowSet, b_max: int, l_run: int) -> Optional[PwsCert]:
    """Smallest b <= b_max whose dilation contains a run of length >= l_run.

    The reported interval is the full maximal run achieved at that b,
    inside the b-shrunk window.  Returns None when no b works.
    """
    if b_max < 0:
        raise BadBoundError("b_max must be >= 0")
    if l_run < 1:
        raise BadBoundError("L must be >= 1")
    for b in range(0, min(b_max, s.width - 1) + 1):
        d = dilate(s, b)
        length, start = bitops.longest_run(d.mask, d.width)
        if length >= l_run:
            return PwsCert(shift_bound=b, interval=(d.lo + start, length))
    return None


def verify_pws(s: WindowSet, cert: PwsCert) -> bool:
    """Re-verify a PwsCert by direct membership scan of the raw set."""
    b = cert.shift_bound
    start, length = cert.interval
    if start < s.lo or start + length - 1 > s.hi - b:
        return False
    for x in range(start, start + length):
        if not any((x + i) in s for i in range(b + 1)):
            return False
    return True


def verify_syndetic(s: WindowSet, cert: SyndeticCert) -> bool:
    lo, hi = cert.checked_interval
    n = cert.gap_bound
    i = lo
    while i + n - 1 <= hi:
        if not any((i + j) in s for j in range(n)):
            return False
        i += 1
    return True


def verify_thick(s: WindowSet, cert: ThickCert) -> bool:
    if cert.run_length == 0:
        return True
    if cert.run_start is None:
        return False
    return all((cert.run_start + i) in s for i in range(cert.run_length))


def run_starts(s: WindowSet, n: int) -> WindowSet:
    """Positions where a run of ``n`` consecutive members begins.

    The result lives on the (n-1)-shrunk window, where the whole run is
    decidable.
    """
    if n < 1:
        raise BadBoundError("run length must be >= 1")
    if n > s.width:
        raise BadBoundError("run length exceeds window")
    width = s.width - (n - 1)
    return WindowSet(s.lo, s.hi - (n - 1), bitops.and_reduce(s.mask, n) & bitops.mask_of(width))


def thickly_syndetic_certificate(
    s: WindowSet, n: int, gap_bound: int
) -> Union[SyndeticCert, SyndeticRefutation]:
    """Certify that length-``n`` runs start syndetically (gap ``gap_bound``).

    Thick syndeticity asks this for every n; on a window it is checked
    one run length at a time.
    """
    return syndetic_certificate(run_starts(s, n), gap_bound)


def find_ap(s: WindowSet, k: int) -> Optional[Tuple[int, int]]:
    """First (a, d) with a, a+d, ..., a+(k-1)d all members; d >= 1.

    Search order: increasing d, then increasing a, so the result is
    deterministic.
    """
    if k < 3:
        raise BadBoundError(f"progression length must be >= 3, got {k}")
    width = s.width
    max_d = (width - 1) // (k - 1)
    for d in range(1, max_d + 1):
        hits = s.mask
        for step in range(1, k):
            hits &= s.mask >> (step * d)
            if not hits:
                break
        if hits:
            a = bitops.lowest_set_bit(hits)
            return (s.lo + a, d)
    return None


# ---------------------------------------------------------------------------
# 2D operations
# ---------------------------------------------------------------------------


def dilate_2d(e: GridSet, b1: int, b2: int) -> GridSet:
    """Union of translates ``e - (i, j)``, (i, j) in [0,b1]x[0,b2], on the shrunk box."""
    if b1 < 0 or b2 < 0:
        raise BadBoundError("shift bounds must be >= 0")
    if b1 >= e.m_width or b2 >= e.n_width:
        raise BadBoundError("shift bounds exceed box")
    n_keep = bitops.mask_of(e.n_width - b2)
    smeared = [bitops.smear_down(r, b2) & n_keep for r in e.rows]
    rows = []
    nrows = len(smeared)
    for i in range(nrows - b1):
        acc = 0
        for j in range(b1 + 1):
            acc |= smeared[i + j]
        rows.append(acc)
    return GridSet((e.mlo, e.mhi - b1, e.nlo, e.nhi - b2), rows)


def _find_rect(rows: Sequence[int], w: int, h: int, n_width: int) -> Optional[Tuple[int, int]]:
    """Lowest (row index, col index) where a w-row x h-col all-ones rect starts."""
    if w > len(rows):
        return None
    for i in range(len(rows) - w + 1):
        acc = rows[i]
        for j in range(1, w):
            acc &= rows[i + j]
            if not acc:
                break
        if acc:
            start = bitops.has_run(acc, h) if h <= n_width else None
            if start is not None:
                return (i, start)
    return None


def pws_witness_2d(
    e: GridSet, b1_max: int, b2_max: int, w: int, h: int
) -> Optional[PwsCert2D]:
    """Lexicographically minimal (b1, b2) whose box dilation contains a w x h rect.

    w counts rows (m direction), h counts columns (n direction).  For a
    fixed b1 the test is monotone in b2, so b2 is found by binary
    search.
    """
    if b1_max < 0 or b2_max < 0:
        raise BadBoundError("shift bounds must be >= 0")
    if w < 1 or h < 1:
        raise BadBoundError("rectangle sides must be >= 1")
    b1_cap = min(b1_max, e.m_width - 1)
    b2_cap = min(b2_max, e.n_width - 1)

    def attempt(b1: int, b2: int) -> Optional[Tuple[int, int]]:
        d = dilate_2d(e, b1, b2)
        if w > d.m_width or h > d.n_width:
            return None
        return _find_rect(d.rows, w, h, d.n_width)

    for b1 in range(0, b1_cap + 1):
        if attempt(b1, b2_cap) is None:
            continue
        lo_b, hi_b = 0, b2_cap
        while lo_b < hi_b:
            mid = (lo_b + hi_b) // 2
            if attempt(b1, mid) is not None:
                hi_b = mid
            else:
                lo_b = mid + 1
        pos = attempt(b1, lo_b)
        assert pos is not None
        return PwsCert2D(
            shift_box=(b1, lo_b),
            rect=(e.mlo + pos[0], e.nlo + pos[1], w, h),
        )
    return None


def verify_pws_2d(e: GridSet, cert: PwsCert2D) -> bool:
    b1, b2 = cert.shift_box
    m0, n0, w, h = cert.rect
    if m0 < e.mlo or m0 + w - 1 > e.mhi - b1:
        return False
    if n0 < e.nlo or n0 + h - 1 > e.nhi - b2:
        return False
    for m in range(m0, m0 + w):
        for n in range(n0, n0 + h):
            if not any(
                (m + i, n + j) in e for i in range(b1 + 1) for j in range(b2 + 1)
            ):
                return False
    return True


def max_rectangle(e: GridSet) -> Tuple[int, Optional[Tuple[int, int, int, int]]]:
    """Largest all-ones rectangle (area, (m0, n0, w, h)) by the histogram method."""
    ncols = e.n_width
    heights = [0] * ncols
    best_area = 0
    best = None
    for ri, row in enumerate(e.rows):
        for c in range(ncols):
            heights[c] = heights[c] + 1 if (row >> c) & 1 else 0
        stack: List[int] = []
        c = 0
        while c <= ncols:
            cur = heights[c] if c < ncols else 0
            if not stack or heights[stack[-1]] <= cur:
                stack.append(c)
                c += 1
            else:
                top = stack.pop()
                height = heights[top]
                left = stack[-1] + 1 if stack else 0
                area = height * (c - left)
                if area > best_area:
                    best_area = area
                    best = (e.mlo + ri - height + 1, e.nlo + left, height, c - left)
        # stack holds increasing heights; loop above drains it via the
        # sentinel cur=0 at c == ncols
    return best_area, best


def syndetic_2d_certificate(
    e: GridSet, l_bound: int
) -> Union[Syndetic2DCert, Syndetic2DRefutation]:
    """Certify that every point of the L-shrunk box lies in ``e + [-L, L]^2``."""
    if l_bound < 0:
        raise BadBoundError("L must be >= 0")
    mlo, mhi = e.mlo + l_bound, e.mhi - l_bound
    nlo, nhi = e.nlo + l_bound, e.nhi - l_bound
    if mlo > mhi or nlo > nhi:
        return Syndetic2DCert(l_bound=l_bound, checked_box=(mlo, mhi, nlo, nhi))
    # (m,n) in E + [-L,L]^2  iff  some member in [m-L,m+L] x [n-L,n+L]:
    # smearing the left-shifted row by 2L realizes the two-sided dilation
    width = e.n_width
    two_sided = [
        bitops.smear_down(r << l_bound, 2 * l_bound) & bitops.mask_of(width)
        for r in e.rows
    ]
    nrows = len(two_sided)
    for i in range(mlo - e.mlo, mhi - e.mlo + 1):
        acc = 0
        for j in range(max(0, i - l_bound), min(nrows, i + l_bound + 1)):
            acc |= two_sided[j]
        want = bitops.mask_of(nhi - nlo + 1) << (nlo - e.nlo)
        missing = want & ~acc
        if missing:
            n_idx = bitops.lowest_set_bit(missing)
            return Syndetic2DRefutation(
                l_bound=l_bound, point=(e.mlo + i, e.nlo + n_idx)
            )
    return Syndetic2DCert(l_bound=l_bound, checked_box=(mlo, mhi, nlo, nhi))


def verify_syndetic_2d(e: GridSet, cert: Syndetic2DCert) -> bool:
    l_bound = cert.l_bound
    mlo, mhi, nlo, nhi = cert.checked_box
    for m in range(mlo, mhi + 1):
        for n in range(nlo, nhi + 1):
            if not any(
                (m + i, n + j) in e
                for i in range(-l_bound, l_bound + 1)
                for j in range(-l_bound, l_bound + 1)
            ):
                return False
    return True


def grid_slice(e: GridSet, m: int) -> WindowSet:
    """Row ``m`` of the grid as a WindowSet over the n-range."""
    if not e.mlo <= m <= e.mhi:
        raise ValueError(f"row {m} outside box rows [{e.mlo},{e.mhi}]")
    return WindowSet(e.nlo, e.nhi, e.rows[m - e.mlo])


def best_slice(
    e: GridSet, b_max: int, l_run: int
) -> Tuple[int, PwsCert]:
    """Row whose slice admits the strongest piecewise-syndetic witness.

    Strength order: larger achieved run length, then smaller shift
    bound, then smaller row index.  Raises NoRowError when no row
    admits any witness at (b_max, L).
    """
    best: Optional[Tuple[int, int, int, PwsCert]] = None
    for m in range(e.mlo, e.mhi + 1):
        cert = pws_witness(grid_slice(e, m), b_max, l_run)
        if cert is None:
            continue
        key = (-cert.interval[1], cert.shift_bound, m)
        if best is None or key < best[:3]:
            best = (*key, cert)
    if best is None:
        raise NoRowError(f"no row admits a witness at b_max={b_max}, L={l_run}")
    return best[2], best[3]


@dataclass(frozen=True)
class PartitionResult:
    index: int
    cert: PwsCert
    used_fallback: bool


def partition_pws(
    cells: Sequence[WindowSet], b_max: int, l_run: int
) -> PartitionResult:
    """Pick the cell of a window partition with the strongest PS witness.

    Cells must share one window, be pairwise disjoint, and cover it.
    If no cell succeeds at (b_max, L) the shift bound is swept further,
    up to width-L: a partition cell holding at least L members always
    dilates to a length-L run inside the shrunk interior by then, so
    the pigeonhole guarantee stays checkable; such results are flagged
    ``used_fallback``.
    """
    if not cells:
        raise NotPartitionError("no cells")
    lo, hi = cells[0].lo, cells[0].hi
    acc = 0
    for c in cells:
        if (c.lo, c.hi) != (lo, hi):
            raise NotPartitionError("cells on different windows")
        if acc & c.mask:
            raise NotPartitionError("cells overlap")
        acc |= c.mask
    if acc != bitops.mask_of(hi - lo + 1):
        raise NotPartitionError("cells miss points of the window")

    def sweep(bound: int) -> Optional[Tuple[int, PwsCert]]:
        best: Optional[Tuple[int, int, int, PwsCert]] = None
        for idx, c in enumerate(cells):
            cert = pws_witness(c, bound, l_run)
            if cert is None:
                continue
            key = (-cert.interval[1], cert.shift_bound, idx)
            if best is None or key < best[:3]:
                best = (*key, cert)
        return None if best is None else (best[2], best[3])

    found = sweep(b_max)
    if found is not None:
        return PartitionResult(index=found[0], cert=found[1], used_fallback=False)
    width = hi - lo + 1
    for b in range(b_max + 1, max(0, width - l_run) + 1):
        found = sweep(b)
        if found is not None:
            return PartitionResult(index=found[0], cert=found[1], used_fallback=True)
    raise NoRowError(
        f"no cell admits a witness for L={l_run} even with unbounded shifts"
    )


CERT_VERIFIERS = {
    "syndetic": verify_syndetic,
    "thick": verify_thick,
    "pws": verify_pws,
}

CERT_VERIFIERS_2D = {
    "pws2d": verify_pws_2d,
    "syndetic2d": verify_syndetic_2d,
}


def cert_from_json_obj(obj: dict):
    kind = obj["type"]
    if kind == "syndetic":
        return SyndeticCert(obj["gap_bound"], tuple(obj["checked_interval"]))
    if kind == "syndetic_refutation":
        return SyndeticRefutation(obj["gap"], obj["location"], obj["length"])
    if kind == "thick":
        return ThickCert(obj["run_start"], obj["run_length"])
    if kind == "pws":
        return PwsCert(obj["shift_bound"], (obj["interval"]["start"], obj["interval"]["length"]))
    if kind == "pws2d":
        return PwsCert2D(tuple(obj["shift_box"]), tuple(obj["rect"]))
    if kind == "syndetic2d":
        return Syndetic2DCert(obj["l_bound"], tuple(obj["checked_box"]))
    if kind == "syndetic2d_refutation":
        return Syndetic2DRefutation(obj["l_bound"], tuple(obj["point"]))
    raise ValueError(f"unknown certificate type {kind!r}")
