"""Polynomial return-time sets on finite windows.

``return_set_1d`` collects the times n whose whole polynomial orbit
tuple re-enters a ball; ``return_set_2d`` does the same for pairs
(m, n) acting by ``T^(m + p_i(n))``.  The purely combinatorial
companion ``combinatorial_set_2d`` evaluates membership of
``m + p_i(n)`` in a window set and reports, alongside the members, the
validity region of pairs whose evaluations all landed inside the
window; certificates must only be sought inside validity, because
outside it membership of the underlying unbounded set is unknown.

Ball membership uses strict inequality everywhere so results are
bit-reproducible for a fixed precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from . import bitops
from .errors import BadEpsilonError, EmptySetError
from .polynomials import PolyFamily
from .systems import PointLike, SystemSpec
from .windows import GridSet, PwsCert2D, WindowSet, dilate_2d, max_rectangle


@dataclass(frozen=True)
class ReturnQuery:
    """Everything needed to evaluate one return-time set."""

    sys: SystemSpec
    x: PointLike
    center: PointLike
    eps: object
    family: PolyFamily
    window: Union[Tuple[int, int], Tuple[int, int, int, int]]

    def __post_init__(self):
        if Fraction(self.eps) <= 0:
            raise BadEpsilonError(f"epsilon must be > 0, got {self.eps}")


def return_set_1d(q: ReturnQuery) -> WindowSet:
    """{ n in window : T^{p_i(n)} x lies in the ball for every i }."""
    lo, hi = q.window
    sys, x, center, eps = q.sys, q.x, q.center, q.eps
    polys = q.family.polys
    mask = 0
    for n in range(lo, hi + 1):
        if all(sys.in_ball(sys.iterate(x, p.eval(n)), center, eps) for p in polys):
            mask |= 1 << (n - lo)
    return WindowSet(lo, hi, mask)


def return_set_2d(q: ReturnQuery) -> GridSet:
    """{ (m, n) in box : T^{m + p_i(n)} x lies in the ball for every i }."""
    mlo, mhi, nlo, nhi = q.window
    sys, x, center, eps = q.sys, q.x, q.center, q.eps
    polys = q.family.polys
    rows = [0] * (mhi - mlo + 1)
    for n in range(nlo, nhi + 1):
        values = [p.eval(n) for p in polys]
        bit = 1 << (n - nlo)
        for m in range(mlo, mhi + 1):
            if all(
                sys.in_ball(sys.iterate(x, m + v), center, eps) for v in values
            ):
                rows[m - mlo] |= bit
    return GridSet((mlo, mhi, nlo, nhi), rows)


def combinatorial_set_2d(
    s: WindowSet, family: PolyFamily, box: Tuple[int, int, int, int]
) -> Tuple[GridSet, GridSet]:
    """Members and validity of { (m, n) : m + p_i(n) in S for all i }.

    validity marks the (m, n) whose evaluations all land inside S's
    window; members is a subset of validity by construction.
    """
    mlo, mhi, nlo, nhi = box
    m_width = mhi - mlo + 1
    m_mask = bitops.mask_of(m_width)
    member_rows = [0] * m_width
    valid_rows = [0] * m_width
    for n in range(nlo, nhi + 1):
        values = [p.eval(n) for p in family.polys]
        # for each i, m must lie in [S.lo - v_i, S.hi - v_i]
        a = max(mlo, max(s.lo - v for v in values))
        b = min(mhi, min(s.hi - v for v in values))
        if a > b:
            continue
        valid_col = bitops.mask_of(b - a + 1) << (a - mlo)
        member_col = valid_col
        for v in values:
            off = mlo + v - s.lo
            col = s.mask >> off if off >= 0 else s.mask << -off
            member_col &= col & m_mask
            if not member_col:
                break
        bit_n = 1 << (n - nlo)
        for m_idx in bitops.iter_bits(valid_col):
            valid_rows[m_idx] |= bit_n
        for m_idx in bitops.iter_bits(member_col):
            member_rows[m_idx] |= bit_n
    return GridSet(box, member_rows), GridSet(box, valid_rows)


def masked_dilation_2d(
    members: GridSet, validity: GridSet, b1: int, b2: int
) -> GridSet:
    """Box dilation of the members, cut down to the validity region.

    The dilation alone is already sound (every dilated point is backed
    by a real member), but certificates are kept inside validity so
    that the whole claim is decidable from the window.
    """
    d = dilate_2d(members, b1, b2)
    return d.intersect(validity.restrict(d.box))


def pws_area_witness_2d(
    members: GridSet,
    validity: GridSet,
    b1_max: int,
    b2_max: int,
    min_area: int,
) -> Optional[PwsCert2D]:
    """First (b1, b2) in lexicographic order whose masked dilation holds an
    all-ones rectangle of at least ``min_area``; the achieved rectangle is
    recorded in the certificate."""
    for b1 in range(0, min(b1_max, members.m_width - 1) + 1):
        for b2 in range(0, min(b2_max, members.n_width - 1) + 1):
            area, rect = max_rectangle(masked_dilation_2d(members, validity, b1, b2))
            if rect is not None and area >= min_area:
                return PwsCert2D(shift_box=(b1, b2), rect=rect)
    return None


def shift_cover_search(
    s: WindowSet, family: PolyFamily, target: WindowSet, n_bound: int
) -> Optional[int]:
    """Smallest-|a| integer translating the target patch into the set.

    Finds a with ``target intersect [-N, N] subseteq { n : a + p_i(n) in S
    for all i }``, searching only a for which every evaluation stays
    inside S's window.  Ties between a and -a resolve to the positive
    one.  Returns None when no such a exists in the feasible range.
    """
    patch_lo, patch_hi = max(target.lo, -n_bound), min(target.hi, n_bound)
    if patch_lo > patch_hi:
        raise EmptySetError("target has no points in [-N, N]")
    patch = target.restrict(patch_lo, patch_hi)
    points = list(patch.members())
    if not points:
        raise EmptySetError("target has no points in [-N, N]")
    values = sorted({p.eval(n) for n in points for p in family.polys})
    a_lo = s.lo - values[0]
    a_hi = s.hi - values[-1]
    if a_lo > a_hi:
        return None
    width = a_hi - a_lo + 1
    feasible = bitops.mask_of(width)
    for v in values:
        off = a_lo + v - s.lo  # >= 0 by choice of a_lo
        feasible &= (s.mask >> off) & bitops.mask_of(width)
        if not feasible:
            return None
    # nearest set bit to a = 0, ties to the positive side
    p0 = -a_lo
    max_d = max(abs(a_lo), abs(a_hi))
    for d in range(0, max_d + 1):
        for pos in (p0 + d, p0 - d) if d else (p0,):
            if 0 <= pos < width and (feasible >> pos) & 1:
                return a_lo + pos
    return None
