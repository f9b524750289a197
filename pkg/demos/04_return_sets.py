"""Polynomial return-time sets of concrete dynamical systems.

For a system (X, T), a point x, and polynomials p_i, the return set
collects the times n at which every T^{p_i(n)} x re-enters a ball.
Rational rotations give exactly computable congruence answers (used as
oracles); irrational rotations and the Heisenberg nilmanifold run on
256-bit fixed point, so every membership decision is reproducible.
"""

from fractions import Fraction

from psynd import (
    HeisenbergNil,
    PolyFamily,
    ReturnQuery,
    TorusRotation,
    max_gap,
    parse_real,
    pws_witness,
    return_set_1d,
    return_set_2d,
)
from psynd.windows import pws_witness_2d

# Quarter rotation, family {n^2}: n^2 mod 4 lands on {0, 1}, so the
# return set at eps < 1/4 is exactly the even integers.
rot4 = TorusRotation((parse_real("1/4"),))
x = rot4.base_point()
res = return_set_1d(ReturnQuery(rot4, x, x, Fraction("0.1"), PolyFamily.parse(["n^2"]), (-20, 20)))
print("quarter rotation, {n^2}:", sorted(res.members()))

# Irrational rotation, joint family {n, n^2}: still syndetic-looking.
rot = TorusRotation((parse_real("sqrt2"),))
x = rot.base_point()
res = return_set_1d(
    ReturnQuery(rot, x, x, Fraction("0.05"), PolyFamily.parse(["n", "n^2"]), (-10**4, 10**4))
)
print(f"\nsqrt2 rotation, {{n, n^2}}, eps=0.05: {res.count()} returns, max gap {max_gap(res)}")
print("piecewise-syndetic witness:", pws_witness(res, b_max=64, l_run=40))

# Two-dimensional version: times (m, n) with T^(m + p_i(n)) x in the ball.
rotg = TorusRotation((parse_real("golden"),))
x = rotg.base_point()
grid = return_set_2d(
    ReturnQuery(rotg, x, x, Fraction("0.25"), PolyFamily.parse(["n", "n^2"]), (-60, 60, -25, 25))
)
print(f"\ngolden rotation planar returns: {grid.count()} points")
print("planar witness:", pws_witness_2d(grid, 10, 10, 6, 3))

# Heisenberg nilmanifold: the n^2-orbit of the base point returns with
# bounded-looking gaps; watch the max gap across growing windows.
heis = HeisenbergNil(parse_real("sqrt2-1"), parse_real("sqrt3-1"))
x = heis.base_point()
fam = PolyFamily.parse(["n^2"])
for w in (2_000, 4_000, 10_000):
    rs = return_set_1d(ReturnQuery(heis, x, x, Fraction("0.2"), fam, (-w, w)))
    print(f"heisenberg window {w}: {rs.count()} returns, max gap {max_gap(rs)}")
