"""Window-set sources: Sturmian codings, congruence classes, random
piecewise-syndetic-style sets, and file/literal loading."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .constants import DEFAULT_BITS, parse_real
from .windows import WindowSet


def sturmian_window(
    alpha, lo: int, hi: int, bits: int = DEFAULT_BITS
) -> WindowSet:
    """{ n in [lo, hi] : frac(n * alpha) < 1/2 }.

    Irrational slopes are decided against the scaled fixed-point
    approximant, rationals exactly.
    """
    spec = parse_real(alpha)
    if spec.is_rational:
        a = spec.as_fraction()
        return WindowSet.from_predicate(lo, hi, lambda n: (n * a) % 1 < Fraction(1, 2))
    scaled = spec.fixed(bits)
    mask_mod = (1 << bits) - 1
    half = 1 << (bits - 1)
    m = 0
    for n in range(lo, hi + 1):
        if (n * scaled) & mask_mod < half:
            m |= 1 << (n - lo)
    return WindowSet(lo, hi, m)


def congruence_window(modulus: int, residues, lo: int, hi: int) -> WindowSet:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    rs = {r % modulus for r in residues}
    return WindowSet.from_predicate(lo, hi, lambda n: n % modulus in rs)


def random_thick_syndetic(
    lo: int, hi: int, rng: random.Random
) -> WindowSet:
    """Random model of a piecewise-syndetic set: a syndetic congruence
    pattern intersected with a union of blocks."""
    width = hi - lo + 1
    gap = rng.randint(1, 6)
    phase = rng.randint(0, gap - 1)
    mask = 0
    pos = lo
    while pos <= hi:
        run = rng.randint(max(1, width // 20), max(2, width // 5))
        hole = rng.randint(0, max(1, width // 10))
        for n in range(pos, min(pos + run, hi + 1)):
            if n % gap == phase:
                mask |= 1 << (n - lo)
        pos += run + hole
    return WindowSet(lo, hi, mask)


def load_window_file(path: str) -> WindowSet:
    raw = Path(path).read_bytes()
    if raw[:4] == b"PSYN":
        return WindowSet.from_bitmap_bytes(raw)
    return WindowSet.from_json_obj(json.loads(raw.decode("utf-8")))


def window_from_source(obj: dict, rng: Optional[random.Random] = None) -> WindowSet:
    """Build a WindowSet from a config source description.

    kinds: literal {lo, hi, members}, file {path}, sturmian {alpha,
    window}, congruence {modulus, residues, window}, full {window},
    random_thick_syndetic {window} (uses the supplied seeded rng).
    """
    kind = obj.get("kind")
    if kind == "literal":
        return WindowSet.from_members(int(obj["lo"]), int(obj["hi"]), obj["members"])
    if kind == "file":
        return load_window_file(obj["path"])
    if kind == "sturmian":
        lo, hi = obj["window"]
        return sturmian_window(obj["alpha"], int(lo), int(hi), int(obj.get("bits", DEFAULT_BITS)))
    if kind == "congruence":
        lo, hi = obj["window"]
        return congruence_window(int(obj["modulus"]), obj["residues"], int(lo), int(hi))
    if kind == "full":
        lo, hi = obj["window"]
        return WindowSet.full(int(lo), int(hi))
    if kind == "random_thick_syndetic":
        if rng is None:
            raise ValueError("random source needs a seeded rng")
        lo, hi = obj["window"]
        return random_thick_syndetic(int(lo), int(hi), rng)
    raise ValueError(f"unknown set source kind {kind!r}")
