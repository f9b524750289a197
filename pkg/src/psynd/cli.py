"""Batch experiment driver.

Subcommands: analyze, thma, thmb, returns, induced, nilcheck, verify.
Every experiment reads a JSON config, runs the library pipeline, and
writes one report (JSON, or CSV point lists for plotting).  Identical
config and precision produce byte-identical JSON; all randomness is
seeded from the config and the seed is echoed in the report.

Exit codes: 0 success, 1 verification failure, 2 config/parse error,
3 infeasible mandatory certificate or empty-set error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import windows
from .errors import EmptySetError, PsyndError
from .generators import window_from_source
from .induced import orbit_block, recurrence_times, split_block
from .polynomials import PolyFamily
from .returnsets import (
    ReturnQuery,
    combinatorial_set_2d,
    masked_dilation_2d,
    pws_area_witness_2d,
    return_set_1d,
    return_set_2d,
    shift_cover_search,
)
from .systems import TorusRotation, system_from_json_obj
from .windows import (
    GridSet,
    WindowSet,
    cert_from_json_obj,
    find_ap,
    gap_summary,
    longest_run,
    max_rectangle,
    pws_witness,
    pws_witness_2d,
    syndetic_certificate,
    verify_pws,
    verify_pws_2d,
    verify_syndetic,
    verify_syndetic_2d,
    verify_thick,
)

PARSE_ERROR = 2
INFEASIBLE = 3


class ConfigError(Exception):
    pass


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(report: dict, out: Optional[str], fmt: str) -> None:
    if fmt == "json":
        text = _dump_json(report)
    elif fmt == "csv":
        rows = []
        set_obj = report.get("set", {})
        if "box" in set_obj:
            rows = [f"{m},{n}" for m, n in set_obj.get("members", [])]
        else:
            rows = [str(m) for m in set_obj.get("members", [])]
        text = "\n".join(rows) + ("\n" if rows else "")
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_config(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _family(cfg: dict) -> PolyFamily:
    try:
        return PolyFamily.parse(cfg["family"])
    except (KeyError, ValueError, PsyndError) as exc:
        raise ConfigError(f"bad family: {exc}") from exc


def _seeded(cfg: dict, override: Optional[int]) -> tuple[int, random.Random]:
    seed = override if override is not None else int(cfg.get("seed", 0))
    return seed, random.Random(seed)


def cmd_analyze(cfg: dict, seed: Optional[int]) -> tuple[dict, int]:
    seed, rng = _seeded(cfg, seed)
    s = window_from_source(cfg["set"], rng)
    report: dict = {
        "experiment": "analyze",
        "seed": seed,
        "query": {
            "set_source": cfg["set"],
            "certificates": cfg.get("certificates", {}),
        },
        "set": s.to_json_obj() if s.width <= 200000 else {"lo": s.lo, "hi": s.hi},
        "results": {},
        "certificates": [],
    }
    code = 0
    if s.is_empty():
        report["results"]["error"] = "empty set"
        return report, INFEASIBLE
    g = gap_summary(s)
    report["results"]["max_gap"] = g.max_gap
    report["results"]["boundary_gaps"] = {"lead_in": g.lead_in, "tail_out": g.tail_out}
    run = longest_run(s)
    report["results"]["longest_run"] = run.to_json_obj()
    report["certificates"].append(run.to_json_obj())
    certs_cfg = cfg.get("certificates", {})
    if "syndetic" in certs_cfg:
        res = syndetic_certificate(s, int(certs_cfg["syndetic"]["N"]))
        report["certificates"].append(res.to_json_obj())
        if isinstance(res, windows.SyndeticRefutation) and certs_cfg["syndetic"].get("mandatory"):
            code = INFEASIBLE
    pws_cfg = certs_cfg.get("pws", {"b_max": 16, "L": max(2, s.width // 10)})
    cert = pws_witness(s, int(pws_cfg["b_max"]), int(pws_cfg["L"]))
    if cert is not None:
        report["certificates"].append(cert.to_json_obj())
        report["results"]["pws"] = cert.to_json_obj()
    else:
        report["results"]["pws"] = None
        if pws_cfg.get("mandatory"):
            code = INFEASIBLE
    ap_k = int(certs_cfg.get("ap", {}).get("k", 3))
    ap = find_ap(s, ap_k)
    report["results"]["ap"] = {"k": ap_k, "found": list(ap) if ap else None}
    return report, code


def cmd_thma(cfg: dict, seed: Optional[int]) -> tuple[dict, int]:
    seed, rng = _seeded(cfg, seed)
    s = window_from_source(cfg["set"], rng)
    family = _family(cfg)
    box = tuple(int(v) for v in cfg["box"])
    members, validity = combinatorial_set_2d(s, family, box)
    certs_cfg = cfg.get("certificates", {}).get("pws2d", {})
    b1_max = int(certs_cfg.get("b1_max", 8))
    b2_max = int(certs_cfg.get("b2_max", 8))
    report: dict = {
        "experiment": "thma",
        "seed": seed,
        "query": {
            "set_source": cfg["set"],
            "family": family.to_strs(),
            "box": list(box),
            "b1_max": b1_max,
            "b2_max": b2_max,
        },
        "set": members.to_json_obj(),
        "results": {
            "member_count": members.count(),
            "validity_count": validity.count(),
        },
        "certificates": [],
    }
    if "w" in certs_cfg and "h" in certs_cfg:
        cert = pws_witness_2d(members, b1_max, b2_max, int(certs_cfg["w"]), int(certs_cfg["h"]))
    else:
        cert = pws_area_witness_2d(
            members, validity, b1_max, b2_max, int(certs_cfg.get("min_area", 400))
        )
    if cert is None:
        report["results"]["pws2d"] = None
        return report, INFEASIBLE if certs_cfg.get("mandatory") else 0
    report["results"]["pws2d"] = cert.to_json_obj()
    report["certificates"].append(cert.to_json_obj())
    area, rect = max_rectangle(
        masked_dilation_2d(members, validity, cert.shift_box[0], cert.shift_box[1])
    )
    report["results"]["achieved"] = {
        "b1": cert.shift_box[0],
        "b2": cert.shift_box[1],
        "w": cert.rect[2],
        "h": cert.rect[3],
        "max_area_at_b": area,
        "max_rect_at_b": list(rect) if rect else None,
    }
    return report, 0


def cmd_thmb(cfg: dict, seed: Optional[int]) -> tuple[dict, int]:
    seed, rng = _seeded(cfg, seed)
    s = window_from_source(cfg["set"], rng)
    family = _family(cfg)
    if "target" in cfg:
        target = window_from_source(cfg["target"], rng)
    else:
        box = tuple(int(v) for v in cfg["box"])
        members, _ = combinatorial_set_2d(s, family, box)
        target = members.n_projection()
    n_values = [int(n) for n in cfg.get("targets", {}).get("N_values", [5, 10, 15, 20])]
    found = {}
    for n_bound in n_values:
        try:
            found[str(n_bound)] = shift_cover_search(s, family, target, n_bound)
        except EmptySetError:
            found[str(n_bound)] = None
    report = {
        "experiment": "thmb",
        "seed": seed,
        "query": {
            "set_source": cfg["set"],
            "family": family.to_strs(),
            "N_values": n_values,
        },
        "set": {"lo": s.lo, "hi": s.hi},
        "target": target.to_json_obj(),
        "results": {"a_N": found, "all_found": all(v is not None for v in found.values())},
        "certificates": [],
    }
    return report, 0 if report["results"]["all_found"] else INFEASIBLE


def _rational_rotation_oracle(sys_obj: dict, family: PolyFamily, eps, lo: int, hi: int) -> WindowSet:
    """Independent modular-arithmetic evaluation for 1-dim rational rotations
    started at 0 with center 0."""
    alpha = Fraction(sys_obj["alpha"][0] if isinstance(sys_obj["alpha"], list) else sys_obj["alpha"])
    q = alpha.denominator
    a = alpha.numerator % q
    e = Fraction(eps)
    allowed = {r for r in range(q) if min(Fraction(r, q), Fraction(q - r, q)) < e}
    mask = 0
    for n in range(lo, hi + 1):
        if all((p.eval(n) * a) % q in allowed for p in family.polys):
            mask |= 1 << (n - lo)
    return WindowSet(lo, hi, mask)


def cmd_returns(cfg: dict, seed: Optional[int], oracle: bool) -> tuple[dict, int]:
    seed, _ = _seeded(cfg, seed)
    sys_spec = system_from_json_obj(cfg["system"])
    family = _family(cfg)
    x = sys_spec.point_from_json(cfg["x"]) if "x" in cfg else sys_spec.base_point()
    center = sys_spec.point_from_json(cfg["center"]) if "center" in cfg else x
    eps = str(cfg["epsilon"])
    eps_f = Fraction(eps)
    report: dict = {
        "experiment": "returns",
        "seed": seed,
        "query": {
            "system": sys_spec.to_json_obj(),
            "family": family.to_strs(),
            "epsilon": eps,
            "x": sys_spec.point_to_json(x),
            "center": sys_spec.point_to_json(center),
            "window": cfg.get("window", cfg.get("box")),
        },
        "results": {},
        "certificates": [],
    }
    if "box" in cfg:
        box = tuple(int(v) for v in cfg["box"])
        grid = return_set_2d(ReturnQuery(sys_spec, x, center, eps_f, family, box))
        report["set"] = grid.to_json_obj()
        report["results"]["count"] = grid.count()
        pws_cfg = cfg.get("certificates", {}).get("pws2d")
        if pws_cfg:
            cert = pws_witness_2d(
                grid,
                int(pws_cfg["b1_max"]),
                int(pws_cfg["b2_max"]),
                int(pws_cfg["w"]),
                int(pws_cfg["h"]),
            )
            if cert:
                report["certificates"].append(cert.to_json_obj())
            elif pws_cfg.get("mandatory"):
                return report, INFEASIBLE
    else:
        lo, hi = (int(v) for v in cfg["window"])
        rs = return_set_1d(ReturnQuery(sys_spec, x, center, eps_f, family, (lo, hi)))
        report["set"] = rs.to_json_obj()
        report["results"]["count"] = rs.count()
        if not rs.is_empty():
            report["results"]["max_gap"] = gap_summary(rs).max_gap
        pws_cfg = cfg.get("certificates", {}).get("pws")
        if pws_cfg:
            cert = pws_witness(rs, int(pws_cfg["b_max"]), int(pws_cfg["L"]))
            if cert:
                report["certificates"].append(cert.to_json_obj())
            elif pws_cfg.get("mandatory"):
                return report, INFEASIBLE
        if oracle:
            if not (
                isinstance(sys_spec, TorusRotation)
                and sys_spec.exact
                and sys_spec.dim == 1
                and "x" not in cfg
                and "center" not in cfg
            ):
                raise ConfigError(
                    "--oracle needs a 1-dim rational rotation from the base point"
                )
            o = _rational_rotation_oracle(cfg["system"], family, eps_f, lo, hi)
            report["results"]["oracle_match"] = o == rs
    return report, 0


def cmd_induced(cfg: dict, seed: Optional[int]) -> tuple[dict, int]:
    seed, _ = _seeded(cfg, seed)
    sys_spec = system_from_json_obj(cfg["system"])
    family = _family(cfg)
    x = sys_spec.point_from_json(cfg["x"]) if "x" in cfg else sys_spec.base_point()
    radius = int(cfg.get("radius", 3))
    eps = str(cfg.get("epsilon", "1/10"))
    n_bound = int(cfg.get("N", 1000))
    eps_f = Fraction(eps)
    times = recurrence_times(sys_spec, x, family, radius, eps_f, n_bound)
    kind = cfg.get("block", "split")
    block = (
        split_block(sys_spec, x, family, radius)
        if kind == "split"
        else orbit_block(sys_spec, x, family, radius)
    )
    report = {
        "experiment": "induced",
        "seed": seed,
        "query": {
            "system": sys_spec.to_json_obj(),
            "family": family.to_strs(),
            "epsilon": eps,
            "radius": radius,
            "N": n_bound,
            "x": sys_spec.point_to_json(x),
        },
        "set": times.to_json_obj(),
        "results": {
            "count": times.count(),
            "nonzero": sorted(n for n in times.members() if n != 0)[:64],
        },
        "block": block.to_json_obj(),
        "certificates": [],
    }
    return report, 0


NILCHECK_DEFAULTS = {
    "system": {"type": "heisenberg", "alpha": "sqrt2-1", "beta": "sqrt3-1"},
    "family": ["n^2"],
    "epsilon": "1/5",
    "windows": [10000, 100000],
}


def cmd_nilcheck(cfg: dict, seed: Optional[int]) -> tuple[dict, int]:
    merged = dict(NILCHECK_DEFAULTS)
    merged.update(cfg)
    seed, _ = _seeded(merged, seed)
    sys_spec = system_from_json_obj(merged["system"])
    family = _family(merged)
    x = sys_spec.base_point()
    eps_f = Fraction(str(merged["epsilon"]))
    gaps = {}
    counts = {}
    for w in merged["windows"]:
        w = int(w)
        rs = return_set_1d(ReturnQuery(sys_spec, x, x, eps_f, family, (-w, w)))
        gaps[str(w)] = gap_summary(rs).max_gap if not rs.is_empty() else None
        counts[str(w)] = rs.count()
    values = list(gaps.values())
    report = {
        "experiment": "nilcheck",
        "seed": seed,
        "query": {
            "system": sys_spec.to_json_obj(),
            "family": family.to_strs(),
            "epsilon": str(merged["epsilon"]),
            "windows": [int(w) for w in merged["windows"]],
        },
        "results": {
            "max_gap": gaps,
            "counts": counts,
            "stable": len(set(values)) == 1 and values[0] is not None,
        },
        "certificates": [],
    }
    return report, 0


def cmd_verify(report_path: str) -> int:
    """Re-verify every certificate in a report against its embedded set."""
    try:
        report = json.loads(Path(report_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"verify: cannot read report: {exc}", file=sys.stderr)
        return PARSE_ERROR
    set_obj = report.get("set")
    if set_obj is None or "members" not in set_obj:
        print("verify: report has no embedded set", file=sys.stderr)
        return PARSE_ERROR
    if "box" in set_obj:
        the_set = GridSet.from_json_obj(set_obj)
    else:
        the_set = WindowSet.from_json_obj(set_obj)
    failures = 0
    for obj in report.get("certificates", []):
        cert = cert_from_json_obj(obj)
        kind = obj["type"]
        if kind == "pws":
            ok = verify_pws(the_set, cert)
        elif kind == "thick":
            ok = verify_thick(the_set, cert)
        elif kind == "syndetic":
            ok = verify_syndetic(the_set, cert)
        elif kind == "pws2d":
            ok = verify_pws_2d(the_set, cert)
        elif kind == "syndetic2d":
            ok = verify_syndetic_2d(the_set, cert)
        else:
            print(f"{kind}: skipped (refutation or unknown)")
            continue
        print(f"{kind}: {'ok' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psynd",
        description="windowed piecewise-syndetic structure and polynomial return sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "thma", "thmb", "returns", "induced", "nilcheck", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=(name != "nilcheck"), help="JSON config path (for verify: the report to check)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", default="json", choices=("json", "csv"))
        p.add_argument("--oracle", action="store_true", help="cross-check against the arithmetic oracle (returns)")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args.config)
    try:
        cfg = _load_config(args.config) if args.config else {}
        if args.command == "analyze":
            report, code = cmd_analyze(cfg, args.seed)
        elif args.command == "thma":
            report, code = cmd_thma(cfg, args.seed)
        elif args.command == "thmb":
            report, code = cmd_thmb(cfg, args.seed)
        elif args.command == "returns":
            report, code = cmd_returns(cfg, args.seed, args.oracle)
        elif args.command == "induced":
            report, code = cmd_induced(cfg, args.seed)
        elif args.command == "nilcheck":
            report, code = cmd_nilcheck(cfg, args.seed)
        else:  # pragma: no cover
            raise ConfigError(f"unknown command {args.command}")
    except (ConfigError, KeyError, ValueError) as exc:
        print(f"{args.command}: config error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    except EmptySetError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return INFEASIBLE
    _emit(report, args.out, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
