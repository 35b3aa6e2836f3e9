"""Command line front end: ``origami-veech <command> ...``.

Exit codes: 0 on success, 1 when a computation cap is exceeded, 2 on bad
input (including origami descriptions that fail to parse or validate).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import catalog
from .congruence import find_witness, is_congruence, replay_mod60_proof, witness_from_closure
from .freegroup import automaton, power_kernel, schreier_basis
from .origami import (
    Origami,
    NotTransitiveError,
    canonical_form,
    format_origami,
    parse_origami,
    ramification_points,
    stratum,
    surface_genus,
    to_dot,
    vertex_structure,
)
from .sl2 import DEFAULT_CLOSURE_CAP
from .veech import (
    DEFAULT_MAX_ORBIT,
    OrbitCapExceeded,
    coset_graph_dot,
    coset_representatives,
    compute_veech,
    curve_invariants,
    cusps,
)

__all__ = ["main", "run", "build_parser", "veech_report", "info_report"]


class UsageError(Exception):
    pass


def _origami_from_args(args) -> Origami:
    if args.name and args.origami:
        raise UsageError("give either an origami description or --name, not both")
    if args.name:
        try:
            return catalog.lookup(args.name)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc).strip("'\"")) from None
    if not args.origami:
        raise UsageError("an origami description 'd; sigma_a; sigma_b' or --name is required")
    try:
        return parse_origami(args.origami)
    except NotTransitiveError as exc:
        raise UsageError(f"invalid origami: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"invalid origami {args.origami!r}: {exc}") from None


def info_report(o: Origami) -> dict:
    vs = vertex_structure(o)
    return {
        "origami": format_origami(o),
        "canonical": format_origami(canonical_form(o).origami),
        "degree": o.d,
        "genus": surface_genus(o),
        "vertex_structure": vs,
        "vertex_classes": len(vs),
        "ramification_points": ramification_points(o),
        "stratum": {str(k): v for k, v in sorted(stratum(o).items())},
    }


def veech_report(o: Origami, max_orbit: int = DEFAULT_MAX_ORBIT) -> dict:
    g = compute_veech(o, max_orbit)
    inv = curve_invariants(g)
    return {
        "origami": format_origami(o),
        "degree": o.d,
        "index": g.index,
        "contains_minus_identity": inv.contains_minus_i,
        "generators": [{"matrix": m.tolist(), "word": w} for m, w in g.generators],
        "coset_reps": [w or "I" for w in coset_representatives(g, side="right")],
        "cusps": [{"width": c.width, "rep": c.rep or "I"} for c in cusps(g)],
        "general_level": inv.general_level,
        "curve": {"genus": inv.genus, "e2": inv.e2, "e3": inv.e3, "cusps": inv.cusp_count},
        "max_orbit": max_orbit,
    }


def _congruence_report(o: Origami, args) -> dict:
    g = compute_veech(o, args.max_orbit)
    rep = is_congruence(g, args.max_closure)
    out = rep.to_dict()
    out["origami"] = format_origami(o)
    out["max_orbit"] = args.max_orbit
    if args.witness:
        if rep.congruence:
            out["witness"] = None
        else:
            w = None
            name = catalog.known_name(o)
            if name is not None:
                w = find_witness(g, candidates=list(reversed(catalog.GENERATORS[name])))
            if w is None:
                w = find_witness(g)
            if w is None:
                w = witness_from_closure(g)
            out["witness"] = None if w is None else w.to_dict()
    return out


def _subgroup_report(o: Origami, args) -> tuple[dict, str]:
    base = args.base - 1
    if not 0 <= base < o.d:
        raise UsageError(f"--base must be a square between 1 and {o.d}")
    a = automaton(o, base)
    basis = schreier_basis(a)
    out = {
        "origami": format_origami(o),
        "base_square": args.base,
        "index": a.index,
        "rank": basis.rank,
        "basis": list(basis.words),
        "coset_reps": [w or "1" for w in basis.reps],
    }
    if args.n is not None:
        h, hb = power_kernel(a, basis, args.n)
        out["power_kernel"] = {"n": args.n, "index": h.index, "rank": hb.rank, "basis": list(hb.words)}
    return out, a.to_dot(basis.reps)


def _sequence_row(job: tuple[str, int, int, bool]) -> dict:
    from .sequences import build, matches_kernel, parabolic_test, veech_of

    base, n, max_orbit, full = job
    o = build(base, n)
    row = {
        "origami": format_origami(o),
        "degree": o.d,
        "genus": surface_genus(o),
        "punctures": len(vertex_structure(o)),
        "matches_power_kernel": matches_kernel(base, n),
    }
    if full:
        g = veech_of(base, n, max_orbit)
        row["veech_index"] = g.index
        row["parabolic_3n"] = parabolic_test(g, 3 * n)
        row["parabolic_n"] = parabolic_test(g, n)
    return row


def _sequence_table(args) -> dict:
    from .sequences import verify_inclusion

    ns = list(range(1, args.n + 1))
    full = args.action == "verify"
    jobs = [(args.base, n, args.max_orbit, full) for n in ns]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sequence_row, jobs))
    else:
        rows = [_sequence_row(j) for j in jobs]
    out = {"base": args.base, "rows": {str(n): r for n, r in zip(ns, rows)}}
    if full:
        out["inclusions"] = {
            f"{m}->{n}": verify_inclusion(args.base, n, m, args.max_orbit)
            for m in ns for n in ns if n < m and m % n == 0
        }
    return out


def _emit(data, as_json: bool) -> None:
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
        return
    _print_plain(data)


def _print_plain(data, indent: str = "") -> None:
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_plain(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{indent}{key}:")
            for item in value:
                print(f"{indent}  - " + ", ".join(f"{k}={item[k]}" for k in sorted(item)))
        else:
            print(f"{indent}{key}: {value}")


def _write_dot(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="origami-veech", description="Veech groups of origamis.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, dot=True):
        sp.add_argument("origami", nargs="?", help="'d; sigma_a; sigma_b', e.g. '4; (2 3 4); (1 2)'")
        sp.add_argument("--name", help="catalog entry: " + ", ".join(catalog.names()))
        sp.add_argument("--json", action="store_true", help="JSON output")
        if dot:
            sp.add_argument("--dot", metavar="FILE", help="write a Graphviz graph to FILE")

    sp = sub.add_parser("info", help="degree, genus and vertex structure")
    common(sp)
    sp = sub.add_parser("veech", help="Veech group: generators, cosets, cusps")
    common(sp)
    sp.add_argument("--max-orbit", type=int, default=DEFAULT_MAX_ORBIT)
    sp = sub.add_parser("congruence", help="congruence test at the general level")
    common(sp, dot=False)
    sp.add_argument("--witness", action="store_true", help="search a non-congruence witness")
    sp.add_argument("--max-orbit", type=int, default=DEFAULT_MAX_ORBIT)
    sp.add_argument("--max-closure", type=int, default=DEFAULT_CLOSURE_CAP)
    sp = sub.add_parser("subgroup", help="free basis of the subgroup of F2")
    common(sp)
    sp.add_argument("--base", type=int, default=1, help="base square (1-based)")
    sp.add_argument("--n", type=int, help="also describe the power kernel H_n")
    sp = sub.add_parser("sequence", help="the families O_n and D_n")
    sp.add_argument("action", choices=["build", "verify"])
    sp.add_argument("--base", choices=["L23", "D"], default="L23")
    sp.add_argument("--n", type=int, default=3, help="largest n (tables cover 1..n)")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-orbit", type=int, default=DEFAULT_MAX_ORBIT)
    sp.add_argument("--jobs", type=int, default=1)
    sp = sub.add_parser("replay-proof", help="replay the mod-60 argument for D")
    sp.add_argument("--json", action="store_true")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "info":
            o = _origami_from_args(args)
            _emit(info_report(o), args.json)
            _write_dot(args.dot, to_dot(o))
        elif args.command == "veech":
            o = _origami_from_args(args)
            _emit(veech_report(o, args.max_orbit), args.json)
            if args.dot:
                _write_dot(args.dot, coset_graph_dot(compute_veech(o, args.max_orbit)))
        elif args.command == "congruence":
            _emit(_congruence_report(_origami_from_args(args), args), args.json)
        elif args.command == "subgroup":
            data, dot = _subgroup_report(_origami_from_args(args), args)
            _emit(data, args.json)
            _write_dot(args.dot, dot)
        elif args.command == "sequence":
            if args.n < 1:
                raise UsageError("--n must be >= 1")
            _emit(_sequence_table(args), args.json)
        elif args.command == "replay-proof":
            g = compute_veech(catalog.D)
            steps = replay_mod60_proof(g)
            if args.json:
                _emit({"steps": [{"label": s.label, "value": str(s.value), "ok": s.ok} for s in steps]}, True)
            else:
                for s in steps:
                    print(s)
    except UsageError as exc:
        print(f"origami-veech: error: {exc}", file=sys.stderr)
        return 2
    except (OrbitCapExceeded, OverflowError) as exc:
        print(f"origami-veech: cap exceeded: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
