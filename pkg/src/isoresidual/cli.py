"""Command-line front end.

    isoresidual profile    --mu 2,3,-1,-2,-4
    isoresidual xi         --a1 4 --a2 4 --b 6,2,2
    isoresidual components --mu 3,3,-6,-1,-1
    isoresidual chamber    --mu 3,16,-7,-7,-7
    isoresidual graphs     --mu 1,1,-1,-1,-1,-1 --positive-pole 1 [--dot-out g.dot]
    isoresidual verify     [--max-order N] [--jobs J]
    isoresidual scan       [--max-order N] [--max-poles P] [--format csv|json]

Every command prints one JSON document (``scan`` defaults to CSV).  Exit
codes: 0 ok, 1 usage or validation error, 2 invariant violated, 3 resource
limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import __version__
from .boundary import profile
from .chambers import (
    DEFAULT_MAX_POLES,
    NotInChamber,
    in_one_chamber,
    leading_form,
    point,
    signature,
    signature_hash,
    walls,
)
from .checks import Scale, ordered_map, run, two_zero_strata
from .core import ResidueForm, ResourceLimit, Stratum, StratumError, parse_stratum
from .counting import XiQuery, f, xi_closed, xi_oracle, xi_recursion_rhs
from .fiber import (
    NonIntegral,
    all_even_predicate,
    all_poles_simple_predicate,
    divisibility_factor,
    euler_characteristic,
    num_components,
    profile_all_even,
    profile_all_poles_simple,
)

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2, which is reserved for violations
        raise UsageError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _residue(form: ResidueForm) -> dict:
    out = {"vector": list(form.coeffs)}
    if set(form.coeffs) <= {0, 1}:
        out["expression"] = form.expression()
    return out


def _mu(s: Stratum) -> str:
    return s.to_string()


def _report(command: str, s: Stratum | None, result) -> dict:
    doc = {"command": command}
    if s is not None:
        doc["stratum"] = _mu(s)
    doc["result"] = result
    doc["version"] = __version__
    return doc


# ---------------------------------------------------------------------------
# commands

def cmd_profile(s: Stratum) -> dict:
    prof = profile(s)

    def entry(e):
        return {
            "order": e.order,
            "multiplicity": e.multiplicity,
            "residue": _residue(e.residue),
            "sources": [d.describe() for d in e.sources],
        }

    try:
        component = list(prof.component_signature())
    except NonIntegral:
        component = None
    pattern_even = all_even_predicate(s) if s.p >= 3 else all(
        x % 2 == 0 for x in s.zero_orders + s.pole_orders
    )
    predicates = {
        "all_poles_simple": all_poles_simple_predicate(s),
        "all_poles_simple_from_profile": profile_all_poles_simple(prof),
        "all_even": pattern_even,
        "all_even_from_profile": profile_all_even(prof),
    }
    predicates["pattern_matches_profile"] = (
        predicates["all_poles_simple"] == predicates["all_poles_simple_from_profile"]
        and predicates["all_even"] == predicates["all_even_from_profile"]
    )
    if s.p == 2 and not predicates["pattern_matches_profile"]:
        predicates["note"] = "two poles: the pattern test does not apply"
    return {
        "zeros": [entry(e) for e in prof.zeros],
        "poles": [entry(e) for e in prof.poles],
        "fiber_signature": list(prof.stratum_signature()),
        "degree": prof.degree,
        "euler_characteristic": euler_characteristic(prof),
        "num_components": prof.num_components,
        "genus_per_component": prof.genus_per_component,
        "component_signature": component,
        "divisibility_factor": divisibility_factor(prof),
        "predicates": predicates,
    }


def profile_rows(s: Stratum) -> list[list]:
    prof = profile(s)
    return [
        [e.kind, e.order, e.multiplicity, " ".join(map(str, e.residue.coeffs)), ";".join(d.describe() for d in e.sources)]
        for e in prof.records
    ]


def cmd_xi(a1: int, a2: int, b: Sequence[int]) -> dict:
    q = XiQuery(a1, a2, tuple(b))
    closed, oracle = xi_closed(q), xi_oracle(q)
    rec = [xi_recursion_rhs(q, d) for d in range(q.p)]
    return {
        "a1": a1,
        "a2": a2,
        "b": list(b),
        "closed_form": closed,
        "oracle": oracle,
        "recursion": rec,
        "all_equal": all(v == closed for v in [oracle] + rec),
    }


def cmd_components(s: Stratum) -> dict:
    return {"num_components": num_components(s)}


def cmd_chamber(s: Stratum, max_poles: int = DEFAULT_MAX_POLES) -> dict:
    ws = walls(s.p, max_poles)
    sig = signature(s, max_poles)
    x1, x2, *ys = point(s)
    out = {
        "point": [x1, x2] + ys,
        "num_walls": len(ws),
        "signature": "".join({-1: "-", 0: "0", 1: "+"}[x] for x in sig),
        "signature_hash": signature_hash(sig),
        "on_walls": [w.describe() for w, v in zip(ws, sig) if v == 0],
        "in_one_chamber": in_one_chamber(x1, x2, ys),
    }
    if out["in_one_chamber"]:
        out["leading_form"] = leading_form(x1, x2, s.p)
    return out


def cmd_graphs(s: Stratum, positive_pole: int, *, max_poles=None, max_order=None, jobs=1, dot_out=None) -> dict:
    from .realgraphs import (
        adjacency_components,
        endpoint_closure_violations,
        enumerate_saddle_graphs,
        enumerate_zero_graphs,
        export_dot,
    )

    P = positive_pole - 1
    if not 0 <= P < s.p:
        raise UsageError(f"--positive-pole must be in 1..{s.p}")
    kw = dict(jobs=jobs, max_poles=max_poles, max_order=max_order)
    zs = enumerate_zero_graphs(s, P, **kw)
    ss = enumerate_saddle_graphs(s, P, **kw)
    comps = adjacency_components(s, P, zero_graphs=zs, saddle_graphs=ss)
    if dot_out:
        with open(dot_out, "w", encoding="utf-8") as fh:
            fh.write(export_dot(list(zs) + list(ss), title=f"decorated graphs of {s}, positive pole {positive_pole}"))
    lengths = sorted({sg.length_form.coeffs for sg in ss})
    return {
        "positive_pole": positive_pole,
        "zero_graphs": len(zs),
        "expected_zero_graphs": f(s.a1 + s.a2, s.p),
        "saddle_graphs": len(ss),
        "components": comps,
        "num_components": num_components(s),
        "endpoint_closure_violations": len(endpoint_closure_violations(zs, ss)),
        "saddle_lengths": [ResidueForm(c).expression() for c in lengths],
    }


def cmd_verify(scale: Scale, xi_fn=None) -> tuple[dict, bool]:
    results = run(scale, xi_fn)
    total = sum(r.checks for r in results)
    ok = all(r.ok for r in results)
    doc = {
        "families": [{"name": r.family, "checks": r.checks, "ok": r.ok} for r in results],
        "total_checks": total,
        "ok": ok,
    }
    if total == 0:
        doc["note"] = "0 checks: the range is empty"
    bad = next((r for r in results if not r.ok), None)
    if bad is not None:
        c = bad.counterexample
        doc["counterexample"] = {"identity": c.family, "instance": c.instance, "detail": c.detail}
    return doc, ok


SCAN_COLUMNS = ["mu", "chi", "degree", "components", "genus", "divisibility_factor", "signature_hash"]


def _scan_row(s: Stratum) -> list:
    prof = profile(s)
    g = prof.genus_per_component
    return [
        _mu(s),
        euler_characteristic(prof),
        prof.degree,
        prof.num_components,
        "" if g is None else g,
        divisibility_factor(prof),
        signature_hash(signature(s, DEFAULT_MAX_POLES)),
    ]


def cmd_scan(max_order: int, max_poles: int, jobs: int = 1) -> list[list]:
    if max_poles > DEFAULT_MAX_POLES:
        raise ResourceLimit(f"scan needs --max-poles <= {DEFAULT_MAX_POLES} for chamber signatures")
    strata = list(two_zero_strata(max_order, max_poles=max_poles))
    return ordered_map(_scan_row, strata, jobs)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# wiring

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isoresidual", description="Exact invariants of isoresidual fibers of two-zero strata.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp, default="json"):
        sp.add_argument("--format", choices=("json", "csv"), default=default)

    sp = sub.add_parser("profile", help="singularity profile and invariants of the fiber")
    sp.add_argument("--mu", required=True)
    fmt(sp)
    sp = sub.add_parser("xi", help="residueless count by three methods")
    sp.add_argument("--a1", type=int, required=True)
    sp.add_argument("--a2", type=int, required=True)
    sp.add_argument("--b", required=True)
    sp = sub.add_parser("components", help="number of connected components of the fiber")
    sp.add_argument("--mu", required=True)
    sp = sub.add_parser("chamber", help="wall signature of the stratum")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--max-poles", type=int, default=DEFAULT_MAX_POLES)
    sp = sub.add_parser("graphs", help="decorated graphs of a real fiber with one positive residue")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--positive-pole", type=int, default=1)
    sp.add_argument("--max-poles", type=int)
    sp.add_argument("--max-order", type=int)
    sp.add_argument("--dot-out")
    sp.add_argument("--jobs", type=int, default=1)
    sp = sub.add_parser("verify", help="run every cross-check")
    sp.add_argument("--max-order", type=int, default=10, help="bound on the sum of pole orders")
    sp.add_argument("--max-poles", type=int, default=7, help="bound on poles for graph checks")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--corrupt-xi", action="store_true", help=argparse.SUPPRESS)
    sp = sub.add_parser("scan", help="one CSV row per stratum")
    sp.add_argument("--max-order", type=int, default=8, help="bound on the sum of pole orders")
    sp.add_argument("--max-poles", type=int, default=DEFAULT_MAX_POLES)
    sp.add_argument("--jobs", type=int, default=1)
    fmt(sp, "csv")
    return p


def _corrupted_xi(q):
    v = xi_closed(q)
    return v + 1 if q.p >= 3 and v > 0 else v


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        cmd = args.command
        if cmd == "profile":
            s = parse_stratum(args.mu)
            if args.format == "csv":
                sys.stdout.write(_csv(["kind", "order", "multiplicity", "residue", "sources"], profile_rows(s)))
            else:
                _emit(_report(cmd, s, cmd_profile(s)))
        elif cmd == "xi":
            _emit(_report(cmd, None, cmd_xi(args.a1, args.a2, _ints(args.b))))
        elif cmd == "components":
            s = parse_stratum(args.mu)
            _emit(_report(cmd, s, cmd_components(s)))
        elif cmd == "chamber":
            s = parse_stratum(args.mu)
            _emit(_report(cmd, s, cmd_chamber(s, args.max_poles)))
        elif cmd == "graphs":
            s = parse_stratum(args.mu)
            res = cmd_graphs(
                s, args.positive_pole, max_poles=args.max_poles, max_order=args.max_order,
                jobs=args.jobs, dot_out=args.dot_out,
            )
            _emit(_report(cmd, s, res))
        elif cmd == "verify":
            scale = Scale(args.max_order, args.max_poles, args.jobs)
            doc, ok = cmd_verify(scale, _corrupted_xi if args.corrupt_xi else None)
            _emit(_report(cmd, None, doc))
            if not ok:
                c = doc["counterexample"]
                print(f"invariant violated: {c['identity']} at {c['instance']} ({c['detail']})", file=sys.stderr)
                return EXIT_VIOLATION
        elif cmd == "scan":
            rows = cmd_scan(args.max_order, args.max_poles, args.jobs)
            if args.format == "csv":
                sys.stdout.write(_csv(SCAN_COLUMNS, rows))
            else:
                _emit(_report(cmd, None, [dict(zip(SCAN_COLUMNS, r)) for r in rows]))
        return EXIT_OK
    except ResourceLimit as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, StratumError, NotInChamber, ValueError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
