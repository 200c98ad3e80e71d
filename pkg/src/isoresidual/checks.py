"""Self-verification suite: every cross-check run by ``isoresidual verify``.

Each family is a function ``(scale, xi_fn) -> iterator of Check``; the runner
stops at the first failing instance.  ``scale.max_pole_sum`` bounds sum(b)
for every family, so a tiny scale gives an empty (and trivially passing) run.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .boundary import profile, residue_total
from .core import Stratum, validate
from .counting import XiQuery, f, partitions, xi_closed, xi_oracle, xi_queries, xi_recursion_rhs
from .fiber import (
    all_even_predicate,
    all_poles_simple_predicate,
    divisibility_factor,
    genus_simple_poles,
    num_components,
    profile_all_even,
    profile_all_poles_simple,
)

COMPONENT_SUITE = (
    "1,1,-1,-1,-1,-1",
    "2,2,-1,-1,-1,-1,-1,-1",
    "2,2,-4,-1,-1",
    "3,3,-6,-1,-1",
    "1,2,-1,-1,-1,-1,-1",
    "1,1,-2,-1,-1",
)


@dataclass(frozen=True)
class Scale:
    max_pole_sum: int = 10
    max_graph_poles: int = 7
    jobs: int = 1


@dataclass(frozen=True)
class Check:
    family: str
    instance: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class FamilyResult:
    family: str
    checks: int
    ok: bool
    counterexample: Check | None = None


def ordered_map(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    """map() whose results come back in input order, optionally across processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def two_zero_strata(max_pole_sum: int, min_poles: int = 2, max_poles: int | None = None) -> Iterator[Stratum]:
    """H(a1, a2, -b) with a1 <= a2, b nonincreasing, sum(b) <= max_pole_sum, in signed-tuple order."""
    out = []
    for total in range(4, max_pole_sum + 1):
        for b in partitions(total):
            if len(b) < min_poles or (max_poles is not None and len(b) > max_poles):
                continue
            for a1 in range(1, (total - 2) // 2 + 1):
                out.append(validate((a1, total - 2 - a1), b))
    out.sort(key=lambda s: s.signature())
    return iter(out)


def _q(q: XiQuery) -> str:
    return f"Xi({q.a1},{q.a2};{','.join(map(str, q.b))})"


def xi_cross_oracle(scale: Scale, xi_fn) -> Iterator[Check]:
    for q in xi_queries(scale.max_pole_sum):
        got, want = xi_fn(q), xi_oracle(q)
        yield Check("xi closed form = coefficient oracle", _q(q), got == want, f"closed={got} oracle={want}")


def xi_recursion(scale: Scale, xi_fn) -> Iterator[Check]:
    for q in xi_queries(scale.max_pole_sum):
        lhs = xi_fn(q)
        for d in range(q.p):
            rhs = xi_recursion_rhs(q, d, xi_fn)
            yield Check("xi recursion", f"{_q(q)} pole {d + 1}", lhs == rhs, f"xi={lhs} rhs={rhs}")


def zero_graph_count(scale: Scale, xi_fn) -> Iterator[Check]:
    from .realgraphs import enumerate_zero_graphs

    for total in range(4, min(scale.max_pole_sum, 8) + 1):
        for b in partitions(total):
            if not 2 <= len(b) <= 4:
                continue
            s = validate((1, total - 3), b)
            n = len(enumerate_zero_graphs(s, 0))
            yield Check("zero graphs = f(a, p)", str(s), n == f(total - 2, len(b)), f"graphs={n}")
    for p in range(5, min(scale.max_pole_sum, scale.max_graph_poles) + 1):
        s = validate((1, p - 3), (1,) * p)
        n = len(enumerate_zero_graphs(s, 0, jobs=scale.jobs))
        yield Check("zero graphs = f(a, p)", str(s), n == f(p - 2, p), f"graphs={n}")


def _residue_row(s: Stratum) -> tuple[str, bool, str]:
    prof = profile(s)
    total = residue_total(prof.records, s.p)
    return str(s), total.canonical().is_zero(), f"total={list(total.coeffs)}"


def fiber_residue_theorem(scale: Scale, xi_fn) -> Iterator[Check]:
    for name, ok, detail in ordered_map(_residue_row, two_zero_strata(scale.max_pole_sum), scale.jobs):
        yield Check("pole residues sum to zero", name, ok, detail)


def genus_simple(scale: Scale, xi_fn) -> Iterator[Check]:
    for a in range(2, min(scale.max_pole_sum - 2, 8) + 1):
        for a1 in range(1, a // 2 + 1):
            s = validate((a1, a - a1), (1,) * (a + 2))
            deg, want = profile(s).degree, genus_simple_poles(a1, a - a1)
            yield Check("simple-pole genus formula", str(s), deg == want, f"profile={deg} formula={want}")


def _predicate_row(s: Stratum) -> tuple[str, bool, str]:
    prof = profile(s)
    simple = all_poles_simple_predicate(s) == profile_all_poles_simple(prof)
    even = all_even_predicate(s) == profile_all_even(prof)
    k = divisibility_factor(prof)
    return str(s), simple and even and k in (1, 2), f"simple_ok={simple} even_ok={even} factor={k}"


def predicates_and_factor(scale: Scale, xi_fn) -> Iterator[Check]:
    rows = ordered_map(_predicate_row, two_zero_strata(scale.max_pole_sum, min_poles=3), scale.jobs)
    for name, ok, detail in rows:
        yield Check("simple/even predicates and factor", name, ok, detail)


def components_vs_graphs(scale: Scale, xi_fn) -> Iterator[Check]:
    from .core import parse_stratum
    from .realgraphs import adjacency_components

    for text in COMPONENT_SUITE:
        s = parse_stratum(text)
        if sum(s.pole_orders) > scale.max_pole_sum or s.p > scale.max_graph_poles:
            continue
        got, want = adjacency_components(s, 0, jobs=scale.jobs), num_components(s)
        yield Check("graph adjacency components", str(s), got == want, f"graphs={got} formula={want}")


FAMILIES = (
    ("xi closed form = coefficient oracle", xi_cross_oracle),
    ("xi recursion", xi_recursion),
    ("zero graphs = f(a, p)", zero_graph_count),
    ("pole residues sum to zero", fiber_residue_theorem),
    ("simple-pole genus formula", genus_simple),
    ("simple/even predicates and factor", predicates_and_factor),
    ("graph adjacency components", components_vs_graphs),
)


def run(scale: Scale, xi_fn=None) -> list[FamilyResult]:
    """Run every family in order; stop at the first counterexample."""
    xi_fn = xi_fn or xi_closed
    results = []
    for name, fam in FAMILIES:
        n, bad = 0, None
        for check in fam(scale, xi_fn):
            n += 1
            if not check.ok:
                bad = check
                break
        results.append(FamilyResult(name, n, bad is None, bad))
        if bad is not None:
            break
    return results
