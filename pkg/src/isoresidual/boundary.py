"""Boundary degenerations of a generic isoresidual fiber and the singularities they produce.

For a two-zero stratum H(a1, a2, -b1, ..., -bp) every zero and pole of the
translation structure on the compactified fiber comes from one of three
kinds of degeneration:

* both zeros merging (zeros of the fiber),
* a horizontal node splitting the poles as I | J with b_I = a1 + 1 (simple poles),
* a two-level "cherry" with residueless top poles K and bottom sides I, J
  (higher-order poles).

Pole labels are 0-based internally; residue forms are printed 1-based.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Iterable

from .core import ResidueForm, Stratum, subsets
from .counting import f, xi

ZERO = "zero"
POLE = "pole"


@dataclass(frozen=True, order=True)
class Degeneration:
    kind: str  # "zero-merge" | "horizontal" | "cherry"
    I: tuple[int, ...] = ()
    J: tuple[int, ...] = ()
    K: tuple[int, ...] = ()
    subcase: str = ""  # cherry only: "empty", "I-only", "J-only", "both"

    def describe(self) -> str:
        def s(xs):
            return "{" + ",".join(str(x + 1) for x in xs) + "}"

        if self.kind == "zero-merge":
            return "zero-merge"
        if self.kind == "horizontal":
            return f"horizontal(I={s(self.I)})"
        return f"cherry(I={s(self.I)},J={s(self.J)},K={s(self.K)};{self.subcase})"


@dataclass(frozen=True)
class SingularityRecord:
    kind: str
    order: int
    multiplicity: int
    residue: ResidueForm
    source: Degeneration

    def __post_init__(self) -> None:
        if self.multiplicity <= 0:
            raise ValueError("records must have positive multiplicity")


@dataclass(frozen=True)
class ProfileEntry:
    """Records sharing (kind, order, canonical residue), multiplicities summed."""

    kind: str
    order: int
    residue: ResidueForm
    multiplicity: int
    sources: tuple[Degeneration, ...] = field(default=(), compare=False)

    def sort_key(self):
        return (0 if self.kind == ZERO else 1, self.order, self.residue.coeffs)


def zero_record(s: Stratum) -> SingularityRecord:
    s.require_two_zeros()
    a = s.a1 + s.a2
    return SingularityRecord(ZERO, a, f(a, s.p), ResidueForm.zero(s.p), Degeneration("zero-merge"))


def horizontal_records(s: Stratum) -> list[SingularityRecord]:
    s.require_two_zeros()
    a1, a2, b, p = s.a1, s.a2, s.pole_orders, s.p
    out = []
    for I in subsets(range(p), nonempty=True):
        if sum(b[i] for i in I) != a1 + 1:
            continue
        J = tuple(j for j in range(p) if j not in I)
        mult = f(a1, len(I) + 1) * f(a2, len(J) + 1)
        if mult:
            out.append(
                SingularityRecord(POLE, 1, mult, ResidueForm.indicator(p, J), Degeneration("horizontal", I, J))
            )
    return out


def cherry_record(s: Stratum, I, J, K) -> SingularityRecord | None:
    """The pole produced by the cherry degeneration (I, J, K), or None if it does not occur."""
    a1, a2, b, p = s.a1, s.a2, s.pole_orders, s.p
    if not K:
        return None
    bK = tuple(b[k] for k in K)
    c1 = a1 + 1 - sum(b[i] for i in I)
    c2 = a2 + 1 - sum(b[j] for j in J)
    if I and J:
        if c1 < 1 or c2 < 1:
            return None
        g = gcd(c1, c2)
        order = 1 + c1 * c2 // g
        mult = f(a1, len(I) + 1) * f(a2, len(J) + 1) * g * xi(c1 - 1, c2 - 1, bK)
        residue = ResidueForm.indicator(p, I, -(c2 // g)) + ResidueForm.indicator(p, J, c1 // g)
        sub = "both"
    elif J:
        if c2 < 1:
            return None
        order, mult = 1 + c2, f(a2, len(J) + 1) * xi(a1, c2 - 1, bK)
        residue, sub = ResidueForm.indicator(p, J), "J-only"
    elif I:
        if c1 < 1:
            return None
        order, mult = 1 + c1, f(a1, len(I) + 1) * xi(c1 - 1, a2, bK)
        residue, sub = ResidueForm.indicator(p, I, -1), "I-only"
    else:
        order, mult = 2, xi(a1, a2, bK)
        residue, sub = ResidueForm.zero(p), "empty"
    if mult == 0:
        return None
    return SingularityRecord(POLE, order, mult, residue, Degeneration("cherry", I, J, K, sub))


def cherry_splits(pole_orders):
    """Tripartitions (I, J, K) with K nonempty and free of simple poles.

    A simple pole in K would need a residueless differential with a simple
    pole, so those cherries never occur; skipping them keeps the search at
    2^s * 3^(p-s) for s simple poles instead of 3^p.
    """
    p = len(pole_orders)
    choices = [(0, 1) if b == 1 else (0, 1, 2) for b in pole_orders]
    for code in product(*choices):
        if 2 not in code:
            continue
        parts: tuple[list[int], list[int], list[int]] = ([], [], [])
        for j in range(p):
            parts[code[j]].append(j)
        yield tuple(parts[0]), tuple(parts[1]), tuple(parts[2])


def cherry_records(s: Stratum) -> list[SingularityRecord]:
    s.require_two_zeros()
    out = []
    for I, J, K in cherry_splits(s.pole_orders):
        rec = cherry_record(s, I, J, K)
        if rec is not None:
            out.append(rec)
    return out


def all_records(s: Stratum) -> list[SingularityRecord]:
    s.require_generic_fiber()
    return [zero_record(s)] + horizontal_records(s) + cherry_records(s)


def aggregate(records: Iterable[SingularityRecord]) -> list[ProfileEntry]:
    """Merge records by (kind, order, canonical residue); the merge is order-independent."""
    mult: dict = defaultdict(int)
    srcs: dict = defaultdict(list)
    for r in records:
        key = (r.kind, r.order, r.residue.canonical())
        mult[key] += r.multiplicity
        srcs[key].append(r.source)
    entries = [
        ProfileEntry(k[0], k[1], k[2], m, tuple(sorted(srcs[k])))
        for k, m in mult.items()
    ]
    entries.sort(key=ProfileEntry.sort_key)
    return entries


def profile(s: Stratum):
    """Full singularity profile of the fiber, with its global invariants."""
    from .fiber import FiberProfile

    return FiberProfile.from_entries(s, aggregate(all_records(s)))


def residue_total(entries: Iterable[ProfileEntry], p: int) -> ResidueForm:
    """Sum of multiplicity * residue over pole entries (raw, not canonicalised)."""
    total = ResidueForm.zero(p)
    for e in entries:
        if e.kind == POLE:
            total = total + e.residue.scale(e.multiplicity)
    return total
