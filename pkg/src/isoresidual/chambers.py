"""Walls and chambers of the singularity pattern space.

A two-zero stratum H(a1, a2, -b1, ..., -bp) is the lattice point
v = (x1, x2, y1, ..., yp) = (a1+1, a2+1, b1, ..., bp) in the positive orthant
cut out by x1 + x2 = sum(y).  The walls are the affine functionals

    W1(I)       x1 - y_I                    I nonempty
    W2(I)       x2 - y_I                    I nonempty
    W3(I,K,L)   x1 - y_(I u L) - |K \\ L|     I, J, K a partition, K nonempty, L inside K
    W4(J,K,M)   x2 - y_(J u M) - |K \\ M|     M inside K

and the Euler characteristic of the fiber is a sum of homogeneous pieces of
degree <= p - 1 on each chamber.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

from .core import ResourceLimit, Stratum, subsets, tripartitions, validate

DEFAULT_MAX_POLES = 5


class NotInChamber(ValueError):
    pass


class ChamberCrossing(RuntimeError):
    pass


@dataclass(frozen=True)
class WallFunctional:
    kind: str  # "W1" | "W2" | "W3" | "W4"
    subsets: tuple[tuple[int, ...], ...]  # (I,) or (I, K, L) or (J, K, M); 0-based labels
    coeffs: tuple[int, ...]  # over (x1, x2, y1, ..., yp)
    constant: int

    def evaluate(self, point: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.coeffs, point)) + self.constant

    def describe(self) -> str:
        var = ["x1", "x2"] + [f"y{j}" for j in range(1, len(self.coeffs) - 1)]
        terms = []
        for c, v in zip(self.coeffs, var):
            if c:
                terms.append(("+" if c > 0 else "-") + (v if abs(c) == 1 else f"{abs(c)}*{v}"))
        if self.constant:
            terms.append(f"{self.constant:+d}")
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text


def _check_bound(p: int, max_poles: int) -> None:
    if p < 1:
        raise ValueError("p must be >= 1")
    if p > max_poles:
        raise ResourceLimit(f"wall enumeration for p = {p} exceeds the bound p <= {max_poles}")


def walls(p: int, max_poles: int = DEFAULT_MAX_POLES) -> tuple[WallFunctional, ...]:
    """Duplicate-free walls in canonical order (kind, then defining subsets)."""
    _check_bound(p, max_poles)
    return _walls(p)


@lru_cache(maxsize=None)
def _walls(p: int) -> tuple[WallFunctional, ...]:
    seen: set = set()
    out: dict[str, list[WallFunctional]] = {k: [] for k in ("W1", "W2", "W3", "W4")}

    def add(kind, subs, which, ys, const):
        coeffs = [0] * (p + 2)
        coeffs[which] = 1
        for j in ys:
            coeffs[2 + j] -= 1
        key = (tuple(coeffs), const)
        if key in seen:
            return
        seen.add(key)
        out[kind].append(WallFunctional(kind, subs, key[0], const))

    for I in subsets(range(p), nonempty=True):
        add("W1", (I,), 0, I, 0)
    for I in subsets(range(p), nonempty=True):
        add("W2", (I,), 1, I, 0)
    parts = sorted(tripartitions(p))
    for kind, which in (("W3", 0), ("W4", 1)):
        cands = []
        for I, J, K in parts:
            if not K:
                continue  # cherries need a nonempty top; K = {} only repeats W1/W2 or gives x_i = 0
            side = I if kind == "W3" else J
            for L in subsets(K):
                cands.append(((side, K, L), tuple(sorted(side + L)), -(len(K) - len(L))))
        for subs, ys, const in sorted(cands):
            add(kind, subs, which, ys, const)
    return tuple(out["W1"] + out["W2"] + out["W3"] + out["W4"])


def point(s: Stratum) -> tuple[int, ...]:
    s.require_two_zeros()
    return (s.a1 + 1, s.a2 + 1) + s.pole_orders


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def signature(s: Stratum, max_poles: int = DEFAULT_MAX_POLES) -> tuple[int, ...]:
    """Sign of every wall functional at the stratum's point; 0 means the point lies on the wall."""
    v = point(s)
    return tuple(_sign(w.evaluate(v)) for w in walls(s.p, max_poles))


def signature_hash(sig: Sequence[int]) -> str:
    text = "".join({-1: "-", 0: "0", 1: "+"}[x] for x in sig)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def in_one_chamber(x1: int, x2: int, ys: Sequence[int]) -> bool:
    """The chamber x1 > p, x1 < y_j + 1 - p for all j, where the smallest zero is below every pole."""
    p = len(ys)
    return x1 > p and all(x1 < y + 1 - p for y in ys)


def leading_form(x1: int, x2: int, p: int) -> int:
    return x1 ** (p - 1) + x2 ** (p - 1) - (x1 + x2) ** (p - 1)


def one_chamber_leading(s: Stratum) -> int:
    x1, x2, *ys = point(s)
    if not in_one_chamber(x1, x2, ys):
        raise NotInChamber(f"{s} is not in the chamber x1 > p, x1 < y_j + 1 - p")
    return leading_form(x1, x2, s.p)


@dataclass(frozen=True)
class HomogeneityReport:
    points: tuple[tuple[int, ...], ...]
    chi: tuple[int, ...]
    differences: tuple[tuple[int, ...], ...]  # differences[k] is the k-th finite difference
    in_gcd_free_chamber: bool
    expected_top_difference: int | None  # (p-1)! * leading form of the direction
    ok: bool


def finite_differences(values: Sequence[int]) -> list[list[int]]:
    rows = [list(values)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    return rows


def verify_homogeneity(
    base: Stratum | Sequence[int],
    direction: Sequence[int],
    depth: int,
    max_poles: int = DEFAULT_MAX_POLES,
) -> HomogeneityReport:
    """Sample chi along base + t * direction (t = 0..depth) inside one chamber.

    ``base`` and ``direction`` live in (x1, x2, y1, ..., yp) coordinates; the
    direction must keep x1 + x2 = sum(y).  In the chamber with no cherry
    having both sides nonempty, chi is a polynomial of degree p - 1 along the
    line, so its p-th differences vanish and its (p-1)-th differences equal
    (p-1)! times the leading form evaluated on the direction.
    """
    from .boundary import profile
    from .fiber import euler_characteristic

    v0 = point(base) if isinstance(base, Stratum) else tuple(base)
    d = tuple(direction)
    if len(d) != len(v0):
        raise ValueError("direction has the wrong length")
    if d[0] + d[1] != sum(d[2:]):
        raise ValueError("direction must preserve x1 + x2 = sum(y)")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    p = len(v0) - 2
    pts, chis, sigs = [], [], set()
    gcd_free = True
    for t in range(depth + 1):
        v = tuple(a + t * b for a, b in zip(v0, d))
        s = validate((v[0] - 1, v[1] - 1), v[2:])
        sigs.add(signature(s, max_poles))
        if len(sigs) > 1:
            raise ChamberCrossing(f"signature changes at t = {t} ({s})")
        gcd_free &= in_one_chamber(v[0], v[1], v[2:])
        pts.append(v)
        chis.append(euler_characteristic(profile(s)))
    diffs = finite_differences(chis)
    expected = None
    ok = True
    if gcd_free:
        expected = factorial(p - 1) * leading_form(d[0], d[1], p)
        if len(diffs) > p:
            ok &= all(x == 0 for x in diffs[p])
        if len(diffs) > p - 1:
            ok &= all(x == expected for x in diffs[p - 1])
    return HomogeneityReport(tuple(pts), tuple(chis), tuple(tuple(r) for r in diffs), gcd_free, expected, ok)
