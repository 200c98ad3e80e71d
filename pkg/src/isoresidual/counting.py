"""Closed counting functions: the fiber degree ``f(a, p)`` and the residueless count Xi.

Xi(a1, a2; b) is the number of differentials in H(a1, a2, -b1, ..., -bp)
whose residues all vanish.  Two independent evaluations are provided: an
inclusion-exclusion closed form and a direct coefficient extraction from
prod_i (t + ... + t^(b_i - 1)).  ``xi_recursion_rhs`` evaluates a third
expression built from boundary counts of smaller strata.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, perm
from typing import Sequence

from .core import IndexOutOfRange


def f(a: int, p: int) -> int:
    """a! / (a + 2 - p)!, the number of points in a generic fiber of H(a, -b1, ..., -bp).

    Zero when p > a + 2.  ``p = 1`` is rejected: the ratio 1/(a+1) is not an
    integer and no generic fiber exists with a single pole.
    """
    if a < 0:
        raise ValueError(f"zero order must be nonnegative, got {a}")
    if p < 2:
        raise ValueError(f"f(a, p) needs p >= 2, got p = {p}")
    if p > a + 2:
        return 0
    return perm(a, p - 2)


def prong_weight(c: int, a: int, side_size: int) -> int:
    """c * f(a, side_size + 1), with the empty side contributing exactly 1.

    For an empty side c = a + 1 and f(a, 1) = 1/(a+1), so the product is 1.
    """
    if side_size == 0:
        return 1
    return c * f(a, side_size + 1)


@dataclass(frozen=True)
class XiQuery:
    a1: int
    a2: int
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.a1 < 0 or self.a2 < 0:
            raise ValueError("zero orders in a Xi query must be >= 0")
        if not self.b or any(x < 1 for x in self.b):
            raise ValueError("pole orders in a Xi query must be >= 1")
        if self.a1 + self.a2 + 2 != sum(self.b):
            raise ValueError(
                f"degree condition fails: {self.a1}+{self.a2}+2 != {sum(self.b)}"
            )

    @property
    def p(self) -> int:
        return len(self.b)


def _coerce(q: XiQuery | tuple) -> XiQuery:
    if isinstance(q, XiQuery):
        return q
    a1, a2, b = q
    return XiQuery(a1, a2, tuple(b))


@lru_cache(maxsize=None)
def _xi_closed(a1: int, b: tuple[int, ...]) -> int:
    p = len(b)
    total = 0
    for k in range(p):
        for chosen in combinations(b, k):
            top = a1 - sum(chosen) + k
            if a1 + 1 - sum(chosen) - (p - k) < 0:
                continue
            total += (-1) ** k * comb(top, p - 1)
    return factorial(p - 1) * total


def xi_closed(q: XiQuery | tuple) -> int:
    """Inclusion-exclusion closed form for Xi."""
    q = _coerce(q)
    return _xi_closed(q.a1, tuple(sorted(q.b)))


def _poly_mul(x: list[int], y: list[int]) -> list[int]:
    out = [0] * (len(x) + len(y) - 1)
    for i, u in enumerate(x):
        if u:
            for j, v in enumerate(y):
                out[i + j] += u * v
    return out


@lru_cache(maxsize=None)
def _xi_oracle(a1: int, b: tuple[int, ...]) -> int:
    poly = [1]
    for bi in b:
        # t + t^2 + ... + t^(bi-1); the zero polynomial when bi == 1
        poly = _poly_mul(poly, [0] + [1] * (bi - 1)) if bi > 1 else [0]
    coeff = poly[a1 + 1] if a1 + 1 < len(poly) else 0
    return factorial(len(b) - 1) * coeff


def xi_oracle(q: XiQuery | tuple) -> int:
    """(p-1)! [t^(a1+1)] prod_i (t + ... + t^(b_i - 1)) by exact polynomial multiplication."""
    q = _coerce(q)
    return _xi_oracle(q.a1, tuple(sorted(q.b)))


def xi(a1: int, a2: int, b: Sequence[int]) -> int:
    """Shorthand for the closed form."""
    return xi_closed(XiQuery(a1, a2, tuple(b)))


def xi_recursion_rhs(q: XiQuery | tuple, distinguished_pole: int, xi_fn=None) -> int:
    """Right-hand side of the residueless recursion with respect to one pole (0-based).

    (b_d - 1) f(a1+a2, p) minus, over disjoint (I', J') avoiding d with
    positive prong numbers c1, c2 and |I'|+|J'| >= 1, the terms
    c1 c2 f(a1,|I'|+1) f(a2,|J'|+1) Xi(c1-1, c2-1; b_K').
    """
    q = _coerce(q)
    xi_fn = xi_fn or xi_closed
    p = q.p
    if not 0 <= distinguished_pole < p:
        raise IndexOutOfRange(f"pole index {distinguished_pole} outside 0..{p - 1}")
    a1, a2, b = q.a1, q.a2, q.b
    if p == 1:
        # rational reading f(a, 1) = 1/(a+1) with b - 1 = a1 + a2 + 1; no cherry terms
        return (b[0] - 1) // (a1 + a2 + 1)
    total = (b[distinguished_pole] - 1) * f(a1 + a2, p)
    for I, J, K in _split_around(b, distinguished_pole, a1 + 1, a2 + 1):
        if not (I or J):
            continue
        c1 = a1 + 1 - sum(b[i] for i in I)
        c2 = a2 + 1 - sum(b[j] for j in J)
        inner = xi_fn(XiQuery(c1 - 1, c2 - 1, tuple(b[k] for k in K)))
        if inner:
            total -= prong_weight(c1, a1, len(I)) * prong_weight(c2, a2, len(J)) * inner
    return total


def _split_around(b: Sequence[int], keep: int, cap1: int, cap2: int):
    """Tripartitions with ``keep`` in K, b_I < cap1 and b_J < cap2.

    Simple poles are never placed in K: a residueless differential has no
    simple pole, so those terms vanish (if ``keep`` itself is simple every
    term vanishes and nothing is yielded).
    """
    if b[keep] == 1:
        return
    rest = [j for j in range(len(b)) if j != keep]

    def walk(idx, I, J, K, s1, s2):
        if idx == len(rest):
            yield tuple(I), tuple(J), tuple(sorted(K))
            return
        j = rest[idx]
        bj = b[j]
        if s1 + bj < cap1:
            I.append(j)
            yield from walk(idx + 1, I, J, K, s1 + bj, s2)
            I.pop()
        if s2 + bj < cap2:
            J.append(j)
            yield from walk(idx + 1, I, J, K, s1, s2 + bj)
            J.pop()
        if bj > 1:
            K.append(j)
            yield from walk(idx + 1, I, J, K, s1, s2)
            K.pop()

    yield from walk(0, [], [], [keep], 0, 0)


def xi_queries(max_pole_sum: int, min_pole_sum: int = 1):
    """Every valid Xi query with pole orders sorted decreasingly and sum in range.

    Pole orders are taken as multisets; zero orders (a1, a2) range over all
    nonnegative splits of sum(b) - 2.
    """
    for total in range(max(2, min_pole_sum), max_pole_sum + 1):
        for b in partitions(total):
            for a1 in range(total - 1):
                yield XiQuery(a1, total - 2 - a1, b)


def partitions(n: int, max_part: int | None = None):
    """Integer partitions of n as nonincreasing tuples, in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest
