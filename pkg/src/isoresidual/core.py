"""Stratum signatures, residue linear forms and small exact-integer helpers.

Orders are stored as positive integers on both sides; the convention that
poles carry a minus sign only appears in the string syntax
(``"2,3,-1,-2,-4"``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class StratumError(ValueError):
    """Base class for invalid stratum input."""


class DegreeMismatch(StratumError):
    pass


class NonPositiveOrder(StratumError):
    pass


class WrongZeroCount(StratumError):
    pass


class IndexOutOfRange(IndexError):
    pass


class ResourceLimit(RuntimeError):
    """Raised when an enumeration would exceed its configured size bound."""


@dataclass(frozen=True)
class Stratum:
    """Orders of the zeros and of the labeled poles of a genus-zero stratum."""

    zero_orders: tuple[int, ...]
    pole_orders: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.zero_orders)

    @property
    def p(self) -> int:
        return len(self.pole_orders)

    @property
    def a1(self) -> int:
        return self.zero_orders[0]

    @property
    def a2(self) -> int:
        return self.zero_orders[1]

    @property
    def total_zero_order(self) -> int:
        return sum(self.zero_orders)

    def signature(self) -> tuple[int, ...]:
        """The signed partition of -2, zeros first."""
        return self.zero_orders + tuple(-b for b in self.pole_orders)

    def to_string(self) -> str:
        return ",".join(str(x) for x in self.signature())

    def __str__(self) -> str:
        return "H(" + ",".join(str(x) for x in self.signature()) + ")"

    def require_two_zeros(self) -> None:
        if self.n != 2:
            raise WrongZeroCount(f"{self} has {self.n} zeros, expected 2")

    def require_generic_fiber(self) -> None:
        """Two zeros and at least two poles; with one pole the residue is forced to vanish."""
        self.require_two_zeros()
        if self.p < 2:
            raise StratumError(f"{self} has a single pole; its residue is zero and no generic fiber exists")


def validate(zero_orders: Iterable[int], pole_orders: Iterable[int]) -> Stratum:
    zs = tuple(int(a) for a in zero_orders)
    ps = tuple(int(b) for b in pole_orders)
    if not zs or not ps:
        raise StratumError("a stratum needs at least one zero and one pole")
    bad = [x for x in zs + ps if x < 1]
    if bad:
        raise NonPositiveOrder(f"orders must be >= 1, got {bad[0]}")
    if sum(zs) - sum(ps) != -2:
        raise DegreeMismatch(
            f"sum of zero orders minus sum of pole orders is {sum(zs) - sum(ps)}, not -2"
        )
    return Stratum(zs, ps)


def parse_stratum(text: str) -> Stratum:
    """Parse ``"a1,a2,...,-b1,-b2,..."``; positive entries are zeros, negative ones poles."""
    parts = [t.strip() for t in text.replace(" ", "").split(",") if t.strip()]
    if not parts:
        raise StratumError("empty stratum string")
    try:
        values = [int(t) for t in parts]
    except ValueError as exc:
        raise StratumError(f"not an integer list: {text!r}") from exc
    if any(v == 0 for v in values):
        raise NonPositiveOrder("order 0 is not allowed in a stratum string")
    return validate([v for v in values if v > 0], [-v for v in values if v < 0])


@dataclass(frozen=True, order=True)
class ResidueForm:
    """Integer linear form sum(w_j * lambda_j), read modulo the all-ones vector."""

    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, p: int) -> "ResidueForm":
        return cls((0,) * p)

    @classmethod
    def indicator(cls, p: int, labels: Iterable[int], weight: int = 1) -> "ResidueForm":
        """weight * sum of lambda_j over the given 0-based labels."""
        w = [0] * p
        for j in labels:
            w[j] += weight
        return cls(tuple(w))

    def __add__(self, other: "ResidueForm") -> "ResidueForm":
        return ResidueForm(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ResidueForm":
        return ResidueForm(tuple(-x for x in self.coeffs))

    def scale(self, k: int) -> "ResidueForm":
        return ResidueForm(tuple(k * x for x in self.coeffs))

    def canonical(self) -> "ResidueForm":
        return canonicalize(self)

    def is_zero(self) -> bool:
        return len(set(self.coeffs)) <= 1

    def equivalent(self, other: "ResidueForm") -> bool:
        return canonicalize(self) == canonicalize(other)

    def is_partial_sum(self) -> bool:
        """True when some representative has only 0/1 coefficients."""
        return set(canonicalize(self).coeffs) <= {0, 1}

    def expression(self) -> str:
        """Human-readable form, e.g. ``l1+l2`` or ``-2*l1+3*l3``; ``0`` for the zero form."""
        terms = []
        for j, w in enumerate(self.coeffs, start=1):
            if w == 0:
                continue
            mag = "" if abs(w) == 1 else f"{abs(w)}*"
            sign = "-" if w < 0 else ("+" if terms else "")
            terms.append(f"{sign}{mag}l{j}")
        return "".join(terms) or "0"


def canonicalize(form: ResidueForm) -> ResidueForm:
    if not form.coeffs:
        raise ValueError("residue form needs at least one coefficient")
    m = min(form.coeffs)
    return ResidueForm(tuple(x - m for x in form.coeffs))


def subsets(labels: Sequence[int], nonempty: bool = False) -> Iterator[tuple[int, ...]]:
    """All subsets of ``labels`` in order of increasing size, then lexicographic."""
    for k in range(1 if nonempty else 0, len(labels) + 1):
        yield from combinations(labels, k)


def tripartitions(p: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """Every assignment of labels 0..p-1 to (I, J, K); 3**p of them."""
    for code in range(3 ** p):
        parts: tuple[list[int], list[int], list[int]] = ([], [], [])
        c = code
        for j in range(p):
            parts[c % 3].append(j)
            c //= 3
        yield tuple(parts[0]), tuple(parts[1]), tuple(parts[2])
