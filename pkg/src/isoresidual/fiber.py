"""Global invariants of the generic isoresidual fiber: Euler characteristic, genus,
connected components, and the parity / simplicity / divisibility predicates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import factorial, gcd

from .core import Stratum, WrongZeroCount


class NonIntegral(ArithmeticError):
    pass


@dataclass(frozen=True)
class FiberProfile:
    stratum: Stratum
    records: tuple  # ProfileEntry, canonically sorted
    degree: int
    num_components: int
    genus_per_component: int | None  # None when degree / components is not of the form 2g - 2

    @classmethod
    def from_entries(cls, s: Stratum, entries) -> "FiberProfile":
        deg = sum(e.order * e.multiplicity * (1 if e.kind == "zero" else -1) for e in entries)
        k = num_components(s)
        genus = None
        if deg % (2 * k) == 0:
            genus = deg // (2 * k) + 1
        return cls(s, tuple(entries), deg, k, genus)

    @property
    def zeros(self):
        return [e for e in self.records if e.kind == "zero"]

    @property
    def poles(self):
        return [e for e in self.records if e.kind == "pole"]

    def orders(self) -> list[int]:
        return [e.order for e in self.records]

    def count(self, kind: str, order: int | None = None) -> int:
        return sum(
            e.multiplicity for e in self.records if e.kind == kind and (order is None or e.order == order)
        )

    def stratum_signature(self) -> tuple[int, ...]:
        """Orders of the full fiber as a signed multiset (zeros descending, then poles)."""
        zs = sorted((e.order for e in self.zeros for _ in range(e.multiplicity)), reverse=True)
        ps = sorted((e.order for e in self.poles for _ in range(e.multiplicity)))
        return tuple(zs) + tuple(-o for o in ps)

    def component_signature(self) -> tuple[int, ...]:
        """Signature of one component; every multiplicity is shared equally among components."""
        k = self.num_components
        zs, ps = [], []
        for e in self.records:
            if e.multiplicity % k:
                raise NonIntegral(f"multiplicity {e.multiplicity} not divisible by {k} components")
            (zs if e.kind == "zero" else ps).extend([e.order] * (e.multiplicity // k))
        return tuple(sorted(zs, reverse=True)) + tuple(-o for o in sorted(ps))


def euler_characteristic(prof: FiberProfile) -> int:
    """chi of the whole (possibly disconnected) compact fiber, i.e. minus the degree."""
    return -prof.degree


def genus_simple_poles(a1: int, a2: int) -> int:
    """2g - 2 of the fiber of H(a1, a2, -1^(a+2)), a = a1 + a2, by the closed formula."""
    if a1 < 1 or a2 < 1:
        raise ValueError("zero orders must be >= 1")
    a = a1 + a2
    val = factorial(a) * (a - Fraction((a + 2) * (a + 1), (a1 + 1) * (a2 + 1)))
    if val.denominator != 1:
        raise NonIntegral(f"closed formula gave {val} for ({a1}, {a2})")
    return int(val)


def num_components(s: Stratum) -> int:
    """Number of connected components of the generic fiber, any number n >= 2 of zeros.

    Two exceptional families are disconnected: exactly two simple poles with
    every other order divisible by some k >= 2 (k components), and an even
    number s >= 4 of simple poles with every other order even (2 components).
    """
    if s.n < 2:
        raise WrongZeroCount(f"{s} has a finite fiber; components need n >= 2")
    simple = sum(1 for b in s.pole_orders if b == 1)
    others = list(s.zero_orders) + [b for b in s.pole_orders if b > 1]
    k = reduce(gcd, others, 0)
    if simple == 2 and k >= 2:
        return k
    if simple >= 4 and simple % 2 == 0 and all(x % 2 == 0 for x in others):
        return 2
    return 1


def profile_all_poles_simple(prof: FiberProfile) -> bool:
    return all(e.order == 1 for e in prof.poles)


def profile_all_even(prof: FiberProfile) -> bool:
    return all(o % 2 == 0 for o in prof.orders())


def all_poles_simple_predicate(s: Stratum) -> bool:
    s.require_two_zeros()
    return all(b == 1 for b in s.pole_orders)


def all_even_predicate(s: Stratum) -> bool:
    """Pattern test 'every order of mu is even'; for two poles the profile decides instead."""
    s.require_two_zeros()
    if s.p >= 3:
        return all(x % 2 == 0 for x in s.zero_orders + s.pole_orders)
    from .boundary import profile

    return profile_all_even(profile(s))


def divisibility_factor(prof: FiberProfile) -> int:
    return reduce(gcd, prof.orders(), 0)
