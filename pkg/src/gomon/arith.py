"""Exact subgroups of (Q, +).

A nontrivial subgroup is stored as ``base * Z[1/S]`` for a finite prime set S.
An empty S gives the cyclic group generated by ``base``.  The base is kept
free of primes in S, so two equal subgroups have identical fields.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


class NonCyclicInput(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def rational_valuation(q: Fraction, p: int) -> int:
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def strip_primes(q: Fraction, primes) -> Fraction:
    """Remove every factor of the given primes from q."""
    num, den = abs(q.numerator), q.denominator
    for p in primes:
        while num % p == 0:
            num //= p
        while den % p == 0:
            den //= p
    return Fraction(num, den)


def rational_lcm(a: Fraction, b: Fraction) -> Fraction:
    """Generator of <a> ∩ <b> for positive rationals."""
    num = a.numerator * b.numerator // gcd(a.numerator, b.numerator)
    return Fraction(num, gcd(a.denominator, b.denominator))


@dataclass(frozen=True)
class RationalSubgroup:
    base: Fraction = Fraction(0)
    primes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        b = abs(as_fraction(self.base))
        ps = frozenset(int(p) for p in self.primes)
        for p in ps:
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"not a prime: {p}")
        if b == 0:
            ps = frozenset()
        elif ps:
            b = strip_primes(b, ps)
        object.__setattr__(self, "base", b)
        object.__setattr__(self, "primes", ps)

    @classmethod
    def cyclic(cls, gen) -> "RationalSubgroup":
        return cls(as_fraction(gen))

    @classmethod
    def dense(cls, base, primes) -> "RationalSubgroup":
        return cls(as_fraction(base), frozenset(primes))

    @classmethod
    def trivial(cls) -> "RationalSubgroup":
        return cls(Fraction(0))

    @property
    def is_trivial(self) -> bool:
        return self.base == 0

    @property
    def is_cyclic(self) -> bool:
        return not self.is_trivial and not self.primes

    @property
    def is_dense(self) -> bool:
        return bool(self.primes)

    @property
    def generator(self) -> Fraction:
        if not self.is_cyclic:
            raise NonCyclicInput(f"{self} has no single generator")
        return self.base

    def contains(self, q) -> bool:
        q = as_fraction(q)
        if q == 0:
            return True
        if self.is_trivial:
            return False
        ratio = q / self.base
        den = ratio.denominator
        for p in self.primes:
            while den % p == 0:
                den //= p
        return den == 1

    def __contains__(self, q) -> bool:
        return self.contains(q)

    def scale(self, factor) -> "RationalSubgroup":
        factor = as_fraction(factor)
        if self.is_trivial or factor == 0:
            return RationalSubgroup.trivial()
        return RationalSubgroup(self.base * abs(factor), self.primes)

    def small_element(self, eps) -> Fraction:
        """A positive element below eps; only dense groups have one for every eps."""
        eps = as_fraction(eps)
        if not self.is_dense:
            raise NonCyclicInput("only dense subgroups have arbitrarily small elements")
        p = min(self.primes)
        x = self.base
        while x >= eps:
            x /= p
        return x

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        if not self.primes:
            return f"<{fmt_fraction(self.base)}>"
        ps = ",".join(str(p) for p in sorted(self.primes))
        return f"{fmt_fraction(self.base)}*Z[1/{ps}]"


TRIVIAL = RationalSubgroup.trivial()


def contains(H: RationalSubgroup, q) -> bool:
    return H.contains(q)


def intersect(H1: RationalSubgroup, H2: RationalSubgroup) -> RationalSubgroup:
    """Exact intersection, computed prime by prime.

    Outside S1 ∪ S2 the valuation bound is the larger of the two bases' valuations.
    On S1 \\ S2 only H2 constrains, and on S2 \\ S1 only H1 does.
    """
    if H1.is_trivial or H2.is_trivial:
        return TRIVIAL
    s1, s2 = H1.primes, H2.primes
    both = s1 | s2
    core = rational_lcm(strip_primes(H1.base, both), strip_primes(H2.base, both))
    for p in s1 - s2:
        core *= Fraction(p) ** rational_valuation(H2.base, p)
    for p in s2 - s1:
        core *= Fraction(p) ** rational_valuation(H1.base, p)
    return RationalSubgroup(core, s1 & s2)


def index_data(H1: RationalSubgroup, H2: RationalSubgroup) -> tuple[int, int]:
    """(k, l) with gen(H1 ∩ H2) = l * gen(H1) = k * gen(H2)."""
    if not (H1.is_cyclic and H2.is_cyclic):
        raise NonCyclicInput("index_data needs two nontrivial cyclic subgroups")
    g = intersect(H1, H2).generator
    l = g / H1.generator
    k = g / H2.generator
    assert l.denominator == 1 and k.denominator == 1
    return int(k), int(l)


def floor_div(x: Fraction, c: Fraction) -> int:
    """Largest integer k with k*c <= x, for c > 0."""
    return (x / c).__floor__()
