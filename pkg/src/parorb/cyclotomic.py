"""Exact elements of Z[zeta_N] as integer coefficient vectors.

Equality is decided after reduction modulo the N-th cyclotomic polynomial,
so no algebraic-number library is needed.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import NonIntegral


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), ``den`` monic."""
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dn]
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    assert not any(num), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first: x^n - 1 divided by Phi_d for proper divisors d."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


def reduce_mod_phi(coeffs: Sequence[int], n: int) -> tuple[int, ...]:
    """Remainder of ``sum c_k x^k`` modulo Phi_n, padded to length phi(n)."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = [int(x) for x in coeffs]
    for k in range(len(c) - 1, deg - 1, -1):
        lead = c[k]
        if lead:
            for j, pj in enumerate(phi):
                c[k - deg + j] -= lead * pj
    c = c[:deg] + [0] * max(0, deg - len(c))
    return tuple(c)


class CycloNumber:
    """``sum coeffs[k] * zeta_level^k`` with ``zeta_level = exp(2 pi i / level)``."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Sequence[int]):
        level = int(level)
        c = [0] * level
        for k, x in enumerate(coeffs):
            c[k % level] += int(x)
        self.level = level
        self.coeffs = tuple(c)

    @classmethod
    def integer(cls, m: int) -> CycloNumber:
        return cls(1, [m])

    @classmethod
    def root(cls, e: Fraction) -> CycloNumber:
        """``exp(2 pi i e)`` for rational ``e``."""
        e = Fraction(e)
        return cls(e.denominator, [0] * (e.numerator % e.denominator) + [1])

    def at_level(self, m: int) -> CycloNumber:
        if m % self.level:
            raise ValueError(f"level {m} is not a multiple of {self.level}")
        step = m // self.level
        c = [0] * m
        for k, x in enumerate(self.coeffs):
            c[k * step] = x
        return CycloNumber(m, c)

    def _common(self, other) -> tuple[CycloNumber, CycloNumber]:
        if not isinstance(other, CycloNumber):
            other = CycloNumber.integer(int(other))
        m = math.lcm(self.level, other.level)
        return self.at_level(m), other.at_level(m)

    def __add__(self, other):
        a, b = self._common(other)
        return CycloNumber(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.level, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycloNumber) else CycloNumber.integer(-int(other)))

    def __mul__(self, other):
        a, b = self._common(other)
        n = a.level
        c = [0] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        c[(i + j) % n] += x * y
        return CycloNumber(n, c)

    __rmul__ = __mul__

    def conj(self) -> CycloNumber:
        n = self.level
        return CycloNumber(n, [self.coeffs[(-k) % n] for k in range(n)])

    def reduced(self) -> tuple[int, ...]:
        return reduce_mod_phi(self.coeffs, self.level)

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other):
        if not isinstance(other, (CycloNumber, int)):
            return NotImplemented
        a, b = self._common(other)
        return (a - b).is_zero()

    __hash__ = None

    def to_rational_integer(self) -> int:
        r = self.reduced()
        if any(r[1:]):
            raise NonIntegral(f"{self} is not a rational integer")
        return r[0] if r else 0

    def to_complex(self) -> complex:
        n = self.level
        return sum(x * complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
                   for k, x in enumerate(self.coeffs))

    def __repr__(self):
        r = self.reduced()
        if not any(r[1:]):
            return f"CycloNumber({r[0] if r else 0})"
        terms = [f"{x}*z{self.level}^{k}" for k, x in enumerate(r) if x]
        return "CycloNumber(" + " + ".join(terms) + ")"

    def to_json(self):
        """Integer when rational, else the reduced coefficient list with its level."""
        r = self.reduced()
        if not any(r[1:]):
            return r[0] if r else 0
        return {"level": self.level, "coeffs": list(r)}
