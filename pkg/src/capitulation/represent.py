"""Representations of a prime p = 1 mod 8 by x^2 + n y^2 and c^2 - 32 d^2."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import NoRepresentation, NoRoot
from .numcore import is_prime, jacobi, sqrt_mod


@dataclass(frozen=True)
class DefiniteRep:
    """p = x^2 + n*y^2 with x, y > 0."""

    x: int
    y: int
    n: int

    def value(self) -> int:
        return self.x * self.x + self.n * self.y * self.y


@dataclass(frozen=True)
class PellRep:
    """p = c^2 - 32*d^2 with c, d > 0 and d minimal."""

    c: int
    d: int

    def value(self) -> int:
        return self.c * self.c - 32 * self.d * self.d


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def __str__(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def cornacchia(p: int, n: int) -> DefiniteRep | None:
    """Solve p = x^2 + n*y^2 for an odd prime p coprime to n.

    Returns None when no representation exists.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if p % 2 == 0 or not is_prime(p) or (n > 1 and p % n == 0):
        raise ValueError(f"cornacchia needs an odd prime coprime to {n}, got {p}")
    if jacobi(-n, p) != 1:
        return None
    try:
        r = sqrt_mod(-n, p)
    except NoRoot:
        return None
    # Euclid on (p, r) with r > p/2 until the remainder drops below sqrt(p)
    r = max(r, p - r)
    a, b = p, r
    bound = isqrt(p)
    while b > bound:
        a, b = b, a % b
    rest = p - b * b
    if rest % n:
        return None
    y2 = rest // n
    y = isqrt(y2)
    if y * y != y2 or y == 0:
        return None
    return DefiniteRep(b, y, n)


def pell_rep(p: int) -> PellRep:
    """Minimal d > 0 with p + 32 d^2 a perfect square."""
    if p % 8 not in (1, 7) or not is_prime(p):
        raise ValueError(f"{p} is not a prime congruent to +-1 mod 8")
    # c^2 <= (17 + 12*sqrt(2)) * p < 34 p covers one orbit of the automorph
    limit = 34 * p
    d = 1
    while p + 32 * d * d <= limit:
        c2 = p + 32 * d * d
        c = isqrt(c2)
        if c * c == c2:
            return PellRep(c, d)
        d += 1
    raise NoRepresentation(f"no c^2 - 32 d^2 = {p} below the automorph bound")


def gaussian_split(p: int) -> tuple[GaussianInt, GaussianInt]:
    """pi_1 = e + 4f i and its conjugate, from p = e^2 + 16 f^2."""
    rep = cornacchia(p, 16)
    if rep is None:
        raise NoRepresentation(f"{p} has no representation e^2 + 16 f^2")
    pi1 = GaussianInt(rep.x, 4 * rep.y)
    return pi1, pi1.conjugate()
