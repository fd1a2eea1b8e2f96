"""Pure-Python implementations of the class-number kernels.

Loaded when the compiled ``_ckernels`` extension is unavailable or when
``CAPITULATION_PURE_PYTHON`` is set.  Both backends implement the same
algorithms and must agree exactly.
"""

from __future__ import annotations

import math
from math import gcd, isqrt

from .numcore import jacobi


def count_reduced_forms(D: int) -> int:
    """Number of primitive reduced positive definite forms of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad negative discriminant {D}")
    h = 0
    bmax = isqrt(-D // 3)
    for b in range(D % 2, bmax + 1, 2):
        N = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= N:
            if N % a == 0:
                c = N // a
                if gcd(gcd(a, b), c) == 1:
                    h += 1 if (b == 0 or a == b or a == c) else 2
            a += 1
    return h


def _kronecker_prime(D: int, q: int) -> int:
    if q == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    return jacobi(D, q)


def character_table(D: int, n: int) -> list[int]:
    """chi_D(a) for 0 <= a < n, by a linear sieve (chi is completely multiplicative)."""
    chi = [0] * n
    if n > 1:
        chi[1] = 1
    composite = bytearray(n)
    primes: list[int] = []
    for i in range(2, n):
        if not composite[i]:
            primes.append(i)
            chi[i] = _kronecker_prime(D, i)
        for q in primes:
            iq = i * q
            if iq >= n:
                break
            composite[iq] = 1
            chi[iq] = chi[i] * chi[q]
            if i % q == 0:
                break
    return chi


def class_number_analytic(D: int) -> int:
    """Dirichlet's class number formula for the Kronecker character of D < 0.

    For D < -4 the half-range form h = sum_{a<|D|/2} chi(a) / (2 - chi(2))
    is used; D = -3, -4 use h = -(w / 2|D|) sum_{a<|D|} chi(a) a.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad negative discriminant {D}")
    n = -D
    if D < -4:
        chi = character_table(D, (n + 1) // 2)
        s = sum(chi)
        den = 2 - chi[2]
        if s % den:
            raise ArithmeticError(f"character sum for {D} is not divisible: {s}/{den}")
        return s // den
    chi = character_table(D, n)
    s = sum(chi[a] * a for a in range(1, n))
    w = 6 if D == -3 else 4
    num, den = -w * s, 2 * n
    if num % den:
        raise ArithmeticError(f"character sum for {D} is not divisible: {num}/{den}")
    return num // den


def real_log_sin_sum(D: int) -> float:
    """sum_{0<a<D} chi_D(a) log sin(pi a / D) for a discriminant D > 0.

    chi_D is even for D > 0, so the sum is twice the sum over a < D/2.
    """
    if D <= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad positive discriminant {D}")
    chi = character_table(D, (D + 1) // 2)
    return 2 * sum(c * math.log(math.sin(math.pi * a / D)) for a, c in enumerate(chi) if c)


def reduced_indefinite_forms(D: int) -> list[tuple[int, int, int]]:
    """Primitive reduced indefinite forms: |sqrt(D) - 2|a|| < b < sqrt(D)."""
    s = isqrt(D)
    out = []
    for b in range(2 - D % 2, s + 1, 2):
        N = (D - b * b) // 4
        d = 1
        divisors = []
        while d * d <= N:
            if N % d == 0:
                divisors.append(d)
                if d * d != N:
                    divisors.append(N // d)
            d += 1
        for A in divisors:
            if (2 * A + b) ** 2 <= D:
                continue
            t = 2 * A - b
            if t > 0 and t * t >= D:
                continue
            C = N // A
            if gcd(gcd(A, b), C) != 1:
                continue
            out.append((A, b, -C))
            out.append((-A, b, C))
    return out


def rho(form: tuple[int, int, int], D: int, s: int) -> tuple[int, int, int]:
    """One reduction step (a,b,c) -> (c, r, (r^2-D)/4c) on reduced forms."""
    _, b, c = form
    m = 2 * abs(c)
    r = s - (s + b) % m
    return (c, r, (r * r - D) // (4 * c))


def count_form_cycles(D: int) -> int:
    """Number of rho-cycles of reduced indefinite forms, i.e. the narrow class number."""
    s = isqrt(D)
    if D <= 0 or s * s == D or D % 4 not in (0, 1):
        raise ValueError(f"bad positive non-square discriminant {D}")
    forms = reduced_indefinite_forms(D)
    unseen = set(forms)
    cycles = 0
    while unseen:
        start = unseen.pop()
        cycles += 1
        f = rho(start, D, s)
        while f != start:
            if f not in unseen:
                raise ArithmeticError(f"rho left the reduced set at {f} for D={D}")
            unseen.discard(f)
            f = rho(f, D, s)
    return cycles
