"""Modular arithmetic, primality and the rational residue symbols.

Every function here is pure and works on Python ints, so results are exact
at any width.  Primality is deterministic below 3.3e24, which covers every
prime the sweeps can reach.
"""

from __future__ import annotations

from .errors import NoRoot

# Miller-Rabin with these bases is exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def mod_pow(base: int, exp: int, m: int) -> int:
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base, exp, m)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError("kronecker needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n) if n > 1 else result


def require_prime_1_mod_8(p: int) -> int:
    """Validate a prime congruent to 1 mod 8 and return it."""
    if p % 8 != 1 or not is_prime(p):
        raise ValueError(f"{p} is not a prime congruent to 1 mod 8")
    return p


def quartic_2_over_p(p: int) -> int:
    """Rational quartic symbol (2/p)_4 via Euler's criterion at exponent (p-1)/4."""
    require_prime_1_mod_8(p)
    r = mod_pow(2, (p - 1) // 4, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise ArithmeticError(f"2^((p-1)/4) mod {p} = {r} is not +-1; {p} is not prime")


def quartic_p_over_2(p: int) -> int:
    require_prime_1_mod_8(p)
    return -1 if ((p - 1) // 8) % 2 else 1


def sqrt_mod(a: int, p: int) -> int:
    """Smaller square root of a modulo the odd prime p (Tonelli-Shanks)."""
    a %= p
    if jacobi(a, p) != 1:
        raise NoRoot(f"{a} is not a non-zero square mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def primitive_eighth_roots(p: int) -> list[int]:
    """The four residues of multiplicative order exactly 8, ascending."""
    require_prime_1_mod_8(p)
    g = 2
    while jacobi(g, p) != -1:
        g += 1
    # a non-residue carries the full 2-part of p-1, so this power has order 8
    z = pow(g, (p - 1) // 8, p)
    return sorted(pow(z, e, p) for e in (1, 3, 5, 7))


def two_adic_valuation(n: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    return (n & -n).bit_length() - 1
