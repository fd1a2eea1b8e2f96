"""Binary quadratic forms, class numbers and fundamental units of quadratic fields.

Class numbers of imaginary fields come from counting reduced forms, with
Dirichlet's class-number formula as an independent check.  Real class
numbers come from counting cycles of reduced indefinite forms (the narrow
class number) and the norm of the fundamental unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import kernels
from .abelian import AbelianStructure, structure_from_orders
from .errors import InvalidDiscriminant, MismatchedDiscriminant, NotSquarefree
from .numcore import two_adic_valuation

CF_STEP_CAP = 10**6


@dataclass(frozen=True)
class BQF:
    a: int
    b: int
    c: int

    @property
    def D(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        D = self.D
        if D < 0:
            if not (abs(b) <= a <= c):
                return False
            return b >= 0 if (abs(b) == a or a == c) else True
        s = math.isqrt(D)
        # |sqrt(D) - 2|a|| < b < sqrt(D), using s < sqrt(D) < s + 1
        if not (0 < b <= s):
            return False
        A = abs(a)
        return (2 * A + b) ** 2 > D and (2 * A - b <= 0 or (2 * A - b) ** 2 < D)

    def inverse(self) -> BQF:
        return BQF(self.a, -self.b, self.c)

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c


def is_squarefree(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    q = 2
    while q * q <= m:
        if m % (q * q) == 0:
            return False
        if m % q == 0:
            m //= q
        q += 1
    return True


def fundamental_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for squarefree m != 0, 1."""
    if m in (0, 1) or not is_squarefree(m):
        raise NotSquarefree(f"{m} is not a squarefree integer != 0, 1")
    return m if m % 4 == 1 else 4 * m


def is_fundamental(D: int) -> bool:
    if D % 4 == 1:
        return D != 1 and is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def principal_form(D: int) -> BQF:
    k = D % 2
    return BQF(1, k, (k - D) // 4)


def _check_disc(D: int) -> None:
    if D == 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminant(f"{D} is not a discriminant")
    if D > 0 and isqrt(D) ** 2 == D:
        raise InvalidDiscriminant(f"{D} is a perfect square")


def _normalize_definite(a: int, b: int, c: int) -> tuple[int, int, int]:
    if -a < b <= a:
        return a, b, c
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def _rho_indefinite(a: int, b: int, c: int, D: int) -> tuple[int, int, int]:
    s = isqrt(D)
    m = 2 * abs(c)
    if abs(c) > s:
        # -|c| < r <= |c|
        r = (-b) % m
        if r > abs(c):
            r -= m
    else:
        # sqrt(D) - 2|c| < r < sqrt(D): the largest r <= s in the class
        r = s - (s + b) % m
    return c, r, (r * r - D) // (4 * c)


def reduce(f: BQF) -> BQF:
    """Reduced form equivalent to f (for D > 0, some form on f's cycle)."""
    D = f.D
    _check_disc(D)
    a, b, c = f
    if D < 0:
        if a < 0:
            raise InvalidDiscriminant("negative definite forms are not supported")
        a, b, c = _normalize_definite(a, b, c)
        while a > c or (a == c and b < 0):
            if a == c:
                b = -b
            else:
                a, b, c = _normalize_definite(c, -b, a)
        return BQF(a, b, c)
    g = BQF(a, b, c)
    for _ in range(CF_STEP_CAP):
        if g.is_reduced():
            return g
        g = BQF(*_rho_indefinite(g.a, g.b, g.c, D))
    raise ArithmeticError(f"reduction of {f} did not terminate")


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(u, v, d) with u*a + v*b = d = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -x0, -y0, -a
    return x0, y0, a


def compose(f: BQF, g: BQF) -> BQF:
    """Gauss composition of two positive definite forms, reduced."""
    D = f.D
    if g.D != D:
        raise MismatchedDiscriminant(f"{f} and {g} have different discriminants")
    if D >= 0:
        raise InvalidDiscriminant("composition is implemented for D < 0 only")
    if f.a > g.a:
        f, g = g, f
    a1, b1, _ = f
    a2, b2, c2 = g
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        u, _, d = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        x2, y2, d1 = _xgcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    num = b3 * b3 - D
    if num % (4 * a3):
        raise ArithmeticError(f"composition of {f} and {g} produced a non-integral form")
    return reduce(BQF(a3, b3, num // (4 * a3)))


def form_power(f: BQF, e: int) -> BQF:
    result = principal_form(f.D)
    base = f
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def reduced_forms_imag(D: int) -> list[BQF]:
    """All primitive reduced forms of discriminant D < 0, sorted by (a, b)."""
    if D >= 0:
        raise InvalidDiscriminant(f"{D} is not negative")
    _check_disc(D)
    out = []
    for b in range(D % 2, isqrt(-D // 3) + 1, 2):
        N = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= N:
            if N % a == 0:
                c = N // a
                if gcd(gcd(a, b), c) == 1:
                    out.append(BQF(a, b, c))
                    if not (b == 0 or a == b or a == c):
                        out.append(BQF(a, -b, c))
            a += 1
    return sorted(out, key=lambda f: (f.a, f.b))


def form_order(f: BQF) -> int:
    e = principal_form(f.D)
    g, k = f, 1
    while g != e:
        g = compose(g, f)
        k += 1
    return k


def class_number_imag(D: int) -> int:
    """Class number of the negative fundamental discriminant D by form counting."""
    if D >= 0 or not is_fundamental(D):
        raise InvalidDiscriminant(f"{D} is not a negative fundamental discriminant")
    return kernels.count_reduced_forms(D)


def class_group_imag(D: int) -> tuple[int, AbelianStructure]:
    """Class number and invariant factors of the class group of discriminant D < 0."""
    if D >= 0 or not is_fundamental(D):
        raise InvalidDiscriminant(f"{D} is not a negative fundamental discriminant")
    forms = reduced_forms_imag(D)
    h = len(forms)
    e = principal_form(D)
    # walk each cyclic subgroup once: f^k has order o / gcd(k, o)
    orders: dict[BQF, int] = {}
    for f in forms:
        if f in orders:
            continue
        powers, g = [f], f
        while g != e:
            g = compose(g, f)
            powers.append(g)
        o = len(powers)
        for k, x in enumerate(powers, start=1):
            orders.setdefault(x, o // gcd(k, o))
    structure = structure_from_orders(orders.values())
    if structure.order != h:
        raise ArithmeticError(f"group structure {structure} inconsistent with h={h}")
    return h, structure


def class_number_imag_analytic(D: int) -> int:
    if D >= 0 or not is_fundamental(D):
        raise InvalidDiscriminant(f"{D} is not a negative fundamental discriminant")
    return kernels.class_number_analytic(D)


@dataclass(frozen=True)
class FundUnit:
    """epsilon = x + y*sqrt(m) > 1, the fundamental unit of the maximal order."""

    m: int
    x: Fraction
    y: Fraction
    norm: int
    period: int

    def check(self) -> bool:
        return self.x * self.x - self.m * self.y * self.y == self.norm

    @property
    def digits(self) -> int:
        """Decimal digits of the largest numerator in the coordinates."""
        return max(len(str(abs(self.x.numerator))), len(str(abs(self.y.numerator))))

    def log(self) -> float:
        # log(x + y sqrt m) = log(2x - norm/(x + y sqrt m)) ~ log(2x) for large units
        if self.x.numerator.bit_length() > 900:
            return math.log(2 * self.x.numerator) - math.log(self.x.denominator)
        return math.log(float(self.x) + float(self.y) * math.sqrt(self.m))


def fundamental_unit(m: int) -> FundUnit:
    """Fundamental unit of Q(sqrt(m)) from the continued fraction of its order generator."""
    if m <= 1 or not is_squarefree(m):
        raise NotSquarefree(f"{m} is not a squarefree integer > 1")
    s = isqrt(m)
    half = m % 4 == 1
    # complete quotients (P + sqrt(m)) / Q
    P, Q = (1, 2) if half else (0, 1)
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    first = None
    period = 0
    for k in range(CF_STEP_CAP):
        a = (P + s) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        P = a * Q - P
        Q = (m - P * P) // Q
        if first is None:
            first = (P, Q)
        elif (P, Q) == first:
            period = k
            break
    else:
        raise ArithmeticError(f"continued fraction period for {m} exceeds {CF_STEP_CAP}")
    # the convergent just before the period closes gives the unit
    p, q = p_prev, q_prev
    if half:
        x, y = Fraction(2 * p - q, 2), Fraction(q, 2)
    else:
        x, y = Fraction(p), Fraction(q)
    norm = -1 if period % 2 else 1
    unit = FundUnit(m, x, y, norm, period)
    if not unit.check():
        raise ArithmeticError(f"continued fraction unit for {m} has the wrong norm")
    return unit


def narrow_class_number_real(m: int) -> int:
    return kernels.count_form_cycles(fundamental_discriminant(m))


def class_number_real(m: int) -> int:
    """Wide class number of Q(sqrt(m)), m > 1 squarefree."""
    if m <= 1:
        raise NotSquarefree(f"{m} is not > 1")
    h_plus = narrow_class_number_real(m)
    if fundamental_unit(m).norm == -1:
        return h_plus
    if h_plus % 2:
        raise ArithmeticError(f"odd narrow class number {h_plus} with a norm +1 unit")
    return h_plus // 2


def class_number_real_analytic(m: int) -> float:
    """Floating evaluation of h = -(1 / 2 log eps) sum chi(a) log sin(pi a / D)."""
    D = fundamental_discriminant(m)
    return -kernels.real_log_sin_sum(D) / (2 * fundamental_unit(m).log())


def two_part(h: int) -> int:
    """Exponent of the largest power of 2 dividing h."""
    if h < 1:
        raise ValueError("h must be positive")
    return two_adic_valuation(h)


def kuroda_rhs(d: int, kappa: int, v: int, q: int, h1: int, h2: int, h3: int, hk: int) -> Fraction:
    """Right-hand side 2^(d - kappa - 2 - v) q h1 h2 h3 / hk^2 of Kuroda's formula."""
    return Fraction(2) ** (d - kappa - 2 - v) * q * h1 * h2 * h3 / Fraction(hk) ** 2
