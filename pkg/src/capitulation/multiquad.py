"""Exact square tests in F = Q(sqrt 2, sqrt p) and the unit-index case split."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import PrecisionExhausted, ZeroInput
from .numcore import require_prime_1_mod_8
from .quadfield import FundUnit, fundamental_unit

# units whose coordinates exceed this many digits are only handled by their norm
HEIGHT_CAP_DIGITS = 200
_GUARD_DIGITS = 40
_MAX_REFINEMENTS = 4


def _frac(x) -> Fraction:
    f = Fraction(x)
    if 4 % f.denominator:
        raise ValueError(f"coordinate {f} has a denominator not dividing 4")
    return f


@dataclass(frozen=True)
class MultiQuadElem:
    """x0 + x1 sqrt2 + x2 sqrtp + x3 sqrt(2p)."""

    p: int
    x0: Fraction
    x1: Fraction = Fraction(0)
    x2: Fraction = Fraction(0)
    x3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("x0", "x1", "x2", "x3"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x0, self.x1, self.x2, self.x3)

    def __mul__(self, other: MultiQuadElem) -> MultiQuadElem:
        if other.p != self.p:
            raise ValueError("elements of different fields")
        p = self.p
        a0, a1, a2, a3 = self.coords
        b0, b1, b2, b3 = other.coords
        return MultiQuadElem(
            p,
            a0 * b0 + 2 * a1 * b1 + p * a2 * b2 + 2 * p * a3 * b3,
            a0 * b1 + a1 * b0 + p * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + 2 * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    def is_zero(self) -> bool:
        return not any(self.coords)

    def height_digits(self) -> int:
        return max(max(len(str(abs(c.numerator))), len(str(c.denominator))) for c in self.coords)

    def embeddings(self, dps: int) -> list:
        """Values under (sqrt2, sqrtp) -> (e2 sqrt2, ep sqrtp) for e2, ep in (+1, -1)."""
        with mpmath.workdps(dps):
            r2, rp = mpmath.sqrt(2), mpmath.sqrt(self.p)
            c = [mpmath.mpf(x.numerator) / x.denominator for x in self.coords]
            return [c[0] + e2 * c[1] * r2 + ep * c[2] * rp + e2 * ep * c[3] * r2 * rp
                    for e2, ep in _SIGNS]

    @classmethod
    def from_sqrt2(cls, p: int, a, b) -> MultiQuadElem:
        return cls(p, a, b, 0, 0)

    @classmethod
    def from_unit(cls, p: int, unit: FundUnit) -> MultiQuadElem:
        """Embed a unit of Q(sqrt 2), Q(sqrt p) or Q(sqrt 2p) into F."""
        if unit.m == 2:
            return cls(p, unit.x, unit.y, 0, 0)
        if unit.m == p:
            return cls(p, unit.x, 0, unit.y, 0)
        if unit.m == 2 * p:
            return cls(p, unit.x, 0, 0, unit.y)
        raise ValueError(f"Q(sqrt {unit.m}) is not a subfield of Q(sqrt 2, sqrt {p})")


_SIGNS = ((1, 1), (-1, 1), (1, -1), (-1, -1))


def _round_quarter(v, tol_accept, tol_reject):
    """Nearest quarter-integer to v, None if clearly not one, or 'unsure'."""
    scaled = 4 * v
    nearest = int(mpmath.nint(scaled))
    gap = abs(scaled - nearest)
    if gap < tol_accept:
        return Fraction(nearest, 4)
    if gap > tol_reject:
        return None
    return "unsure"


def is_square_in_F(u: MultiQuadElem, max_digits: int | None = None) -> tuple[bool, MultiQuadElem | None]:
    """Decide whether u is a square in F, returning a root when it is.

    A root y has sigma(y) = +-sqrt(sigma(u)) at each of the four real
    embeddings; each sign pattern gives y's coordinates by a 4x4 Hadamard
    inversion, and rounded candidates are confirmed by exact squaring.
    """
    if u.is_zero():
        raise ZeroInput("zero")
    digits = u.height_digits()
    cap = max_digits if max_digits is not None else 3 * HEIGHT_CAP_DIGITS
    if digits > cap:
        raise PrecisionExhausted(f"height {digits} digits exceeds cap {cap}")
    # conjugates can be as small as 10^-digits, so cancellation costs ~digits
    dps = 2 * digits + _GUARD_DIGITS
    for _ in range(_MAX_REFINEMENTS):
        verdict = _square_attempt(u, dps)
        if verdict != "unsure":
            return verdict
        dps *= 2
    raise PrecisionExhausted(f"rounding still ambiguous at {dps} digits")


def _square_attempt(u: MultiQuadElem, dps: int):
    with mpmath.workdps(dps):
        vals = u.embeddings(dps)
        if any(v <= 0 for v in vals):
            return (False, None)
        roots = [mpmath.sqrt(v) for v in vals]
        r2, rp = mpmath.sqrt(2), mpmath.sqrt(u.p)
        tol_accept = mpmath.mpf(10) ** (-(dps // 2))
        tol_reject = mpmath.mpf(10) ** (-8)
        unsure = False
        # first root's sign is fixed: y and -y are both roots
        for signs in itertools.product((1, -1), repeat=3):
            w = [roots[0]] + [s * r for s, r in zip(signs, roots[1:])]
            coords = [
                sum(w) / 4,
                sum(e2 * x for (e2, _), x in zip(_SIGNS, w)) / (4 * r2),
                sum(ep * x for (_, ep), x in zip(_SIGNS, w)) / (4 * rp),
                sum(e2 * ep * x for (e2, ep), x in zip(_SIGNS, w)) / (4 * r2 * rp),
            ]
            rounded = [_round_quarter(c, tol_accept, tol_reject) for c in coords]
            if any(r is None for r in rounded):
                continue
            if any(r == "unsure" for r in rounded):
                unsure = True
                continue
            y = MultiQuadElem(u.p, *rounded)
            if y * y == u:
                return (True, y)
        return "unsure" if unsure else (False, None)


@dataclass(frozen=True)
class SFUCase:
    p: int
    norm_eps2p: int
    product_square: bool | None
    eps2p_square: bool | None
    root: MultiQuadElem | None
    norm_only: bool

    @property
    def label(self) -> str:
        return "norm-1" if self.norm_eps2p == -1 else "norm+1"

    @property
    def confirmed(self) -> bool:
        """The square test agrees with the norm criterion and the two tests exclude each other."""
        if self.norm_only:
            return False
        if self.norm_eps2p == -1:
            return bool(self.product_square) and not self.eps2p_square
        return bool(self.eps2p_square) and not self.product_square


@lru_cache(maxsize=4096)
def sfu_case(p: int) -> SFUCase:
    """Which of {sqrt(e1 e2 e3), e2, e3} or its norm +1 analogue is a unit system of F."""
    require_prime_1_mod_8(p)
    e1, e2, e3 = fundamental_unit(p), fundamental_unit(2), fundamental_unit(2 * p)
    norm = e3.norm
    if max(e1.digits, e3.digits) > HEIGHT_CAP_DIGITS:
        return SFUCase(p, norm, None, None, None, True)
    E1, E2, E3 = (MultiQuadElem.from_unit(p, e) for e in (e1, e2, e3))
    try:
        prod_sq, prod_root = is_square_in_F(E1 * E2 * E3)
        e3_sq, e3_root = is_square_in_F(E3)
    except PrecisionExhausted:
        return SFUCase(p, norm, None, None, None, True)
    root = prod_root if norm == -1 else e3_root
    return SFUCase(p, norm, prod_sq, e3_sq, root, False)


def q_index_k(p: int) -> int:
    """Unit index Q_k of k = Q(sqrt 2p, sqrt -p): 2 iff eps_2p has norm +1."""
    require_prime_1_mod_8(p)
    return 2 if fundamental_unit(2 * p).norm == 1 else 1


def capitulation_count_kstar(p: int) -> int:
    """Number of classes of the 2-class group of k that capitulate in the genus field."""
    require_prime_1_mod_8(p)
    return 2 if fundamental_unit(2 * p).norm == -1 else 4
