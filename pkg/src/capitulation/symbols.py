"""Quadratic residue and Hilbert symbols over Q(sqrt 2) and Q(zeta_8).

Every symbol is evaluated in a residue field F_p through an explicit
embedding (sqrt 2 -> t with t^2 = 2, or zeta_8 -> z of order 8), so each
one costs a single modular exponentiation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadFactorization, DivisibleByPi, InconsistentSymbols, ZeroInput
from .numcore import (is_prime, jacobi, mod_pow, primitive_eighth_roots,
                      quartic_2_over_p, quartic_p_over_2, require_prime_1_mod_8)
from .represent import pell_rep


@dataclass(frozen=True)
class QuadInt2:
    """a + b*sqrt(2)."""

    a: int
    b: int

    def norm(self) -> int:
        return self.a * self.a - 2 * self.b * self.b

    def conj(self) -> QuadInt2:
        return QuadInt2(self.a, -self.b)

    def __mul__(self, other: QuadInt2) -> QuadInt2:
        return QuadInt2(self.a * other.a + 2 * self.b * other.b,
                        self.a * other.b + self.b * other.a)

    def __neg__(self) -> QuadInt2:
        return QuadInt2(-self.a, -self.b)

    def __pow__(self, e: int) -> QuadInt2:
        out = QuadInt2(1, 0)
        for _ in range(e):
            out = out * self
        return out

    def exact_div(self, other: QuadInt2) -> QuadInt2 | None:
        """self / other if the quotient lies in Z[sqrt 2], else None."""
        n = other.norm()
        num = self * other.conj()
        if num.a % n or num.b % n:
            return None
        return QuadInt2(num.a // n, num.b // n)

    def __str__(self) -> str:
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt2"


EPS0 = QuadInt2(1, 1)
TWO_PLUS_SQRT2 = QuadInt2(2, 1)


@dataclass(frozen=True)
class ResidueEmbedding:
    """Reduction Z[sqrt 2] -> F_p sending sqrt 2 to t."""

    p: int
    t: int

    def __post_init__(self):
        if (self.t * self.t - 2) % self.p:
            raise ValueError(f"{self.t}^2 is not 2 mod {self.p}")

    def image(self, alpha: QuadInt2) -> int:
        return (alpha.a + alpha.b * self.t) % self.p

    def symbol(self, alpha: QuadInt2) -> int:
        x = self.image(alpha)
        if x == 0:
            raise DivisibleByPi(f"{alpha} vanishes mod the prime above {self.p}")
        return 1 if mod_pow(x, (self.p - 1) // 2, self.p) == 1 else -1


def split_in_zsqrt2(p: int) -> QuadInt2:
    """pi = c + 4d sqrt 2 of norm p, from the minimal solution of c^2 - 32 d^2 = p."""
    rep = pell_rep(p)
    return QuadInt2(rep.c, 4 * rep.d)


def embedding_for(pi: QuadInt2) -> ResidueEmbedding:
    """Embedding whose kernel is the prime ideal (pi); N(pi) must be +-p, p prime."""
    p = abs(pi.norm())
    if not is_prime(p) or p == 2 or pi.b % p == 0:
        raise ValueError(f"{pi} does not generate a split odd prime")
    t = (-pi.a * pow(pi.b, -1, p)) % p
    return ResidueEmbedding(p, t)


def residue_symbol_sqrt2(alpha: QuadInt2, pi: QuadInt2) -> int:
    """[alpha / (pi)] for a split prime pi of odd norm."""
    return embedding_for(pi).symbol(alpha)


def _inert_symbol(alpha: QuadInt2, q: int) -> int:
    # residue field F_q[sqrt 2] of size q^2
    a, b = alpha.a % q, alpha.b % q
    if a == 0 and b == 0:
        raise DivisibleByPi(f"{alpha} is divisible by {q}")
    e = (q * q - 1) // 2
    ra, rb = 1, 0
    while e:
        if e & 1:
            ra, rb = (ra * a + 2 * rb * b) % q, (ra * b + rb * a) % q
        a, b = (a * a + 2 * b * b) % q, (2 * a * b) % q
        e >>= 1
    if rb != 0 or ra not in (1, q - 1):
        raise ArithmeticError(f"Euler criterion failed in F_{q}^2")
    return 1 if ra == 1 else -1


def residue_symbol_at(alpha: QuadInt2, l: QuadInt2) -> int:
    """[alpha / (l)] for any odd prime l of Z[sqrt 2], split or inert."""
    n = abs(l.norm())
    if l.b == 0 and is_prime(abs(l.a)) and abs(l.a) % 8 in (3, 5):
        return _inert_symbol(alpha, abs(l.a))
    if is_prime(n) and n % 8 in (1, 7):
        return residue_symbol_sqrt2(alpha, l)
    raise ValueError(f"{l} is not an odd prime of Z[sqrt 2]")


def _strip(x: QuadInt2, l: QuadInt2, v: int) -> QuadInt2:
    for _ in range(v):
        nxt = x.exact_div(l)
        if nxt is None:
            raise BadFactorization(f"{l}^{v} does not divide the argument")
        x = nxt
    if x.exact_div(l) is not None:
        raise BadFactorization(f"valuation at {l} exceeds {v}")
    return x


def hilbert_symbol_odd(a: QuadInt2, b: QuadInt2, l: QuadInt2, v_a: int, v_b: int) -> int:
    """Hilbert symbol (a, b / l) at an odd prime l, given v_l(a) and v_l(b).

    With a = l^v_a u and b = l^v_b v this is
    [-1/l]^(v_a v_b) [u/l]^v_b [v/l]^v_a.
    """
    u = _strip(a, l, v_a)
    v = _strip(b, l, v_b)
    out = 1
    if (v_a * v_b) % 2:
        out *= residue_symbol_at(QuadInt2(-1, 0), l)
    if v_b % 2:
        out *= residue_symbol_at(u, l)
    if v_a % 2:
        out *= residue_symbol_at(v, l)
    return out


def _sign_real(a: int, b: int) -> int:
    """Sign of a + b sqrt 2 by exact comparison of a^2 with 2 b^2."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0 or (a > 0) == (b > 0):
        return 1 if (a > 0 or (a == 0 and b > 0)) else -1
    return (1 if a > 0 else -1) if a * a > 2 * b * b else (1 if b > 0 else -1)


def infinite_place_signs(u: QuadInt2) -> tuple[int, int]:
    """Signs of u under sqrt 2 -> +sqrt 2 and sqrt 2 -> -sqrt 2."""
    if u.a == 0 and u.b == 0:
        raise ZeroInput("zero has no sign")
    return _sign_real(u.a, u.b), _sign_real(u.a, -u.b)


def s_sign(u: QuadInt2) -> int:
    """s(u) = u u' / |u u'|, the sign of the norm."""
    n = u.norm()
    if n == 0:
        raise ZeroInput("zero has no sign")
    return 1 if n > 0 else -1


def hilbert_infinite(u: QuadInt2, v: QuadInt2) -> tuple[int, int]:
    """Hilbert symbols at the two real places: -1 exactly when both are negative."""
    su, sv = infinite_place_signs(u), infinite_place_signs(v)
    return tuple(-1 if (x < 0 and y < 0) else 1 for x, y in zip(su, sv))


@dataclass(frozen=True)
class PiSymbolIdentities:
    p: int
    pi: QuadInt2
    t: int
    eps0_symbol: int
    two_plus_sqrt2_symbol: int
    dyadic_eps0: int
    dyadic_two_plus_sqrt2: int
    eps0_matches_quartic: bool
    two_plus_sqrt2_matches_quartic: bool
    product_formula: bool
    decomposition: bool

    @property
    def all_ok(self) -> bool:
        return (self.eps0_matches_quartic and self.two_plus_sqrt2_matches_quartic
                and self.product_formula and self.decomposition)


def _dyadic_from_product(u: QuadInt2, pi: QuadInt2, at_pi: int) -> tuple[int, bool]:
    """Symbol (-pi, u) at sqrt 2 forced by the product formula.

    Places other than pi, sqrt 2 and infinity contribute 1 since -pi and
    the unit u are both units there.  Also reports whether the real
    places obey (-pi, u)_inf = s(u) (-pi, u)_inf'.
    """
    inf1, inf2 = hilbert_infinite(-pi, u)
    return inf1 * inf2 * at_pi, inf1 == s_sign(u) * inf2


def pi_symbol_identities(p: int) -> PiSymbolIdentities:
    require_prime_1_mod_8(p)
    pi = split_in_zsqrt2(p)
    emb = embedding_for(pi)
    s24, sp2 = quartic_2_over_p(p), quartic_p_over_2(p)
    e_sym = emb.symbol(EPS0)
    t_sym = emb.symbol(TWO_PLUS_SQRT2)
    dy_e, real_e = _dyadic_from_product(EPS0, pi, e_sym)
    dy_t, real_t = _dyadic_from_product(TWO_PLUS_SQRT2, pi, t_sym)
    c, d = pi.a, pi.b // 4
    decomposition = e_sym == jacobi(d, p) * jacobi(4 * d - c, p)
    return PiSymbolIdentities(
        p=p, pi=pi, t=emb.t,
        eps0_symbol=e_sym, two_plus_sqrt2_symbol=t_sym,
        dyadic_eps0=dy_e, dyadic_two_plus_sqrt2=dy_t,
        eps0_matches_quartic=e_sym == s24 * sp2,
        two_plus_sqrt2_matches_quartic=t_sym == sp2,
        product_formula=real_e and real_t and dy_e == -e_sym and dy_t == t_sym,
        decomposition=decomposition,
    )


def pi_mod4_check(p: int) -> tuple[int, bool]:
    """(-1/c) for p = c^2 - 32 d^2, compared with (2/p)_4 (p/2)_4.

    This decides whether Q(sqrt(-pi)) / Q(sqrt 2) is unramified at sqrt 2.
    """
    c = pell_rep(p).c
    val = jacobi(-1, c)
    return val, val == quartic_2_over_p(p) * quartic_p_over_2(p)


@dataclass(frozen=True)
class Cyclo8Row:
    z: int
    zeta8: int
    eps0: int
    eps0_zeta8: int

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.zeta8, self.eps0, self.eps0_zeta8)


@dataclass(frozen=True)
class Cyclo8Symbols:
    p: int
    expected: tuple[int, int, int]
    rows: tuple[Cyclo8Row, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return all(r.triple == self.expected for r in self.rows)


def _euler(x: int, p: int) -> int:
    v = mod_pow(x % p, (p - 1) // 2, p)
    if v == 1:
        return 1
    if v == p - 1:
        return -1
    raise ArithmeticError(f"{x} vanishes mod {p}")


def cyclo8_unit_symbols(p: int) -> Cyclo8Symbols:
    """Symbols of zeta_8, eps0 and eps0*zeta_8 at each prime of Q(zeta_8) above p."""
    require_prime_1_mod_8(p)
    s24, sp2 = quartic_2_over_p(p), quartic_p_over_2(p)
    rows = []
    for z in primitive_eighth_roots(p):
        zi = pow(z, -1, p)
        e0 = (1 + z + zi) % p
        rows.append(Cyclo8Row(z, _euler(z, p), _euler(e0, p), _euler(z * e0, p)))
    return Cyclo8Symbols(p, (sp2, sp2 * s24, s24), tuple(rows))


# unit groups E_F cap N per (sym_2p4, sym_p24); "i" and "eps0^2" are always norms
NORM_UNIT_ROWS = {
    (1, 1): ("zeta8", "eps0"),
    (-1, -1): ("i", "eps0"),
    (-1, 1): ("zeta8", "eps0^2"),
    (1, -1): ("i", "eps0*zeta8"),
}


@dataclass(frozen=True)
class NormUnits:
    p: int
    generators: tuple[str, str]
    index: int
    ambiguous: int
    rank: int

    @property
    def label(self) -> str:
        return "<" + ", ".join(self.generators) + ">"


def norm_group_units(p: int) -> NormUnits:
    """Units of Q(zeta_8) that are norms from Q(zeta_8, sqrt p), and the ambiguous class count."""
    table = cyclo8_unit_symbols(p)
    if not table.consistent:
        raise InconsistentSymbols(f"unit symbols depend on the prime above {p}")
    zeta, eps, eps_zeta = table.rows[0].triple
    s24, sp2 = quartic_2_over_p(p), quartic_p_over_2(p)
    gens = NORM_UNIT_ROWS[(s24, sp2)]
    values = {"zeta8": zeta, "eps0": eps, "eps0*zeta8": eps_zeta, "i": 1, "eps0^2": 1}
    # a unit is a norm iff its symbol is +1 at the primes above p
    if any(values[g] != 1 for g in gens):
        raise InconsistentSymbols(f"case row {gens} contradicts the symbols for p={p}")
    norms = 1 + sum(1 for v in (zeta, eps, eps_zeta) if v == 1)
    expected_norms = 4 if gens == ("zeta8", "eps0") else 2
    if norms != expected_norms:
        raise InconsistentSymbols(f"{norms} norm classes for p={p}, case row says {expected_norms}")
    index = 4 // norms
    ambiguous = 8 // index
    return NormUnits(p, gens, index, ambiguous, ambiguous.bit_length() - 1)
