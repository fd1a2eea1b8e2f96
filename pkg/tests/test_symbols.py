import pytest
from hypothesis import given, settings, strategies as st

from capitulation.errors import DivisibleByPi, ZeroInput
from capitulation.numcore import jacobi, quartic_2_over_p, quartic_p_over_2
from capitulation.symbols import (EPS0, TWO_PLUS_SQRT2, QuadInt2, cyclo8_unit_symbols,
                                  embedding_for, hilbert_symbol_odd, infinite_place_signs,
                                  pi_symbol_identities, norm_group_units, pi_mod4_check,
                                  residue_symbol_at, residue_symbol_sqrt2, s_sign,
                                  split_in_zsqrt2)

import oracles

PRIMES = oracles.primes_1_mod_8(17, 5000)
PI41 = QuadInt2(13, 8)


@pytest.mark.parametrize("p, pi", [(41, QuadInt2(13, 8)), (17, QuadInt2(7, 4))])
def test_split_examples(p, pi):
    assert split_in_zsqrt2(p) == pi
    assert pi.norm() == p


def test_embedding_t_is_root_of_2():
    for p in PRIMES:
        emb = embedding_for(split_in_zsqrt2(p))
        assert (emb.t * emb.t - 2) % p == 0
        assert emb.image(split_in_zsqrt2(p)) == 0


def test_residue_symbol_examples():
    assert embedding_for(PI41).t == 24
    assert residue_symbol_sqrt2(QuadInt2(1, 0), PI41) == 1
    assert residue_symbol_sqrt2(EPS0, PI41) == 1
    assert residue_symbol_sqrt2(TWO_PLUS_SQRT2, PI41) == -1
    # direct Euler criterion at t = 24
    assert pow(25, 20, 41) == 1 and pow(26, 20, 41) == 40


def test_residue_symbol_divisible():
    with pytest.raises(DivisibleByPi):
        residue_symbol_sqrt2(PI41 * QuadInt2(3, 1), PI41)


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from(PRIMES[:60]))
@settings(max_examples=200)
def test_symbols_at_conjugates_multiply_to_jacobi_of_norm(a, b, p):
    alpha = QuadInt2(a, b)
    if alpha.norm() % p == 0:
        return
    pi = split_in_zsqrt2(p)
    prod = residue_symbol_sqrt2(alpha, pi) * residue_symbol_sqrt2(alpha, pi.conj())
    assert prod == jacobi(alpha.norm(), p)


def test_inert_symbol_rational_is_one():
    # rational integers are squares in F_{q^2}
    for q in (3, 5, 11, 13):
        for a in range(1, q):
            assert residue_symbol_at(QuadInt2(a, 0), QuadInt2(q, 0)) == 1


def test_hilbert_symbol_odd_trivial_exponents():
    assert hilbert_symbol_odd(EPS0, QuadInt2(3, 1), PI41, 0, 0) == 1


def test_hilbert_symbol_at_pi():
    # v(-pi) = 1, v(eps0) = 0 leaves [eps0 / pi]
    assert hilbert_symbol_odd(-PI41, EPS0, PI41, 1, 0) == residue_symbol_sqrt2(EPS0, PI41) == 1


def test_infinite_place_signs():
    assert infinite_place_signs(EPS0) == (1, -1)
    assert infinite_place_signs(QuadInt2(3, 0)) == (1, 1)
    # 169 > 128, so -13 + 8 sqrt 2 is negative too
    assert infinite_place_signs(-PI41) == (-1, -1)
    assert s_sign(EPS0) == -1
    with pytest.raises(ZeroInput):
        infinite_place_signs(QuadInt2(0, 0))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_infinite_signs_match_float(a, b):
    if a == 0 and b == 0:
        return
    x1, x2 = a + b * 2**0.5, a - b * 2**0.5
    if min(abs(x1), abs(x2)) < 1e-3:
        return
    assert infinite_place_signs(QuadInt2(a, b)) == ((x1 > 0) - (x1 < 0), (x2 > 0) - (x2 < 0))


@pytest.mark.parametrize("p", [41, 17])
def test_pi_symbol_identities_examples(p):
    r = pi_symbol_identities(p)
    assert r.all_ok
    if p == 17:
        assert r.eps0_symbol == quartic_2_over_p(17) * quartic_p_over_2(17) == -1


def test_pi_symbol_identities_sweep():
    for p in PRIMES:
        assert pi_symbol_identities(p).all_ok, p


def test_pi_mod4_sweep():
    for p in PRIMES:
        assert pi_mod4_check(p)[1]


def test_cyclo8_examples():
    t17 = cyclo8_unit_symbols(17)
    row = next(r for r in t17.rows if r.z == 2)
    assert pow(2, 8, 17) == 1 and row.zeta8 == 1 == quartic_p_over_2(17)
    assert cyclo8_unit_symbols(41).expected == (-1, 1, -1)
    assert cyclo8_unit_symbols(41).consistent


def test_cyclo8_sweep():
    for p in PRIMES:
        t = cyclo8_unit_symbols(p)
        assert len(t.rows) == 4 and t.consistent, p


@pytest.mark.parametrize("p, amb, rank", [(113, 8, 3), (41, 4, 2), (17, 4, 2)])
def test_norm_units(p, amb, rank):
    nu = norm_group_units(p)
    assert (nu.ambiguous, nu.rank) == (amb, rank)
