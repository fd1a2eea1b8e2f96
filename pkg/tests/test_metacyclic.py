import random

import pytest
from hypothesis import given, settings, strategies as st

from capitulation.errors import (AbelianGroup, BadTag, MixedPresentations, NotMetacyclic,
                                 NotNormal, TooLarge)
from capitulation.metacyclic import (SUBGROUP_TAGS, CayleyOracle, GroupElement, Presentation,
                                     abelianization, brute_force_oracle, classify,
                                     compare_with_oracle, derived_subgroup, group_for,
                                     kernel_sizes, named_subgroup, transfer, transfer_kernel)

import oracles

G3 = Presentation.tower_group(3)  # n=3, m=2, s=2, k=1, q=3


def el(i, j, pres=G3):
    return GroupElement(i % (1 << pres.n), j % (1 << pres.m), pres)


def test_presentation_validation():
    assert G3.q == 3 and G3.order == 32 and G3.s == 2 and G3.k == 1
    with pytest.raises(ValueError):
        Presentation(3, 2, 2)
    with pytest.raises(ValueError):
        Presentation(4, 1, 3)  # 3^2 = 9 is not 1 mod 16


def test_twisted_k_normalisation():
    for n in range(3, 9):
        assert Presentation.twisted(n, 2, n - 1, 1) == Presentation.twisted(n, 2, n - 1, 3)


def test_mul_examples():
    e = el(0, 0)
    y = el(5, 3)
    assert e * y == y
    # b a = a^(q^-1) b, q^-1 = 3 mod 8
    assert el(0, 1) * el(1, 0) == el(3, 1)


def test_mul_mixed_presentations():
    with pytest.raises(MixedPresentations):
        el(1, 0) * el(1, 0, Presentation.tower_group(4))


def test_derived_subgroup_examples():
    D = derived_subgroup(G3)
    grp = group_for(G3)
    assert D.order == 4 and D.elements == grp.closure([(2, 0)])
    assert grp.commutator(grp.a, grp.b) in D.elements
    abelian = Presentation(1, 2, 1)
    assert derived_subgroup(abelian).order == 1


def test_abelianization_examples():
    assert abelianization(G3).divisors == (2, 4)
    assert abelianization(Presentation(1, 2, 1)).divisors == (2, 4)
    for n in range(3, 9):
        assert abelianization(Presentation.tower_group(n)).divisors == (2, 4)


@pytest.mark.parametrize("tag, order", [("H32", 16), ("H34", 8), ("H14", 8), ("H12", 16),
                                        ("H22", 16), ("H24", 8)])
def test_named_subgroups(tag, order):
    assert named_subgroup(G3, tag).order == order


def test_bad_tag():
    with pytest.raises(BadTag):
        named_subgroup(G3, "H99")


def test_transfer_closed_forms():
    grp = group_for(G3)
    H32 = grp.named_subgroup("H32")
    labels32 = grp.coset_labels(grp.derived_of(H32).elements)
    assert grp.transfer(H32, (0, 2)) == labels32[grp.identity]
    H12 = grp.named_subgroup("H12")
    H12d = grp.derived_of(H12)
    assert H12d.elements == grp.closure([(4, 0)])
    image = grp.transfer(H12, grp.a)
    assert image == grp.coset_labels(H12d.elements)[(2, 0)]
    assert image != grp.coset_labels(H12d.elements)[grp.identity]
    assert grp.transfer(H12, (0, 2)) == grp.coset_labels(H12d.elements)[grp.identity]


@pytest.mark.parametrize("n", range(3, 9))
def test_transfer_to_index_4_kills_generators(n):
    pres = Presentation.tower_group(n)
    grp = group_for(pres)
    for tag in ("H14", "H24", "H34"):
        H = grp.named_subgroup(tag)
        trivial = grp.coset_labels(grp.derived_of(H).elements)[grp.identity]
        assert grp.transfer(H, grp.a) == trivial
        assert grp.transfer(H, grp.b) == trivial


def test_transfer_wrappers():
    H = named_subgroup(G3, "H32")
    assert transfer(G3, H, el(0, 2)) == el(0, 0)
    ker = transfer_kernel(G3, H)
    assert len(ker) == 2 and el(0, 0) in ker


def test_transfer_not_normal():
    grp = group_for(G3)
    sub = grp.subgroup([(0, 1)], "b")
    assert not grp.is_normal(sub)
    with pytest.raises(NotNormal):
        grp.transfer(sub, grp.a)


def test_kernel_examples():
    grp = group_for(G3)
    assert kernel_sizes(G3) == dict(zip(SUBGROUP_TAGS, (2, 2, 2, 8, 8, 8)))
    labels = grp.coset_labels(grp.derived.elements)
    ker = grp.transfer_kernel(grp.named_subgroup("H32"))
    assert sorted(labels[g] for g in ker) == sorted({labels[(0, 0)], labels[(0, 2)]})


# the permutation oracle is quadratic in |G|; n = 6 is left to the Cayley-table oracle
@pytest.mark.parametrize("n", range(3, 6))
def test_kernels_match_permutation_oracle(n):
    pres = Presentation.tower_group(n)
    assert kernel_sizes(pres) == oracles.perm_transfer_kernel_sizes(n, 2, pres.q)


@pytest.mark.parametrize("n", range(3, 7))
def test_type1_kernel_at_h32(n):
    pres = Presentation(n, 2, -1)
    assert kernel_sizes(pres)["H32"] == 4
    if n < 6:
        assert oracles.perm_transfer_kernel_sizes(n, 2, pres.q)["H32"] == 4


def test_classify_examples():
    c = classify(G3)
    assert (c.type, c.modular, c.s) == (3, False, 2)
    assert classify(Presentation(3, 2, -1)).type == 1
    assert classify(Presentation(2, 2, -1)).modular
    assert classify(Presentation(4, 2, -1, 8)).type == 2
    assert classify(Presentation.twisted(4, 2, 3, 1, 8)).type == 4


def test_classify_errors():
    with pytest.raises(AbelianGroup):
        classify(Presentation(3, 2, 1))
    with pytest.raises(NotMetacyclic):
        classify(Presentation(3, 2, 5))  # q = 5 = -1 + 3*2 has s = 1


@pytest.mark.parametrize("n", range(3, 9))
def test_group_invariants(n):
    pres = Presentation.tower_group(n)
    grp = group_for(pres)
    assert grp.element_order(grp.a) == 1 << n
    assert grp.element_order(grp.b) == 4
    b2 = grp.power(grp.b, 2)
    assert grp.mul(grp.a, b2) == grp.mul(b2, grp.a)
    elems = grp.elements()
    if n <= 4:
        triples = ((x, y, z) for x in elems for y in elems for z in elems)
    else:
        rng = random.Random(n)
        triples = ((rng.choice(elems), rng.choice(elems), rng.choice(elems)) for _ in range(3000))
    for x, y, z in triples:
        assert grp.mul(grp.mul(x, y), z) == grp.mul(x, grp.mul(y, z))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_transfer_is_homomorphism_and_rep_independent(n):
    grp = group_for(Presentation.tower_group(n))
    rng = random.Random(7)
    reps = grp.coset_reps(grp.derived.elements)
    for tag in SUBGROUP_TAGS:
        H = grp.named_subgroup(tag)
        Hd = grp.derived_of(H)
        labels = grp.coset_labels(Hd.elements)
        for g in reps:
            assert grp.transfer(H, g, reps="random", rng=rng) == grp.transfer(H, g)
            for h in reps:
                lhs = grp.transfer(H, grp.mul(g, h))
                rhs = labels[grp.mul(grp.transfer(H, g), grp.transfer(H, h))]
                assert lhs == rhs


def test_oracle_basics():
    orc = brute_force_oracle(G3)
    assert orc.order == 32 and orc.is_latin_square()
    D = orc.derived_of(frozenset(range(orc.order)))
    assert D == orc.closure([orc.power(orc.a, 2)])


@pytest.mark.parametrize("pres", [Presentation.tower_group(n) for n in range(3, 7)]
                         + [Presentation(n, 2, -1) for n in range(3, 6)]
                         + [Presentation(4, 2, -1, 8)])
def test_oracle_agrees(pres):
    assert compare_with_oracle(pres).all_ok


def test_oracle_too_large():
    with pytest.raises(TooLarge):
        CayleyOracle(Presentation.tower_group(11))


@given(st.integers(0, 7), st.integers(0, 3), st.integers(0, 7), st.integers(0, 3),
       st.integers(-20, 20))
@settings(max_examples=200)
def test_group_element_algebra(i, j, i2, j2, e):
    x, y = el(i, j), el(i2, j2)
    assert x * x.inverse() == el(0, 0)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert x ** e * x ** 1 == x ** (e + 1)
