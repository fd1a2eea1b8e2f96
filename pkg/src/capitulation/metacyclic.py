"""Finite metacyclic 2-groups <a, b | a^(2^n), b^(2^m) = a^r, b^-1 a b = a^q>.

Elements are kept in the normal form a^i b^j.  Conjugation by b sends
a to a^q, so b^j a^i' = a^(i' q^-j) b^j, and

    (a^i b^j)(a^i' b^j') = a^(i + i' q^-j) b^(j + j'),

with a^r carried in whenever j + j' wraps past 2^m (a^r is central).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .abelian import AbelianStructure, structure_from_orders
from .errors import (AbelianGroup, BadTag, HypothesisNotMet, MixedPresentations,
                     NotMetacyclic, NotNormal, TooLarge)
from .numcore import two_adic_valuation

Elem = tuple[int, int]

SUBGROUP_TAGS = ("H12", "H22", "H32", "H14", "H24", "H34")
ORACLE_MAX_ORDER = 2**12


@dataclass(frozen=True)
class Presentation:
    n: int
    m: int
    q: int
    r: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        M = 1 << self.n
        object.__setattr__(self, "q", self.q % M)
        object.__setattr__(self, "r", self.r % M)
        if self.q % 2 == 0:
            raise ValueError(f"q={self.q} must be odd")
        if pow(self.q, 1 << self.m, M) != 1:
            raise ValueError(f"q^(2^{self.m}) is not 1 mod 2^{self.n}")
        if (self.r * (self.q - 1)) % M:
            raise ValueError(f"r(q-1) is not 0 mod 2^{self.n}")

    @classmethod
    def twisted(cls, n: int, m: int, s: int, k: int, r: int = 0) -> Presentation:
        """q = -1 + k 2^s; odd k that agree mod 2^(n-s) give the same group."""
        if k % 2 == 0:
            raise ValueError("k must be odd")
        return cls(n, m, -1 + k * (1 << s), r)

    @classmethod
    def tower_group(cls, n: int) -> Presentation:
        """G(n, m=2, s=n-1, k=1), the 2-group attached to a qualifying prime."""
        return cls.twisted(n, 2, n - 1, 1)

    @property
    def order(self) -> int:
        return 1 << (self.n + self.m)

    @property
    def s(self) -> int | None:
        """v_2(q + 1), or None when q = -1."""
        t = (self.q + 1) % (1 << self.n)
        return None if t == 0 else two_adic_valuation(t)

    @property
    def k(self) -> int | None:
        s = self.s
        if s is None:
            return None
        return ((self.q + 1) >> s) % (1 << (self.n - s))


@dataclass(frozen=True)
class GroupElement:
    i: int
    j: int
    pres: Presentation

    def __mul__(self, other: GroupElement) -> GroupElement:
        if other.pres != self.pres:
            raise MixedPresentations("elements come from different presentations")
        i, j = group_for(self.pres).mul((self.i, self.j), (other.i, other.j))
        return GroupElement(i, j, self.pres)

    def inverse(self) -> GroupElement:
        i, j = group_for(self.pres).inv((self.i, self.j))
        return GroupElement(i, j, self.pres)

    def __pow__(self, e: int) -> GroupElement:
        i, j = group_for(self.pres).power((self.i, self.j), e)
        return GroupElement(i, j, self.pres)

    @property
    def pair(self) -> Elem:
        return (self.i, self.j)

    def __str__(self) -> str:
        return f"a^{self.i} b^{self.j}"


@dataclass(frozen=True)
class Subgroup:
    name: str
    generators: tuple[Elem, ...]
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        if isinstance(x, GroupElement):
            x = x.pair
        return x in self.elements


class MetacyclicGroup:
    """Normal-form arithmetic and subgroup computations for one presentation."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.N = 1 << pres.n
        self.Mb = 1 << pres.m
        qinv = pow(pres.q, -1, self.N)
        self._qinv_pow = [pow(qinv, j, self.N) for j in range(self.Mb)]
        self._q_pow = [pow(pres.q, j, self.N) for j in range(self.Mb)]
        self._labels: dict[frozenset, dict[Elem, Elem]] = {}

    identity: Elem = (0, 0)

    @property
    def a(self) -> Elem:
        return (1 % self.N, 0)

    @property
    def b(self) -> Elem:
        return (0, 1 % self.Mb)

    def elements(self) -> list[Elem]:
        return [(i, j) for i in range(self.N) for j in range(self.Mb)]

    def element(self, x: Elem) -> GroupElement:
        return GroupElement(x[0], x[1], self.pres)

    def mul(self, x: Elem, y: Elem) -> Elem:
        i = x[0] + y[0] * self._qinv_pow[x[1]]
        j = x[1] + y[1]
        if j >= self.Mb:
            j -= self.Mb
            i += self.pres.r
        return (i % self.N, j)

    def inv(self, x: Elem) -> Elem:
        i, j = x
        if j == 0:
            return ((-i) % self.N, 0)
        # (a^i b^j)(a^i' b^(2^m - j)) = a^(i + i' q^-j + r)
        return ((-(i + self.pres.r) * self._q_pow[j]) % self.N, self.Mb - j)

    def power(self, x: Elem, e: int) -> Elem:
        if e < 0:
            x, e = self.inv(x), -e
        out = self.identity
        while e:
            if e & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            e >>= 1
        return out

    def word(self, i: int, j: int) -> Elem:
        """a^i b^j for arbitrary integer exponents."""
        return self.mul(self.power(self.a, i), self.power(self.b, j))

    def commutator(self, x: Elem, y: Elem) -> Elem:
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def conj(self, x: Elem, g: Elem) -> Elem:
        """g^-1 x g."""
        return self.mul(self.mul(self.inv(g), x), g)

    def element_order(self, x: Elem) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def closure(self, gens: Iterable[Elem]) -> frozenset:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def subgroup(self, gens: Iterable[Elem], name: str = "custom") -> Subgroup:
        gens = tuple(gens)
        return Subgroup(name, gens, self.closure(gens))

    def normal_closure(self, gens: Iterable[Elem], ambient_gens: Iterable[Elem]) -> Subgroup:
        """Smallest subgroup containing gens and normalized by ambient_gens."""
        ambient_gens = list(ambient_gens)
        current = list(gens)
        elems = self.closure(current)
        while True:
            extra = [self.conj(g, h) for g in current for h in ambient_gens]
            extra = [x for x in extra if x not in elems]
            if not extra:
                return Subgroup("normal-closure", tuple(current), elems)
            current.extend(extra)
            elems = self.closure(current)

    def derived_of(self, H: Subgroup) -> Subgroup:
        """H' as the normal closure in H of commutators of H's generators."""
        comms = [self.commutator(x, y) for x in H.generators for y in H.generators]
        D = self.normal_closure(comms, H.generators)
        return Subgroup(H.name + "'", D.generators, D.elements)

    @cached_property
    def whole(self) -> Subgroup:
        return self.subgroup([self.a, self.b], "G")

    @cached_property
    def derived(self) -> Subgroup:
        return self.derived_of(self.whole)

    def is_normal(self, H: Subgroup) -> bool:
        return all(self.conj(h, g) in H.elements for h in H.generators for g in (self.a, self.b))

    def coset_labels(self, N: frozenset) -> dict[Elem, Elem]:
        """Map each element x to the smallest element of the coset x N."""
        labels = self._labels.get(N)
        if labels is None:
            labels = {}
            Nl = list(N)
            for x in self.elements():
                if x in labels:
                    continue
                coset = [self.mul(x, n) for n in Nl]
                rep = min(coset)
                for y in coset:
                    labels[y] = rep
            self._labels[N] = labels
        return labels

    def coset_reps(self, N: frozenset, within: frozenset | None = None) -> list[Elem]:
        labels = self.coset_labels(N)
        pool = self.elements() if within is None else within
        return sorted({labels[x] for x in pool})

    def abelianization(self) -> AbelianStructure:
        D = self.derived.elements
        reps = self.coset_reps(D)
        orders = []
        for x in reps:
            k, y = 1, x
            while y not in D:
                y = self.mul(y, x)
                k += 1
            orders.append(k)
        return structure_from_orders(orders)

    def named_subgroup(self, tag: str) -> Subgroup:
        a, b = self.a, self.b
        d = self.power(a, 2)
        b2 = self.power(b, 2)
        table = {
            "H12": ([b, d], 2),
            "H22": ([self.mul(a, b), d], 2),
            "H32": ([a, b2, d], 2),
            "H14": ([a, d], 4),
            "H24": ([self.mul(a, b2), d], 4),
            "H34": ([b2, d], 4),
        }
        if tag not in table:
            raise BadTag(tag)
        gens, index = table[tag]
        H = self.subgroup(gens, tag)
        if H.order * index != self.pres.order:
            raise HypothesisNotMet(f"{tag} has index {self.pres.order // H.order}, expected {index}")
        return H

    def transfer(self, H: Subgroup, g: Elem, reps: str = "lex",
                 rng: random.Random | None = None) -> Elem:
        """V_{G->H}(g G') as the canonical element of its coset in H/H'.

        Uses prod x_i^-1 g^f x_i over representatives x_i of G / <g>H,
        where f = [<g>H : H]; H must be normal.
        """
        if not self.is_normal(H):
            raise NotNormal(f"{H.name} is not normal")
        gH = self.closure(list(H.generators) + [g])
        f = len(gH) // H.order
        gf = self.power(g, f)
        xs = self.coset_reps(gH)
        if reps == "random":
            rng = rng or random.Random()
            pool = sorted(gH)
            xs = [self.mul(x, rng.choice(pool)) for x in xs]
        elif reps != "lex":
            raise ValueError(f"unknown representative choice {reps!r}")
        prod = self.identity
        for x in xs:
            prod = self.mul(prod, self.conj(gf, x))
        Hd = self.derived_of(H)
        return self.coset_labels(Hd.elements)[prod]

    def transfer_kernel(self, H: Subgroup) -> list[Elem]:
        """Coset representatives g of G/G' with V_{G->H}(g G') trivial."""
        Hd = self.derived_of(H)
        trivial = self.coset_labels(Hd.elements)[self.identity]
        return [g for g in self.coset_reps(self.derived.elements)
                if self.transfer(H, g) == trivial]


_GROUPS: dict[Presentation, MetacyclicGroup] = {}


def group_for(pres: Presentation) -> MetacyclicGroup:
    grp = _GROUPS.get(pres)
    if grp is None:
        grp = _GROUPS[pres] = MetacyclicGroup(pres)
    return grp


def derived_subgroup(pres: Presentation) -> Subgroup:
    return group_for(pres).derived


def abelianization(pres: Presentation) -> AbelianStructure:
    return group_for(pres).abelianization()


def named_subgroup(pres: Presentation, tag: str) -> Subgroup:
    return group_for(pres).named_subgroup(tag)


def transfer(pres: Presentation, H: Subgroup, g: GroupElement, reps: str = "lex",
             rng: random.Random | None = None) -> GroupElement:
    if g.pres != pres:
        raise MixedPresentations("element is not in this group")
    grp = group_for(pres)
    return grp.element(grp.transfer(H, g.pair, reps, rng))


def transfer_kernel(pres: Presentation, H: Subgroup) -> list[GroupElement]:
    grp = group_for(pres)
    return [grp.element(x) for x in grp.transfer_kernel(H)]


def kernel_sizes(pres: Presentation) -> dict[str, int]:
    grp = group_for(pres)
    return {tag: len(grp.transfer_kernel(grp.named_subgroup(tag))) for tag in SUBGROUP_TAGS}


@dataclass(frozen=True)
class Classification:
    type: int
    modular: bool
    s: int | None
    k: int | None


def classify(pres: Presentation) -> Classification:
    """Match against the four metacyclic templates with G/G' of type (2, 2^m), m > 1."""
    grp = group_for(pres)
    n = pres.n
    if pres.q == 1:
        raise AbelianGroup("q = 1 gives an abelian group")
    D = grp.derived
    ab = grp.abelianization()
    if D.elements != grp.closure([grp.power(grp.a, 2)]):
        raise NotMetacyclic("derived subgroup is not <a^2>")
    if ab.divisors != (2, 1 << pres.m) or pres.m < 2:
        raise NotMetacyclic(f"abelianization {ab} is not of type (2, 2^m) with m > 1")
    if pres.r not in (0, 1 << (n - 1)):
        raise NotMetacyclic(f"b^(2^m) = a^{pres.r} matches no template")
    twisted = pres.r != 0
    s = pres.s
    if s is None:
        if n < 2:
            raise NotMetacyclic("Types 1 and 2 need n > 1")
        kind = 2 if twisted else 1
    elif 1 < s < n:
        kind = 4 if twisted else 3
    else:
        raise NotMetacyclic(f"q = {pres.q} is not -1 + k 2^s with 1 < s < n")
    N = n + pres.m
    modular = D.order == 2 and ab.divisors == (2, 1 << (N - 2)) and N > 3
    return Classification(kind, modular, s, pres.k)


# ---------------------------------------------------------------------------
# Independent oracle: regular permutation representation by coset enumeration


class CayleyOracle:
    """Cayley table from Todd-Coxeter enumeration of the defining relators.

    Nothing here uses the normal-form product law; subgroups, commutators
    and transfers are recomputed from the table with generic definitions.
    """

    def __init__(self, pres: Presentation):
        if pres.order > ORACLE_MAX_ORDER:
            raise TooLarge(f"group of order {pres.order} exceeds {ORACLE_MAX_ORDER}")
        from sympy.combinatorics.fp_groups import FpGroup
        from sympy.combinatorics.free_groups import free_group

        F, x, y = free_group("a b")
        rels = [x ** (1 << pres.n), y ** (1 << pres.m) * x ** (-pres.r), y ** -1 * x * y * x ** (-pres.q)]
        table = FpGroup(F, rels).coset_enumeration([])
        table.compress()
        table.standardize()
        rows = table.table
        self.order = len(rows)
        if self.order != pres.order:
            raise ArithmeticError(f"coset enumeration found {self.order} elements, expected {pres.order}")
        self.pres = pres
        # columns: a, a^-1, b, b^-1; right action c -> c.g
        act_a = [row[0] for row in rows]
        act_b = [row[2] for row in rows]
        perms: list[list[int] | None] = [None] * self.order
        perms[0] = list(range(self.order))
        queue = [0]
        while queue:
            c = queue.pop()
            for act in (act_a, act_b):
                d = act[c]
                if perms[d] is None:
                    perms[d] = [act[v] for v in perms[c]]
                    queue.append(d)
        # element u times element v is the coset 0.u.v
        self.table = [[perms[v][u] for v in range(self.order)] for u in range(self.order)]
        self.a = act_a[0]
        self.b = act_b[0]
        self.identity = 0
        self.inverse = [row.index(0) for row in self.table]

    def mul(self, u: int, v: int) -> int:
        return self.table[u][v]

    def power(self, u: int, e: int) -> int:
        out = 0
        for _ in range(e % self.order):
            out = self.table[out][u]
        return out

    def index_of(self, i: int, j: int) -> int:
        """a^i b^j as a coset index."""
        return self.mul(self.power(self.a, i), self.power(self.b, j))

    def is_latin_square(self) -> bool:
        full = set(range(self.order))
        return all(set(row) == full for row in self.table) and all(
            {self.table[u][v] for u in range(self.order)} == full for v in range(self.order))

    def closure(self, gens: Iterable[int]) -> frozenset:
        gens = list(gens)
        seen, frontier = {0}, [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def commutator(self, u: int, v: int) -> int:
        inv = self.inverse
        return self.mul(self.mul(inv[u], inv[v]), self.mul(u, v))

    def derived_of(self, H: frozenset) -> frozenset:
        """Subgroup generated by every commutator of two elements of H."""
        return self.closure({self.commutator(u, v) for u in H for v in H})

    def quotient_orders(self, N: frozenset) -> list[int]:
        """Order of u N for each element u."""
        out = []
        for u in range(self.order):
            k, y = 1, u
            while y not in N:
                y = self.mul(y, u)
                k += 1
            out.append(k)
        return out

    def transfer(self, H: frozenset, g: int) -> frozenset:
        """V(g) from a right transversal T: t g = h_t t', V(g) = prod h_t mod H'."""
        cosets: dict[frozenset, int] = {}
        for u in range(self.order):
            Hu = frozenset(self.mul(h, u) for h in H)
            cosets.setdefault(Hu, min(Hu))
        coset_of = {}
        for Hu, t in cosets.items():
            for x in Hu:
                coset_of[x] = t
        prod = 0
        for t in sorted(cosets.values()):
            tg = self.mul(t, g)
            h = self.mul(tg, self.inverse[coset_of[tg]])
            prod = self.mul(prod, h)
        Hd = self.derived_of(H)
        return frozenset(self.mul(prod, d) for d in Hd)


def brute_force_oracle(pres: Presentation) -> CayleyOracle:
    return CayleyOracle(pres)


@dataclass(frozen=True)
class OracleComparison:
    products: bool
    derived: bool
    abelianization: bool
    transfers: bool

    @property
    def all_ok(self) -> bool:
        return self.products and self.derived and self.abelianization and self.transfers


def compare_with_oracle(pres: Presentation, oracle: CayleyOracle | None = None) -> OracleComparison:
    """Check the normal-form engine against the Cayley-table oracle."""
    grp = group_for(pres)
    orc = oracle or CayleyOracle(pres)
    idx = {x: orc.index_of(*x) for x in grp.elements()}
    products = len(set(idx.values())) == orc.order and all(
        idx[grp.mul(x, y)] == orc.mul(idx[x], idx[y]) for x in grp.elements() for y in grp.elements())
    G_all = frozenset(range(orc.order))
    D_orc = orc.derived_of(G_all)
    derived = frozenset(idx[x] for x in grp.derived.elements) == D_orc
    ab = structure_from_orders(orc.quotient_orders(D_orc))
    abelianization_ok = ab == grp.abelianization()
    transfers = True
    for tag in SUBGROUP_TAGS:
        H = grp.named_subgroup(tag)
        H_orc = orc.closure(idx[g] for g in H.generators)
        if H_orc != frozenset(idx[x] for x in H.elements):
            transfers = False
            break
        Hd = grp.derived_of(H)
        for g in grp.coset_reps(grp.derived.elements):
            closed = grp.transfer(H, g)
            coset = frozenset(idx[grp.mul(closed, d)] for d in Hd.elements)
            if coset != orc.transfer(H_orc, idx[g]):
                transfers = False
                break
    return OracleComparison(products, derived, abelianization_ok, transfers)
