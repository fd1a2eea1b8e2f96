"""Finite abelian group structure from element orders."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant factors d1 | d2 | ... (trivial factors omitted)."""

    divisors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def is_cyclic(self) -> bool:
        return len(self.divisors) <= 1

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.divisors)) + ")" if self.divisors else "(1)"


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def structure_from_orders(orders: Iterable[int]) -> AbelianStructure:
    """Invariant factors of a finite abelian group given the order of every element.

    The number of elements killed by l^k is prod_i l^min(k, e_i), which pins
    down every Sylow exponent e_i.
    """
    counts = Counter(orders)
    total = sum(counts.values())
    sylow: dict[int, list[int]] = {}
    for ell in _prime_factors(total):
        killed = []
        k = 0
        while True:
            lk = ell**k
            n_k = sum(c for o, c in counts.items() if lk % o == 0)
            killed.append(n_k)
            if len(killed) > 1 and n_k == killed[-2]:
                break
            k += 1
        # r[k] = number of cyclic factors with exponent >= k
        ranks = []
        for k in range(1, len(killed)):
            ratio = killed[k] // killed[k - 1]
            r = 0
            while ratio > 1:
                ratio //= ell
                r += 1
            ranks.append(r)
        exps = []
        for k, r in enumerate(ranks, start=1):
            nxt = ranks[k] if k < len(ranks) else 0
            exps.extend([k] * (r - nxt))
        sylow[ell] = sorted(exps, reverse=True)
    width = max((len(v) for v in sylow.values()), default=0)
    divisors = []
    for j in range(width):
        d = 1
        for ell, exps in sylow.items():
            if j < len(exps):
                d *= ell ** exps[j]
        divisors.append(d)
    return AbelianStructure(tuple(sorted(divisors)))
