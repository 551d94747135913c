"""Finite groups given by multiplication tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import NotAnAction


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a multiplication table on ``range(order)``.

    ``table[a][b]`` is the index of ``a*b``.  Construction validates the
    table: closure, identity, inverses, and associativity (exhaustive for
    order <= 24, sampled on triples of generators and elements above that).
    """
    table: tuple
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise NotAnAction("empty group table")
        if any(len(r) != n or any(not 0 <= x < n for x in r) for r in self.table):
            raise NotAnAction("group table is not closed")
        e = self.identity
        if any(self.table[e][a] != a or self.table[a][e] != a for a in range(n)):
            raise NotAnAction("identity element is not neutral")
        for a in range(n):
            if e not in self.table[a]:
                raise NotAnAction(f"element {a} has no inverse")
        T = self.table
        triples = itertools.product(range(n), repeat=3) if n <= 24 else (
            (a, b, c) for a in range(n) for b in range(min(n, 8)) for c in range(n))
        for a, b, c in triples:
            if T[T[a][b]][c] != T[a][T[b][c]]:
                raise NotAnAction(f"table is not associative at {(a, b, c)}")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple:
        return tuple(self.table[a].index(self.identity) for a in range(self.order))

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def generators(self) -> tuple:
        """A small generating set picked greedily in index order."""
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g in span:
                continue
            gens.append(g)
            span = self._closure(gens)
            if len(span) == self.order:
                break
        return tuple(gens)

    def _closure(self, gens) -> set:
        span = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.table[a][g]
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        return span

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        T = self.table
        return all(T[a][b] == T[b][a] for a in range(self.order) for b in range(self.order))

    def to_json(self) -> dict:
        return {"table": [list(r) for r in self.table], "identity": self.identity, "name": self.name}


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"C{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), 0, "1")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    table = tuple(
        tuple(G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n * m))
        for a in range(n * m)
    )
    return FiniteGroup(table, G.identity * m + H.identity, f"{G.name}x{H.name}")


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (s*t)(x) = s(t(x))
    table = tuple(tuple(index[tuple(s[t[x]] for x in range(n))] for t in perms) for s in perms)
    return FiniteGroup(table, index[tuple(range(n))], f"S{n}")


def group_from_name(name: str) -> FiniteGroup:
    """``trivial``, ``C<n>``, ``C2xC2``, ``S3``; products with ``x``."""
    name = name.strip()
    if name in ("1", "trivial"):
        return trivial_group()
    parts = name.split("x")
    if len(parts) > 1:
        G = group_from_name(parts[0])
        for part in parts[1:]:
            G = direct_product(G, group_from_name(part))
        return FiniteGroup(G.table, G.identity, name)
    if name.startswith("C") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("S") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")
