"""Base rings: free of finite rank over Z or over a prime field F_p.

A ring is described by its structure constants on a fixed basis
``b_0, ..., b_{r-1}``: ``b_i * b_j = sum_k mult[i][j][k] b_k``.  Three
realizations are provided:

* :func:`integers` -- Z itself (rank 1),
* :func:`group_ring` -- Z[G] for a finite group G (basis = group elements),
* :func:`a2_path_algebra` -- the path algebra of the quiver ``1 -> 2`` over
  F_q, seen as an F_p-algebra of rank ``3 * [F_q : F_p]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from functools import cached_property, lru_cache

from .fields import FiniteField, finite_field
from .groups import FiniteGroup, trivial_group
from .linalg import Lattice


@dataclass(frozen=True, eq=False)
class BaseRing:
    kind: str
    rank: int
    char: int
    mult: tuple
    unit: tuple
    label: str
    group: FiniteGroup | None = None
    field: FiniteField | None = None
    basis_names: tuple = dc_field(default=())

    def __post_init__(self):
        r = self.rank
        if len(self.unit) != r or len(self.mult) != r:
            raise ValueError("structure constants have the wrong size")
        for i in range(r):
            for j in range(r):
                if len(self.mult[i][j]) != r:
                    raise ValueError("structure constants have the wrong size")
        # unit law and associativity on the basis
        for i in range(r):
            e_i = tuple(int(k == i) for k in range(r))
            if self.multiply(self.unit, e_i) != e_i or self.multiply(e_i, self.unit) != e_i:
                raise ValueError(f"unit law fails on basis element {i}")
        for i in range(r):
            for j in range(r):
                ij = self.mult[i][j]
                for k in range(r):
                    e_k = tuple(int(t == k) for t in range(r))
                    lhs = self.multiply(ij, e_k)
                    rhs = self.multiply(tuple(int(t == i) for t in range(r)), self.mult[j][k])
                    if lhs != rhs:
                        raise ValueError(f"multiplication is not associative at {(i, j, k)}")

    def _key(self):
        return (self.kind, self.char, self.mult, self.unit)

    def __eq__(self, other):
        return isinstance(other, BaseRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"BaseRing({self.label})"

    def reduce(self, a) -> tuple:
        if self.char:
            return tuple(x % self.char for x in a)
        return tuple(a)

    def multiply(self, a, b) -> tuple:
        r = self.rank
        out = [0] * r
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                c = self.mult[i][j]
                xy = x * y
                for k in range(r):
                    if c[k]:
                        out[k] += xy * c[k]
        return self.reduce(out)

    def basis_element(self, i: int) -> tuple:
        return tuple(int(k == i) for k in range(self.rank))

    @cached_property
    def left_mult_matrices(self) -> tuple:
        """``L[b]`` is the Z-matrix of ``a -> b_b * a`` on the basis."""
        mats = []
        for b in range(self.rank):
            cols = [self.mult[b][a] for a in range(self.rank)]
            mats.append(tuple(tuple(cols[a][k] for a in range(self.rank)) for k in range(self.rank)))
        return tuple(mats)

    @cached_property
    def algebra_generators(self) -> tuple:
        """Basis indices generating the ring together with 1 (greedy, index order)."""
        r = self.rank
        target = Lattice(r, [self.basis_element(i) for i in range(r)]
                         + ([[self.char * int(k == i) for k in range(r)] for i in range(r)] if self.char else []))
        chosen: list[int] = []
        current = self._subring(chosen)
        for i in range(r):
            if current == target:
                break
            if list(self.basis_element(i)) in current:
                continue
            chosen.append(i)
            current = self._subring(chosen)
        return tuple(chosen)

    def _subring(self, gens) -> Lattice:
        r = self.rank
        lat = Lattice(r, [list(self.unit)] + ([[self.char * int(k == i) for k in range(r)] for i in range(r)]
                                               if self.char else []))
        frontier = [list(self.unit)]
        seen = set()
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = list(self.multiply(tuple(v), self.basis_element(g)))
                    if lat.add(w):
                        key = tuple(w)
                        if key not in seen:
                            seen.add(key)
                            nxt.append(w)
            frontier = nxt
        return lat

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.group is not None:
            out["group"] = self.group.name or self.group.to_json()
        if self.field is not None:
            out["field"] = self.field.name
            out["field_modulus"] = list(self.field.modulus)
        return out


@lru_cache(maxsize=None)
def integers() -> BaseRing:
    return BaseRing("integers", 1, 0, (((1,),),), (1,), "Z", basis_names=("1",))


def group_ring(G: FiniteGroup) -> BaseRing:
    n = G.order
    mult = tuple(tuple(tuple(int(k == G.mul(a, b)) for k in range(n)) for b in range(n)) for a in range(n))
    unit = tuple(int(k == G.identity) for k in range(n))
    name = G.name or f"group of order {n}"
    return BaseRing("group_ring", n, 0, mult, unit, f"Z[{name}]", group=G,
                    basis_names=tuple(f"g{a}" for a in range(n)))


# paths of the quiver 1 -> 2, composition written right to left
_E1, _E2, _ALPHA = 0, 1, 2
_PATH_PRODUCT = {
    (_E1, _E1): _E1,
    (_E2, _E2): _E2,
    (_E2, _ALPHA): _ALPHA,
    (_ALPHA, _E1): _ALPHA,
}


def a2_path_algebra(F: FiniteField) -> BaseRing:
    """Path algebra of ``1 -> 2`` over ``F``; basis index ``3*w + path``.

    ``path`` is 0 (e1), 1 (e2) or 2 (the arrow) and ``w`` runs over the power
    basis ``x^w`` of F over its prime field.
    """
    d, p = F.d, F.p
    r = 3 * d
    mult = []
    for i in range(r):
        row = []
        w1, a = divmod(i, 3)
        for j in range(r):
            w2, b = divmod(j, 3)
            out = [0] * r
            c = _PATH_PRODUCT.get((a, b))
            if c is not None:
                coeffs = F.to_vector(F.mul(p ** w1, p ** w2))
                for w, x in enumerate(coeffs):
                    out[3 * w + c] = x
            row.append(tuple(out))
        mult.append(tuple(row))
    unit = tuple(int(k in (_E1, _E2)) for k in range(r))
    names = tuple(f"{['e1', 'e2', 'a'][k % 3]}*x^{k // 3}" for k in range(r))
    return BaseRing("a2", r, p, tuple(mult), unit, f"{F.name}[1->2]", field=F, basis_names=names)


@lru_cache(maxsize=None)
def a2_over(p: int, d: int = 1) -> BaseRing:
    return a2_path_algebra(finite_field(p, d))


def trivial_group_ring() -> BaseRing:
    return group_ring(trivial_group())


def field_ring(F: FiniteField) -> BaseRing:
    """``F_q`` as an ``F_p``-algebra of rank ``d`` on the power basis."""
    d, p = F.d, F.p
    mult = tuple(tuple(tuple(F.to_vector(F.mul(p ** i, p ** j))) for j in range(d)) for i in range(d))
    unit = tuple(int(k == 0) for k in range(d))
    return BaseRing("field", d, p, mult, unit, F.name, field=F,
                    basis_names=tuple(f"x^{k}" for k in range(d)))
