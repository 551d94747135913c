"""Free resolutions and Ext over a base ring.

A free module ``R^n`` is handled at scalar level as ``Z^(n r)`` (or
``F_p^(n r)`` in characteristic ``p``), coordinate ``k*r + b`` being the
coefficient of ``b_b e_k``.  Each syzygy module is computed as a lattice and
a small generating set over ``R`` is picked greedily from its basis.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .errors import BaseMismatch, Unsolvable
from .linalg import Lattice, QuotientGroup, kernel_mod, solve_modular
from .modules import HomGroup, Module, Morphism, _morph, hom_group, submodule_lattice


def _char_rows(char: int, dim: int) -> list[list[int]]:
    if not char:
        return []
    return [[char * (i == j) for j in range(dim)] for i in range(dim)]


def _left_mult(ring, b: int, vec: Sequence[int], n: int) -> list[int]:
    """``b_b * v`` for ``v`` in ``R^n`` (flat coordinates)."""
    r = ring.rank
    out = [0] * (n * r)
    for k in range(n):
        blk = vec[k * r:(k + 1) * r]
        if any(blk):
            out[k * r:(k + 1) * r] = ring.multiply(ring.basis_element(b), blk)
    return ring.reduce(out) if ring.char else out


def _r_span(ring, gens: Sequence[Sequence[int]], n: int) -> Lattice:
    dim = n * ring.rank
    lat = Lattice(dim, _char_rows(ring.char, dim))
    for v in gens:
        for b in range(ring.rank):
            lat.add(_left_mult(ring, b, v, n))
    return lat


def _pick_generators(ring, target: Lattice, n: int) -> list[list[int]]:
    """Greedy R-generators of the R-submodule ``target`` of ``R^n``."""
    dim = n * ring.rank
    span = Lattice(dim, _char_rows(ring.char, dim))
    chosen: list[list[int]] = []
    for v in target.basis():
        if span == target:
            break
        if v in span:
            continue
        chosen.append(v)
        for b in range(ring.rank):
            span.add(_left_mult(ring, b, v, n))
    return chosen


def _scalar_matrix(ring, images: Sequence[Sequence[int]], n_src: int, n_tgt: int) -> list[list[int]]:
    """Scalar matrix of ``R^n_src -> R^n_tgt``, ``e_j -> images[j]``."""
    r = ring.rank
    cols = []
    for j in range(n_src):
        for b in range(r):
            cols.append(_left_mult(ring, b, images[j], n_tgt))
    rows = n_tgt * r
    return [[c[i] for c in cols] for i in range(rows)]


@dataclass
class FreeResolution:
    """``... -> R^{n_1} -> R^{n_0} -> X``.

    ``augmentation[k]`` is the image of ``e_k`` in ``X``; ``differentials[i]``
    lists the images in ``R^{n_i}`` of the basis of ``R^{n_{i+1}}``.
    """
    module: Module | None
    ranks: list = field(default_factory=list)
    augmentation: list = field(default_factory=list)
    differentials: list = field(default_factory=list)
    _kernel: Lattice | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    base: object = None

    @property
    def ring(self):
        return self.base if self.module is None else self.module.ring

    @classmethod
    def of_integers(cls, ring) -> "FreeResolution":
        """Resolution of trivial ``Z`` over a group ring, starting with ``R -> Z``."""
        return cls(None, base=ring)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def scalar_differential(self, i: int) -> list[list[int]]:
        """Scalar matrix of ``d_i: F_i -> F_{i-1}`` (``i >= 1``)."""
        return _scalar_matrix(self.ring, self.differentials[i - 1], self.ranks[i], self.ranks[i - 1])

    def scalar_augmentation(self) -> list[list[int]]:
        X, ring = self.module, self.ring
        cols = []
        for x in self.augmentation:
            for b in range(ring.rank):
                cols.append(X.act(b, x))
        return [[c[i] for c in cols] for i in range(X.ngens)]

    def extend(self, length: int) -> "FreeResolution":
        with self._lock:
            while self.length < length:
                self._step()
        return self

    def _step(self) -> None:
        ring, X = self.ring, self.module
        r = ring.rank
        if not self.ranks and X is None:
            # F_0 = R with the augmentation; its kernel is the augmentation ideal
            self.ranks.append(1)
            e = ring.group.identity if ring.group is not None else 0
            self._kernel = Lattice(r, [[(k == j) - (k == e) for k in range(r)] for j in range(r) if j != e])
            return
        if not self.ranks:
            gens = []
            span = X.relation_lattice.copy()
            for i in range(X.ngens):
                e = [int(k == i) for k in range(X.ngens)]
                if e in span:
                    continue
                gens.append(e)
                span = submodule_lattice(X, gens)
            self.augmentation = gens
            self.ranks.append(len(gens))
            n = len(gens)
            if n:
                E = self.scalar_augmentation()
                amb = [ring.char] * (n * r) if ring.char else None
                self._kernel = kernel_mod(E, X.invariants, n * r, ambient_moduli=amb)
            else:
                self._kernel = Lattice(0)
            return
        n = self.ranks[-1]
        K = self._kernel
        gens = _pick_generators(ring, K, n) if n else []
        self.differentials.append(gens)
        m = len(gens)
        self.ranks.append(m)
        if not m:
            self._kernel = Lattice(0)
            return
        D = _scalar_matrix(ring, gens, m, n)
        mods = [ring.char] * (n * r)
        amb = [ring.char] * (m * r) if ring.char else None
        self._kernel = kernel_mod(D, mods, m * r, ambient_moduli=amb)

    def audit(self) -> bool:
        """Recheck exactness: ``im d_{i+1} = ker d_i`` and ``eps`` onto."""
        X = self.module
        n0 = self.ranks[0] if self.ranks else 0
        if X is None:
            return self._audit_tail(0)
        if X.ngens:
            img = X.relation_lattice.copy()
            for col in zip(*self.scalar_augmentation()) if n0 else ():
                img.add(list(col))
            if img.index() != 1:
                return False
        return self._audit_tail(0)

    def _audit_tail(self, start: int) -> bool:
        ring, X = self.ring, self.module
        r = ring.rank
        for i in range(start, self.length):
            n, m = self.ranks[i], self.ranks[i + 1]
            if not n:
                continue
            if i == 0 and X is None:
                mat, mods = [[1] * r], [0]
            elif i == 0:
                mat, mods = self.scalar_augmentation(), list(X.invariants)
            else:
                mat, mods = self.scalar_differential(i), [ring.char] * (self.ranks[i - 1] * r)
            amb = [ring.char] * (n * r) if ring.char else None
            ker = kernel_mod(mat, mods, n * r, ambient_moduli=amb) if mat else Lattice(n * r, [
                [int(a == b) for b in range(n * r)] for a in range(n * r)])
            img = Lattice(n * r, _char_rows(ring.char, n * r))
            D = self.scalar_differential(i + 1) if m else []
            for col in zip(*D) if D else ():
                img.add(list(col))
            if ker != img:
                return False
        return True


_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def free_resolution(X: Module, length: int) -> FreeResolution:
    """A free resolution of ``X`` with ``F_0, ..., F_length`` (memoized)."""
    if length < 0:
        raise ValueError("length must be non-negative")
    with _CACHE_LOCK:
        res = _CACHE.get(X)
        if res is None:
            res = FreeResolution(X)
            _CACHE[X] = res
    return res.extend(length)


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


# -- Ext ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtGroup:
    """``Ext^i_R(X, Y)``.

    ``cocycles`` are representative elements of ``Hom_R(F_i, Y) = Y^{n_i}``
    (flat, ``n_i`` blocks of ``Y.ngens`` coordinates); their classes generate
    the group with the listed invariant factors.
    """
    degree: int
    source: Module
    target: Module
    invariants: tuple
    cocycles: tuple
    resolution: FreeResolution = field(repr=False)
    _quotient: QuotientGroup = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def generators(self) -> tuple:
        return self.cocycles

    def coords(self, cocycle: Sequence[int]) -> tuple:
        return tuple(self._quotient.coords(list(cocycle)))

    def element(self, coords: Sequence[int]) -> list[int]:
        return self._quotient.element(coords)

    def cochain_moduli(self, j: int) -> list[int]:
        return list(self.target.invariants) * self.resolution.ranks[j]

    def coboundary_matrix(self, j: int) -> list[list[int]]:
        return coboundary(self.resolution, self.target, j)

    def is_cocycle(self, vec: Sequence[int]) -> bool:
        D = self.coboundary_matrix(self.degree)
        mods = self.cochain_moduli(self.degree + 1)
        return all(sum(a * x for a, x in zip(row, vec)) % q == 0 for row, q in zip(D, mods))

    def is_coboundary(self, vec: Sequence[int]) -> bool:
        """Independent check by solving ``delta y = vec`` modulo the target."""
        mods = self.cochain_moduli(self.degree)
        if all(x % q == 0 for x, q in zip(vec, mods)):
            return True
        if self.degree == 0:
            return False
        D = self.coboundary_matrix(self.degree - 1)
        try:
            solve_modular(D, list(vec), mods, len(self.cochain_moduli(self.degree - 1)))
        except Unsolvable:
            return False
        return True

    def to_json(self) -> dict:
        return {"degree": self.degree, "invariants": list(self.invariants), "order": self.order}


def coboundary(res: FreeResolution, Y: Module, j: int) -> list[list[int]]:
    """Matrix of ``delta^j: Y^{n_j} -> Y^{n_{j+1}}``."""
    n, m = res.ranks[j], res.ranks[j + 1]
    t = Y.ngens
    rows = [[0] * (n * t) for _ in range(m * t)]
    for l, img in enumerate(res.differentials[j]):
        r = res.ring.rank
        for k in range(n):
            a = img[k * r:(k + 1) * r]
            if not any(a):
                continue
            A = Y.ring_element_matrix(a)
            for u in range(t):
                row = rows[l * t + u]
                for v in range(t):
                    if A[u][v]:
                        row[k * t + v] += A[u][v]
    return rows


def ext_group(i: int, X: Module, Y: Module) -> ExtGroup:
    if X.ring != Y.ring:
        raise BaseMismatch("Ext between modules over different rings")
    if i < 0:
        raise ValueError("degree must be non-negative")
    res = free_resolution(X, i + 1)
    invs, cocycles, Q = cochain_cohomology(res, Y, i)
    return ExtGroup(i, X, Y, invs, cocycles, res, Q)


def cochain_cohomology(res: FreeResolution, Y: Module, i: int):
    """Cohomology of ``Hom_R(F_*, Y)`` at ``i``: ``(invariants, cocycles, quotient)``."""
    res.extend(i + 1)
    t = Y.ngens
    n = res.ranks[i]
    dim = n * t
    mods = list(Y.invariants) * n
    if not dim:
        return (), (), QuotientGroup(Lattice(0), Lattice(0))
    D = coboundary(res, Y, i)
    if D:
        Z = kernel_mod(D, list(Y.invariants) * res.ranks[i + 1], dim, ambient_moduli=mods)
    else:
        Z = Lattice(dim, [[int(a == b) for b in range(dim)] for a in range(dim)])
    B = Lattice.scaled_identity(mods)
    if i > 0:
        Dp = coboundary(res, Y, i - 1)
        for col in zip(*Dp) if Dp and Dp[0] else ():
            B.add(list(col))
    Q = QuotientGroup(Z, B)
    cocycles = tuple(tuple(x % q for x, q in zip(g, mods)) for g in Q.generators)
    return tuple(Q.invariants), cocycles, Q


def cocycle_of_morphism(E: ExtGroup, f: Morphism) -> list[int]:
    """The degree-0 cochain ``(f(x_k))_k`` of a morphism ``X -> Y``."""
    out: list[int] = []
    for x in E.resolution.augmentation:
        out.extend(f(x))
    return out


def hom_matches_ext0(X: Module, Y: Module) -> bool:
    """``Ext^0(X, Y) = Hom(X, Y)``: equal orders and the generators correspond."""
    H: HomGroup = hom_group(X, Y)
    E = ext_group(0, X, Y)
    if H.order != E.order:
        return False
    if not H.order or H.order == 1:
        return True
    from .linalg import kernel_mod as _km
    T = [list(col) for col in zip(*[E.coords(cocycle_of_morphism(E, g)) for g in H.generators])]
    ker = _km(T, list(E.invariants), len(H.generators), ambient_moduli=list(H.invariants))
    return ker == Lattice.scaled_identity(list(H.invariants))


def morphism_from_cocycle(E: ExtGroup, vec: Sequence[int]) -> Morphism:
    """Inverse of :func:`cocycle_of_morphism` for degree 0."""
    X, Y = E.source, E.target
    H = hom_group(X, Y)
    for f in H.elements():
        if tuple(cocycle_of_morphism(E, f)) == tuple(x % q for x, q in zip(vec, E.cochain_moduli(0))):
            return f
    return _morph(X, Y, [[0] * Y.ngens for _ in range(X.ngens)])
