"""Finite modules over a :class:`~serrecat.rings.BaseRing`.

A module is stored concretely: its underlying abelian group
``Z/d_1 + ... + Z/d_m`` (canonical divisor chain) together with the
integer matrix by which every ring basis element acts.  That is a finite
presentation over the ring: the generators are the ``m`` group generators
and the relations are ``d_i e_i`` plus ``b . e_i - rho(b) e_i``.

All submodules are handled as full-rank lattices in ``Z^m`` containing
``diag(d)``; subquotients are turned back into modules through
:class:`~serrecat.linalg.QuotientGroup`, which is what keeps every object
in invariant-factor form.  Representations of the A2 quiver are additionally
brought into the normal form ``k^r -> k^r`` identity block plus zero blocks,
so equality of objects there is isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Callable, Iterable, Sequence

from .errors import BaseMismatch, DimMismatch, InvalidFactors, NotAnAction, NotWellDefined
from .fields import FiniteField, FiniteFieldMatrix, finite_field, row_reduce
from .groups import FiniteGroup
from .linalg import Lattice, QuotientGroup, identity, invariant_factors_of, kernel_mod
from .rings import BaseRing, a2_path_algebra, group_ring, integers


def _reduce_cols(mat, mods):
    return tuple(tuple(x % q for x in row) for row, q in zip(mat, mods))


@dataclass(frozen=True, eq=False)
class Module:
    ring: BaseRing
    invariants: tuple
    action: tuple
    label: str = field(default="", compare=False)

    def _key(self):
        return (self.ring, self.invariants, self.action)

    def __eq__(self, other):
        return isinstance(other, Module) and self._key() == other._key()

    def __hash__(self):
        return hash((self.invariants, self.action))

    def __repr__(self):
        name = self.label or "Module"
        return f"{name}<{self.ring.label}; {list(self.invariants)}>"

    @property
    def ngens(self) -> int:
        return len(self.invariants)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def is_zero(self) -> bool:
        return not self.invariants

    def act(self, b: int, v: Sequence[int]) -> list[int]:
        M = self.action[b]
        return [sum(a * x for a, x in zip(row, v)) % q for row, q in zip(M, self.invariants)]

    def ring_element_matrix(self, a: Sequence[int]) -> list[list[int]]:
        """Matrix of a general ring element ``sum a_b b``."""
        m = self.ngens
        out = [[0] * m for _ in range(m)]
        for b, c in enumerate(a):
            if c:
                A = self.action[b]
                for i in range(m):
                    Ai, oi = A[i], out[i]
                    for j in range(m):
                        if Ai[j]:
                            oi[j] += c * Ai[j]
        return [[x % q for x in row] for row, q in zip(out, self.invariants)]

    def reduce(self, v: Sequence[int]) -> tuple:
        return tuple(x % q for x, q in zip(v, self.invariants))

    def elements(self) -> Iterable[tuple]:
        return itertools.product(*(range(q) for q in self.invariants))

    @cached_property
    def relation_lattice(self) -> Lattice:
        return Lattice.scaled_identity(self.invariants)

    def relations(self) -> list[list[tuple]]:
        """Relations over the ring, one column per relator.

        Each relator is a list of ``ngens`` ring elements (coefficient tuples);
        the list holds ``d_i e_i`` and ``b e_i - rho(b) e_i`` for every ring
        generator ``b``.
        """
        r, m = self.ring.rank, self.ngens
        unit = self.ring.unit
        cols = []
        for i, q in enumerate(self.invariants):
            col = [tuple(0 for _ in range(r))] * m
            col[i] = tuple(q * u for u in unit)
            cols.append(col)
        for b in self.ring.algebra_generators:
            for i in range(m):
                col = []
                for j in range(m):
                    coeff = [-self.action[b][j][i] * u for u in unit]
                    if j == i:
                        coeff[b] += 1
                    col.append(tuple(coeff))
                cols.append(col)
        return cols

    def scalar_presentation(self) -> list[list[int]]:
        """The diagonal relation matrix of the underlying group."""
        m = self.ngens
        return [[self.invariants[i] if i == j else 0 for j in range(m)] for i in range(m)]

    # -- A2 helpers
    def quiver_dims(self) -> tuple[int, int]:
        if self.ring.kind != "a2":
            raise TypeError("not a quiver representation")
        d = self.ring.field.d
        return (_fp_rank(self.action[0], self.ring.char) // d, _fp_rank(self.action[1], self.ring.char) // d)

    def to_json(self) -> dict:
        out = {"ring": self.ring.label, "invariants": list(self.invariants)}
        if self.ring.kind == "group_ring":
            out["action"] = [[list(r) for r in self.action[g]] for g in self.ring.group.generators]
        elif self.ring.kind == "a2":
            out["dims"] = list(self.quiver_dims())
        return out


def _fp_rank(mat, p) -> int:
    if not mat:
        return 0
    lat = Lattice.scaled_identity([p] * len(mat))
    for col in zip(*mat):
        lat.add(list(col))
    # the column span is lat / pZ^m; each unit pivot is one dimension
    return sum(1 for j in lat.pivots() if lat._rows[j][j] == 1)


def check_module(ring: BaseRing, invariants: Sequence[int], action: Sequence) -> None:
    m = len(invariants)
    if len(action) != ring.rank:
        raise NotAnAction(f"need {ring.rank} action matrices, got {len(action)}")
    for A in action:
        if len(A) != m or any(len(r) != m for r in A):
            raise NotAnAction("action matrix has the wrong shape")
    if ring.char and any(ring.char % q for q in invariants):
        raise NotAnAction(f"module over a ring of characteristic {ring.char} must be killed by it")
    mods = list(invariants)
    for b, A in enumerate(action):
        for i in range(m):
            col = [A[j][i] * invariants[i] for j in range(m)]
            if any(x % q for x, q in zip(col, mods)):
                raise NotAnAction(f"basis element {b} does not respect the relations")
    unit_mat = _combo(action, ring.unit, m)
    if any((unit_mat[i][j] - (i == j)) % mods[i] for i in range(m) for j in range(m)):
        raise NotAnAction("the unit does not act as the identity")
    for a in range(ring.rank):
        for b in range(ring.rank):
            lhs = _mm(action[a], action[b])
            rhs = _combo(action, ring.mult[a][b], m)
            if any((lhs[i][j] - rhs[i][j]) % mods[i] for i in range(m) for j in range(m)):
                raise NotAnAction(f"action is not multiplicative on basis pair {(a, b)}")


def _mm(A, B):
    n = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else []
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] if Bt else [0] * n for row in A]


def _combo(action, coeffs, m):
    out = [[0] * m for _ in range(m)]
    for b, c in enumerate(coeffs):
        if c:
            for i in range(m):
                for j in range(m):
                    out[i][j] += c * action[b][i][j]
    return out


def _raw(ring, invariants, action, label="", check=True) -> Module:
    invariants = tuple(int(q) for q in invariants)
    if check:
        check_module(ring, invariants, action)
    act = tuple(_reduce_cols(A, invariants) for A in action)
    return Module(ring, invariants, act, label)


# -- morphisms -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Morphism:
    """``matrix[j][i]`` is coordinate ``j`` of the image of source generator ``i``."""
    source: Module
    target: Module
    matrix: tuple

    def _key(self):
        return (self.source, self.target, self.matrix)

    def __eq__(self, other):
        return isinstance(other, Morphism) and self._key() == other._key()

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r}, {[list(r) for r in self.matrix]})"

    def __call__(self, v: Sequence[int]) -> tuple:
        return tuple(sum(a * x for a, x in zip(row, v)) % q
                     for row, q in zip(self.matrix, self.target.invariants))

    def column(self, i: int) -> tuple:
        return tuple(row[i] for row in self.matrix)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise DimMismatch("composition of non-composable morphisms")
        cols = [self(other.column(i)) for i in range(other.source.ngens)]
        return _morph(other.source, self.target, cols)

    def __add__(self, other: "Morphism") -> "Morphism":
        _same_shape(self, other)
        cols = [tuple(a + b for a, b in zip(self.column(i), other.column(i))) for i in range(self.source.ngens)]
        return _morph(self.source, self.target, cols)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, n: int) -> "Morphism":
        cols = [tuple(n * a for a in self.column(i)) for i in range(self.source.ngens)]
        return _morph(self.source, self.target, cols)


def _same_shape(f, g):
    if f.source != g.source or f.target != g.target:
        raise DimMismatch("morphisms have different source or target")


def _morph(source: Module, target: Module, columns: Sequence[Sequence[int]]) -> Morphism:
    m, n = source.ngens, target.ngens
    mat = tuple(tuple(columns[i][j] % target.invariants[j] for i in range(m)) for j in range(n))
    return Morphism(source, target, mat)


def check_morphism(f: Morphism) -> None:
    X, Y = f.source, f.target
    if X.ring != Y.ring:
        raise BaseMismatch("source and target over different rings")
    for i, q in enumerate(X.invariants):
        if any(x % t for x, t in zip((q * c for c in f.column(i)), Y.invariants)):
            raise NotWellDefined(f"generator {i} of order {q} is sent to an element of larger order")
    for b in X.ring.algebra_generators:
        for i in range(X.ngens):
            lhs = f(X.act(b, [int(k == i) for k in range(X.ngens)]))
            rhs = tuple(Y.act(b, f.column(i)))
            if lhs != rhs:
                raise NotWellDefined(f"matrix is not linear for ring generator {b}")


def morphism(source: Module, target: Module, matrix: Sequence[Sequence[int]]) -> Morphism:
    """Build and validate a morphism from a ``target.ngens x source.ngens`` matrix."""
    if source.ring != target.ring:
        raise BaseMismatch("source and target over different rings")
    if len(matrix) != target.ngens or any(len(r) != source.ngens for r in matrix):
        raise DimMismatch("morphism matrix has the wrong shape")
    cols = [[matrix[j][i] for j in range(target.ngens)] for i in range(source.ngens)]
    f = _morph(source, target, cols)
    check_morphism(f)
    return f


def identity_morphism(X: Module) -> Morphism:
    return _morph(X, X, identity(X.ngens))


def zero_morphism(X: Module, Y: Module) -> Morphism:
    return _morph(X, Y, [[0] * Y.ngens for _ in range(X.ngens)])


def multiplication(X: Module, n: int) -> Morphism:
    """The endomorphism ``x -> n x``."""
    return identity_morphism(X).scale(n)


# -- subquotients ----------------------------------------------------------

def submodule_lattice(X: Module, vectors: Iterable[Sequence[int]]) -> Lattice:
    """Lattice of the submodule generated by ``vectors`` (plus the relations)."""
    lat = X.relation_lattice.copy()
    for v in vectors:
        for b in range(X.ring.rank):
            lat.add(X.act(b, v))
    return lat


def full_lattice(X: Module) -> Lattice:
    return Lattice(X.ngens, identity(X.ngens))


def _subquotient(X: Module, big: Lattice, small: Lattice, label="") -> tuple[Module, QuotientGroup]:
    Q = QuotientGroup(big, small)
    gens = Q.generators
    action = []
    m = X.ngens
    for b in range(X.ring.rank):
        A = X.action[b]
        cols = []
        for g in gens:
            img = [sum(A[j][k] * g[k] for k in range(m)) for j in range(m)]
            cols.append(Q.coords(img))
        n = len(gens)
        action.append(tuple(tuple(cols[i][j] for i in range(n)) for j in range(n)))
    N = Module(X.ring, Q.invariants, tuple(_reduce_cols(A, Q.invariants) for A in action), label)
    return N, Q


@dataclass(frozen=True)
class SubquotientResult:
    """A subquotient module with its structure maps.

    ``to_ambient(c)`` lifts coordinates in ``module`` to ``Z^m`` of the
    ambient module; ``from_ambient(v)`` goes back (``v`` must lie in the
    numerator lattice).
    """
    module: Module
    to_ambient: Callable
    from_ambient: Callable


def subquotient(X: Module, big: Lattice, small: Lattice, label="") -> SubquotientResult:
    N, Q = _subquotient(X, big, small, label)
    N2, iso, iso_inv = canonicalize(N)
    if N2 is N:
        return SubquotientResult(N, lambda c: Q.element(c), lambda v: tuple(Q.coords(v)))
    return SubquotientResult(N2, lambda c: Q.element(iso_inv(c)), lambda v: iso(tuple(Q.coords(v))))


def submodule(X: Module, lat: Lattice, label="") -> tuple[Module, Morphism]:
    """``(S, inclusion)`` for the submodule with lattice ``lat``."""
    sq = subquotient(X, lat, X.relation_lattice, label)
    S = sq.module
    cols = [sq.to_ambient([int(k == i) for k in range(S.ngens)]) for i in range(S.ngens)]
    return S, _morph(S, X, cols)


def quotient(X: Module, lat: Lattice, label="") -> tuple[Module, Morphism]:
    """``(X / S, projection)`` for the submodule with lattice ``lat``."""
    sq = subquotient(X, full_lattice(X), lat, label)
    P = sq.module
    cols = [sq.from_ambient([int(k == i) for k in range(X.ngens)]) for i in range(X.ngens)]
    return P, _morph(X, P, cols)


def image_lattice_of(f: Morphism) -> Lattice:
    Y = f.target
    lat = Y.relation_lattice.copy()
    for i in range(f.source.ngens):
        lat.add(list(f.column(i)))
    return lat


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    return submodule(f.source, kernel_lattice_of(f), "ker")


def kernel_lattice_of(f: Morphism) -> Lattice:
    X, Y = f.source, f.target
    if not X.ngens:
        return Lattice(0)
    return kernel_mod([list(r) for r in f.matrix], Y.invariants, X.ngens, ambient_moduli=X.invariants)


def image(f: Morphism) -> tuple[Module, Morphism, Morphism]:
    """``(Im f, inclusion into target, corestriction from source)``."""
    lat = image_lattice_of(f)
    sq = subquotient(f.target, lat, f.target.relation_lattice, "im")
    I = sq.module
    incl = _morph(I, f.target, [sq.to_ambient([int(k == i) for k in range(I.ngens)]) for i in range(I.ngens)])
    cores = _morph(f.source, I, [sq.from_ambient(list(f.column(i))) for i in range(f.source.ngens)])
    return I, incl, cores


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    return quotient(f.target, image_lattice_of(f), "coker")


def direct_sum(X: Module, Y: Module) -> tuple[Module, tuple[Morphism, Morphism], tuple[Morphism, Morphism]]:
    """``(X + Y, (inj_X, inj_Y), (proj_X, proj_Y))``."""
    if X.ring != Y.ring:
        raise BaseMismatch("direct sum over different rings")
    m, n = X.ngens, Y.ngens
    invs = X.invariants + Y.invariants
    action = []
    for b in range(X.ring.rank):
        A, B = X.action[b], Y.action[b]
        rows = [list(A[i]) + [0] * n for i in range(m)] + [[0] * m + list(B[i]) for i in range(n)]
        action.append(rows)
    raw = _raw(X.ring, invs, action, check=False)
    sq = subquotient(raw, full_lattice(raw), raw.relation_lattice, "sum")
    S = sq.module
    e = lambda k, N: [int(t == k) for t in range(N)]  # noqa: E731
    inj_x = _morph(X, S, [sq.from_ambient(e(i, m + n)) for i in range(m)])
    inj_y = _morph(Y, S, [sq.from_ambient(e(m + i, m + n)) for i in range(n)])
    lifts = [sq.to_ambient(e(k, S.ngens)) for k in range(S.ngens)]
    proj_x = _morph(S, X, [v[:m] for v in lifts])
    proj_y = _morph(S, Y, [v[m:] for v in lifts])
    return S, (inj_x, inj_y), (proj_x, proj_y)


def direct_sum_many(mods: Sequence[Module]) -> Module:
    out = mods[0]
    for M in mods[1:]:
        out = direct_sum(out, M)[0]
    return out


def cyclic_submodule(X: Module, v: Sequence[int]) -> Lattice:
    return submodule_lattice(X, [v])


def lattice_order(X: Module, lat: Lattice) -> int:
    """Order of the submodule represented by ``lat``."""
    return X.order // lat.index() * 1 if lat.is_full_rank() else 0


def sub_order(X: Module, lat: Lattice) -> int:
    return X.order // lat.index() if X.ngens else 1


# -- constructors -----------------------------------------------------------

def zero_module(ring: BaseRing) -> Module:
    return Module(ring, (), tuple(() for _ in range(ring.rank)), "0")


def make_finab(factors: Sequence[int], label: str = "") -> Module:
    """Finite abelian group with the given cyclic factors, normalized."""
    if any(int(q) <= 0 for q in factors):
        raise InvalidFactors(f"cyclic factors must be positive: {list(factors)}")
    invs = invariant_factors_of([int(q) for q in factors if int(q) != 1])
    R = integers()
    m = len(invs)
    return Module(R, tuple(invs), (tuple(tuple(int(i == j) for j in range(m)) for i in range(m)),), label)


def normalize(raw: Module, label: str = "") -> Module:
    """Canonical form of a module given on arbitrary cyclic generators."""
    if not raw.ngens:
        return zero_module(raw.ring)
    return subquotient(raw, full_lattice(raw), raw.relation_lattice, label).module


def make_module(ring: BaseRing, invariants: Sequence[int], action: Sequence, label: str = "") -> Module:
    """Validated module from raw data, returned in canonical form."""
    if any(int(q) <= 0 for q in invariants):
        raise InvalidFactors("cyclic orders must be positive")
    keep = [i for i, q in enumerate(invariants) if int(q) != 1]
    invariants = [int(invariants[i]) for i in keep]
    action = [[[A[i][j] for j in keep] for i in keep] for A in action]
    raw = _raw(ring, invariants, action, label)
    return normalize(raw, label)


def make_gamma_module(G: FiniteGroup | BaseRing, invariants: Sequence[int], action, label: str = "") -> Module:
    """Finite Z[G]-module.

    ``action`` is either a list with one matrix per group element or a dict
    ``{element: matrix}`` on a generating set; it is extended by products and
    then checked to be a homomorphism into the automorphisms of the group.
    """
    ring = G if isinstance(G, BaseRing) else group_ring(G)
    G = ring.group
    m = len(invariants)
    if isinstance(action, dict):
        full = {G.identity: identity(m)}
        gens = {int(k): [list(map(int, r)) for r in v] for k, v in action.items()}
        mods = [int(q) for q in invariants]
        frontier = [G.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g, Mg in gens.items():
                    b = G.mul(a, g)
                    prod_ = [[x % q for x in row] for row, q in zip(_mm(full[a], Mg), mods)]
                    if b in full:
                        if any((x - y) % q for r1, r2, q in zip(full[b], prod_, mods) for x, y in zip(r1, r2)):
                            raise NotAnAction(f"generator matrices violate the group relations at element {b}")
                        continue
                    full[b] = prod_
                    nxt.append(b)
            frontier = nxt
        if len(full) != G.order:
            raise NotAnAction("the given elements do not generate the group")
        action = [full[g] for g in range(G.order)]
    if len(action) != G.order:
        raise NotAnAction(f"need one matrix per group element ({G.order})")
    try:
        return make_module(ring, invariants, action, label)
    except NotAnAction:
        raise
    except (ValueError, IndexError) as exc:
        raise NotAnAction(str(exc)) from exc


def trivial_gamma_module(G: FiniteGroup | BaseRing, invariants: Sequence[int], label: str = "") -> Module:
    ring = G if isinstance(G, BaseRing) else group_ring(G)
    m = len(invariants)
    return make_gamma_module(ring, invariants, [identity(m)] * ring.rank, label)


def make_quiver_rep(dim1: int, dim2: int, edge_map, field: FiniteField | None = None, label: str = "") -> Module:
    """Representation ``k^dim1 -> k^dim2`` of the A2 quiver.

    ``edge_map`` is a ``dim2 x dim1`` :class:`FiniteFieldMatrix` (or nested
    lists of field elements together with ``field``).
    """
    if isinstance(edge_map, FiniteFieldMatrix):
        F = edge_map.field
        A = edge_map
    else:
        F = field or finite_field(2)
        rows = [list(r) for r in edge_map] if edge_map else []
        if dim2 and dim1 and not rows:
            rows = [[0] * dim1 for _ in range(dim2)]
        if rows and (len(rows) != dim2 or any(len(r) != dim1 for r in rows)):
            raise DimMismatch(f"edge map must be {dim2} x {dim1}")
        A = FiniteFieldMatrix.from_rows(F, rows, dim2, dim1) if rows else FiniteFieldMatrix.zero(F, dim2, dim1)
    if (A.rows, A.cols) != (dim2, dim1):
        raise DimMismatch(f"edge map must be {dim2} x {dim1}, got {A.rows} x {A.cols}")
    ring = a2_path_algebra(F)
    d, p = F.d, F.p
    N = d * (dim1 + dim2)
    # generator (vertex, i, w) -> index; vertex 1 first
    idx1 = lambda i, w: d * i + w  # noqa: E731
    idx2 = lambda i, w: d * (dim1 + i) + w  # noqa: E731
    action = []
    for b in range(ring.rank):
        w_b, path = divmod(b, 3)
        xb = p ** w_b
        M = [[0] * N for _ in range(N)]
        for i in range(dim1):
            for w in range(d):
                col = idx1(i, w)
                if path == 0:
                    for t, c in enumerate(F.to_vector(F.mul(xb, p ** w))):
                        M[idx1(i, t)][col] = c
                elif path == 2:
                    for j in range(dim2):
                        val = F.mul(F.mul(A.entries[j][i], xb), p ** w)
                        for t, c in enumerate(F.to_vector(val)):
                            M[idx2(j, t)][col] = (M[idx2(j, t)][col] + c) % p
        for i in range(dim2):
            for w in range(d):
                col = idx2(i, w)
                if path == 1:
                    for t, c in enumerate(F.to_vector(F.mul(xb, p ** w))):
                        M[idx2(i, t)][col] = c
        action.append(M)
    raw = _raw(ring, [p] * N, action, label)
    out, _, _ = canonicalize(raw)
    return Module(out.ring, out.invariants, out.action, label)


def simple_rep(vertex: int, F: FiniteField | None = None) -> Module:
    F = F or finite_field(2)
    if vertex == 1:
        return make_quiver_rep(1, 0, FiniteFieldMatrix.zero(F, 0, 1), label="S1")
    return make_quiver_rep(0, 1, FiniteFieldMatrix.zero(F, 1, 0), label="S2")


def projective_rep_p1(F: FiniteField | None = None) -> Module:
    F = F or finite_field(2)
    return make_quiver_rep(1, 1, FiniteFieldMatrix.identity(F, 1), label="P1")


def quiver_edge_matrix(X: Module) -> FiniteFieldMatrix:
    """Edge map of a canonical A2 representation as an F_q matrix."""
    F = X.ring.field
    d1, d2 = X.quiver_dims()
    r = _fp_rank(X.action[2], F.p) // F.d
    ent = [[int(i == j and i < r) for j in range(d1)] for i in range(d2)]
    return FiniteFieldMatrix.from_rows(F, ent, d2, d1)


# -- canonical forms (A2 normal form) ---------------------------------------

def canonicalize(X: Module):
    """``(X', iso, iso_inv)`` with ``X'`` in canonical form.

    ``iso``/``iso_inv`` act on coordinate tuples.  Only A2 representations
    need work; elsewhere the subquotient construction is already canonical.
    """
    if X.ring.kind != "a2" or not X.ngens:
        ident = lambda c: tuple(c)  # noqa: E731
        return X, ident, ident
    F = X.ring.field
    p, d = F.p, F.d
    N = X.ngens
    # scalar multiplication by x^w is the sum of the (e1, w) and (e2, w) actions
    scal = [[[(X.action[3 * w][i][j] + X.action[3 * w + 1][i][j]) % p for j in range(N)] for i in range(N)]
            for w in range(d)]
    E1, E2, A = X.action[0], X.action[1], X.action[2]

    def apply(M, v):
        return [sum(a * x for a, x in zip(row, v)) % p for row in M]

    def cols(M):
        return [[M[i][j] for i in range(N)] for j in range(N)]

    class Span:
        def __init__(self):
            self.lat = Lattice.scaled_identity([p] * N)

        def contains(self, v):
            return list(v) in self.lat

        def add(self, v):
            for S in scal:
                self.lat.add(apply(S, v))

    v1_basis = [c for c in cols(E1)]
    img = Span()
    chosen = []
    for v in v1_basis:
        if not any(v):
            continue
        Av = apply(A, v)
        if any(Av) and not img.contains(Av):
            chosen.append(v)
            img.add(Av)
    # kernel of A on V1: an F_p basis from the lattice kernel
    ker_lat = kernel_mod([list(r) for r in A], [p] * N, N, ambient_moduli=[p] * N)
    v1_lat = Span()
    for v in chosen:
        v1_lat.add(v)
    kernel_part = []
    for v in ker_lat.basis():
        v = [x % p for x in apply(E1, v)]
        if any(v) and not v1_lat.contains(v):
            kernel_part.append(v)
            v1_lat.add(v)
    v2_span = Span()
    v2_basis = []
    for v in chosen:
        Av = apply(A, v)
        v2_basis.append(Av)
        v2_span.add(Av)
    for v in cols(E2):
        if any(v) and not v2_span.contains(v):
            v2_basis.append(v)
            v2_span.add(v)
    new_gens = []
    for v in chosen + kernel_part + v2_basis:
        for S in scal:
            new_gens.append(apply(S, v))
    if len(new_gens) != N:
        raise NotAnAction("representation does not decompose over its vertices")
    P = [[new_gens[j][i] for j in range(N)] for i in range(N)]
    Pinv = _inverse_mod_p(P, p)
    action = []
    for b in range(X.ring.rank):
        B = X.action[b]
        action.append(_mat_mod(_mm(Pinv, _mm([list(r) for r in B], P)), p))
    out = Module(X.ring, X.invariants, tuple(tuple(tuple(r) for r in M) for M in action), X.label)
    iso = lambda c: tuple(apply(Pinv, c))  # noqa: E731
    iso_inv = lambda c: tuple(apply(P, c))  # noqa: E731
    return out, iso, iso_inv


def _mat_mod(M, p):
    return [[x % p for x in r] for r in M]


def _inverse_mod_p(P, p):
    F = finite_field(p)
    n = len(P)
    aug = [[x % p for x in P[i]] + [int(i == j) for j in range(n)] for i in range(n)]
    R, piv = row_reduce(F, aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is not invertible mod p")
    return [r[n:] for r in R[:n]]


# -- Hom ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomGroup:
    """``Hom_R(X, Y)`` as a finite abelian group with explicit generators."""
    source: Module
    target: Module
    invariants: tuple
    generators: tuple
    _quotient: QuotientGroup = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def coords(self, f: Morphism) -> tuple:
        return tuple(self._quotient.coords(_flatten(f)))

    def element(self, coords: Sequence[int]) -> Morphism:
        v = self._quotient.element(coords)
        n = self.target.ngens
        return _morph(self.source, self.target, [v[i * n:(i + 1) * n] for i in range(self.source.ngens)])

    def elements(self) -> Iterable[Morphism]:
        for c in itertools.product(*(range(q) for q in self.invariants)):
            yield self.element(c)


def _flatten(f: Morphism) -> list[int]:
    return [x for i in range(f.source.ngens) for x in f.column(i)]


def hom_constraints(X: Module, Y: Module) -> tuple[list[list[int]], list[int]]:
    """Congruences cutting ``Hom_R(X, Y)`` out of ``Y^m`` (images of generators)."""
    m, n = X.ngens, Y.ngens
    rows, mods = [], []
    for i, q in enumerate(X.invariants):
        for j in range(n):
            row = [0] * (m * n)
            row[i * n + j] = q
            rows.append(row)
            mods.append(Y.invariants[j])
    for b in X.ring.algebra_generators:
        A, B = X.action[b], Y.action[b]
        for i in range(m):
            for j in range(n):
                row = [0] * (m * n)
                for k in range(m):
                    if A[k][i]:
                        row[k * n + j] += A[k][i]
                for t in range(n):
                    row[i * n + t] -= B[j][t]
                rows.append(row)
                mods.append(Y.invariants[j])
    return rows, mods


def hom_group(X: Module, Y: Module) -> HomGroup:
    if X.ring != Y.ring:
        raise BaseMismatch("Hom between modules over different rings")
    m, n = X.ngens, Y.ngens
    amb = list(Y.invariants) * m
    if not amb:
        Q = QuotientGroup(Lattice(0), Lattice(0))
        return HomGroup(X, Y, (), (), Q)
    rows, mods = hom_constraints(X, Y)
    Z = kernel_mod(rows, mods, m * n, ambient_moduli=amb)
    Q = QuotientGroup(Z, Lattice.scaled_identity(amb))
    gens = tuple(_morph(X, Y, [g[i * n:(i + 1) * n] for i in range(m)]) for g in Q.generators)
    return HomGroup(X, Y, tuple(Q.invariants), gens, Q)


def is_injective(f: Morphism) -> bool:
    return kernel_lattice_of(f) == f.source.relation_lattice


def is_surjective(f: Morphism) -> bool:
    return image_lattice_of(f).index() == 1 if f.target.ngens else True


def is_isomorphism(f: Morphism) -> bool:
    return f.source.order == f.target.order and is_injective(f)


def is_isomorphic(X: Module, Y: Module, cap: int = 4096) -> bool:
    """Decide ``X ~ Y``.

    Canonical forms settle Z and A2; for group rings an isomorphism is
    searched among the elements of ``Hom(X, Y)`` (at most ``cap`` of them).
    """
    from .errors import SearchExhausted
    if X.ring != Y.ring:
        raise BaseMismatch("modules over different rings")
    if X.invariants != Y.invariants:
        return False
    if X.ring.kind in ("integers", "a2") or X == Y:
        return X == Y if X.ring.kind == "a2" else True
    H = hom_group(X, Y)
    if H.order > cap:
        raise SearchExhausted(f"|Hom| = {H.order} exceeds the search cap {cap}")
    return any(is_isomorphism(f) for f in H.elements())


def vertex_space(X: Module, vertex: int) -> Module:
    """``e_v X`` as a module over ``e_v A e_v = F_q``.

    For the Serre subcategory of representations supported away from ``v``
    the quotient category is equivalent to modules over this corner ring.
    """
    from .rings import field_ring
    F = X.ring.field
    p, d = F.p, F.d
    R = field_ring(F)
    if not X.ngens:
        return zero_module(R)
    E = X.action[0 if vertex == 1 else 1]
    N = X.ngens
    lat = X.relation_lattice.copy()
    for j in range(N):
        lat.add([E[i][j] for i in range(N)])
    # e_v X is only a subgroup, so work with the bare quotient of lattices
    Q = QuotientGroup(lat, X.relation_lattice)
    n = len(Q.invariants)
    action = []
    for w in range(d):
        b = 3 * w + (0 if vertex == 1 else 1)
        cols = [Q.coords(X.act(b, g)) for g in Q.generators]
        action.append([[cols[i][j] for i in range(n)] for j in range(n)])
    return make_module(R, [p] * n, action, f"e{vertex}X")
