"""Cohomology of finite groups and the dimension formula for Γ-mod_ℓ.

``H^i(Γ, M)`` is computed from normalized inhomogeneous bar cochains
(dense tables ``Γ^i -> M``) while these fit a work budget, and otherwise from
a free resolution of trivial ``Z`` over ``Z[Γ]``.  The two routes are
independent; the test-suite compares them wherever the bar complex fits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Sequence

from .errors import BudgetExceeded, NotEllPrimary
from .groups import FiniteGroup
from .linalg import Lattice, QuotientGroup, identity, kernel_mod
from .modules import Module, is_isomorphic, make_finab, make_gamma_module, trivial_gamma_module
from .resolution import FreeResolution, cochain_cohomology, ext_group
from .rings import BaseRing, group_ring

MAX_GROUP_ORDER = 12
MAX_DEGREE = 5
BAR_WORK_LIMIT = 3_000_000


@dataclass(frozen=True)
class CohomologyGroup:
    """``H^i(Γ, M)``.

    For the bar method each cocycle is a dict from ``i``-tuples of group
    elements to coordinate tuples of ``M`` (a full table, zero on tuples
    containing the identity).  For the resolution method cocycles are
    cochains on the resolution.
    """
    degree: int
    invariants: tuple
    cocycles: tuple
    method: str

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def to_json(self) -> dict:
        return {"degree": self.degree, "invariants": list(self.invariants), "method": self.method}


def _group_of(M: Module) -> FiniteGroup:
    if M.ring.kind != "group_ring":
        raise ValueError("cohomology needs a module over a group ring")
    return M.ring.group


def _tuples(G: FiniteGroup, i: int) -> list[tuple]:
    nonid = [g for g in range(G.order) if g != G.identity]
    return list(itertools.product(nonid, repeat=i))


def bar_coboundary(G: FiniteGroup, M: Module, i: int) -> tuple[list[list[int]], list[tuple], list[tuple]]:
    """Matrix of ``d: C^i -> C^{i+1}`` on normalized cochains, with the index tuples."""
    src, tgt = _tuples(G, i), _tuples(G, i + 1)
    pos = {t: k for k, t in enumerate(src)}
    m = M.ngens
    rows = [[0] * (len(src) * m) for _ in range(len(tgt) * m)]
    e = G.identity

    def add(r0, key, sign, mat=None):
        if e in key:
            return
        c0 = pos[key] * m
        for u in range(m):
            row = rows[r0 + u]
            if mat is None:
                row[c0 + u] += sign
            else:
                for v in range(m):
                    if mat[u][v]:
                        row[c0 + v] += sign * mat[u][v]

    for k, t in enumerate(tgt):
        r0 = k * m
        add(r0, t[1:], 1, M.action[t[0]])
        for j in range(i):
            merged = t[:j] + (G.mul(t[j], t[j + 1]),) + t[j + 2:]
            add(r0, merged, -1 if j % 2 == 0 else 1)
        add(r0, t[:-1], 1 if (i + 1) % 2 == 0 else -1)
    return rows, src, tgt


def _bar_cost(G: FiniteGroup, M: Module, i: int) -> int:
    n = G.order - 1
    cols = n ** i * M.ngens
    return n ** (i + 1) * M.ngens * max(cols, 1) ** 2


def bar_cohomology(i: int, M: Module) -> CohomologyGroup:
    G = _group_of(M)
    if i < 0:
        raise ValueError("degree must be non-negative")
    if G.order > MAX_GROUP_ORDER or i > MAX_DEGREE:
        raise BudgetExceeded(f"bar complex limited to |Γ| <= {MAX_GROUP_ORDER} and degree <= {MAX_DEGREE}")
    if _bar_cost(G, M, i) > BAR_WORK_LIMIT:
        raise BudgetExceeded(f"bar complex in degree {i} over a group of order {G.order} exceeds the work budget")
    m = M.ngens
    if not m:
        return CohomologyGroup(i, (), (), "bar")
    D, src, tgt = bar_coboundary(G, M, i)
    mods = list(M.invariants) * len(src)
    dim = len(mods)
    if not dim:
        return CohomologyGroup(i, (), (), "bar")
    Z = kernel_mod(D, list(M.invariants) * len(tgt), dim, ambient_moduli=mods) if D else \
        Lattice(dim, identity(dim))
    B = Lattice.scaled_identity(mods)
    if i > 0:
        Dp, _, _ = bar_coboundary(G, M, i - 1)
        for col in zip(*Dp):
            B.add(list(col))
    Q = QuotientGroup(Z, B)
    cocycles = []
    for g in Q.generators:
        table = {t: tuple(0 for _ in range(m)) for t in itertools.product(range(G.order), repeat=i)}
        for k, t in enumerate(src):
            table[t] = tuple(x % q for x, q in zip(g[k * m:(k + 1) * m], M.invariants))
        cocycles.append(table)
    return CohomologyGroup(i, tuple(Q.invariants), tuple(cocycles), "bar")


def is_bar_cocycle(G: FiniteGroup, M: Module, table: dict, i: int) -> bool:
    """Direct check of the cocycle identity on a full table."""
    for t in itertools.product(range(G.order), repeat=i + 1):
        acc = list(M.act(t[0], table[t[1:]]))
        for j in range(i):
            val = table[t[:j] + (G.mul(t[j], t[j + 1]),) + t[j + 2:]]
            s = -1 if j % 2 == 0 else 1
            acc = [a + s * v for a, v in zip(acc, val)]
        s = 1 if (i + 1) % 2 == 0 else -1
        acc = [a + s * v for a, v in zip(acc, table[t[:-1]])]
        if any(a % q for a, q in zip(acc, M.invariants)):
            return False
    return True


@lru_cache(maxsize=None)
def _z_resolution(ring: BaseRing) -> FreeResolution:
    return FreeResolution.of_integers(ring)


def resolution_cohomology(i: int, M: Module) -> CohomologyGroup:
    _group_of(M)
    res = _z_resolution(M.ring)
    invs, cocycles, _ = cochain_cohomology(res, M, i)
    return CohomologyGroup(i, invs, cocycles, "resolution")


def group_cohomology(i: int, G: FiniteGroup | None, M: Module, method: str = "auto") -> CohomologyGroup:
    """``H^i(Γ, M)``; ``method`` is ``bar``, ``resolution`` or ``auto``."""
    if G is not None and M.ring.group is not None and G.table != M.ring.group.table:
        raise ValueError("module is over a different group")
    if method == "bar":
        return bar_cohomology(i, M)
    if method == "resolution":
        return resolution_cohomology(i, M)
    try:
        return bar_cohomology(i, M)
    except BudgetExceeded:
        return resolution_cohomology(i, M)


def fixed_points_order(M: Module) -> int:
    """``|M^Γ|`` by enumeration (for the degree-0 sanity check)."""
    G = _group_of(M)
    return sum(1 for v in M.elements() if all(tuple(M.act(g, v)) == tuple(v) for g in range(G.order)))


# -- constructions --------------------------------------------------------------

def _module_from_quotient(ring: BaseRing, Q: QuotientGroup, op, label: str = "") -> Module:
    """Γ-module on ``Q = big/small`` with ``g`` acting on lifts through ``op(g, vec)``."""
    G = ring.group
    n = len(Q.invariants)
    mats = []
    for g in range(G.order):
        cols = [Q.coords(op(g, v)) for v in Q.generators]
        mats.append([[cols[i][j] for i in range(n)] for j in range(n)])
    return make_gamma_module(ring, list(Q.invariants), mats, label)


def _inverse_matrix(M: Module, g: int):
    return M.action[M.ring.group.inv(g)]


def ell_dual(M: Module, ell: int, k: int) -> Module:
    """``Hom(M, Z/ell^k)`` with the contragredient action."""
    q = ell ** k
    if any(q % d for d in M.invariants):
        raise NotEllPrimary(f"module is not killed by {ell}^{k}")
    G = _group_of(M)
    d = M.invariants
    m = len(d)
    mats = []
    for g in range(G.order):
        A = _inverse_matrix(M, g)
        mats.append([[A[i][j] * d[j] // d[i] for i in range(m)] for j in range(m)])
    return make_gamma_module(M.ring, list(d), mats, f"dual({M.label})" if M.label else "dual")


def coinduced(G: FiniteGroup | BaseRing, A: Sequence[int]) -> Module:
    """``Maps(Γ, A)`` with ``(g f)(h) = f(h g)``, for a finite abelian ``A``."""
    ring = G if isinstance(G, BaseRing) else group_ring(G)
    G = ring.group
    A = list(make_finab(A).invariants)
    a = len(A)
    n = G.order
    mats = []
    for g in range(n):
        M = [[0] * (n * a) for _ in range(n * a)]
        # basis delta_h * e_t ; g . (delta_h) = delta_{h g^{-1}}
        for h in range(n):
            h2 = G.mul(h, G.inv(g))
            for t in range(a):
                M[h2 * a + t][h * a + t] = 1
        mats.append(M)
    return make_gamma_module(ring, A * n, mats, "coinduced")


def regular_module(G: FiniteGroup | BaseRing, ell: int) -> Module:
    """``F_ell[Γ]`` with left multiplication."""
    ring = G if isinstance(G, BaseRing) else group_ring(G)
    G = ring.group
    n = G.order
    mats = [[[int(G.mul(g, h) == k) for h in range(n)] for k in range(n)] for g in range(n)]
    return make_gamma_module(ring, [ell] * n, mats, f"F{ell}[G]")


def underlying(M: Module) -> Module:
    return make_finab(M.invariants)


def hom_z_module(X: Module, Y: Module) -> Module:
    """``Hom_Z(X, Y)`` with ``(g f)(x) = g f(g^{-1} x)``."""
    from .modules import hom_group
    H = hom_group(underlying(X), underlying(Y))
    Q = H._quotient
    m, n = X.ngens, Y.ngens
    G = _group_of(X)

    def op(g, vec):
        A = _inverse_matrix(X, g)
        B = Y.action[g]
        cols = [vec[i * n:(i + 1) * n] for i in range(m)]
        out = []
        for i in range(m):
            # f(g^{-1} e_i) = sum_k A[k][i] f(e_k)
            w = [sum(A[k][i] * cols[k][t] for k in range(m)) for t in range(n)]
            out.extend(sum(B[s][t] * w[t] for t in range(n)) for s in range(n))
        return out

    del G
    return _module_from_quotient(X.ring, Q, op, "Hom")


def ext1_z_module(X: Module, Y: Module) -> Module:
    """``Ext^1_Z(X, Y) = Y^m / (d_i Y)_i`` with the induced Γ-action."""
    d = X.invariants
    m, n = X.ngens, Y.ngens
    mods = list(Y.invariants) * m
    big = Lattice(m * n, identity(m * n))
    small = Lattice.scaled_identity(mods)
    for i in range(m):
        for t in range(n):
            v = [0] * (m * n)
            v[i * n + t] = d[i]
            small.add(v)
    Q = QuotientGroup(big, small)

    def op(g, vec):
        # lift of g^{-1} to the relation module: Q_{jk} = A[j][k] d_k / d_j
        A = _inverse_matrix(X, g)
        B = Y.action[g]
        cols = [vec[i * n:(i + 1) * n] for i in range(m)]
        out = []
        for i in range(m):
            w = [sum(A[k][i] * d[i] // d[k] * cols[k][t] for k in range(m)) for t in range(n)]
            out.extend(sum(B[s][t] * w[t] for t in range(n)) for s in range(n))
        return out

    return _module_from_quotient(X.ring, Q, op, "Ext1")


# -- probes ---------------------------------------------------------------------------

def default_sample(G: FiniteGroup | BaseRing, ell: int) -> list[Module]:
    """Deterministic ℓ-primary Γ-modules used by the probes."""
    ring = G if isinstance(G, BaseRing) else group_ring(G)
    out = [trivial_gamma_module(ring, [ell], f"Z/{ell}"), trivial_gamma_module(ring, [ell * ell], f"Z/{ell * ell}")]
    if ring.rank > 1 and ell ** ring.rank <= 64:
        out.append(regular_module(ring, ell))
    # sign-type modules: Z/ell twisted by a character of order 2
    if ell > 2:
        for chi in _order_two_characters(ring.group):
            mats = [[[1 if chi[g] == 0 else ell - 1]] for g in range(ring.rank)]
            out.append(make_gamma_module(ring, [ell], mats, f"Z/{ell}(sign)"))
    return out


def _order_two_characters(G: FiniteGroup) -> list[list[int]]:
    """Homomorphisms ``Γ -> Z/2`` other than the trivial one (exhaustive, tiny groups)."""
    gens = G.generators
    out = []
    for vals in itertools.product((0, 1), repeat=len(gens)):
        if not any(vals):
            continue
        chi = {G.identity: 0}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for g, v in zip(gens, vals):
                    b = G.mul(a, g)
                    val = (chi[a] + v) % 2
                    if b in chi:
                        ok = ok and chi[b] == val
                    else:
                        chi[b] = val
                        nxt.append(b)
            frontier = nxt
        if ok and len(chi) == G.order:
            out.append([chi[g] for g in range(G.order)])
    return out


@dataclass(frozen=True)
class CdProbe:
    """``value`` is 0 when vanishing was certified up to ``bound``; otherwise
    ``evidence_degree`` is the least degree with nonzero cohomology."""
    group: str
    ell: int
    bound: int
    value: int | None
    evidence_degree: int | None
    certificate: tuple = field(default=())

    def to_json(self) -> dict:
        return {"group": self.group, "ell": self.ell, "bound": self.bound, "value": self.value,
                "evidence_degree": self.evidence_degree,
                "certificate": [list(c) for c in self.certificate]}


def cd_ell_probe(G: FiniteGroup, ell: int, bound: int) -> CdProbe:
    ring = group_ring(G)
    family = default_sample(ring, ell)
    cert = []
    for i in range(1, bound + 1):
        for M in family:
            H = group_cohomology(i, G, M)
            cert.append((M.label, i, H.order))
            if H.order > 1:
                return CdProbe(G.name, ell, bound, None, i, tuple(cert))
    return CdProbe(G.name, ell, bound, 0, None, tuple(cert))


@dataclass(frozen=True)
class GammaHdProbe:
    group: str
    ell: int
    bound: int
    max_degree: int
    nonzero_degrees: tuple
    table: tuple
    bound_violations: tuple

    def to_json(self) -> dict:
        return {"group": self.group, "ell": self.ell, "bound": self.bound, "max_degree": self.max_degree,
                "nonzero_degrees": list(self.nonzero_degrees),
                "table": [list(r) for r in self.table], "bound_violations": list(self.bound_violations)}


def spectral_bound(n: int, X: Module, Y: Module) -> int:
    """``|H^n(Γ, Hom_Z(X, Y))| * |H^{n-1}(Γ, Ext^1_Z(X, Y))|``."""
    a = group_cohomology(n, None, hom_z_module(X, Y)).order
    b = group_cohomology(n - 1, None, ext1_z_module(X, Y)).order if n >= 1 else 1
    return a * b


def hd_gamma_mod_probe(G: FiniteGroup, ell: int, degree_bound: int,
                       sample: Sequence[Module] | None = None, check_bound: bool = True) -> GammaHdProbe:
    """Largest ``d <= degree_bound`` with ``Ext^d != 0`` over sampled pairs."""
    ring = group_ring(G)
    sample = list(sample) if sample is not None else default_sample(ring, ell)
    for M in sample:
        if M.order > 64:
            raise BudgetExceeded("sampled modules must have order <= 64")
        if any(M.order % p == 0 for p in range(2, M.order + 1) if p != ell and _is_prime(p)):
            raise NotEllPrimary(f"{M!r} is not {ell}-primary")
    rows, bad, nonzero = [], [], set()
    for X, Y in itertools.product(sample, repeat=2):
        for n in range(degree_bound + 1):
            E = ext_group(n, X, Y)
            rows.append((X.label, Y.label, n, E.order))
            if E.order > 1:
                nonzero.add(n)
            if check_bound and n >= 1:
                b = spectral_bound(n, X, Y)
                if b % E.order:
                    bad.append(f"{X.label},{Y.label},{n}: {E.order} does not divide {b}")
    top = max(nonzero) if nonzero else 0
    return GammaHdProbe(G.name, ell, degree_bound, top, tuple(sorted(nonzero)), tuple(rows), tuple(bad))


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def double_dual_isomorphic(M: Module, ell: int, k: int) -> bool:
    return is_isomorphic(ell_dual(ell_dual(M, ell, k), ell, k), M)
