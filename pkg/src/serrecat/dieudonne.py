"""The twisted polynomial ring k[F] and the finite Dieudonné computations.

``k[F]`` has the relation ``F a = a^p F``.  Truncations to F-degree ``<= N``
are finite-dimensional over F_p, so cokernels of ``F - id`` and of ``F`` are
rank computations; each result is reported with its truncation degree and
whether it agrees at ``N + 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import FieldMismatch, ValidationError
from .fields import FiniteField, rank_mod_p


@dataclass(frozen=True)
class TwistedPoly:
    """``sum_i coeffs[i] F^i`` with coefficients encoded as field elements."""
    field: FiniteField
    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if any(not 0 <= x < self.field.q for x in c):
            raise ValueError("coefficient outside the field")
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, F: FiniteField, a: int) -> "TwistedPoly":
        return cls(F, (a,))

    @classmethod
    def frobenius(cls, F: FiniteField, n: int = 1) -> "TwistedPoly":
        return cls(F, (0,) * n + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: "TwistedPoly") -> "TwistedPoly":
        return twisted_mul(self, other)

    def __add__(self, other: "TwistedPoly") -> "TwistedPoly":
        _same_field(self, other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return TwistedPoly(F, tuple(F.add(x, y) for x, y in zip(a, b)))

    def __neg__(self) -> "TwistedPoly":
        return TwistedPoly(self.field, tuple(self.field.neg(x) for x in self.coeffs))

    def __sub__(self, other: "TwistedPoly") -> "TwistedPoly":
        return self + (-other)

    def to_vector(self, N: int) -> list[int]:
        """F_p coordinates in the truncation of degree ``<= N``."""
        F = self.field
        if self.degree > N:
            raise ValueError("polynomial exceeds the truncation degree")
        out = []
        for i in range(N + 1):
            out.extend(F.to_vector(self.coeffs[i] if i < len(self.coeffs) else 0))
        return out

    @classmethod
    def from_vector(cls, F: FiniteField, v: Sequence[int]) -> "TwistedPoly":
        d = F.d
        return cls(F, tuple(F.from_vector(v[i:i + d]) for i in range(0, len(v), d)))

    def __repr__(self):
        terms = [f"{c}*F^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"TwistedPoly[{self.field.name}]({' + '.join(terms) or '0'})"


def _same_field(x: TwistedPoly, y: TwistedPoly) -> None:
    if x.field != y.field:
        raise FieldMismatch(f"{x.field.name} vs {y.field.name}")


def twisted_mul(x: TwistedPoly, y: TwistedPoly) -> TwistedPoly:
    """``(a F^i)(b F^j) = a b^{p^i} F^{i+j}``."""
    _same_field(x, y)
    F = x.field
    if x.is_zero() or y.is_zero():
        return TwistedPoly(F, ())
    out = [0] * (len(x.coeffs) + len(y.coeffs) - 1)
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(y.coeffs):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, F.frob(b, i)))
    return TwistedPoly(F, tuple(out))


def random_poly(F: FiniteField, degree: int, rng: random.Random) -> TwistedPoly:
    return TwistedPoly(F, tuple(rng.randrange(F.q) for _ in range(degree + 1)))


def _basis_polys(F: FiniteField, N: int) -> list[TwistedPoly]:
    """F_p basis ``x^w F^i`` of polynomials of degree ``< N``."""
    return [TwistedPoly(F, (0,) * i + (F.p ** w,)) for i in range(N) for w in range(F.d)]


def _map_matrix(F: FiniteField, N: int, fn, out_degree: int) -> list[list[int]]:
    cols = [fn(b).to_vector(out_degree) for b in _basis_polys(F, N)]
    rows = (out_degree + 1) * F.d
    return [[c[i] for c in cols] for i in range(rows)]


@dataclass(frozen=True)
class CokernelReport:
    """Cokernel of an F_p-linear map on truncated ``k[F]``."""
    field: str
    truncation: int
    dim_fp: int
    dim_k: int
    stabilized: bool
    representative: TwistedPoly | None = None
    section_table: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        out = {"field": self.field, "truncation": self.truncation, "dim_fp": self.dim_fp,
               "dim_k": self.dim_k, "stabilized": self.stabilized}
        if self.representative is not None:
            out["representative"] = list(self.representative.coeffs)
        if self.section_table:
            out["section_table"] = [list(r) for r in self.section_table]
        return out


def _coker_dim(F: FiniteField, N: int, fn) -> int:
    M = _map_matrix(F, N, fn, N)
    return (N + 1) * F.d - rank_mod_p(M, F.p, N * F.d)


def f_minus_id(x: TwistedPoly) -> TwistedPoly:
    return twisted_mul(TwistedPoly.frobenius(x.field), x) - x


def f_times(x: TwistedPoly) -> TwistedPoly:
    return twisted_mul(TwistedPoly.frobenius(x.field), x)


def section_phi(x: TwistedPoly) -> int:
    """``phi(sum t_i F^i) = sum t_i^{p^{-i}}``; vanishes on the image of ``F - id``."""
    F = x.field
    acc = 0
    for i, t in enumerate(x.coeffs):
        acc = F.add(acc, F.frob(t, -i))
    return acc


def coker_F_minus_id(F: FiniteField, N: int) -> CokernelReport:
    """Cokernel of ``x -> F x - x`` from degree ``< N`` to degree ``<= N``."""
    if N < 2:
        raise ValueError("truncation degree must be at least 2")
    dim = _coker_dim(F, N, f_minus_id)
    nxt = _coker_dim(F, N + 1, f_minus_id)
    # phi on the F_p basis x^w F^i of the target
    table = tuple((i, w, section_phi(TwistedPoly(F, (0,) * i + (F.p ** w,))))
                  for i in range(N + 1) for w in range(F.d))
    stable = dim == nxt and dim % F.d == 0
    return CokernelReport(F.name, N, dim, dim // F.d, stable, TwistedPoly.constant(F, 1), table)


def coker_F(F: FiniteField, N: int) -> CokernelReport:
    """Cokernel of ``x -> F x``: the constants."""
    if N < 1:
        raise ValueError("truncation degree must be at least 1")
    dim = _coker_dim(F, N, f_times)
    nxt = _coker_dim(F, N + 1, f_times)
    stable = dim == nxt and dim % F.d == 0
    return CokernelReport(F.name, N, dim, dim // F.d, stable, TwistedPoly.constant(F, 1))


def phi_image_codim(F: FiniteField, N: int) -> int:
    """F_p-codimension of ``ker(phi)`` in polynomials of degree ``<= N``."""
    M = [[0] * ((N + 1) * F.d) for _ in range(F.d)]
    for i in range(N + 1):
        for w in range(F.d):
            v = F.to_vector(section_phi(TwistedPoly(F, (0,) * i + (F.p ** w,))))
            for r in range(F.d):
                M[r][i * F.d + w] = v[r]
    return rank_mod_p(M, F.p)


def injectivity_probe_F_pushforward(n: int, N: int, F: FiniteField) -> bool:
    """Left multiplication by ``F^n`` on degree ``<= N`` is injective."""
    if n < 1:
        raise ValueError("power must be positive")
    Fn = TwistedPoly.frobenius(F, n)
    M = _map_matrix(F, N + 1, lambda x: twisted_mul(Fn, x), N + n)
    return rank_mod_p(M, F.p, (N + 1) * F.d) == (N + 1) * F.d


# -- V-modules ----------------------------------------------------------------------

@dataclass(frozen=True)
class VModule:
    """``k^n`` with a ``p^{-1}``-semilinear nilpotent ``V``.

    ``V(a e_j) = a^{1/p} sum_i matrix[i][j] e_i``.
    """
    field: FiniteField
    matrix: tuple

    def __post_init__(self):
        n = self.dim
        if any(len(r) != n for r in self.matrix):
            raise ValidationError("V matrix must be square")
        if n and not self._nilpotent():
            raise ValidationError("V is not nilpotent")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def prime_matrix(self) -> list[list[int]]:
        """F_p matrix of ``V`` on the basis ``x^w e_j``."""
        F, n, d = self.field, self.dim, self.field.d
        cols = []
        for j in range(n):
            for w in range(d):
                a = F.frob(F.p ** w, -1)
                img = []
                for i in range(n):
                    img.extend(F.to_vector(F.mul(a, self.matrix[i][j])))
                cols.append(img)
        return [[c[r] for c in cols] for r in range(n * d)]

    def _nilpotent(self) -> bool:
        P = self.prime_matrix()
        p, N = self.field.p, len(P)
        cur = P
        for _ in range(self.dim):
            if all(x == 0 for r in cur for x in r):
                return True
            cur = [[sum(a * b for a, b in zip(r, c)) % p for c in zip(*P)] for r in cur]
        return all(x == 0 for r in cur for x in r) if N else True

    @property
    def nilpotency_index(self) -> int:
        P = self.prime_matrix()
        p = self.field.p
        cur, k = [[int(i == j) for j in range(len(P))] for i in range(len(P))], 0
        while any(x for r in cur for x in r):
            cur = [[sum(a * b for a, b in zip(r, c)) % p for c in zip(*P)] for r in cur]
            k += 1
        return k


def ext_D_against_Ga(i: int, M: VModule) -> int:
    """``dim_k Ext^i(M, G_a)`` from the resolution ``0 -> D --V--> D -> D/DV -> 0``.

    Applying Hom gives the two-term complex ``M --V--> M`` in degrees 0, 1.
    """
    if i < 0:
        raise ValueError("degree must be non-negative")
    d = M.field.d
    n = M.dim * d
    if i >= 2 or not n:
        return 0
    r = rank_mod_p(M.prime_matrix(), M.field.p, n)
    dim_fp = n - r  # kernel and cokernel have the same F_p dimension
    return dim_fp // d


def random_vmodule(F: FiniteField, n: int, rng: random.Random) -> VModule:
    """Strictly upper triangular ``V`` conjugated by a random permutation."""
    perm = list(range(n))
    rng.shuffle(perm)
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[perm[i]][perm[j]] = rng.randrange(F.q)
    return VModule(F, tuple(tuple(r) for r in A))


def jordan_vmodule(F: FiniteField, n: int) -> VModule:
    return VModule(F, tuple(tuple(int(j == i + 1) for j in range(n)) for i in range(n)))
