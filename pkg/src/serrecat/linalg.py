"""Exact integer linear algebra.

Everything here works with plain Python integers (arbitrary precision) and
matrices stored as lists of rows.  The public operations are

* :func:`smith_normal_form` -- unimodular ``left``/``right`` with
  ``left @ A @ right`` diagonal and a divisor chain on the diagonal,
* :func:`cokernel_invariants` -- invariant factors of ``Z^rows / colspan(A)``,
* :func:`kernel_lattice` -- a Z-basis of ``{x : A x = 0}``,
* :func:`solve_modular` -- one solution of ``A x = b`` modulo per-row moduli.

The :class:`Lattice` class (row Hermite form built by insertion) and
:func:`kernel_mod` are the workhorses used by the module layer; the
:func:`quotient_structure` helper turns a pair of full-rank lattices
``small <= big`` into an explicit finite abelian group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import Unsolvable

Matrix = list  # list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# -- small matrix helpers -------------------------------------------------

def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    if not A:
        return []
    if not B:
        ncols = cols if cols is not None else 0
        return [[0] * ncols for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# -- Smith normal form ----------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ A @ right == diag(diag)`` padded with zeros to ``A``'s shape.

    ``left_inv`` is the inverse of ``left``; it is what turns cokernel
    coordinates back into ambient vectors.
    """
    left: tuple
    diag: tuple
    right: tuple
    left_inv: tuple
    rows: int
    cols: int

    def diagonal_matrix(self) -> Matrix:
        D = zeros(self.rows, self.cols)
        for i, d in enumerate(self.diag):
            D[i][i] = d
        return D


def _smith(A: Matrix, rows: int, cols: int, track: bool = True):
    D = [list(r) for r in A]
    L = identity(rows) if track else None
    Linv = identity(rows) if track else None
    R = identity(cols) if track else None

    def row_op(i, k, q):
        # row_i -= q * row_k
        Di, Dk = D[i], D[k]
        for j in range(cols):
            if Dk[j]:
                Di[j] -= q * Dk[j]
        if track:
            Li, Lk = L[i], L[k]
            for j in range(rows):
                if Lk[j]:
                    Li[j] -= q * Lk[j]
            # inverse: column_k += q * column_i
            for r in Linv:
                r[k] += q * r[i]

    def col_op(j, k, q):
        # col_j -= q * col_k
        for r in D:
            if r[k]:
                r[j] -= q * r[k]
        if track:
            for r in R:
                if r[k]:
                    r[j] -= q * r[k]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        if track:
            L[i], L[k] = L[k], L[i]
            for r in Linv:
                r[i], r[k] = r[k], r[i]

    def swap_cols(j, k):
        for r in D:
            r[j], r[k] = r[k], r[j]
        if track:
            for r in R:
                r[j], r[k] = r[k], r[j]

    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest |entry| in the trailing block, ties -> lowest (row, col)
        best = None
        for i in range(t, rows):
            Di = D[i]
            for j in range(t, cols):
                a = Di[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    row_op(i, t, D[i][t] // p)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if D[t][j]:
                    col_op(j, t, D[t][j] // p)
                    if D[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: pivot must divide the whole trailing block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(t, bad, -1)
                continue
            # a remainder is smaller than the pivot: re-pivot inside row/col t
            best = None
            for i in range(t, rows):
                a = D[i][t]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, t)
            for j in range(t, cols):
                a = D[t][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), t, j)
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if track:
                L[t] = [-x for x in L[t]]
                for r in Linv:
                    r[t] = -r[t]
        diag.append(D[t][t])
        t += 1
    return diag, L, R, Linv


def _freeze(M):
    return tuple(tuple(r) for r in M)


def smith_normal_form(A: Matrix, rows: int | None = None, cols: int | None = None) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    The diagonal lists one entry per index ``i < min(rows, cols)``; zeros are
    kept so that ``diag`` always has length ``min(rows, cols)``.
    """
    rows = len(A) if rows is None else rows
    cols = (len(A[0]) if A else 0) if cols is None else cols
    diag, L, R, Linv = _smith(A, rows, cols, track=True)
    diag = diag + [0] * (min(rows, cols) - len(diag))
    return SmithDecomposition(_freeze(L), tuple(diag), _freeze(R), _freeze(Linv), rows, cols)


def cokernel_invariants(A: Matrix, rows: int | None = None, cols: int | None = None) -> list[int]:
    """Invariant factors of ``Z^rows / colspan(A)``; ones dropped, 0 per free summand."""
    rows = len(A) if rows is None else rows
    cols = (len(A[0]) if A else 0) if cols is None else cols
    diag, *_ = _smith(A, rows, cols, track=False)
    rank = sum(1 for d in diag if d)
    return [d for d in diag if d > 1] + [0] * (rows - rank)


# -- lattices ------------------------------------------------------------

class Lattice:
    """A sublattice of ``Z^dim`` kept in row Hermite normal form.

    Vectors are inserted one at a time; pivots are positive and entries
    above a pivot are reduced into ``[0, pivot)``.
    """

    __slots__ = ("dim", "_rows")

    def __init__(self, dim: int, vectors: Sequence[Sequence[int]] = ()):
        self.dim = dim
        self._rows: dict[int, list[int]] = {}
        for v in vectors:
            self.add(v)

    @classmethod
    def scaled_identity(cls, moduli: Sequence[int]) -> "Lattice":
        lat = cls(len(moduli))
        for i, q in enumerate(moduli):
            if q:
                row = [0] * len(moduli)
                row[i] = abs(q)
                lat._rows[i] = row
        return lat

    def copy(self) -> "Lattice":
        other = Lattice(self.dim)
        other._rows = {k: r[:] for k, r in self._rows.items()}
        return other

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def add(self, vec: Sequence[int]) -> bool:
        """Insert ``vec``; return True when the lattice grew."""
        v = list(vec)
        rows = self._rows
        n = self.dim
        grew = False
        for j in range(n):
            c = v[j]
            if not c:
                continue
            b = rows.get(j)
            if b is None:
                if c < 0:
                    v = [-x for x in v]
                rows[j] = v
                self._reduce_row(j)
                return True
            a = b[j]
            if c % a == 0:
                q = c // a
                for k in range(j, n):
                    if b[k]:
                        v[k] -= q * b[k]
                continue
            g, x, y = xgcd(a, c)
            ag, cg = a // g, c // g
            nb = [0] * n
            nv = [0] * n
            for k in range(j, n):
                bk, vk = b[k], v[k]
                nb[k] = x * bk + y * vk
                nv[k] = ag * vk - cg * bk
            rows[j] = nb
            self._reduce_row(j)
            v = nv
            grew = True
        return grew

    def _reduce_row(self, j: int) -> None:
        # size-reduce row j against later pivots, then earlier rows against j
        rows = self._rows
        r = rows[j]
        for k in sorted(p for p in rows if p > j):
            piv = rows[k]
            q = r[k] // piv[k]
            if q:
                for t in range(k, self.dim):
                    if piv[t]:
                        r[t] -= q * piv[t]
        for i in sorted(p for p in rows if p < j):
            ri = rows[i]
            q = ri[j] // r[j]
            if q:
                for t in range(j, self.dim):
                    if r[t]:
                        ri[t] -= q * r[t]

    def add_all(self, vectors) -> None:
        for v in vectors:
            self.add(v)

    def __contains__(self, vec) -> bool:
        return self.coefficients(vec) is not None

    def coefficients(self, vec: Sequence[int]) -> list[int] | None:
        """Coordinates of ``vec`` in :meth:`basis` order, or None if outside."""
        v = list(vec)
        rows = self._rows
        coeffs = []
        for j in range(self.dim):
            b = rows.get(j)
            if b is None:
                if v[j]:
                    return None
                continue
            if v[j] % b[j]:
                return None
            q = v[j] // b[j]
            coeffs.append(q)
            if q:
                for k in range(j, self.dim):
                    if b[k]:
                        v[k] -= q * b[k]
        return coeffs

    def canonicalize(self) -> None:
        rows = self._rows
        piv = sorted(rows)
        for a, i in enumerate(piv):
            r = rows[i]
            for k in piv[a + 1:]:
                q = r[k] // rows[k][k]
                if q:
                    pk = rows[k]
                    for t in range(k, self.dim):
                        if pk[t]:
                            r[t] -= q * pk[t]

    def basis(self) -> list[list[int]]:
        self.canonicalize()
        return [self._rows[j][:] for j in self.pivots()]

    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    def index(self) -> int:
        """``[Z^dim : L]`` for a full-rank lattice."""
        if not self.is_full_rank():
            raise ValueError("index of a lattice that is not full rank")
        return prod(self._rows[j][j] for j in range(self.dim))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.dim == other.dim and self.basis() == other.basis()

    def __le__(self, other: "Lattice") -> bool:
        return all(v in other for v in self.basis())

    def __repr__(self) -> str:
        return f"Lattice(dim={self.dim}, rank={self.rank})"


def kernel_mod(C: Matrix, moduli: Sequence[int], ncols: int,
               start: Sequence[Sequence[int]] | None = None,
               ambient_moduli: Sequence[int] | None = None) -> Lattice:
    """Lattice ``{x in start : C x = 0 (mod moduli)}`` row by row.

    A modulus of 0 means exact equality.  ``start`` defaults to ``Z^ncols``.
    ``ambient_moduli`` may be given when ``diag(ambient_moduli)`` is known to
    lie in the kernel; it keeps intermediate entries small.
    """
    basis = [r[:] for r in start] if start is not None else identity(ncols)
    extra = ([[q * (i == j) for j in range(ncols)] for i, q in enumerate(ambient_moduli)]
             if ambient_moduli is not None else [])
    for row, q in zip(C, moduli):
        if not basis:
            break
        q = abs(q)
        vals = [sum(a * b for a, b in zip(row, v)) for v in basis]
        if q:
            vals = [x % q for x in vals]
        # collapse vals to (g, 0, ..., 0) by unimodular basis changes
        head = None
        for i, x in enumerate(vals):
            if not x:
                continue
            if head is None:
                head = i
                continue
            a = vals[head]
            g, s, t = xgcd(a, x)
            ag, xg = a // g, x // g
            bh, bi = basis[head], basis[i]
            basis[head] = [s * u + t * w for u, w in zip(bh, bi)]
            basis[i] = [ag * w - xg * u for u, w in zip(bh, bi)]
            vals[head], vals[i] = g, 0
        if head is None:
            continue
        g = vals[head]
        if q:
            m = q // gcd(g, q)
            if m != 1:
                basis[head] = [m * u for u in basis[head]]
        else:
            del basis[head]
        lat = Lattice(ncols, basis + extra)
        basis = lat.basis()
    return Lattice(ncols, basis + extra)


def kernel_lattice(A: Matrix, cols: int | None = None) -> Matrix:
    """Z-basis of ``{x : A x = 0}`` returned as the columns of a matrix."""
    cols = (len(A[0]) if A else 0) if cols is None else cols
    lat = kernel_mod(A, [0] * len(A), cols)
    basis = lat.basis()
    return transpose(basis) if basis else [[] for _ in range(cols)]


def solve_integer(A: Matrix, b: Sequence[int], cols: int) -> list[int] | None:
    """One integer solution of ``A x = b`` or None."""
    rows = len(A)
    snf = smith_normal_form(A, rows, cols)
    c = matvec([list(r) for r in snf.left], b)
    y = [0] * cols
    for i in range(rows):
        d = snf.diag[i] if i < len(snf.diag) else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec([list(r) for r in snf.right], y) if cols else []


def solve_modular(A: Matrix, b: Sequence[int], moduli: Sequence[int], cols: int | None = None) -> list[int]:
    """Return ``x`` with ``A x = b`` modulo the per-row moduli.

    Raises :class:`~serrecat.errors.Unsolvable` when there is no solution.
    Entries of the returned solution are reduced into ``[0, lcm)`` where
    ``lcm`` is the least common multiple of the nonzero moduli.
    """
    rows = len(A)
    if len(moduli) != rows:
        raise ValueError("need one modulus per row")
    cols = (len(A[0]) if A else 0) if cols is None else cols
    extra = [i for i, q in enumerate(moduli) if q]
    aug = [list(A[i]) + [moduli[i] if i == e else 0 for e in extra] for i in range(rows)]
    y = solve_integer(aug, b, cols + len(extra))
    if y is None:
        raise Unsolvable("congruence system has no solution")
    x = y[:cols]
    nz = [abs(q) for q in moduli if q]
    if nz and all(moduli):
        L = 1
        for q in nz:
            L = L * q // gcd(L, q)
        x = [xi % L for xi in x]
    return x


# -- finite quotients of full-rank lattices ------------------------------

class QuotientGroup:
    """The finite group ``big / small`` for full-rank lattices ``small <= big``.

    ``invariants`` is the divisor chain (all entries >= 2), ``generators``
    holds one ambient vector per invariant factor, and :meth:`coords` maps an
    ambient vector of ``big`` to its coordinates modulo the invariants.
    """

    def __init__(self, big: Lattice, small: Lattice):
        if not (big.is_full_rank() and small.is_full_rank()):
            raise ValueError("quotient_structure needs full-rank lattices")
        n = big.dim
        self.dim = n
        self._B = big.basis()
        rows = []
        for v in small.basis():
            c = big.coefficients(v)
            if c is None:
                raise ValueError("small lattice is not contained in big lattice")
            rows.append(c)
        # Z^n (big-coordinates) modulo the columns of M^T
        Mt = transpose(rows) if rows else zeros(n, 0)
        snf = smith_normal_form(Mt, n, len(rows))
        keep = [i for i, d in enumerate(snf.diag) if d != 1]
        self.invariants = tuple(snf.diag[i] for i in keep)
        self._keep = keep
        self._U = [list(r) for r in snf.left]
        Uinv = snf.left_inv
        self.generators = []
        for i in keep:
            col = [Uinv[r][i] for r in range(n)]
            vec = [0] * n
            for r, c in enumerate(col):
                if c:
                    Br = self._B[r]
                    for k in range(n):
                        if Br[k]:
                            vec[k] += c * Br[k]
            self.generators.append(vec)
        self._big = big

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def coords(self, vec: Sequence[int]) -> list[int]:
        c = self._big.coefficients(vec)
        if c is None:
            raise ValueError("vector is not in the big lattice")
        full = matvec(self._U, c)
        return [full[i] % d for i, d in zip(self._keep, self.invariants)]

    def element(self, coords: Sequence[int]) -> list[int]:
        vec = [0] * self.dim
        for c, g in zip(coords, self.generators):
            if c:
                for k in range(self.dim):
                    vec[k] += c * g[k]
        return vec


def quotient_structure(big: Lattice, small: Lattice) -> QuotientGroup:
    return QuotientGroup(big, small)


def invariant_factors_of(factors: Sequence[int]) -> list[int]:
    """Normalize a list of cyclic orders to the invariant-factor chain."""
    n = len(factors)
    diag = [[factors[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return [d for d in cokernel_invariants(diag, n, n)]
