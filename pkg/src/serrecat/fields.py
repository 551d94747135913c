"""Finite fields F_{p^d} with table arithmetic, and matrices over them.

An element of F_{p^d} is encoded as the integer ``sum(c_i * p**i)`` where
``c_0 + c_1 x + ... + c_{d-1} x^{d-1}`` is its residue modulo a fixed
irreducible polynomial.  For the small fields used here that polynomial is
the Conway polynomial; outside the table the lexicographically first monic
primitive polynomial is used.  The choice is recorded on the field
(:attr:`FiniteField.modulus`) so outputs can carry it as metadata.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import FieldMismatch

# coefficients low -> high, monic
CONWAY = {
    (2, 1): (1, 1), (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1), (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1), (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1), (5, 2): (2, 4, 1), (5, 3): (3, 3, 0, 1),
    (7, 1): (4, 1), (7, 2): (3, 6, 1),
    (11, 1): (9, 1), (13, 1): (11, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _polymulmod(a, b, mod, p):
    d = len(mod) - 1
    prod_ = [0] * (2 * d - 1 if d else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod_[i + j] = (prod_[i + j] + x * y) % p
    for k in range(len(prod_) - 1, d - 1, -1):
        c = prod_[k]
        if c:
            for t in range(d + 1):
                prod_[k - d + t] = (prod_[k - d + t] - c * mod[t]) % p
    return prod_[:d] + [0] * (d - len(prod_[:d]))


def _primitive_poly(p: int, d: int) -> tuple:
    q = p ** d
    for tail in itertools.product(range(p), repeat=d):
        mod = list(tail) + [1]
        if mod[0] == 0:
            continue
        # order of x must be exactly q - 1
        x = [0] * d
        if d == 1:
            x = [(-mod[0]) % p]
        else:
            x[1] = 1
        cur = x[:]
        order = 1
        one = [1] + [0] * (d - 1)
        while cur != one and order < q:
            cur = _polymulmod(cur, x, mod, p)
            order += 1
        if order == q - 1 and cur == one:
            return tuple(mod)
    raise ValueError(f"no primitive polynomial found for F_{q}")


class FiniteField:
    """The field with ``p**d`` elements, arithmetic through lookup tables."""

    def __init__(self, p: int, d: int = 1):
        if not _is_prime(p) or d < 1:
            raise ValueError(f"invalid field parameters p={p}, d={d}")
        self.p, self.d, self.q = p, d, p ** d
        self.modulus = CONWAY.get((p, d)) or _primitive_poly(p, d)
        q = self.q
        vecs = [self.to_vector(a) for a in range(q)]
        self._add = [[self.from_vector([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                      for b in range(q)] for a in range(q)]
        self._neg = [self.from_vector([(-x) % p for x in vecs[a]]) for a in range(q)]
        self._mul = [[self.from_vector(_polymulmod(vecs[a], vecs[b], self.modulus, p))
                      for b in range(q)] for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
        self._frob = [self.power(a, p) for a in range(q)]
        self._frob_inv = [0] * q
        for a, b in enumerate(self._frob):
            self._frob_inv[b] = a

    def __repr__(self) -> str:
        return f"F_{self.q}" if self.d == 1 else f"F_{self.q}[{self.poly_str()}]"

    @property
    def name(self) -> str:
        return f"F_{self.q}"

    def poly_str(self) -> str:
        terms = []
        for i in range(self.d, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}{mono}")
        return " + ".join(terms)

    def metadata(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    # -- encoding
    def to_vector(self, a: int) -> list[int]:
        out = []
        for _ in range(self.d):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_vector(self, v: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(v)):
            a = a * self.p + (c % self.p)
        return a

    def elements(self) -> range:
        return range(self.q)

    @property
    def gen(self) -> int:
        return self.p if self.d > 1 else _primitive_root(self.p)

    # -- arithmetic
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul[result][base] if hasattr(self, "_mul") else self._slow_mul(result, base)
            base = self._mul[base][base] if hasattr(self, "_mul") else self._slow_mul(base, base)
            n >>= 1
        return result

    def _slow_mul(self, a, b):
        return self.from_vector(_polymulmod(self.to_vector(a), self.to_vector(b), self.modulus, self.p))

    def frob(self, a: int, k: int = 1) -> int:
        """``a ** (p ** k)``; negative ``k`` applies the inverse Frobenius."""
        k %= self.d
        for _ in range(k):
            a = self._frob[a]
        return a

    def frob_inv(self, a: int) -> int:
        return self._frob_inv[a]

    def from_int(self, n: int) -> int:
        return n % self.p

    # -- prime-field views
    def mul_matrix(self, a: int) -> list[list[int]]:
        """F_p-matrix (columns = images of the power basis) of ``x -> a*x``."""
        cols = [self.to_vector(self.mul(a, self.p ** i)) for i in range(self.d)]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]

    def frob_matrix(self, k: int = 1) -> list[list[int]]:
        cols = [self.to_vector(self.frob(self.p ** i, k)) for i in range(self.d)]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    for g in range(2, p):
        x, order = g, 1
        while x != 1:
            x = x * g % p
            order += 1
        if order == p - 1:
            return g
    raise ValueError(p)


@lru_cache(maxsize=None)
def finite_field(p: int, d: int = 1) -> FiniteField:
    return FiniteField(p, d)


def parse_field(name: str) -> FiniteField:
    """``"F_4"`` or ``"F_9"`` or ``"GF(8)"`` -> the cached field."""
    s = name.strip().replace("GF(", "").replace(")", "").replace("F_", "").replace("F", "")
    q = int(s)
    for p in range(2, q + 1):
        if q % p == 0:
            d, r = 0, q
            while r % p == 0:
                r //= p
                d += 1
            if r != 1:
                raise ValueError(f"{name}: not a prime power")
            return finite_field(p, d)
    raise ValueError(f"{name}: not a field size")


# -- matrices over F_q ----------------------------------------------------

@dataclass(frozen=True)
class FiniteFieldMatrix:
    """A dense matrix over :class:`FiniteField` with canonical entries."""
    field: FiniteField
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, field: FiniteField, data: Sequence[Sequence[int]], rows=None, cols=None):
        rows = len(data) if rows is None else rows
        cols = (len(data[0]) if data else 0) if cols is None else cols
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("ragged or mis-sized matrix")
        ent = tuple(tuple(int(x) % field.q if field.d > 1 else int(x) % field.p for x in r) for r in data)
        for r in ent:
            for x in r:
                if not 0 <= x < field.q:
                    raise ValueError("entry outside the field")
        return cls(field, rows, cols, ent)

    @classmethod
    def identity(cls, field: FiniteField, n: int):
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, field: FiniteField, rows: int, cols: int):
        return cls(field, rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __matmul__(self, other: "FiniteFieldMatrix") -> "FiniteFieldMatrix":
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        F = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = F.add(acc, F.mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return FiniteFieldMatrix(F, self.rows, other.cols, tuple(out))

    def rank(self) -> int:
        return len(row_reduce(self.field, [list(r) for r in self.entries], self.cols)[1])

    def nullspace(self) -> list[list[int]]:
        return nullspace(self.field, [list(r) for r in self.entries], self.cols)

    def to_prime_field(self) -> list[list[int]]:
        """Expand to a ``(d*rows) x (d*cols)`` matrix over F_p (power-basis blocks)."""
        F, d = self.field, self.field.d
        out = [[0] * (d * self.cols) for _ in range(d * self.rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                blk = F.mul_matrix(self.entries[i][j])
                for a in range(d):
                    for b in range(d):
                        out[d * i + a][d * j + b] = blk[a][b]
        return out


def row_reduce(F: FiniteField, M: list[list[int]], cols: int):
    """Reduced row echelon form in place; returns ``(M, pivot_columns)``."""
    pivots = []
    r = 0
    rows = len(M)
    for c in range(cols):
        pr = next((i for i in range(r, rows) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                Mi, Mr = M[i], M[r]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(Mi, Mr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(F: FiniteField, M: Sequence[Sequence[int]], cols: int | None = None) -> int:
    cols = (len(M[0]) if M else 0) if cols is None else cols
    return len(row_reduce(F, [list(r) for r in M], cols)[1])


def nullspace(F: FiniteField, M: Sequence[Sequence[int]], cols: int) -> list[list[int]]:
    R, piv = row_reduce(F, [list(r) for r in M], cols)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis


def rank_mod_p(M: Sequence[Sequence[int]], p: int, cols: int | None = None) -> int:
    return rank(finite_field(p, 1), [[x % p for x in r] for r in M], cols)
