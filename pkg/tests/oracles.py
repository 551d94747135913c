"""Brute-force oracles, independent of the package's Smith/Hermite code."""

from __future__ import annotations

import itertools
from functools import lru_cache, reduce
from math import gcd


def group_elements(invs):
    return list(itertools.product(*(range(d) for d in invs)))


def add(invs, a, b):
    return tuple((x + y) % d for x, y, d in zip(a, b, invs))


def scale(invs, n, a):
    return tuple((n * x) % d for x, d in zip(a, invs))


def hom_count(xinv, yinv) -> int:
    """Homs ``X -> Y``: tuples of images ``y_i`` with ``d_i y_i = 0``."""
    Y = group_elements(yinv)
    zero = tuple(0 for _ in yinv)
    per = [sum(1 for y in Y if scale(yinv, d, y) == zero) for d in xinv]
    return reduce(lambda a, b: a * b, per, 1)


def ext1_count(xinv, yinv) -> int:
    """``|Y^k / {(d_i y_i)}|`` by listing the image set."""
    Y = group_elements(yinv)
    image = set()
    for ys in itertools.product(Y, repeat=len(xinv)):
        image.add(tuple(scale(yinv, d, y) for d, y in zip(xinv, ys)))
    return len(Y) ** len(xinv) // len(image)


def abelian_groups(n):
    """Invariant-factor chains of all abelian groups of order ``n``."""
    def chains(m, lo):
        if m == 1:
            yield []
            return
        for d in range(lo, m + 1):
            if m % d == 0:
                for t in chains(m // d, d):
                    if not t or t[0] % d == 0:
                        yield [d] + t
    return list(chains(n, 2))


def _homs(src, tgt):
    """All homomorphisms as tuples of generator images."""
    T = group_elements(tgt)
    zero = tuple(0 for _ in tgt)
    choices = [[t for t in T if scale(tgt, d, t) == zero] for d in src]
    return list(itertools.product(*choices))


def _apply(src, tgt, imgs, x):
    out = tuple(0 for _ in tgt)
    for c, im in zip(x, imgs):
        out = add(tgt, out, scale(tgt, c, im))
    return out


@lru_cache(maxsize=None)
def _aut_count(einv) -> int:
    E = group_elements(einv)
    zero = tuple(0 for _ in einv)
    count = 0
    for imgs in _homs(einv, einv):
        # injective iff no nonzero element maps to zero
        if all(_apply(einv, einv, imgs, e) != zero for e in E if e != zero):
            count += 1
    return count


def ext1_by_extensions(xinv, yinv) -> int:
    """Count classes of extensions ``0 -> Y -> E -> X -> 0`` by middle-group search.

    For each ``E`` the exact pairs ``(i, p)`` form ``Aut(E)``-orbits whose
    stabilizers have ``|Hom(X, Y)|`` elements, so the class count is
    ``sum_E pairs(E) * |Hom(X, Y)| / |Aut(E)|``.
    """
    nx = reduce(lambda a, b: a * b, xinv, 1)
    ny = reduce(lambda a, b: a * b, yinv, 1)
    hxy = hom_count(xinv, yinv)
    total = 0
    for einv in abelian_groups(nx * ny) if nx * ny > 1 else [[]]:
        E = group_elements(einv)
        autos = _aut_count(tuple(einv))
        inj = []
        for imgs in _homs(yinv, einv):
            ims = {_apply(yinv, einv, imgs, y) for y in group_elements(yinv)}
            if len(ims) == ny:
                inj.append(ims)
        pairs = 0
        for imgs in _homs(einv, xinv):
            ker = {e for e in E if _apply(einv, xinv, imgs, e) == tuple(0 for _ in xinv)}
            if len(ker) * nx != len(E):
                continue
            pairs += sum(1 for ims in inj if ims == ker)
        total += pairs * hxy * 1.0 / autos
    return round(total)


def determinantal_invariants(A):
    """Smith diagonal from gcds of k x k minors (exact, small matrices only)."""
    rows, cols = len(A), len(A[0]) if A else 0

    def det(M):
        if len(M) == 1:
            return M[0][0]
        return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))

    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, det([[A[r][c] for c in cs] for r in rs]))
        divisors.append(g)
    out = []
    for k in range(1, len(divisors)):
        out.append(0 if divisors[k] == 0 else divisors[k] // divisors[k - 1])
    return out


def coker_order_brute(A, bound=None):
    """Order of ``Z^rows / colspan(A)`` when finite, by working inside ``(Z/n)^rows``."""
    rows = len(A)
    n = abs(bound) if bound else 1
    span = {tuple(0 for _ in range(rows))}
    frontier = list(span)
    gens = [tuple(A[r][c] % n for r in range(rows)) for c in range(len(A[0]))] + [
        tuple(n * (r == s) % n for r in range(rows)) for s in range(rows)]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % n for a, b in zip(v, g))
                if w not in span:
                    span.add(w)
                    nxt.append(w)
        frontier = nxt
    return n ** rows // len(span)
