"""Bounded homological dimension and the verification suites.

A category is named by a short string:

* ``finab`` or ``finab:N`` -- finite abelian groups of order ``<= N`` (24 by default);
* ``a2:F_q`` -- representations of ``1 -> 2`` over ``F_q``;
* ``gamma:G:ell`` -- ``ell``-primary modules over ``Z[G]``.

Every report records its seed, and nonzero Ext entries keep a cocycle that
can be re-verified from scratch.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .fields import finite_field, parse_field
from .groups import group_from_name
from .modules import (Module, direct_sum, make_finab, projective_rep_p1, simple_rep, vertex_space)
from .resolution import ExtGroup, ext_group
from .serre import (SerrePredicate, closure_audit, has_lifting, localized_ext, prime_factors, s_torsion,
                    ses_samples, span)


# -- samples --------------------------------------------------------------------

def divisor_chains(n: int, lo: int = 2) -> list[list[int]]:
    """All ``d_1 | d_2 | ...`` with ``d_1 >= lo`` and product ``n``."""
    if n == 1:
        return [[]]
    out = []
    for d in range(lo, n + 1):
        if n % d:
            continue
        rest = n // d
        for tail in divisor_chains(rest, d):
            if not tail or tail[0] % d == 0:
                out.append([d] + tail)
    return out


def finab_objects(max_order: int) -> list[Module]:
    """Every finite abelian group of order ``<= max_order`` (the zero group excluded)."""
    out = []
    for n in range(2, max_order + 1):
        for chain in divisor_chains(n):
            out.append(make_finab(chain, "Z/" + "+".join(map(str, chain))))
    return out


def a2_objects(F) -> list[Module]:
    S1, S2, P1 = simple_rep(1, F), simple_rep(2, F), projective_rep_p1(F)
    out = [S1, S2, P1]
    for a, b in ((S1, S2), (P1, S1), (P1, S2), (S1, S1)):
        M = direct_sum(a, b)[0]
        out.append(Module(M.ring, M.invariants, M.action, f"{a.label}+{b.label}"))
    return out


def category_samples(category: str, seed: int = 0, limit: int | None = None) -> list[Module]:
    """Deterministic sample list for a named category."""
    kind, _, rest = category.partition(":")
    if kind == "finab":
        objs = finab_objects(int(rest) if rest else 24)
    elif kind == "a2":
        objs = a2_objects(parse_field(rest or "F_2"))
    elif kind == "gamma":
        from .gammacoh import default_sample
        gname, _, ell = rest.partition(":")
        objs = default_sample(group_from_name(gname), int(ell or 2))
    else:
        raise ValueError(f"unknown category {category!r}")
    if limit is not None and limit < len(objs):
        rng = random.Random(seed)
        objs = sorted(rng.sample(objs, limit), key=objs.index)
    return objs


def structural_bound(category: str) -> int | None:
    """Global dimension when known: Z and the A2 path algebra are hereditary."""
    kind = category.partition(":")[0]
    return 1 if kind in ("finab", "a2") else None


# -- reports --------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A nonzero class: Ext group plus a cocycle (possibly a multiple of a generator)."""
    source: str
    target: str
    degree: int
    cocycle: tuple
    group: ExtGroup = field(repr=False, compare=False)

    def reverify(self) -> bool:
        return self.group.is_cocycle(self.cocycle) and not self.group.is_coboundary(self.cocycle)


@dataclass(frozen=True)
class HdReport:
    category: str
    sample: tuple
    bound: int
    max_degree: int
    exact: bool
    table: tuple
    seed: int = 0
    verdict: str = ""
    witnesses: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"category": self.category, "sample": list(self.sample), "bound": self.bound,
                "max_degree": self.max_degree, "exact": self.exact, "seed": self.seed,
                "verdict": self.verdict, "table": [list(r) for r in self.table]}

    def reverify(self) -> bool:
        return all(w.reverify() for w in self.witnesses)


@lru_cache(maxsize=200_000)
def _ext(i: int, X: Module, Y: Module) -> ExtGroup:
    return ext_group(i, X, Y)


def _witness(E: ExtGroup, X: Module, Y: Module, cocycle) -> Witness:
    return Witness(X.label or repr(X), Y.label or repr(Y), E.degree, tuple(cocycle), E)


def hd_bounded(category: str, samples: Sequence[Module] | None = None, degree_bound: int = 3,
               seed: int = 0, label: str | None = None, exact_allowed: bool = True) -> HdReport:
    """Largest ``d <= degree_bound`` with ``Ext^d != 0`` over sampled pairs."""
    if degree_bound < 1:
        raise ValueError("degree bound must be at least 1")
    samples = list(samples) if samples is not None else category_samples(category, seed)
    rows, wits, top = [], [], 0
    for X in samples:
        for Y in samples:
            for i in range(degree_bound + 1):
                E = _ext(i, X, Y)
                rows.append((X.label, Y.label, i, E.order))
                if E.order > 1:
                    if i > top or not any(w.degree == i for w in wits):
                        wits.append(_witness(E, X, Y, E.cocycles[0]))
                    top = max(top, i)
    sb = structural_bound(category)
    exact = exact_allowed and sb is not None and degree_bound > sb
    tag = "exact" if exact else "lower bound"
    return HdReport(label or category, tuple(X.label for X in samples), degree_bound, top, exact, tuple(rows),
                    seed, f"hd = {top} ({tag})", tuple(wits))


def hd_quotient_s(category: str, S: Sequence[int], samples: Sequence[Module], degree_bound: int,
                  seed: int = 0) -> HdReport:
    """``hd(A/A_S)`` estimated through the ``S'``-parts of Ext (localization)."""
    S = frozenset(S)
    rows, wits, top = [], [], 0
    for X in samples:
        for Y in samples:
            for i in range(degree_bound + 1):
                E = _ext(i, X, Y)
                L = localized_ext(i, X, Y, S) if E.order > 1 else None
                order = L.order if L is not None else 1
                rows.append((X.label, Y.label, i, order))
                if order > 1:
                    if i > top or not any(w.degree == i for w in wits):
                        wits.append(_witness(E, X, Y, L.generators[0]))
                    top = max(top, i)
    sb = structural_bound(category)
    exact = sb is not None and degree_bound > sb
    name = f"{category}/A_{{{','.join(map(str, sorted(S)))}}}"
    return HdReport(name, tuple(X.label for X in samples), degree_bound, top, exact, tuple(rows), seed,
                    f"hd = {top} ({'exact' if exact else 'lower bound'})", tuple(wits))


def hd_quotient_a2(category: str, B: SerrePredicate, samples: Sequence[Module], degree_bound: int,
                   seed: int = 0) -> HdReport:
    """``hd(A/B)`` for ``B`` supported at one vertex, via the opposite corner ring."""
    (v_b,) = tuple(B.support)
    v = 1 if v_b == 2 else 2
    corner = []
    for X in samples:
        V = vertex_space(X, v)
        corner.append(Module(V.ring, V.invariants, V.action, f"e{v}({X.label})"))
    rep = hd_bounded(f"field:{corner[0].ring.label}", corner, degree_bound, seed, exact_allowed=False)
    # a field is semisimple, so vanishing above degree 0 is structural
    return HdReport(f"{category}/{B.name}", rep.sample, degree_bound, rep.max_degree, True, rep.table, seed,
                    f"hd = {rep.max_degree} (exact)", rep.witnesses)


@dataclass(frozen=True)
class ComparisonReport:
    name: str
    whole: HdReport
    sub: HdReport
    quotient: HdReport
    holds: bool
    strict: bool
    seed: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "strict": self.strict, "seed": self.seed,
                "hd": self.whole.max_degree, "hd_sub": self.sub.max_degree, "hd_quotient": self.quotient.max_degree,
                "whole": self.whole.to_json(), "sub": self.sub.to_json(), "quotient": self.quotient.to_json(),
                "details": self.details}


def verify_thm_hd(category: str = "finab:48", S: Sequence[int] = (2,), samples: Sequence[Module] | None = None,
                  bound: int = 3, seed: int = 0) -> ComparisonReport:
    """``hd(A) = max(hd(A_S), hd(A/A_S))`` on bounded estimates."""
    samples = list(samples) if samples is not None else category_samples(category, seed)
    S = frozenset(S)
    B = s_torsion(S)
    whole = hd_bounded(category, samples, bound, seed)
    torsion = [X for X in samples if B(X)]
    sub = (hd_bounded(f"{category}_S", torsion, bound, seed) if torsion
           else HdReport(f"{category}_S", (), bound, 0, True, (), seed, "empty subcategory"))
    quot = hd_quotient_s(category, S, samples, bound, seed)
    rhs = max(sub.max_degree, quot.max_degree)
    return ComparisonReport(f"thm-hd S={sorted(S)}", whole, sub, quot, whole.max_degree == rhs,
                            whole.max_degree > rhs, seed)


def verify_hdmax_inequality(category: str, B: SerrePredicate, samples: Sequence[Module] | None = None,
                            bound: int = 3, seed: int = 0) -> ComparisonReport:
    """``hd(A) >= max(hd(B), hd(A/B))`` on bounded estimates; strictness flagged."""
    from .serre import require_lifting
    samples = list(samples) if samples is not None else category_samples(category, seed)
    require_lifting(B, *samples)
    whole = hd_bounded(category, samples, bound, seed)
    members = [X for X in samples if B(X)]
    sub = (hd_bounded(f"{category}|{B.name}", members, bound, seed) if members
           else HdReport(f"{category}|{B.name}", (), bound, 0, True, (), seed, "empty subcategory"))
    if B.order_based:
        S = sorted(p for X in samples for p in prime_factors(X.order) if B.in_s(p))
        quot = hd_quotient_s(category, S, samples, bound, seed)
    elif B.kind == "span" and samples and samples[0].ring.kind == "a2" and len(B.support) == 1:
        quot = hd_quotient_a2(category, B, samples, bound, seed)
    elif B.kind == "span" and samples and samples[0].ring.kind == "integers":
        quot = hd_quotient_s(category, B.support, samples, bound, seed)
    else:
        raise NotImplementedError(f"no quotient Ext model for {B.name}")
    rhs = max(sub.max_degree, quot.max_degree)
    return ComparisonReport(f"hdmax {B.name}", whole, sub, quot, whole.max_degree >= rhs,
                            whole.max_degree > rhs, seed)


@dataclass(frozen=True)
class QuiverReport:
    field: str
    facts: dict
    ext1_s1_s2_dim: int
    comparison: ComparisonReport

    @property
    def passed(self) -> bool:
        return all(self.facts.values())

    def to_json(self) -> dict:
        return {"field": self.field, "facts": dict(self.facts), "passed": self.passed,
                "ext1_s1_s2_dim": self.ext1_s1_s2_dim, "comparison": self.comparison.to_json()}


def verify_quiver_example(F=None, seed: int = 0) -> QuiverReport:
    """The facts of the A2 example, each computed."""
    F = F if F is not None else finite_field(2)
    if isinstance(F, str):
        F = parse_field(F)
    category = f"a2:{F.name}"
    samples = a2_objects(F)
    S1, S2, P1 = samples[:3]
    B = span([S2])
    e12 = _ext(1, S1, S2)
    dim = _fp_dim(e12.order, F.p) // F.d
    s2_projective = all(_ext(i, S2, Y).order == 1 for Y in samples for i in (1, 2))
    s1_not_projective = e12.order > 1
    audit = []
    for X in samples:
        audit.extend(closure_audit(B, ses_samples(X, limit=64, seed=seed)))
    cmp = verify_hdmax_inequality(category, B, samples, 3, seed)
    facts = {
        "S2_projective": s2_projective,
        "S1_not_projective": s1_not_projective and dim == 1,
        "B_serre": not audit,
        "hd_A_is_1": cmp.whole.max_degree == 1 and cmp.whole.exact,
        "hd_B_is_0": cmp.sub.max_degree == 0,
        "hd_A_mod_B_is_0": cmp.quotient.max_degree == 0,
        "lifting_property": all(has_lifting(X, B) for X in samples),
        "strict_inequality": cmp.strict,
    }
    return QuiverReport(F.name, facts, dim, cmp)


def _fp_dim(order: int, p: int) -> int:
    k = 0
    while order > 1:
        order //= p
        k += 1
    return k


def report_json(obj) -> str:
    """Canonical JSON (sorted keys) for byte-level comparisons."""
    return json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj, sort_keys=True, separators=(",", ":"))
