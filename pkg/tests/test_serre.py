import random

import pytest
from hypothesis import given, strategies as st

from serrecat.errors import InputNotExactInQuotient, NoWitness
from serrecat.fields import finite_field
from serrecat.modules import (identity_morphism, is_isomorphic, kernel_lattice_of, make_finab, morphism, multiplication,
                              projective_rep_p1, simple_rep, zero_module)
from serrecat.rings import integers
from serrecat.serre import (check_lifting_property, closure_audit, comparison_commutes, custom, enumerate_submodules,
                            epimorphisms_onto_b, etale_like, largest_subobject, lift_exact_complex,
                            localization_comparison, localization_comparison_ext, localized_ext, localized_hom,
                            parse_predicate, prime_factors, q_hom, q_is_epi, q_is_iso, q_is_mono, q_is_zero,
                            s_part, s_torsion, ses_samples, span, torsion_pair)

from oracles import abelian_groups

FINAB_200 = [inv for n in range(2, 201) for inv in abelian_groups(n)]
FINAB_48 = [inv for n in range(2, 49) for inv in abelian_groups(n)]
PRIME_SETS = [frozenset(s) for s in ([], [2], [3], [5], [2, 3], [2, 5], [3, 5], [2, 3, 5])]


def _part(invs, primes, inside):
    """Invariant factors of the S-part (inside=True) or S'-part of a group."""
    out = []
    for d in invs:
        m = s_part(d, [p for p in prime_factors(d) if (p in primes) == inside])
        if m > 1:
            out.append(m)
    return make_finab(out)


# -- torsion pairs ---------------------------------------------------------------------

def test_torsion_pair_examples():
    B = s_torsion([2])
    T = torsion_pair(make_finab([12]), B)
    assert T.sub.invariants == (3,) and T.quotient.invariants == (4,) and T.is_exact()
    X = make_finab([2, 8])
    T = torsion_pair(X, B)
    assert T.sub.order == 1 and T.quotient.invariants == X.invariants
    F = finite_field(2)
    T = torsion_pair(projective_rep_p1(F), span([simple_rep(2, F)]))
    assert T.sub.order == projective_rep_p1(F).order and T.quotient.order == 1


@given(st.sampled_from(FINAB_200), st.sampled_from(PRIME_SETS), st.integers(0, 10 ** 6))
def test_torsion_pair_is_primary_splitting(invs, S, seed):
    X = make_finab(invs)
    T = torsion_pair(X, s_torsion(S), seed=seed)
    assert T.is_exact()
    assert T.sub.invariants == _part(invs, S, False).invariants
    assert T.quotient.invariants == _part(invs, S, True).invariants
    # idempotence
    assert torsion_pair(T.quotient, s_torsion(S)).sub.order == 1
    assert torsion_pair(T.sub, s_torsion(S)).quotient.order == 1


@given(st.sampled_from([inv for inv in FINAB_48 if len(inv) <= 2]), st.integers(0, 1000))
def test_custom_predicate_search_matches_structure(invs, seed):
    X = make_finab(invs)
    B = s_torsion([2])
    C = custom("two-groups", lambda M: M.order & (M.order - 1) == 0)
    assert torsion_pair(X, C, seed=seed).sub.invariants == torsion_pair(X, B).sub.invariants


# -- quotient morphism tests -------------------------------------------------------------

def test_q_tests_examples():
    Z4 = make_finab([4])
    f = identity_morphism(Z4)
    B3 = s_torsion([3])
    assert q_is_mono(f, B3) and q_is_epi(f, B3) and not q_is_zero(f, B3)
    B2 = s_torsion([2])
    assert q_is_zero(multiplication(Z4, 2), B2)
    proj = morphism(Z4, make_finab([2]), [[1]])
    assert q_is_mono(proj, B2) and q_is_epi(proj, B2) and q_is_iso(proj, B2)


@given(st.sampled_from(FINAB_48), st.sampled_from(PRIME_SETS[1:]), st.integers(1, 4))
def test_multiplication_by_s_numbers_is_invertible(invs, S, k):
    X = make_finab(invs)
    n = 1
    for p in sorted(S):
        n *= p ** k
    f = multiplication(X, n)
    assert q_is_mono(f, s_torsion(S)) and q_is_epi(f, s_torsion(S))


# -- quotient hom and localization ----------------------------------------------------------

def test_q_hom_examples():
    B = s_torsion([2])
    assert q_hom(make_finab([2]), make_finab([3]), B).order == 1
    assert q_hom(make_finab([3]), make_finab([3]), B).invariants == (3,)
    assert q_hom(make_finab([12]), make_finab([12]), B).invariants == (3,)


def test_localized_examples():
    Z4, Z6, Z2, Z3 = (make_finab([n]) for n in (4, 6, 2, 3))
    assert localized_hom(Z4, Z4, [2]).order == 1
    assert localized_hom(Z6, Z6, [2]).invariants == (3,)
    assert localized_hom(Z6, Z6, []).invariants == (6,)
    assert localized_ext(1, Z2, Z2, [2]).order == 1
    assert localized_ext(1, Z3, Z3, [2]).invariants == (3,)
    assert localized_ext(1, Z6, Z6, [2]).invariants == (3,)


@given(st.sampled_from(FINAB_48), st.sampled_from(FINAB_48), st.sampled_from(PRIME_SETS))
def test_localization_soundness(xi, yi, S):
    X, Y = make_finab(xi), make_finab(yi)
    assert q_hom(X, Y, s_torsion(S)).order == localized_hom(X, Y, S).order
    assert localization_comparison(X, Y, S)
    assert localization_comparison_ext(1, X, Y, S)


# -- lifting property -------------------------------------------------------------------------

def test_lifting_examples():
    B = s_torsion([2])
    Z4, Z6, Z2 = make_finab([4]), make_finab([6]), make_finab([2])
    w = check_lifting_property(morphism(Z4, Z2, [[1]]), B)
    assert w.sub.order == 4
    w = check_lifting_property(morphism(Z6, Z2, [[1]]), B)
    assert w.sub.invariants == (2,)
    # the witness is ker(n_X) with n the 2-part of the exponent
    assert w.lattice == kernel_lattice_of(multiplication(Z6, 2))
    F = finite_field(2)
    P1, S2 = projective_rep_p1(F), simple_rep(2, F)
    Bq = span([S2])
    for f in epimorphisms_onto_b(P1, Bq, limit=10):
        check_lifting_property(f, Bq)


def test_lifting_rejects_bad_inputs():
    with pytest.raises(ValueError):
        check_lifting_property(morphism(make_finab([6]), make_finab([3]), [[1]]), s_torsion([2]))
    # an epimorphism onto S1 in the span of S1 has no witness inside P1
    F = finite_field(2)
    P1, S1 = projective_rep_p1(F), simple_rep(1, F)
    B = span([S1])
    (f,) = [g for g in epimorphisms_onto_b(P1, B, limit=10) if g.target.order > 1]
    with pytest.raises(NoWitness):
        check_lifting_property(f, B)


@given(st.sampled_from(FINAB_48), st.sampled_from(PRIME_SETS[1:]), st.integers(0, 100))
def test_lifting_witness_is_kernel_of_n(invs, S, seed):
    X = make_finab(invs)
    B = s_torsion(S)
    for f in epimorphisms_onto_b(X, B, limit=4, seed=seed):
        w = check_lifting_property(f, B)
        n = s_part(X.invariants[-1], S) if X.invariants else 1
        assert w.lattice == kernel_lattice_of(multiplication(X, n))


# -- exact complexes ----------------------------------------------------------------------------

def test_lift_exact_complex_examples():
    B = s_torsion([2])
    Z3, Z9, Z6, Z2 = (make_finab([n]) for n in (3, 9, 6, 2))
    f, g = morphism(Z3, Z9, [[3]]), morphism(Z9, Z3, [[1]])
    L = lift_exact_complex([Z3, Z9, Z3], [f, g], B)
    assert L.is_exact() and [Y.invariants for Y in L.objects] == [(3,), (9,), (3,)]
    assert all(c == identity_morphism(c.source) for c in L.comparisons)

    f, g = morphism(Z3, Z6, [[2]]), morphism(Z6, Z2, [[1]])
    L = lift_exact_complex([Z3, Z6, Z2], [f, g], B)
    assert L.is_exact() and [Y.order for Y in L.objects] == [3, 3, 1]
    assert comparison_commutes([f, g], L, B)
    for c in L.comparisons:
        K = kernel_lattice_of(c)
        assert B(_sub(c.source, K))

    Z = zero_module(integers())
    assert lift_exact_complex([Z], [], B).objects[0].order == 1


def _sub(X, lat):
    from serrecat.serre import sub_module
    return sub_module(X, lat)


def test_lift_exact_complex_rejects_non_exact():
    B = s_torsion([2])
    Z3 = make_finab([3])
    with pytest.raises(InputNotExactInQuotient):
        lift_exact_complex([Z3, Z3], [morphism(Z3, Z3, [[0]])], B)


# -- predicates and audits ------------------------------------------------------------------------

@pytest.mark.parametrize("B", [s_torsion([2]), s_torsion([3, 5]), etale_like(2)])
def test_closure_audit_on_samples(B):
    for invs in ([2, 12], [6, 6], [4, 20], [30]):
        assert closure_audit(B, ses_samples(make_finab(invs), limit=40)) == []


def test_span_predicates_and_parse():
    F = finite_field(3)
    S2 = simple_rep(2, F)
    B = parse_predicate("span:{S2}", {"S2": S2})
    assert B(S2) and not B(projective_rep_p1(F))
    assert closure_audit(B, ses_samples(projective_rep_p1(F))) == []
    assert parse_predicate("s_torsion:{2,3}")(make_finab([12]))
    assert parse_predicate("etale_like")(make_finab([9])) and not etale_like(3)(make_finab([9]))


@given(st.sampled_from([inv for inv in FINAB_200 if len(inv) <= 2]), st.integers(0, 1000))
def test_descending_chains_stabilize(invs, seed):
    X = make_finab(invs)
    rng = random.Random(seed)
    subs = enumerate_submodules(X)
    cur, steps = None, 0
    while True:
        smaller = [L for L in subs if (cur is None or (L <= cur and L != cur))]
        if not smaller:
            break
        cur = rng.choice(smaller)
        steps += 1
        assert steps <= X.order


def test_largest_subobject_in_a2():
    F = finite_field(2)
    P1 = projective_rep_p1(F)
    L = largest_subobject(P1, span([simple_rep(2, F)]))
    assert is_isomorphic(_sub(P1, L), simple_rep(2, F))
