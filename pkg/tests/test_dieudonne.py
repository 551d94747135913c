import random

import pytest
from hypothesis import given, strategies as st

from serrecat.dieudonne import (TwistedPoly, VModule, coker_F, coker_F_minus_id, ext_D_against_Ga, f_minus_id,
                                injectivity_probe_F_pushforward, jordan_vmodule, phi_image_codim, random_poly,
                                random_vmodule, section_phi, twisted_mul)
from serrecat.errors import FieldMismatch, ValidationError
from serrecat.fields import finite_field

FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2)]


def test_twisted_mul_examples():
    F2 = finite_field(2)
    Fr = TwistedPoly.frobenius(F2)
    a = TwistedPoly.constant(F2, 1)
    assert twisted_mul(Fr, a) == twisted_mul(a, Fr)
    F4 = finite_field(2, 2)
    g = TwistedPoly.constant(F4, F4.gen)
    lhs = twisted_mul(TwistedPoly.frobenius(F4), g)
    assert lhs.coeffs == (0, F4.mul(F4.gen, F4.gen))
    assert F4.mul(F4.gen, F4.gen) != F4.gen
    x = TwistedPoly(F4, (1, 2, 3))
    assert twisted_mul(x, TwistedPoly.constant(F4, 1)) == x
    with pytest.raises(FieldMismatch):
        twisted_mul(x, TwistedPoly.constant(F2, 1))


@pytest.mark.parametrize("pd", FIELDS)
def test_ring_laws(pd):
    F = finite_field(*pd)
    rng = random.Random(17)
    for _ in range(200):
        x, y, z = (random_poly(F, rng.randrange(4), rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


@pytest.mark.parametrize("pd", FIELDS)
def test_cokernels_stable(pd):
    F = finite_field(*pd)
    for N in range(2, 33):
        A = coker_F_minus_id(F, N)
        assert A.dim_fp == F.d and A.dim_k == 1 and A.stabilized
        B = coker_F(F, N)
        assert B.dim_k == 1 and B.representative == TwistedPoly.constant(F, 1)
        assert phi_image_codim(F, N) == F.d


def test_coker_examples():
    assert coker_F_minus_id(finite_field(2), 8).dim_fp == 1
    assert coker_F_minus_id(finite_field(2, 2), 8).dim_fp == 2
    assert coker_F(finite_field(2), 8).dim_fp == 1
    assert coker_F(finite_field(3, 2), 4).dim_fp == 2


@given(st.sampled_from(FIELDS), st.integers(0, 10 ** 6))
def test_phi_vanishes_on_image(pd, seed):
    F = finite_field(*pd)
    rng = random.Random(seed)
    x = random_poly(F, rng.randrange(8), rng)
    assert section_phi(f_minus_id(x)) == 0


def test_phi_is_sum_over_prime_field():
    F = finite_field(2)
    assert section_phi(TwistedPoly(F, (1, 1, 1))) == 1
    assert section_phi(TwistedPoly(F, (1, 1))) == 0


def test_injectivity_examples():
    assert injectivity_probe_F_pushforward(1, 8, finite_field(2))
    assert injectivity_probe_F_pushforward(3, 8, finite_field(2, 2))
    F = finite_field(3)
    assert twisted_mul(TwistedPoly.frobenius(F, 2), TwistedPoly(F, ())).is_zero()


def test_ext_examples():
    F = finite_field(2)
    J = jordan_vmodule(F, 2)
    assert [ext_D_against_Ga(i, J) for i in range(3)] == [1, 1, 0]
    Z = VModule(F, ())
    assert [ext_D_against_Ga(i, Z) for i in range(3)] == [0, 0, 0]
    V0 = VModule(finite_field(3, 2), ((0,),))
    assert [ext_D_against_Ga(i, V0) for i in range(2)] == [1, 1]
    with pytest.raises(ValidationError):
        VModule(F, ((1,),))


@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_ext_properties(pd, n, seed):
    F = finite_field(*pd)
    M = random_vmodule(F, n, random.Random(seed))
    assert M.nilpotency_index <= n
    assert ext_D_against_Ga(0, M) == ext_D_against_Ga(1, M)
    assert all(ext_D_against_Ga(i, M) == 0 for i in range(2, 6))
