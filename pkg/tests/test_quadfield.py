import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from congk.errors import InputError
from congk.quadfield import (
    FieldSpec,
    class_group,
    class_number,
    embedding_signs,
    fundamental_unit,
    ideal_contains,
    ideal_from_gens,
    ideal_mul,
    ideal_norm,
    is_ideal,
    is_principal_with_generator,
    narrow_class_group,
    parse_field,
    primes_of_norm_upto,
    prime_ideal_factorization,
    principal_ideal,
    split_type,
    totally_positive_fundamental_unit,
)

def _squarefree(n):
    return all(n % (p * p) for p in range(2, 11))


NEG = [d for d in range(-120, 0) if _squarefree(d)]
POS = [d for d in range(2, 120) if _squarefree(d)]


def field(d):
    return FieldSpec.quadratic(d)


def test_rejects_bad_d():
    for d in (0, 1, 4, -8, 12):
        with pytest.raises(InputError):
            FieldSpec.quadratic(d)
    with pytest.raises(InputError):
        parse_field({"kind": "cubic"})
    assert parse_field({"kind": "rational"}).is_rational


@pytest.mark.parametrize("d", NEG)
def test_class_number_negative(d):
    assert class_number(field(d)) == len(oracles.reduced_forms_negative(oracles.discriminant(d)))


@pytest.mark.parametrize("d", POS[:40])
def test_narrow_class_number(d):
    G, reps = narrow_class_group(field(d))
    assert G.order == oracles.form_class_number_positive(oracles.discriminant(d))
    assert len(reps) == G.order


def test_known_class_groups():
    assert class_group(field(-23))[0].to_json() == [3]
    assert class_group(field(-5))[0].to_json() == [2]
    assert class_group(field(-21))[0].to_json() == [2, 2]
    assert class_number(field(79)) == 3


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 13, 19, 22, 31, 46, 61, 94, 97])
def test_units_against_pell(d):
    F = field(d)
    eps0 = fundamental_unit(F)
    assert tuple(eps0) == oracles.quadratic_units(d)[1]
    pell = totally_positive_fundamental_unit(F)
    assert pell.t == oracles.totally_positive_trace(d)
    assert F.norm(pell.eps) == 1 and embedding_signs(F, pell.eps) == (1, 1)


@pytest.mark.parametrize("d", [-1, -2, -3, -7, 2, 3, 5, 17])
def test_split_type_matches_symbol(d):
    F = field(d)
    D = oracles.discriminant(d)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        above = split_type(F, p)
        k = oracles.legendre(D, p)
        assert len(above) == (2 if k == 1 else 1)
        assert sum(P.e * P.f for P in above) == 2
        for P in above:
            assert ideal_norm(F, P.rep) == P.norm and is_ideal(F, P.rep)
        if len(above) == 2:
            assert ideal_mul(F, above[0].rep, above[1].rep) == principal_ideal(F, (p, 0))


coords = st.tuples(st.integers(-40, 40), st.integers(-40, 40)).filter(lambda v: v != (0, 0))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([-1, -5, -23, 2, 3, 10, 13]), coords, coords)
def test_ideal_norm_multiplicative(d, x, y):
    F = field(d)
    A, B = principal_ideal(F, x), principal_ideal(F, y)
    assert ideal_norm(F, A) == abs(F.norm(x))
    AB = ideal_mul(F, A, B)
    assert AB == principal_ideal(F, F.mul(x, y))
    assert ideal_contains(F, AB, F.mul(x, y))
    gen = is_principal_with_generator(F, A)
    assert gen is not None and principal_ideal(F, gen) == A


@pytest.mark.parametrize("d", [-5, -23, 10, 79])
def test_factorization_roundtrip(d):
    F = field(d)
    rng = random.Random(d)
    for _ in range(20):
        g = (rng.randint(-30, 30), rng.randint(1, 30))
        A = principal_ideal(F, g)
        prod = ideal_from_gens(F, [(1, 0)])
        for P, k in prime_ideal_factorization(F, A):
            for _ in range(k):
                prod = ideal_mul(F, prod, P.rep)
        assert prod == A


def test_nonprincipal_has_no_generator():
    F = field(-5)
    P = split_type(F, 2)[0]
    assert is_principal_with_generator(F, P.rep) is None
    g = is_principal_with_generator(F, ideal_mul(F, P.rep, P.rep))
    assert g is not None and abs(F.norm(g)) == 4


def test_primes_sorted():
    F = field(-1)
    ps = primes_of_norm_upto(F, 50)
    assert [P.norm for P in ps] == sorted(P.norm for P in ps)
    assert [P.norm for P in ps][:5] == [2, 5, 5, 9, 13]
