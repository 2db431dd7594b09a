import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congk.abelian import (
    FgAbGroup,
    GroupHom,
    det,
    direct_sum,
    element_order,
    exterior_power,
    group_from_relations,
    hermite_normal_form,
    integer_kernel,
    is_isomorphic,
    kernel_cokernel,
    matmul,
    smith_normal_form,
    subgroup_quotient,
)


def check_snf(A):
    U, S, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    r, c = len(S), len(S[0]) if S else 0
    diag = [S[i][i] for i in range(min(r, c))]
    for i in range(r):
        for j in range(c):
            if i != j:
                assert S[i][j] == 0
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[: len(nz)] == nz  # zeros last
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    return diag


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_snf_properties(A):
    check_snf(A)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_determinant_of_square_part(A):
    n = min(len(A), len(A[0]))
    sq = [row[:n] for row in A[:n]]
    diag = check_snf(sq)
    prod = 1
    for d in diag:
        prod *= d
    assert prod == abs(det(sq))


def test_snf_examples():
    assert check_snf([[2, 4], [6, 8]]) == [2, 4]
    assert check_snf([[-2, -4], [-2, -2]]) == [2, 2]
    assert check_snf([[0, 0], [0, 0]]) == [0, 0]


def test_group_from_relations():
    # x + 2y = 0 and 2x + 4y = 0 in Z^3 leave Z^2
    P = group_from_relations(3, [[1, 2, 0], [2, 4, 0]])
    assert P.group.invariant_factors == (0, 0)
    P = group_from_relations(2, [[2, 0], [0, 3]])
    assert P.group.invariant_factors == (6,)
    assert element_order(P.group, P.project([1, 1])) == 6


def test_normalization():
    assert FgAbGroup((2, 3)).invariant_factors == (6,)
    assert FgAbGroup((0, 4, 1, 2)).invariant_factors == (2, 4, 0)
    assert str(FgAbGroup((2, 0))) == "Z/2 + Z"
    assert FgAbGroup((4, 2)).to_json() == [2, 4]


def test_subgroup_quotient_and_orders():
    G = FgAbGroup((2, 8))
    Q = subgroup_quotient(G, [[1, 4]])
    assert Q.group.invariant_factors == (8,)
    assert element_order(G, G.elem([1, 2])) == 4
    assert element_order(FgAbGroup((0,)), FgAbGroup((0,)).elem([3])) is None


def test_kernel_cokernel():
    Z2 = FgAbGroup.free(2)
    h = GroupHom.from_matrix(Z2, Z2, [[2, 0], [0, 3]])
    kc = kernel_cokernel(h)
    assert kc.ker.is_trivial() and kc.coker.invariant_factors == (6,)
    # Z/4 -> Z/2, 1 -> 1: kernel Z/2, cokernel 0
    h = GroupHom.from_matrix(FgAbGroup((4,)), FgAbGroup((2,)), [[1]])
    kc = kernel_cokernel(h)
    assert kc.ker.invariant_factors == (2,) and kc.coker.is_trivial()
    assert kc.embedding.is_well_defined()
    # Z^2 -> Z, (a, b) -> a - b: kernel Z spanned by (1, 1)
    h = GroupHom.from_matrix(Z2, FgAbGroup.free(1), [[1, -1]])
    kc = kernel_cokernel(h)
    assert kc.ker.invariant_factors == (0,)
    v = kc.embedding(kc.ker.gens()[0]).coords
    assert v in ((1, 1), (-1, -1))


def brute_coker_order(M):
    return abs(det(M))


@pytest.mark.parametrize("seed", range(40))
def test_kernel_cokernel_random(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
    Zn = FgAbGroup.free(n)
    kc = kernel_cokernel(GroupHom.from_matrix(Zn, Zn, M))
    d = det(M)
    if d:
        assert kc.ker.is_trivial()
        assert kc.coker.rank == 0 and kc.coker.torsion_order == abs(d)
    else:
        assert kc.ker.rank == kc.coker.rank >= 1


def test_hnf_and_kernel():
    H = hermite_normal_form([[2, 4], [3, 6]], 2)
    assert H == [[1, 2]]
    K = integer_kernel([[1, 2, 3]], 3)
    assert len(K) == 2
    for v in K:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_exterior_power():
    A = [[2, 1], [1, 1]]
    assert exterior_power(A, 0) == [[1]]
    assert exterior_power(A, 1) == A
    assert exterior_power(A, 2) == [[1]]


def test_direct_sum_iso():
    assert is_isomorphic(direct_sum(FgAbGroup((2,)), FgAbGroup((3,))), FgAbGroup((6,)))
    assert not is_isomorphic(FgAbGroup((2, 2)), FgAbGroup((4,)))
