import random

import pytest

from congk import _kernels_py as py
from congk import kernels

try:
    from congk import _kernels_c as cy
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")

# (a, b, c, t, n): HNF lattices of rational and quadratic moduli
LATTICES = [(12, 0, 1, 0, 0), (5, 0, 5, 0, 1), (5, 2, 1, 0, 1), (9, 0, 9, 1, 1), (6, 0, 6, 0, 5), (7, 3, 1, 1, 1)]


def test_backend_flag():
    assert kernels.BACKEND in ("python", "cython")
    if cy is not None:
        assert kernels.BACKEND == "cython" or __import__("os").environ.get("CONGK_PURE_PYTHON")


def test_reduce_residue_range():
    rng = random.Random(1)
    for a, b, c, _, _ in LATTICES:
        for _ in range(200):
            X, Y = rng.randint(-500, 500), rng.randint(-500, 500)
            code = py.reduce_residue(X, Y, a, b, c)
            assert 0 <= code < a * c
            # X + Y w minus its representative lies in the lattice
            y, x = divmod(code, a)
            dY = Y - y
            assert dY % c == 0
            assert (X - x - (dY // c) * b) % a == 0


@needs_ext
@pytest.mark.parametrize("lat", LATTICES)
def test_backends_agree(lat):
    a, b, c, t, n = lat
    rng = random.Random(hash(lat))
    for _ in range(300):
        X, Y = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert py.reduce_residue(X, Y, a, b, c) == cy.reduce_residue(X, Y, a, b, c)
        u, v = rng.randrange(a * c), rng.randrange(a * c)
        assert py.residue_mul(u, v, a, b, c, t, n) == cy.residue_mul(u, v, a, b, c, t, n)
    primes = [(a, b, c)] if c == 1 else [(a, 0, 1)]
    assert list(py.unit_residues(a, b, c, primes)) == list(cy.unit_residues(a, b, c, primes))
    units = py.unit_residues(a, b, c, primes)
    gens = units[1:3] if len(units) > 2 else units
    assert py.residue_bfs(gens, a, b, c, t, n) == cy.residue_bfs(gens, a, b, c, t, n)


def test_bfs_reaches_subgroup():
    # powers of 2 mod 9 form the full unit group of order 6
    table, rels = py.residue_bfs([2], 9, 0, 1, 0, 0)
    assert set(table) == {1, 2, 4, 8, 7, 5}
    assert table[8] == (3,)
    assert rels == {(6,)}
