"""Pure-Python residue kernels (reference implementation and fallback).

A residue ``x + y*w`` modulo the HNF lattice ``(a, b, c)`` is encoded as
the integer ``y*a + x`` with ``0 <= x < a`` and ``0 <= y < c``.
"""


def reduce_residue(X, Y, a, b, c):
    y = Y % c
    k = (Y - y) // c
    return y * a + (X - k * b) % a


def residue_mul(u, v, a, b, c, t, n):
    y1, x1 = divmod(u, a)
    y2, x2 = divmod(v, a)
    yy = y1 * y2
    return reduce_residue(x1 * x2 - n * yy, x1 * y2 + x2 * y1 + t * yy, a, b, c)


def unit_residues(a, b, c, primes):
    """Codes of residues not lying in any of the prime lattices ``primes``."""
    out = []
    for y in range(c):
        for x in range(a):
            ok = True
            for pa, pb, pc in primes:
                if y % pc == 0 and (x - (y // pc) * pb) % pa == 0:
                    ok = False
                    break
            if ok:
                out.append(y * a + x)
    return out


def residue_bfs(gens, a, b, c, t, n):
    """Cayley-graph search from 1 over ``gens``.

    Returns ``(table, relations)``: ``table`` maps each reached code to its
    spanning-tree exponent vector and ``relations`` is the set of distinct
    nonzero non-tree edge relations.
    """
    k = len(gens)
    one = reduce_residue(1, 0, a, b, c)
    table = {one: (0,) * k}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            vx = table[x]
            for i in range(k):
                y = residue_mul(x, gens[i], a, b, c, t, n)
                if y not in table:
                    v = list(vx)
                    v[i] += 1
                    table[y] = tuple(v)
                    nxt.append(y)
        frontier = nxt
    rels = set()
    for x, vx in table.items():
        for i in range(k):
            w = table[residue_mul(x, gens[i], a, b, c, t, n)]
            r = tuple(vx[j] - w[j] + (j == i) for j in range(k))
            if any(r):
                rels.add(r)
    return table, rels
