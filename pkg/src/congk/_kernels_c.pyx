# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled residue kernels.  Same contract as ``_kernels_py``.

Residue codes are below 10**6 and field constants below 10**4 in absolute
value, so all intermediate products fit in 64-bit integers.
"""

from libc.stdint cimport int64_t


cdef inline int64_t _mod(int64_t x, int64_t m) nogil:
    cdef int64_t r = x % m
    return r + m if r < 0 else r


cdef inline int64_t _reduce(int64_t X, int64_t Y, int64_t a, int64_t b, int64_t c) nogil:
    cdef int64_t y = _mod(Y, c)
    cdef int64_t k = (Y - y) // c
    return y * a + _mod(X - k * b, a)


cdef inline int64_t _mul(int64_t u, int64_t v, int64_t a, int64_t b, int64_t c, int64_t t, int64_t n) nogil:
    cdef int64_t y1 = u // a, x1 = u % a
    cdef int64_t y2 = v // a, x2 = v % a
    cdef int64_t yy = y1 * y2
    return _reduce(x1 * x2 - n * yy, x1 * y2 + x2 * y1 + t * yy, a, b, c)


def reduce_residue(X, Y, a, b, c):
    return _reduce(X, Y, a, b, c)


def residue_mul(u, v, a, b, c, t, n):
    return _mul(u, v, a, b, c, t, n)


def unit_residues(int64_t a, int64_t b, int64_t c, primes):
    cdef list out = []
    cdef int64_t x, y, pa, pb, pc
    cdef bint ok
    plist = [(int(p[0]), int(p[1]), int(p[2])) for p in primes]
    for y in range(c):
        for x in range(a):
            ok = True
            for pa, pb, pc in plist:
                if y % pc == 0 and _mod(x - (y // pc) * pb, pa) == 0:
                    ok = False
                    break
            if ok:
                out.append(y * a + x)
    return out


def residue_bfs(gens, int64_t a, int64_t b, int64_t c, int64_t t, int64_t n):
    cdef Py_ssize_t k = len(gens), i, j
    cdef list g = [int(x) for x in gens]
    cdef int64_t one = _reduce(1, 0, a, b, c), x, y
    cdef dict table = {one: (0,) * k}
    cdef list frontier = [one], nxt
    cdef list v
    while frontier:
        nxt = []
        for x in frontier:
            vx = table[x]
            for i in range(k):
                y = _mul(x, g[i], a, b, c, t, n)
                if y not in table:
                    v = list(vx)
                    v[i] += 1
                    table[y] = tuple(v)
                    nxt.append(y)
        frontier = nxt
    cdef set rels = set()
    for x, vx in table.items():
        for i in range(k):
            w = table[_mul(x, g[i], a, b, c, t, n)]
            r = tuple([vx[j] - w[j] + (1 if j == i else 0) for j in range(k)])
            if any(r):
                rels.add(r)
    return table, rels
