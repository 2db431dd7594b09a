"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain lists of rows holding Python ints.  Groups are stored in
invariant-factor form ``Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...`` and
free summands written as ``0`` (always last).  Homomorphisms act on column
vectors: column ``i`` of the matrix is the image of domain generator ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm, prod
from typing import Callable, Hashable, Iterable, Sequence

IntMatrix = list[list[int]]

INFINITE = None  # element_order result for elements of infinite order


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)] for row in A]


def matvec(A: IntMatrix, v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A: IntMatrix, cols: int | None = None) -> IntMatrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A: IntMatrix, cols: int | None = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, S, V)`` with ``U @ A @ V == S`` and S in Smith form.

    The pivot is the nonzero entry of least absolute value in the remaining
    block, ties broken by (row, col).  ``cols`` is needed only when A has no
    rows.
    """
    m = len(A)
    n = len(A[0]) if m else (cols or 0)
    S = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        if q:
            rs, rd = S[src], S[dst]
            for k in range(n):
                rd[k] -= q * rs[k]
            us, ud = U[src], U[dst]
            for k in range(m):
                ud[k] -= q * us[k]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        if q:
            for row in S:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return U, S, V
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return U, S, V


def hermite_normal_form(rows: IntMatrix, cols: int) -> IntMatrix:
    """Row-style HNF (upper triangular, positive pivots, reduced above) of the
    lattice spanned by ``rows``; zero rows are dropped."""
    M = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while M and col < cols:
        nz = [r for r in M if r[col]]
        rest = [r for r in M if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col]:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        M = [r for r in rest if any(r)]
        col += 1
    for i, r in enumerate(out):
        c = next(j for j, a in enumerate(r) if a)
        for k in range(i):
            q = out[k][c] // r[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], r)]
    return out


def integer_kernel(A: IntMatrix, cols: int) -> IntMatrix:
    """Basis (as rows) of the integer vectors x with A x = 0."""
    if not A:
        return identity(cols)
    _, S, V = smith_normal_form(A)
    rank = sum(1 for i in range(min(len(S), cols)) if S[i][i])
    return [[V[r][j] for r in range(cols)] for j in range(rank, cols)]


def exterior_power(A: IntMatrix, k: int) -> IntMatrix:
    """Matrix of the k-th exterior power on the lexicographic basis."""
    n = len(A)
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range for a {n}x{n} matrix")
    idx = list(combinations(range(n), k))
    return [[det([[A[i][j] for j in J] for i in I]) for J in idx] for I in idx]


# ---------------------------------------------------------------------------
# groups


def _normalize(factors: Iterable[int]) -> tuple[int, ...]:
    fs = [abs(f) for f in factors]
    torsion = [f for f in fs if f != 0 and f != 1]
    free = sum(1 for f in fs if f == 0)
    if len(torsion) > 1 or any(torsion[i + 1] % torsion[i] for i in range(len(torsion) - 1)):
        _, S, _ = smith_normal_form([[f if i == j else 0 for j in range(len(torsion))] for i, f in enumerate(torsion)])
        torsion = [S[i][i] for i in range(len(torsion)) if S[i][i] != 1]
    return tuple(torsion) + (0,) * free


@dataclass(frozen=True)
class FgAbGroup:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", _normalize(self.invariant_factors))

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> "FgAbGroup":
        return cls(tuple(orders))

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls((0,) * rank)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d)

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion_factors)

    @property
    def order(self) -> int | None:
        return self.torsion_order if self.rank == 0 else None

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def zero(self) -> "GroupElem":
        return GroupElem(self, (0,) * self.ngens)

    def elem(self, coords: Sequence[int]) -> "GroupElem":
        return GroupElem(self, tuple(coords))

    def gens(self) -> list["GroupElem"]:
        return [self.elem([int(i == j) for j in range(self.ngens)]) for i in range(self.ngens)]

    def elements(self) -> Iterable["GroupElem"]:
        """All elements of a finite group, in lexicographic coordinate order."""
        if self.rank:
            raise ValueError("cannot enumerate an infinite group")

        def rec(i, acc):
            if i == self.ngens:
                yield self.elem(acc)
                return
            for c in range(self.invariant_factors[i]):
                yield from rec(i + 1, acc + [c])

        return rec(0, [])

    def to_json(self) -> list[int]:
        return list(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class GroupElem:
    group: FgAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        fs = self.group.invariant_factors
        if len(self.coords) != len(fs):
            raise ValueError("coordinate count does not match the group")
        object.__setattr__(self, "coords", tuple(c % d if d else c for c, d in zip(self.coords, fs)))

    def __add__(self, other: "GroupElem") -> "GroupElem":
        return GroupElem(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElem":
        return GroupElem(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElem") -> "GroupElem":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElem":
        return GroupElem(self.group, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)


def element_order(G: FgAbGroup, g: GroupElem) -> int | None:
    """Least n >= 1 with n*g == 0, or INFINITE (None)."""
    n = 1
    for c, d in zip(g.coords, G.invariant_factors):
        if d == 0:
            if c:
                return INFINITE
            continue
        n = lcm(n, d // gcd(c, d))
    return n


@dataclass(frozen=True)
class GroupHom:
    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.codomain.ngens
        cols = self.domain.ngens
        M = tuple(tuple(r) for r in self.matrix)
        if len(M) != rows or any(len(r) != cols for r in M):
            raise ValueError("matrix shape does not match domain/codomain")
        object.__setattr__(self, "matrix", M)

    @classmethod
    def from_matrix(cls, domain, codomain, matrix) -> "GroupHom":
        return cls(domain, codomain, tuple(tuple(r) for r in matrix))

    def columns(self) -> list[list[int]]:
        return [[self.matrix[i][j] for i in range(self.codomain.ngens)] for j in range(self.domain.ngens)]

    def __call__(self, g: GroupElem | Sequence[int]) -> GroupElem:
        coords = g.coords if isinstance(g, GroupElem) else tuple(g)
        return self.codomain.elem(matvec([list(r) for r in self.matrix], coords))

    def is_well_defined(self) -> bool:
        for j, d in enumerate(self.domain.invariant_factors):
            if d == 0:
                continue
            col = [d * self.matrix[i][j] for i in range(self.codomain.ngens)]
            if not self.codomain.elem(col).is_zero():
                return False
        return True

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self o first."""
        M = matmul([list(r) for r in self.matrix], [list(r) for r in first.matrix]) if self.matrix else []
        if not M:
            M = [[] for _ in range(self.codomain.ngens)] if not first.domain.ngens else zeros(self.codomain.ngens, first.domain.ngens)
        return GroupHom.from_matrix(first.domain, self.codomain, M)


@dataclass(frozen=True)
class Presentation:
    """Z^n / rowspan(relations) in invariant-factor form.

    ``projection`` sends Z^n coordinates to group coordinates; ``lift[j]`` is
    a vector in Z^n representing group generator j.
    """

    group: FgAbGroup
    projection: GroupHom
    lift: tuple[tuple[int, ...], ...]

    def project(self, v: Sequence[int]) -> GroupElem:
        return self.projection(v)


def group_from_relations(num_gens: int, relations: IntMatrix) -> Presentation:
    rels = [list(r) for r in relations if any(r)]
    if any(len(r) != num_gens for r in rels):
        raise ValueError("relation rows must have num_gens columns")
    if rels:
        _, S, V = smith_normal_form(rels)
        diag = [S[i][i] if i < len(S) else 0 for i in range(num_gens)]
    else:
        V = identity(num_gens)
        diag = [0] * num_gens
    keep = [i for i, s in enumerate(diag) if s != 1]
    factors = tuple(diag[i] for i in keep)
    Vinv = _unimodular_inverse(V)
    group = FgAbGroup(factors)
    # SNF guarantees the divisibility chain, so normalization keeps order
    assert group.invariant_factors == factors, (group, factors)
    proj = [[V[r][i] for r in range(num_gens)] for i in keep]
    projection = GroupHom.from_matrix(FgAbGroup.free(num_gens), group, proj if proj else [])
    lift = tuple(tuple(Vinv[i]) for i in keep)
    return Presentation(group, projection, lift)


def _unimodular_inverse(V: IntMatrix) -> IntMatrix:
    n = len(V)
    inv = _rational_inverse(V)
    out = [[int(x) for x in row] for row in inv]
    assert all(x.denominator == 1 for row in inv for x in row)
    return out if n else []


def _rational_inverse(A: IntMatrix) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def hom_relations(G: FgAbGroup) -> IntMatrix:
    """Relation rows d_i e_i of G as a quotient of Z^k."""
    k = G.ngens
    return [[d if i == j else 0 for j in range(k)] for i, d in enumerate(G.invariant_factors) if d]


def subgroup_quotient(G: FgAbGroup, gens: Sequence[GroupElem | Sequence[int]]) -> Presentation:
    """G / <gens>; the projection is expressed on G's coordinates."""
    rows = hom_relations(G) + [list(g.coords if isinstance(g, GroupElem) else g) for g in gens]
    pres = group_from_relations(G.ngens, rows)
    return Presentation(pres.group, GroupHom(G, pres.group, pres.projection.matrix), pres.lift)


@dataclass(frozen=True)
class KernelCokernel:
    ker: FgAbGroup
    embedding: GroupHom  # ker -> domain
    coker: FgAbGroup
    projection: GroupHom  # codomain -> coker


def kernel_cokernel(h: GroupHom) -> KernelCokernel:
    G, H = h.domain, h.codomain
    k, m = G.ngens, H.ngens
    M = [list(r) for r in h.matrix]
    # cokernel: H / image
    cok = subgroup_quotient(H, h.columns())
    # kernel: x in Z^k with M x in the relation lattice of H
    E = [[d if i == j else 0 for j in range(m)] for i, d in enumerate(H.invariant_factors)]
    big = [M[i] + E[i] for i in range(m)]
    if m:
        sols = integer_kernel(big, k + m)
        pre = hermite_normal_form([s[:k] for s in sols], k)
    else:
        pre = identity(k)
    # express G's relation vectors in the basis ``pre`` (they lie in it
    # because h is well defined)
    r = len(pre)
    rels = []
    if r:
        U, S, V = smith_normal_form(pre)
        for rel in hom_relations(G):
            w = [sum(rel[i] * V[i][j] for i in range(k)) for j in range(k)]
            y = []
            for i in range(r):
                if w[i] % S[i][i]:
                    raise ValueError("homomorphism is not well defined")
                y.append(w[i] // S[i][i])
            if any(w[r:]):
                raise ValueError("homomorphism is not well defined")
            rels.append([sum(y[i] * U[i][j] for i in range(r)) for j in range(r)])
    k_old, k = k, r
    kp = group_from_relations(k, rels)
    # embedding: ker generator j -> pre-basis combination lift[j] -> Z^k -> G
    emb_cols = []
    for v in kp.lift:
        x = [sum(v[i] * pre[i][j] for i in range(r)) for j in range(k_old)]
        emb_cols.append(list(G.elem(x).coords))
    emb = transpose(emb_cols) if emb_cols else [[] for _ in range(k_old)]
    embedding = GroupHom.from_matrix(kp.group, G, emb)
    return KernelCokernel(kp.group, embedding, cok.group, cok.projection)


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(tuple(d for g in groups for d in g.invariant_factors))


def is_isomorphic(A: FgAbGroup, B: FgAbGroup) -> bool:
    return A.invariant_factors == B.invariant_factors


@dataclass(frozen=True)
class EnumeratedGroup:
    """A finite abelian group given by explicit hashable elements."""

    presentation: Presentation
    gens: tuple[Hashable, ...]
    table: dict  # element -> tuple of exponents over ``gens``
    relations: tuple[tuple[int, ...], ...] = ()  # basis of the relation lattice

    @property
    def group(self) -> FgAbGroup:
        return self.presentation.group

    def log(self, x: Hashable) -> GroupElem:
        return self.presentation.project(self.table[x])


def enumerate_group(
    gens: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    one: Hashable,
    target_order: int | None = None,
    candidates: Iterable[Hashable] | None = None,
) -> EnumeratedGroup:
    """Structure of the group generated by ``gens`` via its Cayley graph.

    Spanning-tree coordinates plus one relation per non-tree edge generate
    the full relation lattice.  When ``candidates`` is given, extra
    generators are drawn from it until ``target_order`` elements are reached.
    """
    gens = list(gens)

    def bfs():
        k = len(gens)
        table = {one: (0,) * k}
        frontier = [one]
        while frontier:
            nxt = []
            for x in frontier:
                vx = table[x]
                for i, g in enumerate(gens):
                    y = mul(x, g)
                    if y not in table:
                        v = list(vx)
                        v[i] += 1
                        table[y] = tuple(v)
                        nxt.append(y)
            frontier = nxt
        return table

    table = bfs()
    if candidates is not None and target_order is not None:
        for c in candidates:
            if len(table) >= target_order:
                break
            if c not in table:
                gens.append(c)
                table = bfs()
    k = len(gens)
    seen = set()
    for x, vx in table.items():
        for i, g in enumerate(gens):
            w = table[mul(x, g)]
            r = tuple(a - b + (j == i) for j, (a, b) in enumerate(zip(vx, w)))
            if any(r):
                seen.add(r)
    pres, basis = presentation_with_relations(k, seen)
    return EnumeratedGroup(pres, tuple(gens), table, basis)


def presentation_with_relations(
    k: int, rels: Iterable[Sequence[int]]
) -> tuple[Presentation, tuple[tuple[int, ...], ...]]:
    """Presentation plus an HNF basis of the relation lattice."""
    basis: IntMatrix = []
    batch: IntMatrix = []
    for r in rels:
        batch.append(list(r))
        if len(batch) > 8 * k + 8:
            basis = hermite_normal_form(basis + batch, k)
            batch = []
    basis = hermite_normal_form(basis + batch, k)
    return group_from_relations(k, basis), tuple(tuple(r) for r in basis)

