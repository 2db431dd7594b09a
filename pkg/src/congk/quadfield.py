"""Exact arithmetic in Q and quadratic fields Q(sqrt d).

Integers are written ``x + y*w`` with ``w = sqrt(d)`` or ``(1 + sqrt(d))/2``
when ``d = 1 mod 4``, so ``w^2 = t*w - n``.  Ideals are HNF lattices
``(a, b, c)`` with Z-basis ``{a, b + c*w}``; over Q an ideal is ``(n, 0, 1)``.

Class groups use ideal reduction on primitive ideals ``[a, (B + sqrt D)/2]``
and every reduction step records the field element it divides out, so that
principal ideals come with explicit generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, NamedTuple, Sequence

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from .abelian import EnumeratedGroup, FgAbGroup, GroupElem, enumerate_group, hermite_normal_form
from .errors import InputError

MAX_ABS_D = 10**4
MAX_NORM = 10**8

W0, W1 = "w0", "w1"  # identity embedding and its conjugate


class AlgInt(NamedTuple):
    x: int
    y: int = 0


class FieldElem(NamedTuple):
    """``(x + y*w) / den`` in lowest terms with ``den > 0``."""

    x: int
    y: int
    den: int = 1

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def as_algint(self) -> AlgInt:
        if self.den != 1:
            raise ValueError(f"{self} is not integral")
        return AlgInt(self.x, self.y)


def _felem(x: int, y: int, den: int) -> FieldElem:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        x, y, den = -x, -y, -den
    g = gcd(gcd(x, y), den)
    return FieldElem(x // g, y // g, den // g)


class IdealRep(NamedTuple):
    a: int
    b: int = 0
    c: int = 1

    @property
    def norm(self) -> int:
        return self.a * self.c

    def to_json(self) -> dict:
        return {"hnf": [self.a, self.b, self.c]}


@dataclass(frozen=True)
class PrimeAbove:
    p: int
    rep: IdealRep
    f: int
    e: int
    index: int = 0

    @property
    def norm(self) -> int:
        return self.p**self.f

    def to_json(self) -> dict:
        return {"p": self.p, "index": self.index, "norm": self.norm, "f": self.f, "e": self.e, "hnf": list(self.rep)}


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``d == 1``, else Q(sqrt d) for squarefree d."""

    d: int = 1
    t: int = field(init=False, repr=False, compare=False)
    n_w: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d = self.d
        if not isinstance(d, int) or isinstance(d, bool):
            raise InputError("d must be an integer")
        if d == 0:
            raise InputError("d must be nonzero")
        if d != 1:
            if abs(d) > MAX_ABS_D:
                raise InputError(f"|d| must be at most {MAX_ABS_D}")
            if not is_squarefree(d):
                raise InputError("d must be squarefree")
        t, n = (1, (1 - d) // 4) if d % 4 == 1 else (0, -d)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "n_w", n)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(1)

    @classmethod
    def quadratic(cls, d: int) -> "FieldSpec":
        if d == 1:
            raise InputError("d must be different from 1")
        return cls(d)

    @property
    def is_rational(self) -> bool:
        return self.d == 1

    @property
    def kind(self) -> str:
        return "rational" if self.is_rational else "quadratic"

    @property
    def D(self) -> int:
        if self.is_rational:
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def degree(self) -> int:
        return 1 if self.is_rational else 2

    @property
    def real_places(self) -> tuple[str, ...]:
        if self.is_rational:
            return (W0,)
        return (W0, W1) if self.d > 0 else ()

    @property
    def is_real(self) -> bool:
        return self.d > 1

    @property
    def is_imaginary(self) -> bool:
        return self.d < 0

    def to_json(self) -> dict:
        return {"kind": "rational"} if self.is_rational else {"kind": "quadratic", "d": self.d}

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"Q(sqrt({self.d}))"

    # -- elements -------------------------------------------------------

    def mul(self, a: Sequence[int], b: Sequence[int]) -> AlgInt:
        x1, y1 = a[0], a[1]
        x2, y2 = b[0], b[1]
        yy = y1 * y2
        return AlgInt(x1 * x2 - self.n_w * yy, x1 * y2 + x2 * y1 + self.t * yy)

    def pow(self, a: Sequence[int], k: int) -> AlgInt:
        if k < 0:
            raise ValueError("negative exponent; use felem_pow")
        out, base = AlgInt(1, 0), AlgInt(a[0], a[1])
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def norm(self, a: Sequence[int]) -> int:
        x, y = a[0], a[1]
        return x * x + self.t * x * y + self.n_w * y * y

    def trace(self, a: Sequence[int]) -> int:
        x, y = a[0], a[1]
        return 2 * x + self.t * y if not self.is_rational else x

    def conj(self, a: Sequence[int]) -> AlgInt:
        x, y = a[0], a[1]
        if self.is_rational:
            return AlgInt(x, 0)
        return AlgInt(x + self.t * y, -y)

    def from_sqrt_d(self, u: int, v: int, w: int = 1) -> FieldElem:
        """The element ``(u + v*sqrt(D)) / w``."""
        if self.D % 2:  # sqrt D = 2w - 1
            return _felem(u - v, 2 * v, w)
        return _felem(u, 2 * v, w)  # sqrt D = 2 sqrt d = 2w

    def to_sqrt_d(self, a: Sequence[int]) -> tuple[int, int, int]:
        """``(u, v, w)`` with ``a = (u + v*sqrt(D)) / w`` (w in {1, 2})."""
        x, y = a[0], a[1]
        if self.is_rational:
            return x, 0, 1
        if self.D % 2:
            return 2 * x + y, y, 2
        return 2 * x, y, 2

    def fmul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        x, y = self.mul(a, b)
        return _felem(x, y, a.den * b.den)

    def finv(self, a: FieldElem) -> FieldElem:
        nm = self.norm(a)
        if nm == 0:
            raise ZeroDivisionError("inverse of zero")
        cx, cy = self.conj(a)
        return _felem(cx * a.den, cy * a.den, nm)

    def fpow(self, a: FieldElem, k: int) -> FieldElem:
        if k < 0:
            a, k = self.finv(a), -k
        out = FieldElem(1, 0, 1)
        base = a
        while k:
            if k & 1:
                out = self.fmul(out, base)
            base = self.fmul(base, base)
            k >>= 1
        return out

    def fnorm(self, a: FieldElem):
        from fractions import Fraction

        return Fraction(self.norm(a), a.den * a.den)


ONE = AlgInt(1, 0)


def parse_field(obj) -> FieldSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("field: expected an object with 'kind'")
    kind = obj["kind"]
    if kind == "rational":
        return FieldSpec.rational()
    if kind == "quadratic":
        if "d" not in obj:
            raise InputError("field.d is required for a quadratic field")
        return FieldSpec.quadratic(obj["d"])
    raise InputError(f"field.kind must be 'rational' or 'quadratic', got {kind!r}")


# ---------------------------------------------------------------------------
# signs


def _sign_u_plus_v_sqrt(u: int, v: int, d: int) -> int:
    """Sign of u + v*sqrt(d), d > 0 not a square."""
    if u >= 0 and v >= 0:
        return 1 if (u or v) else 0
    if u <= 0 and v <= 0:
        return -1
    lhs, rhs = u * u, v * v * d
    if u > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def embedding_signs(F: FieldSpec, a: Sequence[int], places: Iterable[str] | None = None) -> tuple[int, ...]:
    """Exact signs of the real embeddings of a nonzero element."""
    places = F.real_places if places is None else tuple(places)
    if tuple(a[:2]) == (0, 0):
        raise ValueError("signs of zero are undefined")
    if not F.is_rational and not F.is_real and places:
        raise ValueError(f"{F} has no real places")
    out = []
    for w in places:
        if w not in F.real_places:
            raise ValueError(f"unknown real place {w!r}")
        if F.is_rational:
            out.append(1 if a[0] > 0 else -1)
            continue
        u, v, _ = F.to_sqrt_d(a)
        out.append(_sign_u_plus_v_sqrt(u, v if w == W0 else -v, F.D))
    return tuple(out)


# ---------------------------------------------------------------------------
# ideals


def _hnf_from_vectors(vecs: Iterable[tuple[int, int]]) -> IdealRep:
    rows = hermite_normal_form([[y, x] for x, y in vecs], 2)
    if len(rows) != 2:
        raise ValueError("generators do not span a full lattice")
    (c, b), (_, a) = rows
    return IdealRep(a, b % a, c)


def ideal_from_gens(F: FieldSpec, gens: Iterable[Sequence[int]]) -> IdealRep:
    gens = [AlgInt(g[0], g[1]) for g in gens]
    if F.is_rational:
        g = 0
        for x, _ in gens:
            g = gcd(g, x)
        if g == 0:
            raise ValueError("zero ideal")
        return IdealRep(g, 0, 1)
    w = AlgInt(0, 1)
    vecs = []
    for g in gens:
        vecs.append(tuple(g))
        vecs.append(tuple(F.mul(g, w)))
    return _hnf_from_vectors(vecs)


def principal_ideal(F: FieldSpec, a: Sequence[int]) -> IdealRep:
    return ideal_from_gens(F, [a])


def unit_ideal(F: FieldSpec) -> IdealRep:
    return IdealRep(1, 0, 1)


def rational_ideal(F: FieldSpec, n: int) -> IdealRep:
    n = abs(n)
    return IdealRep(n, 0, 1) if F.is_rational else IdealRep(n, 0, n)


def ideal_basis(F: FieldSpec, A: IdealRep) -> tuple[AlgInt, AlgInt]:
    return AlgInt(A.a, 0), AlgInt(A.b, A.c)


def ideal_mul(F: FieldSpec, A: IdealRep, B: IdealRep) -> IdealRep:
    if F.is_rational:
        return IdealRep(A.a * B.a, 0, 1)
    A1, A2 = ideal_basis(F, A)
    B1, B2 = ideal_basis(F, B)
    return _hnf_from_vectors(tuple(F.mul(u, v)) for u in (A1, A2) for v in (B1, B2))


def ideal_pow(F: FieldSpec, A: IdealRep, k: int) -> IdealRep:
    if k < 0:
        raise ValueError("negative exponent")
    out, base = unit_ideal(F), A
    while k:
        if k & 1:
            out = ideal_mul(F, out, base)
        base = ideal_mul(F, base, base)
        k >>= 1
    return out


def ideal_norm(F: FieldSpec, A: IdealRep) -> int:
    return A.norm


def ideal_add(F: FieldSpec, A: IdealRep, B: IdealRep) -> IdealRep:
    if F.is_rational:
        return IdealRep(gcd(A.a, B.a), 0, 1)
    return _hnf_from_vectors([(A.a, 0), (A.b, A.c), (B.a, 0), (B.b, B.c)])


def ideal_contains(F: FieldSpec, A: IdealRep, z: Sequence[int]) -> bool:
    x, y = z[0], z[1]
    if F.is_rational:
        return y == 0 and x % A.a == 0
    if y % A.c:
        return False
    return (x - (y // A.c) * A.b) % A.a == 0


def ideal_conj(F: FieldSpec, A: IdealRep) -> IdealRep:
    if F.is_rational:
        return A
    return ideal_from_gens(F, [(A.a, 0), F.conj((A.b, A.c))])


def is_ideal(F: FieldSpec, A: IdealRep) -> bool:
    """Closure of the lattice under multiplication by w."""
    a, b, c = A
    if a <= 0 or c <= 0 or a % c or b % c or not 0 <= b < a:
        return False
    if F.is_rational:
        return b == 0 and c == 1
    w = AlgInt(0, 1)
    return ideal_contains(F, A, F.mul((a, 0), w)) and ideal_contains(F, A, F.mul((b, c), w))


def coprime(F: FieldSpec, A: IdealRep, B: IdealRep) -> bool:
    return ideal_add(F, A, B) == unit_ideal(F)


def element_coprime_to(F: FieldSpec, a: Sequence[int], A: IdealRep) -> bool:
    if A.norm == 1:
        return True
    return coprime(F, principal_ideal(F, a), A)


# ---------------------------------------------------------------------------
# primes


def kronecker_symbol(D: int, p: int) -> int:
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)  # Euler's criterion
    return 0 if r == 0 else (1 if r == 1 else -1)


def _root_b(D: int, p: int) -> int:
    """Some b with b = D mod 2 and 4p | b^2 - D."""
    if p == 2:
        return next(b for b in range(4) if (b - D) % 2 == 0 and (b * b - D) % 8 == 0)
    r = sqrt_mod(D % p, p)
    return r if (r - D) % 2 == 0 else r + p


def _b_to_hnf(D: int, p: int, b: int) -> IdealRep:
    b0 = (b - 1) // 2 if D % 2 else b // 2
    return IdealRep(p, b0 % p, 1)


def split_type(F: FieldSpec, p: int) -> list[PrimeAbove]:
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    if p > MAX_NORM:
        raise InputError(f"prime {p} exceeds the norm limit {MAX_NORM}")
    if F.is_rational:
        return [PrimeAbove(p, IdealRep(p, 0, 1), 1, 1, 0)]
    D = F.D
    k = kronecker_symbol(D, p)
    if k == -1:
        return [PrimeAbove(p, IdealRep(p, 0, p), 2, 1, 0)]
    b = _root_b(D, p)
    if k == 0:
        return [PrimeAbove(p, _b_to_hnf(D, p, b), 1, 2, 0)]
    reps = sorted({_b_to_hnf(D, p, b), _b_to_hnf(D, p, -b)}, key=lambda r: r.b)
    assert len(reps) == 2
    return [PrimeAbove(p, r, 1, 1, i) for i, r in enumerate(reps)]


@lru_cache(maxsize=None)
def _prime_list(bound: int) -> tuple[int, ...]:
    from sympy import primerange

    return tuple(primerange(2, bound + 1))


def primes_upto(bound: int) -> tuple[int, ...]:
    return _prime_list(int(bound))


def primes_of_norm_upto(F: FieldSpec, bound: int, avoid: int = 1) -> list[PrimeAbove]:
    """Prime ideals of norm <= bound not dividing ``avoid``, by (norm, index)."""
    if bound > MAX_NORM:
        raise InputError(f"norm bound exceeds {MAX_NORM}")
    out = []
    for p in primes_upto(bound):
        if avoid % p == 0:
            continue
        for P in split_type(F, p):
            if P.norm <= bound:
                out.append(P)
    out.sort(key=lambda P: (P.norm, P.index))
    return out


def prime_ideal_factorization(F: FieldSpec, A: IdealRep) -> list[tuple[PrimeAbove, int]]:
    """Primes dividing A with multiplicities."""
    out = []
    for p in sorted(factorint(A.norm)):
        for P in split_type(F, p):
            k = 0
            while True:
                # A in P^(k+1): A + P^(k+1) == P^(k+1)
                Pk = ideal_pow(F, P.rep, k + 1)
                if ideal_add(F, A, Pk) != Pk:
                    break
                k += 1
            if k:
                out.append((P, k))
    return out


# ---------------------------------------------------------------------------
# reduction


def _primitive(F: FieldSpec, A: IdealRep) -> tuple[int, int, int]:
    """A = c * [a, (B + sqrt D)/2]."""
    a, b, c = A
    return c, a // c, 2 * (b // c) + (F.D & 1)


def _form_ideal(F: FieldSpec, a: int, B: int) -> IdealRep:
    b0 = (B - (F.D & 1)) // 2
    return IdealRep(a, b0 % a, 1)


def _norm_neg(a: int, B: int) -> int:
    B %= 2 * a
    return B - 2 * a if B > a else B


def _norm_pos(D: int, s: int, a: int, B: int) -> int:
    if a > s:  # a > sqrt D
        return _norm_neg(a, B)
    # sqrt D - 2a < B < sqrt D, i.e. s - 2a < B <= s
    B = (B - (s - 2 * a + 1)) % (2 * a) + s - 2 * a + 1
    return B


def _is_reduced_pos(s: int, a: int, B: int) -> bool:
    return 0 < B <= s and B + 2 * a >= s + 1 and 2 * a - B <= s


class _Reducer:
    """Reduction and cycles of primitive ideals, with multipliers."""

    def __init__(self, F: FieldSpec):
        if F.is_rational:
            raise ValueError("no reduction over Q")
        self.F = F
        self.D = F.D
        self.s = isqrt(abs(F.D))

    def normalize(self, a, B):
        return _norm_neg(a, B) if self.D < 0 else _norm_pos(self.D, self.s, a, B)

    def rho(self, a, B):
        """(lam, a', B') with [a,B] = lam * [a',B']."""
        C = (B * B - self.D) // (4 * a)
        lam = self.F.from_sqrt_d(B, 1, 2 * abs(C))
        a2 = abs(C)
        return lam, a2, self.normalize(a2, -B)

    def reduce(self, A: IdealRep) -> tuple[FieldElem, int, int]:
        c, a, B = _primitive(self.F, A)
        rho = FieldElem(c, 0, 1)
        B = self.normalize(a, B)
        F = self.F
        if self.D < 0:
            while True:
                C = (B * B - self.D) // (4 * a)
                if a > C or (a == C and B < 0):
                    lam, a, B = self.rho(a, B)
                    rho = F.fmul(rho, lam)
                else:
                    return rho, a, B
        while not _is_reduced_pos(self.s, a, B):
            lam, a, B = self.rho(a, B)
            rho = F.fmul(rho, lam)
        return rho, a, B

    def cycle(self, a, B) -> list[tuple[int, int, FieldElem]]:
        """Reduced cycle starting at (a, B): entries (a_i, B_i, lam_i) with
        [a_i, B_i] = lam_i [a_{i+1}, B_{i+1}]."""
        out = []
        start = (a, B)
        while True:
            lam, a2, B2 = self.rho(a, B)
            out.append((a, B, lam))
            a, B = a2, B2
            if (a, B) == start:
                return out

    def label(self, A: IdealRep) -> tuple[FieldElem, tuple[int, int]]:
        """A = rho * ideal(label) with a canonical label per class."""
        rho, a, B = self.reduce(A)
        if self.D < 0:
            return rho, (a, B)
        cyc = self.cycle(a, B)
        best = min(range(len(cyc)), key=lambda i: (cyc[i][0], cyc[i][1]))
        for i in range(best):
            rho = self.F.fmul(rho, cyc[i][2])
        return rho, (cyc[best][0], cyc[best][1])

    def principal_generator(self, A: IdealRep) -> FieldElem | None:
        rho, a, B = self.reduce(A)
        if self.D < 0:
            return rho if a == 1 else None
        for a_i, _, lam in self.cycle(a, B):
            if a_i == 1:
                return rho
            rho = self.F.fmul(rho, lam)
        return None

    def reduced_labels(self) -> list[tuple[int, int]]:
        """All class labels (one per wide class)."""
        D = self.D
        par = D & 1
        labels = set()
        if D < 0:
            amax = isqrt(-D // 3) + 1
            for a in range(1, amax + 1):
                for B in range(-a + 1, a + 1):
                    if (B - par) % 2 or (B * B - D) % (4 * a):
                        continue
                    C = (B * B - D) // (4 * a)
                    if C < a or (C == a and B < 0):
                        continue
                    labels.add((a, B))
            return sorted(labels)
        s = self.s
        seen = set()
        for a in range(1, s + 1):
            for B in range(1, s + 1):
                if (B - par) % 2 or (B * B - D) % (4 * a) or not _is_reduced_pos(s, a, B):
                    continue
                if (a, B) in seen:
                    continue
                cyc = self.cycle(a, B)
                seen.update((x, y) for x, y, _ in cyc)
                labels.add(min((x, y) for x, y, _ in cyc))
        return sorted(labels)


@lru_cache(maxsize=None)
def _reducer(F: FieldSpec) -> _Reducer:
    return _Reducer(F)


def class_label(F: FieldSpec, A: IdealRep) -> tuple[int, int]:
    if F.is_rational:
        return (1, 0)
    return _reducer(F).label(A)[1]


def label_ideal(F: FieldSpec, label: tuple[int, int]) -> IdealRep:
    if F.is_rational:
        return unit_ideal(F)
    return _form_ideal(F, *label)


def is_principal_with_generator(F: FieldSpec, A: IdealRep) -> AlgInt | None:
    """A generator of A when A is principal, else None."""
    if F.is_rational:
        return AlgInt(A.a, 0)
    g = _reducer(F).principal_generator(A)
    if g is None:
        return None
    out = g.as_algint()
    assert principal_ideal(F, out) == A
    return out


def product_generator(F: FieldSpec, factors: Sequence[tuple[IdealRep, int]]) -> FieldElem | None:
    """x with (x) = prod A_i^{e_i}, or None if that fractional ideal is not
    principal.  Negative exponents use A^-1 = conj(A) / N(A)."""
    if F.is_rational:
        num, den = 1, 1
        for A, e in factors:
            if e >= 0:
                num *= A.a**e
            else:
                den *= A.a ** (-e)
        return _felem(num, 0, den)
    red = _reducer(F)
    acc = FieldElem(1, 0, 1)
    den = 1
    cur = unit_ideal(F)
    for A, e in factors:
        if e < 0:
            A, e = ideal_conj(F, A), -e
            den *= A.norm**e
        for _ in range(e):
            rho, a, B = red.reduce(ideal_mul(F, cur, A))
            acc = F.fmul(acc, rho)
            cur = _form_ideal(F, a, B)
    g = red.principal_generator(cur)
    if g is None:
        return None
    g = F.fmul(acc, g)
    if not g.is_integral:
        raise AssertionError("generator of an integral ideal is not integral")
    return F.fmul(g, FieldElem(1, 0, den))


def class_number(F: FieldSpec) -> int:
    if F.is_rational:
        return 1
    return len(_reducer(F).reduced_labels())


@dataclass(frozen=True)
class ClassGroupData:
    """Wide class group with explicit discrete logarithms.

    ``gens`` are prime ideals of degree one; ``log`` writes an ideal as
    ``prod gens[i]^v_i * (x)`` with nonnegative exponents v.
    """

    field: FieldSpec
    enum: EnumeratedGroup | None
    gens: tuple[PrimeAbove, ...]

    @property
    def group(self) -> FgAbGroup:
        return FgAbGroup() if self.enum is None else self.enum.group

    @property
    def order(self) -> int:
        return self.group.torsion_order

    def exponents(self, A: IdealRep) -> tuple[int, ...]:
        if self.enum is None:
            return ()
        return self.enum.table[class_label(self.field, A)]

    def project(self, v: Sequence[int]) -> GroupElem:
        if self.enum is None:
            return FgAbGroup().zero()
        return self.enum.presentation.project(v)

    def log(self, A: IdealRep) -> tuple[tuple[int, ...], FieldElem]:
        """Exponents v and x with A = prod gens^v * (x)."""
        F = self.field
        if self.enum is None:
            x = product_generator(F, [(A, 1)])
            if x is None:
                raise AssertionError("ideal of a principal class has no generator")
            return (), x
        v = self.exponents(A)
        x = product_generator(F, [(A, 1)] + [(P.rep, -e) for P, e in zip(self.gens, v)])
        if x is None:
            raise AssertionError("class group table is inconsistent")
        return v, x

    def representatives(self) -> list[IdealRep]:
        """Least-norm prime ideal (or the unit ideal) in each class."""
        F = self.field
        if self.enum is None:
            return [unit_ideal(F)]
        want = {lab: None for lab in self.enum.table}
        want[class_label(F, unit_ideal(F))] = unit_ideal(F)
        left = sum(1 for v in want.values() if v is None)
        bound = 2
        while left:
            bound *= 2
            for P in primes_of_norm_upto(F, bound):
                lab = class_label(F, P.rep)
                if want[lab] is None:
                    want[lab] = P.rep
                    left -= 1
        return sorted(want.values(), key=lambda I: (I.norm, I))


@lru_cache(maxsize=None)
def class_group_data(F: FieldSpec, avoid: int = 1) -> ClassGroupData:
    """Class group with generators chosen among primes not dividing ``avoid``."""
    h = class_number(F)
    if h == 1:
        return ClassGroupData(F, None, ())
    red = _reducer(F)
    one = red.label(unit_ideal(F))[1]

    def mul(x, y):
        return red.label(ideal_mul(F, _form_ideal(F, *x), _form_ideal(F, *y)))[1]

    prime_of = {}

    def candidates():
        bound = 16
        done = 0
        while True:
            for P in primes_of_norm_upto(F, bound, avoid):
                if P.f == 1 and P.norm > done:
                    lab = red.label(P.rep)[1]
                    prime_of.setdefault(lab, P)
                    yield lab
            done, bound = bound, bound * 4

    enum = enumerate_group([], mul, one, target_order=h, candidates=candidates())
    if len(enum.table) != h:
        raise AssertionError("class group enumeration incomplete")
    gens = tuple(prime_of[g] for g in enum.gens)
    return ClassGroupData(F, enum, gens)


def class_group(F: FieldSpec) -> tuple[FgAbGroup, list[IdealRep]]:
    data = class_group_data(F)
    return data.group, data.representatives()


def narrow_class_group(F: FieldSpec) -> tuple[FgAbGroup, list[IdealRep]]:
    """Narrow class group (as a ray class group for the product of the real
    places) with least-norm prime representatives."""
    if F.is_imaginary or F.is_rational:
        return class_group(F)
    from .congmon import CongruenceMonoidSpec, Modulus, ray_class_group

    spec = CongruenceMonoidSpec(F, Modulus(unit_ideal(F), F.real_places), gamma=())
    rc = ray_class_group(spec)
    want = {e: None for e in rc.group.elements()}
    want[rc.group.zero()] = unit_ideal(F)
    left = len(want) - 1
    bound = 2
    while left:
        bound *= 2
        for P in primes_of_norm_upto(F, bound):
            e = rc.class_of(P.rep)
            if want[e] is None:
                want[e] = P.rep
                left -= 1
    return rc.group, sorted(want.values(), key=lambda I: (I.norm, I))


# ---------------------------------------------------------------------------
# units


def fundamental_unit(F: FieldSpec) -> AlgInt:
    """Fundamental unit > 1 from the continued fraction of (b + sqrt D)/2."""
    if not F.is_real:
        raise InputError("fundamental unit requires d > 1")
    D = F.D
    s = isqrt(D)
    b = s if (s - D) % 2 == 0 else s - 1
    P0, Q0 = b, 2
    P, Q = P0, Q0
    q_prev, q = 1, 0  # q_{-2}, q_{-1}
    while True:
        a = (P + s) // Q
        q_prev, q = q, a * q + q_prev
        P = a * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == (P0, Q0):
            break
    alpha = AlgInt((b - (D & 1)) // 2, 1)
    eps = AlgInt(q * alpha.x + q_prev, q * alpha.y)
    assert abs(F.norm(eps)) == 1
    return eps


class PellData(NamedTuple):
    eps: AlgInt
    t: int
    u: int


def totally_positive_fundamental_unit(F: FieldSpec) -> PellData:
    """Generator eps > 1 of the totally positive units; eps = (t + u sqrt D)/2."""
    e0 = fundamental_unit(F)
    eps = e0 if F.norm(e0) == 1 else F.mul(e0, e0)
    u_, v_, _ = F.to_sqrt_d(eps)
    t, u = u_, v_
    assert t * t - F.D * u * u == 4 and t > 2
    return PellData(eps, t, u)


def torsion_units(F: FieldSpec) -> list[AlgInt]:
    """All roots of unity in R, listed as powers of a generator."""
    if F.d == -1:
        z = AlgInt(0, 1)
        k = 4
    elif F.d == -3:
        z = AlgInt(0, 1)  # w = (1 + sqrt -3)/2 has order 6
        k = 6
    else:
        z = AlgInt(-1, 0)
        k = 2
    return [F.pow(z, i) for i in range(k)]


def unit_generators(F: FieldSpec) -> list[AlgInt]:
    """Generators of R*: a root of unity of maximal order, and eps_0 if real."""
    tu = torsion_units(F)
    gens = [tu[1]]
    if F.is_real:
        gens.append(fundamental_unit(F))
    return gens
