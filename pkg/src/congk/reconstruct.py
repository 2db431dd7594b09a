"""Reconstruction invariants and pairwise comparison of congruence data.

Everything here reads the same per-prime table: for each prime P coprime
to m0 with N(P) <= bound, the order f(P) of its class in C and the torsion
order o = (N(P)^f - 1)/m of the unit in the corresponding quotient.  All
"for almost all primes" statements are evaluated on an explicit window
[T0, bound] and every verdict carries the window it was computed on.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import factorint, isprime, perfect_power

from .abelian import FgAbGroup, is_isomorphic
from .congmon import (
    CongruenceMonoidSpec,
    f_order,
    is_class_field_galois_heuristic,
    ray_class_group,
    roots_of_unity_in_M,
)
from .errors import InputError
from .ktheory import ktheory, mu_injective_mod, real_quadratic_plus_spec
from .quadfield import (
    PrimeAbove,
    coprime,
    ideal_contains,
    primes_of_norm_upto,
    primes_upto,
    split_type,
    totally_positive_fundamental_unit,
)

CONSISTENT = "CONSISTENT"
DISTINCT = "DISTINCT"
NOT_APPLICABLE = "NOT_APPLICABLE"
INSUFFICIENT_DATA = "INSUFFICIENT_DATA"
EQUIVALENT_UP_TO_BOUND = "EQUIVALENT_UP_TO_BOUND"
MATCH = "MATCH"
ISO_CONSISTENT = "C*-ISOMORPHIC-CONSISTENT"
DISTINGUISHED = "DISTINGUISHED"

MIN_DEGREE_RECORDS = 50
ROOTS_CAP_FACTOR = 24


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class PrimitiveIdealInvariant:
    prime: PrimeAbove
    norm: int
    f: int
    torsion_order: int | None  # None: roots of unity collapse mod the prime

    @property
    def skipped(self) -> bool:
        return self.torsion_order is None

    def to_json(self) -> dict:
        return {
            "p": self.prime.p,
            "index": self.prime.index,
            "norm": self.norm,
            "f": self.f,
            "o": "SKIPPED" if self.skipped else self.torsion_order,
        }


@dataclass(frozen=True)
class InvariantProfile:
    spec: CongruenceMonoidSpec
    m: int
    class_group: FgAbGroup
    n: int
    records: tuple[PrimitiveIdealInvariant, ...]
    bound: int
    rank: int | None  # rk(Q (x) K0) when the K-theory is evaluable
    p_max: int
    threshold: int  # T0: splitting data is exact for primes p >= T0

    @property
    def e(self) -> int:
        """Exponent cap n + rk.  Without an evaluated rank, n + n#C is used,
        which bounds every exponent N(P)^f = p^i that can occur."""
        if self.rank is not None:
            return self.n + self.rank
        return self.n + self.n * self.class_group.torsion_order

    def orders(self) -> list[int]:
        return [r.torsion_order for r in self.records if not r.skipped]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "m": self.m,
            "class_group": self.class_group.to_json(),
            "n": self.n,
            "bound": self.bound,
            "threshold": self.threshold,
            "records": [r.to_json() for r in self.records],
        }


def _p_max(spec: CongruenceMonoidSpec) -> int:
    """Largest prime dividing some N(1 - z), z a nontrivial root of unity in M
    (1 when M has no nontrivial roots of unity)."""
    F = spec.field
    mu, _ = roots_of_unity_in_M(spec)
    ps = [1]
    for z in mu[1:]:
        ps.extend(factorint(abs(F.norm((1 - z[0], -z[1])))))
    return max(ps)


def exception_threshold(m: int, p_max: int, n: int, h: int) -> int:
    """Least integer p with (p - 1)/m > p_max^(n h) - 1."""
    return m * (p_max ** (n * h) - 1) + 2


def _record(spec: CongruenceMonoidSpec, P: PrimeAbove, m: int) -> PrimitiveIdealInvariant:
    f = f_order(spec, P)
    o = None
    if mu_injective_mod(spec, P):
        o, r = divmod(P.norm**f - 1, m)
        if r:
            raise AssertionError("torsion order is not integral")
    return PrimitiveIdealInvariant(P, P.norm, f, o)


def _records_chunk(args):
    spec, primes, m = args
    return [_record(spec, P, m) for P in primes]


def _profile_primes(spec: CongruenceMonoidSpec, bound: int) -> list[PrimeAbove]:
    F = spec.field
    return [P for P in primes_of_norm_upto(F, bound) if coprime(F, P.rep, spec.m0)]


def _build_profile(spec: CongruenceMonoidSpec, norm_bound: int, jobs: int) -> InvariantProfile:
    if norm_bound < 2:
        raise InputError("norm_bound must be at least 2")
    F = spec.field
    rc = ray_class_group(spec)
    _, m = roots_of_unity_in_M(spec)
    primes = _profile_primes(spec, norm_bound)
    if jobs > 1 and len(primes) > 4 * jobs:
        step = -(-len(primes) // jobs)
        chunks = [(spec, primes[i : i + step], m) for i in range(0, len(primes), step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = [r for part in ex.map(_records_chunk, chunks) for r in part]
    else:
        records = [_record(spec, P, m) for P in primes]
    records.sort(key=lambda r: (r.norm, r.prime.index))
    K = ktheory(spec)
    rank = K.k0.rational_rank if K is not None else None
    h = rc.order
    pm = _p_max(spec)
    return InvariantProfile(
        spec, m, rc.group, F.degree, tuple(records), norm_bound, rank, pm, exception_threshold(m, pm, F.degree, h)
    )


@lru_cache(maxsize=256)
def _cached_profile(spec: CongruenceMonoidSpec, norm_bound: int) -> InvariantProfile:
    return _build_profile(spec, norm_bound, 1)


def build_profile(spec: CongruenceMonoidSpec, norm_bound: int, jobs: int = 1) -> InvariantProfile:
    """One record per prime coprime to m0 with norm <= norm_bound."""
    if jobs > 1:
        return _build_profile(spec, norm_bound, jobs)
    return _cached_profile(spec, norm_bound)


# ---------------------------------------------------------------------------
# splitting numbers and degree


@dataclass(frozen=True)
class SplittingNumbers:
    counts: dict  # p -> g(p) for p in the window
    exceptions: tuple[int, ...]  # primes below T0 or under supp(m0)
    threshold: int
    bound: int

    def to_json(self) -> dict:
        return {
            "counts": {str(p): g for p, g in sorted(self.counts.items())},
            "exceptions": list(self.exceptions),
            "threshold": self.threshold,
            "bound": self.bound,
        }


def _support_primes(spec: CongruenceMonoidSpec) -> set[int]:
    N = spec.m0.norm
    return set(factorint(N)) if N > 1 else set()


def splitting_numbers(profile: InvariantProfile) -> SplittingNumbers:
    """g(p) = #{records I : p | m o(I) + 1} for every prime p with p^n within
    the bound (so that every prime above p has a record)."""
    n, m = profile.n, profile.m
    hits: Counter = Counter()
    for r in profile.records:
        if r.skipped:
            continue
        # the prime is read off m o + 1 = N^f, not from the record label
        p = _prime_power(m * r.torsion_order + 1, profile.n * r.f)
        hits[p] += 1
    supp = _support_primes(profile.spec)
    counts, exc = {}, []
    for p in primes_upto(profile.bound):
        if p**n > profile.bound:
            break
        if p < profile.threshold or p in supp:
            exc.append(p)
            continue
        counts[p] = hits.get(p, 0)
    return SplittingNumbers(counts, tuple(exc), profile.threshold, profile.bound)


def degree_estimate(profile: InvariantProfile) -> int:
    orders = profile.orders()
    if len(orders) < MIN_DEGREE_RECORDS:
        raise InputError(f"degree estimate needs at least {MIN_DEGREE_RECORDS} records, got {len(orders)}")
    return max(Counter(orders).values())


# ---------------------------------------------------------------------------
# roots of unity


@dataclass(frozen=True)
class RootsOfUnityRecovery:
    admissible: tuple[int, ...]
    e: int
    cap: int
    exceptions_allowed: int

    @property
    def low_confidence(self) -> bool:
        return len(self.admissible) != 1

    @property
    def value(self) -> int | None:
        return self.admissible[0] if len(self.admissible) == 1 else None

    def to_json(self) -> dict:
        return {
            "admissible": list(self.admissible),
            "e": self.e,
            "cap": self.cap,
            "low_confidence": self.low_confidence,
        }


def _prime_power(q: int, e: int) -> int | None:
    """The prime p with q = p^i, 1 <= i <= e, or None."""
    if q < 2:
        return None
    if isprime(q):
        return q
    pp = perfect_power(q)
    if not pp:
        return None
    b, k = pp
    return b if k <= e and isprime(b) else None


def _admissible(orders: Sequence[int], mp: int, e: int, exceptions_allowed: int, gap: int) -> bool:
    bad = 0
    image: Counter = Counter()
    for o in orders:
        p = _prime_power(mp * o + 1, e)
        if p is None:
            bad += 1
            if bad > exceptions_allowed:
                return False
        else:
            image[p] += 1
    if not image:
        return False
    if max(image.values()) > e:
        return False
    # cofinite image: primes up to the e-th root of the largest image prime
    hi = max(image)
    lim = max(2, int(round(hi ** (1.0 / e))))
    missing = sum(1 for p in primes_upto(lim) if p not in image)
    return missing <= gap


def recover_roots_of_unity(
    orders: Iterable[int], e: int, exceptions_allowed: int = 0, cap: int | None = None, gap: int | None = None
) -> RootsOfUnityRecovery:
    """Every m' <= cap for which m' o + 1 is a prime power p^i (i <= e) for
    all but ``exceptions_allowed`` orders, with multiplicity per p at most e
    and the image missing at most ``gap`` small primes (default e)."""
    orders = list(orders)
    if not orders:
        raise InputError("empty sample of torsion orders")
    if e < 1:
        raise InputError("exponent cap e must be positive")
    cap = 2 * e * 12 if cap is None else cap
    gap = e if gap is None else gap
    adm = tuple(mp for mp in range(1, cap + 1) if _admissible(orders, mp, e, exceptions_allowed, gap))
    return RootsOfUnityRecovery(adm, e, cap, exceptions_allowed)


def recover_roots_from_profile(profile: InvariantProfile, exceptions_allowed: int = 0) -> RootsOfUnityRecovery:
    orders = profile.orders()
    return recover_roots_of_unity(orders, profile.e, exceptions_allowed, ROOTS_CAP_FACTOR * profile.e)


# ---------------------------------------------------------------------------
# Kronecker sets and densities


@dataclass(frozen=True)
class KroneckerSet:
    primes: frozenset
    exceptions: tuple[int, ...]  # rational primes under supp(m0)
    bound: int

    def to_json(self) -> dict:
        return {"count": len(self.primes), "exceptions": list(self.exceptions), "bound": self.bound}


@lru_cache(maxsize=256)
def kronecker_set(spec: CongruenceMonoidSpec, prime_bound: int) -> KroneckerSet:
    """Primes p <= bound with a prime P | p, P coprime to m0, N(P) = p, f(P) = 1."""
    supp = _support_primes(spec)
    prof = build_profile(spec, prime_bound)
    out = {r.norm for r in prof.records if r.f == 1 and r.norm == r.prime.p}
    return KroneckerSet(frozenset(out), tuple(sorted(supp)), prime_bound)


@dataclass(frozen=True)
class DensityEstimate:
    count: int
    total: int
    bound: int
    expected: Fraction | None = None

    @property
    def value(self) -> Fraction:
        return Fraction(self.count, self.total)

    @property
    def deviation(self) -> Fraction | None:
        return None if self.expected is None else abs(self.value - self.expected)

    def to_json(self) -> dict:
        v = self.value
        out = {"estimate": f"{v.numerator}/{v.denominator}", "decimal": round(float(v), 6), "bound": self.bound}
        if self.expected is not None:
            out["expected"] = f"{self.expected.numerator}/{self.expected.denominator}"
            out["deviation"] = round(float(self.deviation), 6)
        return out


def density_estimate(S: Iterable[int], bound: int, expected: Fraction | None = None) -> DensityEstimate:
    """#(S <= bound) / pi(bound)."""
    if bound < 10**3:
        raise InputError("density estimates need bound >= 1000")
    total = len(primes_upto(bound))
    count = sum(1 for p in set(S) if p <= bound)
    return DensityEstimate(count, total, bound, expected)


def expected_density(spec: CongruenceMonoidSpec) -> Fraction:
    return Fraction(1, spec.field.degree * ray_class_group(spec).order)


# ---------------------------------------------------------------------------
# arithmetic equivalence


@dataclass(frozen=True)
class Comparison:
    invariant: str
    verdict: str
    bound: int
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"invariant": self.invariant, "verdict": self.verdict, "witness": self.witness, "bound": self.bound}
        out.update(self.detail)
        return out


def _compare_splitting(sa: SplittingNumbers, sb: SplittingNumbers, bound: int) -> Comparison:
    window = {"thresholds": [sa.threshold, sb.threshold]}
    for p in sorted(set(sa.counts) & set(sb.counts)):
        if sa.counts[p] != sb.counts[p]:
            return Comparison("splitting_numbers", DISTINCT, bound, {"p": p, "g": [sa.counts[p], sb.counts[p]]}, window)
    return Comparison("splitting_numbers", EQUIVALENT_UP_TO_BOUND, bound, None, window)


def arithmetic_equivalence(A: CongruenceMonoidSpec, B: CongruenceMonoidSpec, prime_bound: int) -> Comparison:
    sa = splitting_numbers(build_profile(A, prime_bound))
    sb = splitting_numbers(build_profile(B, prime_bound))
    return _compare_splitting(sa, sb, prime_bound)


# ---------------------------------------------------------------------------
# Cartan invariants


def cartan_quotient(spec: CongruenceMonoidSpec, P: PrimeAbove) -> FgAbGroup:
    """Direct sum of #(C/<[P]>) copies of Z/(N(P)^f - 1)."""
    if not coprime(spec.field, P.rep, spec.m0):
        raise InputError(f"prime above {P.p} divides m0")
    f = f_order(spec, P)
    copies = ray_class_group(spec).order // f
    return FgAbGroup.from_cyclic([P.norm**f - 1] * copies)


def cartan_compare(A: CongruenceMonoidSpec, B: CongruenceMonoidSpec, prime_bound: int) -> Comparison:
    pa, pb = build_profile(A, prime_bound), build_profile(B, prime_bound)
    if not is_isomorphic(pa.class_group, pb.class_group):
        return Comparison(
            "cartan", DISTINCT, prime_bound, {"class_group": [pa.class_group.to_json(), pb.class_group.to_json()]}
        )
    ka = sorted(pa.records, key=lambda r: (r.norm, r.f, r.prime.index))
    kb = sorted(pb.records, key=lambda r: (r.norm, r.f, r.prime.index))
    ca = Counter((r.norm, r.f) for r in ka)
    cb = Counter((r.norm, r.f) for r in kb)
    if ca != cb:
        N, f = min(k for k in set(ca) | set(cb) if ca[k] != cb[k])
        return Comparison("cartan", DISTINCT, prime_bound, {"norm": N, "f": f, "count": [ca[(N, f)], cb[(N, f)]]})
    matching = [[[x.prime.p, x.prime.index], [y.prime.p, y.prime.index]] for x, y in zip(ka, kb)]
    return Comparison("cartan", MATCH, prime_bound, None, {"matching": matching})


# ---------------------------------------------------------------------------
# the full comparison


@dataclass(frozen=True)
class DistinguishReport:
    entries: tuple[Comparison, ...]
    bound: int

    @property
    def levels(self) -> list[str]:
        return [c.invariant for c in self.entries if c.verdict == DISTINCT]

    @property
    def verdict(self) -> str:
        return DISTINGUISHED if self.levels else ISO_CONSISTENT

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "levels": self.levels,
            "bound": self.bound,
            "invariants": [c.to_json() for c in self.entries],
        }


@lru_cache(maxsize=256)
def _roots_of(spec: CongruenceMonoidSpec, bound: int) -> RootsOfUnityRecovery:
    return recover_roots_from_profile(build_profile(spec, bound))


@lru_cache(maxsize=256)
def _splitting_of(spec: CongruenceMonoidSpec, bound: int) -> SplittingNumbers:
    return splitting_numbers(build_profile(spec, bound))


@lru_cache(maxsize=256)
def _galois_of(spec: CongruenceMonoidSpec, bound: int) -> str:
    return is_class_field_galois_heuristic(spec, bound).verdict


def _roots_level(pa: InvariantProfile, pb: InvariantProfile, bound: int) -> Comparison:
    ra, rb = _roots_of(pa.spec, pa.bound), _roots_of(pb.spec, pb.bound)
    detail = {"admissible": [list(ra.admissible), list(rb.admissible)]}
    if ra.low_confidence or rb.low_confidence:
        detail["low_confidence"] = True
    if not set(ra.admissible) & set(rb.admissible):
        return Comparison("roots_of_unity", DISTINCT, bound, {"m": [pa.m, pb.m]}, detail)
    return Comparison("roots_of_unity", CONSISTENT, bound, None, detail)


def _degree_level(pa: InvariantProfile, pb: InvariantProfile, bound: int) -> Comparison:
    try:
        na, nb = degree_estimate(pa), degree_estimate(pb)
    except InputError:
        return Comparison("degree", INSUFFICIENT_DATA, bound)
    if na != nb:
        return Comparison("degree", DISTINCT, bound, {"n": [na, nb]})
    return Comparison("degree", CONSISTENT, bound, None, {"n": na})


def _orders_level(pa: InvariantProfile, pb: InvariantProfile, bound: int) -> Comparison:
    """Multisets of torsion orders o with m o + 1 <= bound on both sides;
    every such record is guaranteed to be in the table."""
    cut = (bound - 1) // max(pa.m, pb.m)
    ca = Counter(o for o in pa.orders() if o <= cut)
    cb = Counter(o for o in pb.orders() if o <= cut)
    diff = sorted(o for o in set(ca) | set(cb) if ca[o] != cb[o])
    if diff:
        o = diff[0]
        return Comparison("torsion_orders", DISTINCT, bound, {"o": o, "count": [ca[o], cb[o]]}, {"cutoff": cut})
    return Comparison("torsion_orders", CONSISTENT, bound, None, {"cutoff": cut})


def _kronecker_level(A, B, bound: int) -> Comparison:
    ka, kb = kronecker_set(A, bound), kronecker_set(B, bound)
    exc = set(ka.exceptions) | set(kb.exceptions)
    diff = sorted((ka.primes ^ kb.primes) - exc)
    detail = {"sizes": [len(ka.primes), len(kb.primes)], "exceptions": sorted(exc)}
    if bound >= 10**3:
        detail["densities"] = [density_estimate(k.primes, bound).to_json()["estimate"] for k in (ka, kb)]
    if diff:
        p = diff[0]
        return Comparison("kronecker_set", DISTINCT, bound, {"p": p, "in": [p in ka.primes, p in kb.primes]}, detail)
    return Comparison("kronecker_set", CONSISTENT, bound, None, detail)


def _class_number_level(A, B, pa, pb, bound: int, galois_bound: int) -> Comparison:
    ga, gb = _galois_of(A, galois_bound), _galois_of(B, galois_bound)
    detail = {"galois": [ga, gb], "galois_bound": galois_bound}
    if ga == DISTINCT or gb == DISTINCT:
        return Comparison("class_number", NOT_APPLICABLE, bound, None, detail)
    ha, hb = pa.class_group.torsion_order, pb.class_group.torsion_order
    if ha != hb:
        return Comparison("class_number", DISTINCT, bound, {"order": [ha, hb]}, detail)
    return Comparison("class_number", CONSISTENT, bound, None, detail)


def _trace_if_real_plus(spec: CongruenceMonoidSpec) -> int | None:
    F = spec.field
    if not F.is_real or spec != real_quadratic_plus_spec(F.d):
        return None
    return totally_positive_fundamental_unit(F).t


def _k1_level(A, B, bound: int) -> Comparison:
    KA, KB = ktheory(A), ktheory(B)
    if KA is None or KB is None:
        return Comparison("k1_torsion", NOT_APPLICABLE, bound)
    ta, tb = list(KA.k1.torsion_factors), list(KB.k1.torsion_factors)
    detail = {}
    tra, trb = _trace_if_real_plus(A), _trace_if_real_plus(B)
    if tra is not None and trb is not None:
        detail["trace"] = [tra, trb]
    if ta != tb:
        return Comparison("k1_torsion", DISTINCT, bound, {"torsion": [ta, tb]}, detail)
    return Comparison("k1_torsion", CONSISTENT, bound, None, detail)


def support_recoverable(spec: CongruenceMonoidSpec) -> bool:
    """Hypotheses for recovering supp(m0): roots of unity in M reduce
    injectively modulo every prime outside supp(m0), and m0 contains all or
    none of the primes above each rational prime."""
    F = spec.field
    supp = _support_primes(spec)
    for p in supp:
        if not all(not coprime(F, P.rep, spec.m0) for P in split_type(F, p)):
            return False
    mu, m = roots_of_unity_in_M(spec)
    for z in mu[1:]:
        N = abs(F.norm((1 - z[0], -z[1])))
        for p in factorint(N):
            for P in split_type(F, p):
                if ideal_contains(F, P.rep, (z[0] - 1, z[1])) and coprime(F, P.rep, spec.m0):
                    return False
    return True


def _support_level(A, B, bound: int) -> Comparison:
    if not (support_recoverable(A) and support_recoverable(B)):
        return Comparison("support", NOT_APPLICABLE, bound)
    sa, sb = sorted(_support_primes(A)), sorted(_support_primes(B))
    if sa != sb:
        p = min(set(sa) ^ set(sb))
        return Comparison("support", DISTINCT, bound, {"p": p, "supp": [sa, sb]})
    return Comparison("support", CONSISTENT, bound, None, {"supp": sa})


def distinguish(
    A: CongruenceMonoidSpec, B: CongruenceMonoidSpec, prime_bound: int = 10**4, galois_bound: int = 200
) -> DistinguishReport:
    """Compare two data through every recoverable invariant, in the order
    the reconstruction results use them, and report each level."""
    pa, pb = build_profile(A, prime_bound), build_profile(B, prime_bound)
    entries = [
        _roots_level(pa, pb, prime_bound),
        _degree_level(pa, pb, prime_bound),
        _compare_splitting(_splitting_of(A, prime_bound), _splitting_of(B, prime_bound), prime_bound),
        _orders_level(pa, pb, prime_bound),
        _kronecker_level(A, B, prime_bound),
        _class_number_level(A, B, pa, pb, prime_bound, galois_bound),
        _k1_level(A, B, prime_bound),
        _support_level(A, B, prime_bound),
    ]
    return DistinguishReport(tuple(entries), prime_bound)


__all__ = [
    "PrimitiveIdealInvariant",
    "InvariantProfile",
    "SplittingNumbers",
    "RootsOfUnityRecovery",
    "KroneckerSet",
    "DensityEstimate",
    "Comparison",
    "DistinguishReport",
    "build_profile",
    "exception_threshold",
    "splitting_numbers",
    "degree_estimate",
    "recover_roots_of_unity",
    "recover_roots_from_profile",
    "kronecker_set",
    "density_estimate",
    "expected_density",
    "arithmetic_equivalence",
    "cartan_quotient",
    "cartan_compare",
    "support_recoverable",
    "distinguish",
]
