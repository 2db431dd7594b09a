"""Moduli, residue groups, congruence monoids and their ray class groups.

A congruence monoid is the set of nonzero integers a coprime to ``m0``
whose class ``[a]_m = (signs at m_inf, a mod m0)`` lies in a subgroup
Gamma of ``(R/m)*``.  Its class group ``C = I_m / i(K_{m,Gamma})`` sits in

    0 -> U -> C -> Cl -> 0,    U = (R/m)* / (Gamma * [R*]_m),

and is assembled from generators of U and prime ideals generating Cl.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from . import kernels
from .abelian import (
    FgAbGroup,
    GroupElem,
    GroupHom,
    Presentation,
    element_order,
    presentation_with_relations,
    subgroup_quotient,
)
from .errors import BudgetExceeded, ConsistencyError, InputError
from .quadfield import (
    W0,
    W1,
    AlgInt,
    FieldElem,
    FieldSpec,
    IdealRep,
    PrimeAbove,
    class_group_data,
    coprime,
    embedding_signs,
    element_coprime_to,
    ideal_conj,
    ideal_mul,
    is_ideal,
    is_principal_with_generator,
    prime_ideal_factorization,
    primes_of_norm_upto,
    principal_ideal,
    product_generator,
    torsion_units,
    unit_generators,
    unit_ideal,
)

MAX_RESIDUES = 10**6


@dataclass(frozen=True)
class Modulus:
    finite: IdealRep
    infinite: tuple[str, ...] = ()

    def __post_init__(self):
        order = {W0: 0, W1: 1}
        inf = tuple(sorted(set(self.infinite), key=lambda w: order.get(w, 9)))
        object.__setattr__(self, "infinite", inf)

    def to_json(self) -> dict:
        return {"finite": {"hnf": list(self.finite)}, "infinite": list(self.infinite)}


@dataclass(frozen=True)
class GammaGen:
    """An element of (R/m)*: one sign per place of m_inf and a residue."""

    signs: tuple[int, ...]
    residue: AlgInt


@dataclass(frozen=True)
class CongruenceMonoidSpec:
    field: FieldSpec
    modulus: Modulus
    gamma: tuple[GammaGen, ...] = ()
    gamma_full: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        F, m = self.field, self.modulus
        if not is_ideal(F, m.finite):
            raise InputError(f"modulus.finite {tuple(m.finite)} is not an ideal in HNF")
        for w in m.infinite:
            if w not in F.real_places:
                raise InputError(f"modulus.infinite: {w!r} is not a real place of {F}")
        for g in self.gamma:
            if len(g.signs) != len(m.infinite) or any(s not in (1, -1) for s in g.signs):
                raise InputError("gamma: each generator needs one sign (+1/-1) per infinite place")

    @property
    def m0(self) -> IdealRep:
        return self.modulus.finite

    def to_json(self) -> dict:
        if self.gamma_full:
            gamma = {"type": "full"}
        elif not self.gamma:
            gamma = {"type": "trivial"}
        else:
            gamma = {"generators": [{"signs": list(g.signs), "residue": {"x": g.residue.x, "y": g.residue.y}} for g in self.gamma]}
        return {"field": self.field.to_json(), "modulus": self.modulus.to_json(), "gamma": gamma}


# ---------------------------------------------------------------------------
# residue groups


@dataclass(frozen=True, eq=False)
class ResidueGroup:
    """(R/m)* = prod_{w | m_inf} <+-1> x (R/m0)* with an explicit log."""

    field: FieldSpec
    modulus: Modulus
    presentation: Presentation
    res_gens: tuple[int, ...]
    table: dict
    relations: tuple[tuple[int, ...], ...]

    @property
    def group(self) -> FgAbGroup:
        return self.presentation.group

    @property
    def order(self) -> int:
        return self.group.torsion_order

    @property
    def num_units(self) -> int:
        return len(self.table)

    def code(self, a: Sequence[int]) -> int:
        A = self.modulus.finite
        return kernels.reduce_residue(a[0], a[1], A.a, A.b, A.c)

    def decode(self, code: int) -> AlgInt:
        y, x = divmod(code, self.modulus.finite.a)
        return AlgInt(x, y)

    def coset_reps(self) -> list[AlgInt]:
        """Lifts of the units of R/m0 (sign components are separate)."""
        return [self.decode(c) for c in sorted(self.table)]

    def log_parts(self, signs: Sequence[int], code: int) -> GroupElem:
        try:
            exps = self.table[code]
        except KeyError:
            raise InputError(f"residue {tuple(self.decode(code))} is not a unit modulo m0") from None
        return self.presentation.project([int(s < 0) for s in signs] + list(exps))

    def signs_of(self, a: Sequence[int]) -> tuple[int, ...]:
        if not self.modulus.infinite:
            return ()
        return embedding_signs(self.field, a, self.modulus.infinite)

    def log(self, a: Sequence[int] | FieldElem) -> GroupElem:
        """log of [a]_m for an integer a (or a fraction with denominator
        coprime to m0) coprime to m0."""
        den = a.den if isinstance(a, FieldElem) else 1
        num = (a[0], a[1])
        code = self.code(num)
        if den != 1:
            A = self.modulus.finite
            inv = pow(den, -1, A.a) if A.a > 1 else 0
            code = self.code((num[0] * inv, num[1] * inv))
        return self.log_parts(self.signs_of(num), code)

    def log_gamma(self, g: GammaGen) -> GroupElem:
        return self.log_parts(g.signs, self.code(g.residue))


def _primes_dividing(F: FieldSpec, A: IdealRep) -> list[PrimeAbove]:
    if A.norm == 1:
        return []
    return [P for P, _ in prime_ideal_factorization(F, A)]


@lru_cache(maxsize=None)
def residue_group(F: FieldSpec, m: Modulus) -> ResidueGroup:
    A = m.finite
    if A.norm > MAX_RESIDUES:
        raise BudgetExceeded(f"R/m0 has {A.norm} residues; the limit is {MAX_RESIDUES}")
    primes = [tuple(P.rep) for P in _primes_dividing(F, A)]
    units = kernels.unit_residues(A.a, A.b, A.c, primes)
    gens: list[int] = []
    one = kernels.reduce_residue(1, 0, A.a, A.b, A.c)
    table: dict = {one: ()}
    rels: set = set()
    for u in units:
        if len(table) == len(units):
            break
        if u not in table:
            gens.append(u)
            table, rels = kernels.residue_bfs(gens, A.a, A.b, A.c, F.t, F.n_w)
    s = len(m.infinite)
    k = len(gens)
    all_rels = [[2 if i == j else 0 for j in range(s + k)] for i in range(s)]
    all_rels += [[0] * s + list(r) for r in rels]
    pres, basis = presentation_with_relations(s + k, all_rels)
    if pres.group.torsion_order != 2**s * len(units) or pres.group.rank:
        raise ConsistencyError("residue group order mismatch")
    return ResidueGroup(F, m, pres, tuple(gens), table, basis)


def _torsion_and_unit_logs(spec: CongruenceMonoidSpec, rg: ResidueGroup) -> list[GroupElem]:
    return [rg.log(u) for u in unit_generators(spec.field)]


# ---------------------------------------------------------------------------
# monoids


@dataclass(frozen=True, eq=False)
class MonoidData:
    spec: CongruenceMonoidSpec
    residues: ResidueGroup
    gamma_quotient: Presentation  # (R/m)* -> (R/m)*/Gamma
    u_quotient: Presentation  # (R/m)* -> U


@lru_cache(maxsize=None)
def monoid_data(spec: CongruenceMonoidSpec) -> MonoidData:
    rg = residue_group(spec.field, spec.modulus)
    G = rg.group
    gam = list(G.gens()) if spec.gamma_full else [rg.log_gamma(g) for g in spec.gamma]
    gq = subgroup_quotient(G, gam)
    uq = subgroup_quotient(G, gam + _torsion_and_unit_logs(spec, rg))
    return MonoidData(spec, rg, gq, uq)


def in_monoid(spec: CongruenceMonoidSpec, a: Sequence[int]) -> bool:
    a = (a[0], a[1] if len(a) > 1 else 0)
    if a == (0, 0):
        raise ValueError("0 is never in a congruence monoid")
    if not element_coprime_to(spec.field, a, spec.m0):
        return False
    md = monoid_data(spec)
    return md.gamma_quotient.project(md.residues.log(a).coords).is_zero()


def roots_of_unity_in_M(spec: CongruenceMonoidSpec) -> tuple[list[AlgInt], int]:
    mu = [z for z in torsion_units(spec.field) if in_monoid(spec, z)]
    return mu, len(mu)


def minus_one_in_M(spec: CongruenceMonoidSpec) -> bool:
    return in_monoid(spec, (-1, 0))


# ---------------------------------------------------------------------------
# ray class groups


@dataclass(frozen=True, eq=False)
class RayClassData:
    spec: CongruenceMonoidSpec
    monoid: MonoidData
    presentation: Presentation  # Z^{kU + kCl} -> C
    cl_order: int
    k_cl: int

    @property
    def group(self) -> FgAbGroup:
        return self.presentation.group

    @property
    def order(self) -> int:
        return self.group.torsion_order

    @property
    def U(self) -> FgAbGroup:
        return self.monoid.u_quotient.group

    @cached_property
    def u_part(self) -> GroupHom:
        """The embedding U -> C."""
        kU = self.U.ngens
        cols = [list(self.presentation.project([int(i == j) for j in range(kU)] + [0] * self.k_cl).coords) for i in range(kU)]
        rows = [[c[r] for c in cols] for r in range(self.group.ngens)]
        return GroupHom.from_matrix(self.U, self.group, rows)

    def _cl(self):
        return class_group_data(self.spec.field, self.spec.m0.norm)

    def u_log(self, x: Sequence[int] | FieldElem) -> GroupElem:
        md = self.monoid
        return md.u_quotient.project(md.residues.log(x).coords)

    def class_of(self, A: IdealRep) -> GroupElem:
        F = self.spec.field
        if not coprime(F, A, self.spec.m0):
            raise InputError(f"ideal {tuple(A)} is not coprime to m0")
        if self.group.is_trivial():
            return self.group.zero()
        cl = self._cl()
        if self.U.is_trivial():
            # no generator needed: C is the class group itself
            return self.presentation.project(list(cl.exponents(A)))
        v, x = cl.log(A)
        return self.presentation.project(list(self.u_log(x).coords) + list(v))

    def class_of_prime(self, P: PrimeAbove) -> GroupElem:
        return self.class_of(P.rep)


def _cl_relation_generators(F: FieldSpec, cl) -> list[tuple[tuple[int, ...], FieldElem]]:
    out = []
    if cl.enum is None:
        return out
    for r in cl.enum.relations:
        x = product_generator(F, [(P.rep, e) for P, e in zip(cl.gens, r)])
        if x is None:
            raise ConsistencyError("class group relation is not principal")
        out.append((r, x))
    return out


@lru_cache(maxsize=None)
def ray_class_group(spec: CongruenceMonoidSpec) -> RayClassData:
    F = spec.field
    md = monoid_data(spec)
    U = md.u_quotient.group
    kU = U.ngens
    cl = class_group_data(F, spec.m0.norm)
    kC = len(cl.gens)
    rels = [[d if i == j else 0 for j in range(kU)] + [0] * kC for i, d in enumerate(U.invariant_factors)]
    for r, x in _cl_relation_generators(F, cl):
        ux = md.u_quotient.project(md.residues.log(x).coords)
        rels.append([-c for c in ux.coords] + list(r))
    pres, _ = presentation_with_relations(kU + kC, rels)
    h = cl.order
    if pres.group.rank or pres.group.torsion_order != h * U.torsion_order:
        raise ConsistencyError(f"#C = {pres.group.torsion_order} but h * #U = {h * U.torsion_order}")
    return RayClassData(spec, md, pres, h, kC)


def f_order(spec: CongruenceMonoidSpec, P: PrimeAbove) -> int:
    if not coprime(spec.field, P.rep, spec.m0):
        raise InputError(f"prime above {P.p} divides m0")
    rc = ray_class_group(spec)
    return element_order(rc.group, rc.class_of(P.rep))


# ---------------------------------------------------------------------------
# bounded class-field comparisons


@dataclass(frozen=True)
class Verdict:
    verdict: str
    bound: int
    witness: dict | None = None
    detail: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "bound": self.bound}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out.update(self.detail)
        return out


EQUAL_UP_TO_BOUND = "EQUAL_UP_TO_BOUND"
DISTINCT = "DISTINCT"
GALOIS = "GALOIS"
GALOIS_UP_TO_BOUND = "GALOIS_UP_TO_BOUND"


def _same_field(A: CongruenceMonoidSpec, B: CongruenceMonoidSpec):
    if A.field != B.field:
        raise InputError(f"specs live over different fields ({A.field} and {B.field})")


def class_fields_equal_heuristic(A: CongruenceMonoidSpec, B: CongruenceMonoidSpec, prime_bound: int) -> Verdict:
    _same_field(A, B)
    F = A.field
    avoid = A.m0.norm * B.m0.norm
    for P in primes_of_norm_upto(F, prime_bound, avoid):
        fa, fb = f_order(A, P), f_order(B, P)
        if fa != fb:
            return Verdict(DISTINCT, prime_bound, {"p": P.p, "index": P.index, "norm": P.norm, "f": [fa, fb]})
    return Verdict(EQUAL_UP_TO_BOUND, prime_bound)


def ideals_upto(F: FieldSpec, bound: int, avoid: int = 1) -> Iterator[IdealRep]:
    """Integral ideals of norm <= bound built from primes not dividing avoid,
    in increasing norm order."""
    primes = primes_of_norm_upto(F, bound, avoid)
    out = [unit_ideal(F)]

    def rec(start: int, cur: IdealRep):
        for i in range(start, len(primes)):
            P = primes[i]
            if cur.norm * P.norm > bound:
                break
            nxt = ideal_mul(F, cur, P.rep)
            out.append(nxt)
            rec(i, nxt)

    rec(0, out[0])
    out.sort(key=lambda I: (I.norm, tuple(I)))
    return iter(out)


def _saturated(spec: CongruenceMonoidSpec, x: Sequence[int]) -> bool:
    """x in R* M, i.e. [x]_m lies in Gamma [R*]_m."""
    if not element_coprime_to(spec.field, x, spec.m0):
        return False
    md = monoid_data(spec)
    return md.u_quotient.project(md.residues.log(x).coords).is_zero()


def monoid_class_field_condition(A: CongruenceMonoidSpec, B: CongruenceMonoidSpec, norm_bound: int) -> Verdict:
    """Compare R* (R_mB cap M_A) with R* (R_mA cap M_B) on elements of
    norm <= norm_bound (enumerated as generators of principal ideals)."""
    _same_field(A, B)
    F = A.field
    avoid = A.m0.norm * B.m0.norm
    for I in ideals_upto(F, norm_bound, avoid):
        g = is_principal_with_generator(F, I)
        if g is None:
            continue
        if not (coprime(F, I, A.m0) and coprime(F, I, B.m0)):
            continue
        ina, inb = _saturated(A, g), _saturated(B, g)
        if ina != inb:
            return Verdict(DISTINCT, norm_bound, {"a": {"x": g.x, "y": g.y}, "norm": I.norm, "in": [ina, inb]})
    return Verdict(EQUAL_UP_TO_BOUND, norm_bound)


def sigma_spec(spec: CongruenceMonoidSpec) -> CongruenceMonoidSpec:
    """Image of the datum under the nontrivial automorphism of K."""
    F = spec.field
    if F.is_rational:
        return spec
    swap = {W0: W1, W1: W0}
    inf = spec.modulus.infinite
    new_inf = tuple(swap[w] for w in inf)
    m = Modulus(ideal_conj(F, spec.m0), new_inf)
    gens = []
    for g in spec.gamma:
        by_place = dict(zip(new_inf, g.signs))
        signs = tuple(by_place[w] for w in m.infinite)
        gens.append(GammaGen(signs, F.conj(g.residue)))
    return CongruenceMonoidSpec(F, m, tuple(gens), spec.gamma_full, spec.name + "^sigma" if spec.name else "")


def is_class_field_galois_heuristic(spec: CongruenceMonoidSpec, norm_bound: int) -> Verdict:
    if spec.field.is_rational:
        return Verdict(GALOIS, norm_bound)
    v = monoid_class_field_condition(spec, sigma_spec(spec), norm_bound)
    if v.verdict == EQUAL_UP_TO_BOUND:
        return Verdict(GALOIS_UP_TO_BOUND, norm_bound)
    return v


__all__ = [
    "Modulus",
    "GammaGen",
    "CongruenceMonoidSpec",
    "ResidueGroup",
    "RayClassData",
    "Verdict",
    "residue_group",
    "monoid_data",
    "in_monoid",
    "roots_of_unity_in_M",
    "minus_one_in_M",
    "ray_class_group",
    "f_order",
    "class_fields_equal_heuristic",
    "monoid_class_field_condition",
    "is_class_field_galois_heuristic",
    "sigma_spec",
    "ideals_upto",
    "principal_ideal",
]
