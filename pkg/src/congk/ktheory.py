"""K-groups attached to congruence monoids.

Groups are direct sums of a finitely generated part and localized summands
``S^-1 Z``.  A localized summand is never materialized: only the prime set
that is inverted is recorded, which is all that kernels and cokernels of
integer matrices over it depend on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Sequence

from sympy import factorint

from .abelian import (
    FgAbGroup,
    GroupHom,
    IntMatrix,
    det,
    direct_sum,
    exterior_power,
    group_from_relations,
    identity,
    kernel_cokernel,
    smith_normal_form,
    subgroup_quotient,
)
from .congmon import (
    CongruenceMonoidSpec,
    Modulus,
    f_order,
    in_monoid,
    ray_class_group,
    roots_of_unity_in_M,
)
from .errors import ConditionViolated, InjectivityFails, InputError, Unclassified
from .quadfield import (
    AlgInt,
    FieldSpec,
    IdealRep,
    PrimeAbove,
    element_coprime_to,
    embedding_signs,
    fundamental_unit,
    ideal_contains,
    primes_of_norm_upto,
    totally_positive_fundamental_unit,
    unit_ideal,
)

# ---------------------------------------------------------------------------
# localized integers


@dataclass(frozen=True)
class Localization:
    """Z with a set of primes inverted.

    ``coprime_to=True`` inverts every prime outside ``primes``; otherwise
    exactly the primes in ``primes`` are inverted.
    """

    primes: frozenset[int] = frozenset()
    coprime_to: bool = True

    @classmethod
    def coprime_to_set(cls, primes) -> "Localization":
        return cls(frozenset(primes), True)

    @classmethod
    def inverting(cls, primes) -> "Localization":
        return cls(frozenset(primes), False)

    @property
    def is_integers(self) -> bool:
        return not self.coprime_to and not self.primes

    def inverted(self, p: int) -> bool:
        return (p not in self.primes) if self.coprime_to else (p in self.primes)

    def non_inverted_part(self, n: int) -> int:
        """Largest divisor of |n| built from primes that stay non-units."""
        n = abs(n)
        if n == 0:
            return 0
        return prod(p**e for p, e in factorint(n).items() if not self.inverted(p))

    def to_json(self) -> dict:
        return {"inverted": "coprime_to" if self.coprime_to else "explicit", "primes": sorted(self.primes)}

    def __str__(self) -> str:
        ps = ",".join(map(str, sorted(self.primes)))
        return f"Z[1/p : p not in {{{ps}}}]" if self.coprime_to else f"Z[1/{{{ps}}}]"


@dataclass(frozen=True)
class AbGroupDesc:
    fg: FgAbGroup = FgAbGroup()
    localized: tuple[tuple[Localization, int], ...] = ()

    def __post_init__(self):
        extra = 0
        loc = {}
        for L, k in self.localized:
            if k <= 0:
                continue
            if L.is_integers:
                extra += k
            else:
                loc[L] = loc.get(L, 0) + k
        fg = self.fg if not extra else direct_sum(self.fg, FgAbGroup.free(extra))
        object.__setattr__(self, "fg", fg)
        object.__setattr__(self, "localized", tuple(sorted(loc.items(), key=lambda e: (e[0].coprime_to, sorted(e[0].primes)))))

    @classmethod
    def free(cls, rank: int) -> "AbGroupDesc":
        return cls(FgAbGroup.free(rank))

    @property
    def localized_rank(self) -> int:
        return sum(k for _, k in self.localized)

    @property
    def rational_rank(self) -> int:
        return self.fg.rank + self.localized_rank

    @property
    def torsion_factors(self) -> tuple[int, ...]:
        return self.fg.torsion_factors

    def is_zero(self) -> bool:
        return self.fg.is_trivial() and not self.localized

    def to_json(self) -> dict:
        fg = [0] * self.fg.rank + list(self.fg.torsion_factors)
        return {"fg": fg, "localized": [dict(L.to_json(), multiplicity=k) for L, k in self.localized]}

    def __add__(self, other: "AbGroupDesc") -> "AbGroupDesc":
        return AbGroupDesc(direct_sum(self.fg, other.fg), self.localized + other.localized)

    def times(self, k: int) -> "AbGroupDesc":
        out = AbGroupDesc()
        for _ in range(k):
            out = out + self
        return out

    def __str__(self) -> str:
        parts = [f"{L}^{k}" if k > 1 else str(L) for L, k in self.localized]
        if not self.fg.is_trivial():
            parts.append(str(self.fg))
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GradedKGroup:
    k0: AbGroupDesc
    k1: AbGroupDesc
    assembled: bool = True
    pieces: dict | None = field(default=None, compare=False, hash=False)

    def to_json(self) -> dict:
        out = {"k0": self.k0.to_json(), "k1": self.k1.to_json()}
        if not self.assembled:
            out["assembled"] = False
            out["pieces"] = self.pieces
        return out

    def __add__(self, other: "GradedKGroup") -> "GradedKGroup":
        return GradedKGroup(self.k0 + other.k0, self.k1 + other.k1, self.assembled and other.assembled)


@dataclass(frozen=True)
class EndoAction:
    """An endomorphism of ``Lambda^l + F`` (localized coordinates first).

    ``localized_matrix`` acts on the l localized coordinates, ``coupling``
    (l x rank(F) columns) sends F coordinates into them, and ``fg_matrix``
    acts on F.  There is no component from the localized part into F.
    """

    fg_matrix: tuple[tuple[int, ...], ...] = ()
    localized_matrix: tuple[tuple[int, ...], ...] = ()
    coupling: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def scalars(cls, fg_matrix: IntMatrix, localized_scalars: Sequence[int] = ()) -> "EndoAction":
        l = len(localized_scalars)
        loc = tuple(tuple(localized_scalars[i] if i == j else 0 for j in range(l)) for i in range(l))
        return cls(tuple(map(tuple, fg_matrix)), loc, ())

    @classmethod
    def from_full_matrix(cls, M: IntMatrix, l: int) -> "EndoAction":
        n = len(M)
        if any(M[i][j] for i in range(l, n) for j in range(l)):
            raise InputError("the action must not map localized coordinates into the finitely generated part")
        loc = tuple(tuple(M[i][j] for j in range(l)) for i in range(l))
        cpl = tuple(tuple(M[i][j] for j in range(l, n)) for i in range(l))
        fg = tuple(tuple(M[i][j] for j in range(l, n)) for i in range(l, n))
        return cls(fg, loc, cpl)

    @classmethod
    def identity(cls, desc: AbGroupDesc) -> "EndoAction":
        return cls.scalars(identity(desc.fg.ngens), [1] * desc.localized_rank)


# ---------------------------------------------------------------------------
# Pimsner-Voiculescu


@dataclass(frozen=True)
class _KerCoker:
    ker: AbGroupDesc
    coker: AbGroupDesc
    exact: bool = True
    note: str = ""


def _single_localization(desc: AbGroupDesc) -> Localization | None:
    if not desc.localized:
        return None
    if len(desc.localized) > 1:
        raise InputError("mixed localizations in one group are not supported")
    return desc.localized[0][0]


def _check_automorphism(desc: AbGroupDesc, act: EndoAction):
    L = _single_localization(desc)
    l = desc.localized_rank
    if l:
        dl = det([list(r) for r in act.localized_matrix])
        if L.non_inverted_part(dl) != 1:
            raise InputError("action is not an automorphism of the localized part")
    F = desc.fg
    if F.ngens:
        h = GroupHom.from_matrix(F, F, act.fg_matrix)
        if not h.is_well_defined():
            raise InputError("action matrix is not well defined on the finitely generated part")
        kc = kernel_cokernel(h)
        if not (kc.ker.is_trivial() and kc.coker.is_trivial()):
            raise InputError("action is not an automorphism of the finitely generated part")


def _one_minus(M: Sequence[Sequence[int]], n: int) -> IntMatrix:
    return [[int(i == j) - (M[i][j] if M else 0) for j in range(n)] for i in range(n)]


def _ker_coker_one_minus(desc: AbGroupDesc, act: EndoAction) -> _KerCoker:
    """ker and coker of id - act via the snake lemma for
    0 -> Lambda^l -> Lambda^l + F -> F -> 0."""
    L = _single_localization(desc)
    l = desc.localized_rank
    F = desc.fg
    k = F.ngens
    A11 = _one_minus(act.localized_matrix, l)
    A12 = [[-(act.coupling[i][j] if act.coupling else 0) for j in range(k)] for i in range(l)]
    A22 = _one_minus(act.fg_matrix, k)

    # localized block: Lambda-SNF
    if l:
        U, S, _ = smith_normal_form(A11)
        diag = [S[i][i] for i in range(l)]
    else:
        U, diag = [], []
    free_loc = sum(1 for s in diag if s == 0)
    tors = [L.non_inverted_part(s) if s else 0 for s in diag]

    # f.g. block
    h22 = GroupHom.from_matrix(F, F, A22) if k else None
    kc = kernel_cokernel(h22) if k else None
    ker22 = kc.ker if kc else FgAbGroup()
    coker22 = kc.coker if kc else FgAbGroup()

    # connecting map ker A22 -> coker A11 = (+) Lambda/(s_i)
    finite_idx = [i for i, s in enumerate(diag) if s != 0 and tors[i] != 1]
    free_idx = [i for i, s in enumerate(diag) if s == 0]
    T = group_from_relations(len(finite_idx), [[tors[i] if i == j else 0 for j in finite_idx] for i in finite_idx])
    img = []
    if kc is not None and l:
        for col in kc.embedding.columns():
            w = [sum(A12[i][j] * col[j] for j in range(k)) for i in range(l)]
            uw = [sum(U[i][j] * w[j] for j in range(l)) for i in range(l)]
            if any(uw[i] for i in free_idx):
                return _KerCoker(AbGroupDesc(), AbGroupDesc(), False, "connecting map meets the localized free part")
            img.append(list(T.project([uw[i] for i in finite_idx]).coords))
    if img and T.group.ngens:
        coker_d = subgroup_quotient(T.group, img).group
        rows = [[img[j][i] for j in range(len(img))] for i in range(T.group.ngens)]
        ker_d = kernel_cokernel(GroupHom.from_matrix(ker22, T.group, rows)).ker
    else:
        coker_d = T.group
        ker_d = ker22

    ker_desc = AbGroupDesc(ker_d, ((L, free_loc),) if free_loc else ())
    # coker A: 0 -> coker(delta) + Lambda^free -> coker A -> coker A22 -> 0
    exact = True
    note = ""
    if ker_d.torsion_factors and free_loc:
        exact = False
        note = "kernel extension with torsion quotient"
    sub = AbGroupDesc(coker_d, ((L, free_loc),) if free_loc else ())
    if coker22.torsion_factors and not sub.is_zero():
        exact = False
        note = "cokernel extension with torsion quotient"
    coker_desc = sub + AbGroupDesc(coker22)
    return _KerCoker(ker_desc, coker_desc, exact, note)


def pv_crossed_product(K: GradedKGroup, alpha0: EndoAction, alpha1: EndoAction) -> GradedKGroup:
    """K-theory of a crossed product by Z from the six-term sequence.

    K0' is an extension of ker(1 - a1) by coker(1 - a0); K1' one of
    ker(1 - a0) by coker(1 - a1).  Extensions are assembled when the
    quotient is a free Z-module or the subgroup vanishes; otherwise both
    pieces are returned with ``assembled=False``.
    """
    _check_automorphism(K.k0, alpha0)
    _check_automorphism(K.k1, alpha1)
    r0 = _ker_coker_one_minus(K.k0, alpha0)
    r1 = _ker_coker_one_minus(K.k1, alpha1)

    def splits(sub: AbGroupDesc, quot: AbGroupDesc) -> bool:
        if sub.is_zero() or quot.is_zero():
            return True
        return not quot.localized and not quot.fg.torsion_factors

    ok = r0.exact and r1.exact and splits(r0.coker, r1.ker) and splits(r1.coker, r0.ker)
    if ok:
        return GradedKGroup(r0.coker + r1.ker, r1.coker + r0.ker)
    pieces = {
        "k0": {"sub": r0.coker.to_json(), "quotient": r1.ker.to_json()},
        "k1": {"sub": r1.coker.to_json(), "quotient": r0.ker.to_json()},
        "notes": [n for n in (r0.note, r1.note) if n],
    }
    return GradedKGroup(r0.coker, r1.coker, assembled=False, pieces=pieces)


# ---------------------------------------------------------------------------
# explicit cases


def ktheory_rational_case(spec: CongruenceMonoidSpec) -> GradedKGroup:
    if not spec.field.is_rational:
        raise InputError("the rational formula applies to K = Q only")
    c = ray_class_group(spec).order
    if in_monoid(spec, (-1, 0)):
        return GradedKGroup(AbGroupDesc.free(3 * c), AbGroupDesc())
    return GradedKGroup(AbGroupDesc.free(c), AbGroupDesc.free(c))


def unit_action_matrix(F: FieldSpec, a: Sequence[int], A: IdealRep | None = None) -> IntMatrix:
    """Matrix of multiplication by a on the HNF basis of A (columns are images)."""
    A = A or unit_ideal(F)
    if F.is_rational:
        if A.a and (a[0] * A.a) % A.a:
            raise InputError("a*A is not contained in A")
        return [[a[0]]]
    basis = [(A.a, 0), (A.b, A.c)]
    cols = []
    for v in basis:
        z = F.mul(a, v)
        if not ideal_contains(F, A, z):
            raise InputError("a*A is not contained in A")
        q = z[1] // A.c
        p = (z[0] - q * A.b) // A.a
        cols.append((p, q))
    return [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]


@dataclass(frozen=True)
class RealQuadraticK:
    d: int
    narrow_class_number: int
    trace: int
    torsion: FgAbGroup  # R/(1 - eps)R
    kgroup: GradedKGroup


def narrow_class_number(F: FieldSpec) -> int:
    spec = CongruenceMonoidSpec(F, Modulus(unit_ideal(F), F.real_places), ())
    return ray_class_group(spec).order


def ktheory_real_quadratic_plus(d: int) -> RealQuadraticK:
    if d <= 1:
        raise InputError("d must be > 1")
    F = FieldSpec.quadratic(d)
    h = narrow_class_number(F)
    pell = totally_positive_fundamental_unit(F)
    g = unit_action_matrix(F, pell.eps)
    one_minus = _one_minus(g, 2)
    T = kernel_cokernel(GroupHom.from_matrix(FgAbGroup.free(2), FgAbGroup.free(2), one_minus)).coker
    if T.order != pell.t - 2:
        raise AssertionError(f"#R/(1-eps)R = {T.order} but trace - 2 = {pell.t - 2}")
    k0 = AbGroupDesc.free(2 * h)
    k1 = AbGroupDesc(direct_sum(FgAbGroup.free(2 * h), *([T] * h)))
    return RealQuadraticK(d, h, pell.t, T, GradedKGroup(k0, k1))


def real_quadratic_plus_spec(d: int) -> CongruenceMonoidSpec:
    """The monoid of totally positive integers of Q(sqrt d)."""
    F = FieldSpec.quadratic(d)
    return CongruenceMonoidSpec(F, Modulus(unit_ideal(F), F.real_places), (), name=f"tp({d})")


# ---------------------------------------------------------------------------
# summands of the direct-sum formula


@dataclass(frozen=True)
class Summand:
    cls: tuple[int, ...]
    ideal: IdealRep
    value: GradedKGroup | None
    symbol: str


def class_representatives(spec: CongruenceMonoidSpec) -> dict[tuple[int, ...], IdealRep]:
    """R for the trivial class, least-norm primes coprime to m0 otherwise."""
    rc = ray_class_group(spec)
    F = spec.field
    reps = {rc.group.zero().coords: unit_ideal(F)}
    bound = 16
    while len(reps) < rc.order:
        for P in primes_of_norm_upto(F, bound, spec.m0.norm):
            reps.setdefault(rc.class_of(P.rep).coords, P.rep)
        bound *= 4
    return dict(sorted(reps.items()))


def monoid_unit_generator(spec: CongruenceMonoidSpec) -> AlgInt | None:
    """Generator of the free part of M* (real quadratic fields), i.e. the
    least k > 0 with +-eps0^k in M."""
    F = spec.field
    if not F.is_real:
        return None
    e0 = fundamental_unit(F)
    u = e0
    k = 1
    limit = 2 * max(1, spec.m0.norm) * 2 ** len(spec.modulus.infinite) * 2
    while k <= limit:
        for s in (1, -1):
            v = (s * u[0], s * u[1])
            if in_monoid(spec, v):
                return AlgInt(*v)
        u = F.mul(u, e0)
        k += 1
    raise AssertionError("no power of the fundamental unit lies in M")


def _torus_k(n: int, action: IntMatrix | None = None) -> tuple[GradedKGroup, EndoAction, EndoAction]:
    """K-theory of C(T^n) with the exterior action of ``action``."""
    k0 = sum(comb(n, k) for k in range(0, n + 1, 2))
    k1 = sum(comb(n, k) for k in range(1, n + 1, 2))
    K = GradedKGroup(AbGroupDesc.free(k0), AbGroupDesc.free(k1))
    if action is None:
        return K, EndoAction.identity(K.k0), EndoAction.identity(K.k1)

    def block(degrees):
        mats = [exterior_power(action, k) for k in degrees]
        size = sum(len(m) for m in mats)
        out = [[0] * size for _ in range(size)]
        off = 0
        for m in mats:
            for i, row in enumerate(m):
                for j, v in enumerate(row):
                    out[off + i][off + j] = v
            off += len(m)
        return out

    a0 = EndoAction.scalars(block(range(0, n + 1, 2)))
    a1 = EndoAction.scalars(block(range(1, n + 1, 2)))
    return K, a0, a1


def summand_value(spec: CongruenceMonoidSpec, ideal: IdealRep) -> tuple[GradedKGroup | None, str]:
    """K_*(C*(a x| M*)) when the case is covered, else None and a symbol."""
    F = spec.field
    _, m = roots_of_unity_in_M(spec)
    sym = f"K_*(C*(a x| M*)), a={list(ideal)}"
    if F.is_rational:
        if m == 1:
            K, _, _ = _torus_k(1)
            return K, sym
        return GradedKGroup(AbGroupDesc.free(3), AbGroupDesc()), sym
    if m != 1:
        return None, sym
    if F.is_imaginary:
        K, _, _ = _torus_k(2)
        return K, sym
    eta = monoid_unit_generator(spec)
    g = unit_action_matrix(F, eta, ideal)
    K, a0, a1 = _torus_k(2, g)
    return pv_crossed_product(K, a0, a1), sym


def summand_structure(spec: CongruenceMonoidSpec) -> list[Summand]:
    out = []
    for cls, I in class_representatives(spec).items():
        val, sym = summand_value(spec, I)
        out.append(Summand(cls, I, val, sym))
    return out


def ktheory(spec: CongruenceMonoidSpec) -> GradedKGroup | None:
    """Full K-theory when every summand is evaluated, else None."""
    total = GradedKGroup(AbGroupDesc(), AbGroupDesc())
    for s in summand_structure(spec):
        if s.value is None:
            return None
        total = total + s.value
    return total


# ---------------------------------------------------------------------------
# torsion orders


def mu_injective_mod(spec: CongruenceMonoidSpec, P: PrimeAbove) -> bool:
    mu, _ = roots_of_unity_in_M(spec)
    return all(not ideal_contains(spec.field, P.rep, (z[0] - 1, z[1])) for z in mu[1:])


def torsion_order(spec: CongruenceMonoidSpec, P: PrimeAbove) -> int:
    if not mu_injective_mod(spec, P):
        raise InjectivityFails(f"roots of unity in M collapse modulo the prime above {P.p}")
    _, m = roots_of_unity_in_M(spec)
    f = f_order(spec, P)
    q, r = divmod(P.norm**f - 1, m)
    if r:
        raise AssertionError("torsion order is not integral")
    return q


# ---------------------------------------------------------------------------
# boundary quotients


def check_condition_1xi_m(spec: CongruenceMonoidSpec) -> bool:
    mu, m = roots_of_unity_in_M(spec)
    if m == 1:
        return True
    F = spec.field
    c = AlgInt(1, 0)
    for z in mu[1:]:
        c = F.mul(c, (1 - z[0], -z[1]))
    return element_coprime_to(F, c, spec.m0)


ZERO = "ZERO"
EXT_G = "EXT(G)"
EXT_G_MU = "EXT(G/mu)"
K0MU_EXT = "K0(C*(mu)) (x) EXT(G/mu)"


@dataclass(frozen=True)
class BoundaryResult:
    side: str
    descriptor: str
    witness: AlgInt | None
    reversed_grading: bool
    window: int
    dims: tuple[tuple[int, int], ...]  # (dim K0, dim K1) of the window model
    caveat: str = ""
    m: int = 1

    def to_json(self) -> dict:
        out = {
            "side": self.side,
            "descriptor": self.descriptor,
            "reversed_grading": self.reversed_grading,
            "model": f"rank-{self.window} window of a free abelian group of countable rank; as a vector space the answer is a countable direct sum of copies of Q" if self.descriptor != ZERO else "zero",
            "window_dims": {"k0": self.dims[0][0], "k1": self.dims[0][1]} if self.dims else {"k0": 0, "k1": 0},
        }
        if self.witness is not None:
            out["witness"] = {"x": self.witness.x, "y": self.witness.y}
        if self.caveat:
            out["caveat"] = self.caveat
        return out


def _negative_count(F: FieldSpec, c: Sequence[int]) -> int:
    if not F.real_places:
        return 0
    return sum(1 for s in embedding_signs(F, c) if s < 0)


def odd_sign_witness(spec: CongruenceMonoidSpec, search_bound: int) -> AlgInt | None:
    """Some c in M with an odd number of negative real embeddings.

    Tried in order: -1, then units +-eps0^-k, +-eps0^k (k = 1, 2, ...), then
    nonunits with coordinates bounded by ``search_bound``.
    """
    F = spec.field
    if not F.real_places:
        return None

    def good(c) -> bool:
        return tuple(c) != (0, 0) and _negative_count(F, c) % 2 == 1 and in_monoid(spec, c)

    if good((-1, 0)):
        return AlgInt(-1, 0)
    if F.is_rational:
        for n in range(2, search_bound + 1):
            if good((-n, 0)):
                return AlgInt(-n, 0)
        return None
    e0 = fundamental_unit(F)
    inv = F.conj(e0) if F.norm(e0) == 1 else AlgInt(*[-x for x in F.conj(e0)])
    limit = 4 * max(1, spec.m0.norm)
    pos, neg = e0, inv
    for _ in range(limit):
        for u in (neg, pos):
            for s in (1, -1):
                c = AlgInt(s * u[0], s * u[1])
                if good(c):
                    return c
        pos, neg = F.mul(pos, e0), F.mul(neg, inv)
    A = spec.m0
    for r in range(1, search_bound + 1):
        for x in range(-r, r + 1):
            for y in sorted({-(r - abs(x)), r - abs(x)}):
                if good((x, y)):
                    return AlgInt(x, y)
                # the same shape inside 1 + m0
                c = (1 + x * A.a + y * A.b, y * A.c)
                if good(c):
                    return AlgInt(*c)
    return None


def odd_sign_element_exists(spec: CongruenceMonoidSpec) -> bool:
    """Exact test for some c in M with an odd number of negative real places.

    If a real place is missing from m_inf, an element of 1 + m0 with a
    negative sign there exists by approximation.  Otherwise the signs of c
    are the sign part of [c]_m, and parity is a character on Gamma.
    """
    F = spec.field
    places = F.real_places
    if not places:
        return False
    if set(places) - set(spec.modulus.infinite):
        return True
    if spec.gamma_full:
        return True
    return any(sum(1 for x in g.signs if x < 0) % 2 == 1 for g in spec.gamma)


def _window_dims(rank: int, scale: int, reversed_grading: bool) -> tuple[tuple[int, int], ...]:
    even = sum(comb(rank, k) for k in range(0, rank + 1, 2)) * scale
    odd = sum(comb(rank, k) for k in range(1, rank + 1, 2)) * scale
    return ((odd, even),) if reversed_grading else ((even, odd),)


def boundary_rational_ktheory(spec: CongruenceMonoidSpec, side: str = "LEFT", search_bound: int = 50, window: int = 4) -> BoundaryResult:
    side = side.upper()
    if side not in ("LEFT", "RIGHT"):
        raise InputError("side must be LEFT or RIGHT")
    _, m = roots_of_unity_in_M(spec)
    n = spec.field.degree
    if side == "RIGHT":
        return BoundaryResult(side, EXT_G, None, False, window, _window_dims(window, 1, False), m=m)
    if not check_condition_1xi_m(spec):
        raise ConditionViolated("gcd(prod (1 - xi), m0) != (1): the rational computation does not apply")
    exists = odd_sign_element_exists(spec)
    c = odd_sign_witness(spec, search_bound) if exists else None
    if not exists:
        if m == 1:
            rev = n % 2 == 1
            return BoundaryResult(side, EXT_G, None, rev, window, _window_dims(window, 1, rev), m=m)
        if n % 2 == 0:
            return BoundaryResult(side, K0MU_EXT, None, False, window, _window_dims(window, m, False), m=m)
        raise Unclassified(f"no case for odd degree with m = {m} and no odd-sign element")
    caveat = "" if c is not None else f"an odd-sign element exists but none was listed within search bound {search_bound}"
    if m == 1:
        return BoundaryResult(side, ZERO, c, False, window, ((0, 0),), caveat, m)
    if m == 2:
        return BoundaryResult(side, EXT_G_MU, c, False, window, _window_dims(window, 1, False), caveat, m)
    raise Unclassified(f"no case for m = {m} with an odd-sign element")
