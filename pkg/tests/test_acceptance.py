"""Acceptance suite: one PASS/FAIL line per criterion.

Expected values come from the brute-force oracles in ``oracles.py`` or are
exact formulas; tolerances and time limits are pinned below.  Run directly
with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

from battery import BATTERY, GALOIS, RATIONAL, quad, rat
from conftest import record_criterion
import oracles

from congk.abelian import FgAbGroup, det, matmul, smith_normal_form
from congk.cli import cmd_invariants
from congk.congmon import f_order, ray_class_group, roots_of_unity_in_M
from congk.ktheory import (
    EXT_G,
    ZERO,
    AbGroupDesc,
    EndoAction,
    GradedKGroup,
    Localization,
    boundary_rational_ktheory,
    ktheory_real_quadratic_plus,
    mu_injective_mod,
    narrow_class_number,
    pv_crossed_product,
    real_quadratic_plus_spec,
)
from congk.quadfield import AlgInt, FieldSpec, class_number, coprime, is_squarefree, primes_of_norm_upto, split_type
from congk.reconstruct import (
    DISTINGUISHED,
    ISO_CONSISTENT,
    MATCH,
    build_profile,
    cartan_compare,
    cartan_quotient,
    degree_estimate,
    density_estimate,
    distinguish,
    expected_density,
    kronecker_set,
    recover_roots_from_profile,
    splitting_numbers,
)

DENSITY_TOL = Fraction(2, 100)
T_PV, T_REALQ, T_PAIRS, T_ROOTS, T_DENSITY = 1.0, 30.0, 120.0, 60.0, 60.0
TORSION_NORM_BOUND = 500
PROFILE_BOUND = 10**4
DENSITY_BOUND = 10**5
SNF_SAMPLES = 1000


def criterion(n, title, failures, elapsed=None, limit=None):
    timing = ""
    if elapsed is not None:
        timing = f" [{elapsed:.2f}s"
        if limit is not None:
            timing += f" / limit {limit:.0f}s"
            if elapsed >= limit:
                failures = list(failures) + [f"took {elapsed:.2f}s, limit {limit}s"]
        timing += "]"
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {n}: {status} {title}{timing}"
    if failures:
        line += " :: " + "; ".join(map(str, failures[:5]))
    record_criterion(line)
    assert not failures, line


# ---------------------------------------------------------------------------
# helpers bridging the package objects to the oracle inputs


def rational_args(spec):
    inf = bool(spec.modulus.infinite)
    gens = [(g.signs[0] if g.signs else 1, g.residue.x) for g in spec.gamma]
    return spec.m0.a, inf, gens, spec.gamma_full


def oracle_prime(P):
    if P.e == 2:
        return (P.p, "ramified", 0)
    if P.f == 2:
        return (P.p, "inert", 0)
    return (P.p, "split", (-P.rep.b) % P.p)


_F_CACHE = {}


def oracle_f(spec, P):
    key = (spec, P.p, P.index)
    if key not in _F_CACHE:
        F = spec.field
        if F.is_rational:
            m0, inf, gens, full = rational_args(spec)
            _F_CACHE[key] = oracles.rational_f(m0, inf, gens, full, P.p)
        else:
            assert not spec.gamma and not spec.gamma_full
            d = F.d
            units = oracles.quadratic_units(d)
            fmax = ray_class_group(spec).order
            _F_CACHE[key] = oracles.quadratic_f(
                d, spec.m0.a, spec.modulus.infinite, units, oracle_prime(P), P.norm, fmax, oracles.generator_box(d)
            )
    return _F_CACHE[key]


def oracle_m(spec):
    F = spec.field
    if F.is_rational:
        return 2 if oracles.rational_minus_one_in_M(*rational_args(spec)) else 1
    # Gamma is trivial across the quadratic battery: zeta lies in M iff
    # zeta = 1 mod m0 and zeta is positive at every place of m_inf
    gen = oracles.quadratic_units(F.d)[0]
    roots, x = [(1, 0)], gen
    while x != (1, 0):
        roots.append(x)
        x = oracles.qmul(F.d, x, gen)
    m0 = spec.m0.a
    ok = [z for z in roots if (z[0] - 1) % m0 == 0 and z[1] % m0 == 0 and not (spec.modulus.infinite and z == (-1, 0))]
    return len(ok)


def battery_primes(spec, bound):
    return [P for P in primes_of_norm_upto(spec.field, bound) if coprime(spec.field, P.rep, spec.m0)]


# ---------------------------------------------------------------------------


def test_c01_pv_examples():
    t = time.perf_counter()
    bad = []
    L = Localization.coprime_to_set({2})  # odd primes inverted
    K = GradedKGroup(AbGroupDesc(localized=((L, 1),)), AbGroupDesc.free(1))
    r = pv_crossed_product(K, EndoAction.scalars([], [3]), EndoAction.identity(K.k1))
    if not (r.assembled and r.k0 == AbGroupDesc(FgAbGroup((2, 0))) and r.k1 == AbGroupDesc.free(1)):
        bad.append(f"scalar 3: got {r.k0} | {r.k1}")
    K = GradedKGroup(AbGroupDesc(FgAbGroup.free(2), ((L, 1),)), AbGroupDesc())
    a0 = EndoAction.from_full_matrix([[3, 1, 1], [0, 1, 0], [0, 0, 1]], 1)
    r = pv_crossed_product(K, a0, EndoAction.identity(K.k1))
    if not (r.assembled and r.k0 == AbGroupDesc.free(2) and r.k1 == AbGroupDesc.free(2)):
        bad.append(f"3x3 action: got {r.k0} | {r.k1}")
    criterion(1, "crossed-product examples exact", bad, time.perf_counter() - t, T_PV)


def test_c02_real_quadratic():
    t = time.perf_counter()
    bad = []
    for d in range(2, 101):
        if not is_squarefree(d):
            continue
        r = ktheory_real_quadratic_plus(d)
        h = oracles.form_class_number_positive(oracles.discriminant(d))
        tr = oracles.totally_positive_trace(d)
        k0, k1 = r.kgroup.k0, r.kgroup.k1
        tors = 1
        for x in k1.torsion_factors:
            tors *= x
        if r.narrow_class_number != h:
            bad.append(f"d={d}: h+ {r.narrow_class_number} != {h}")
        if k0 != AbGroupDesc.free(2 * h):
            bad.append(f"d={d}: K0 = {k0}")
        if k1.fg.rank != 2 * h or k1.localized or tors != (tr - 2) ** h:
            bad.append(f"d={d}: K1 = {k1}, want rank {2 * h} torsion order {(tr - 2) ** h}")
    criterion(2, "real quadratic K-theory for squarefree 1 < d <= 100", bad, time.perf_counter() - t, T_REALQ)


def test_c03_distinguish_real_quadratic():
    t = time.perf_counter()
    bad = []
    ds = [d for d in range(2, 51) if is_squarefree(d)]
    specs = {d: real_quadratic_plus_spec(d) for d in ds}
    for d in ds:
        if distinguish(specs[d], specs[d]).verdict != ISO_CONSISTENT:
            bad.append(f"{d} vs itself")
    for a, b in combinations(ds, 2):
        if distinguish(specs[a], specs[b]).verdict != DISTINGUISHED:
            bad.append(f"{a} vs {b}")
    n = len(ds) * (len(ds) - 1) // 2
    criterion(3, f"distinguish on {n} pairs and {len(ds)} equal pairs", bad, time.perf_counter() - t, T_PAIRS)


def test_c04_rational_battery():
    bad = []
    for spec in RATIONAL:
        args = rational_args(spec)
        out = cmd_invariants(spec, 10**3, 50)
        h = oracles.rational_class_number(*args)
        if FgAbGroup(tuple(out["class_group"])).order != h:
            bad.append(f"{spec.name}: #C {out['class_group']} != {h}")
        if out["minus_one_in_M"] != oracles.rational_minus_one_in_M(*args):
            bad.append(f"{spec.name}: -1 in M")
        r0, r1 = oracles.rational_k_formula(*args)
        k = out["k_theory"]
        if k["k0"] != {"fg": [0] * r0, "localized": []} or k["k1"] != {"fg": [0] * r1, "localized": []}:
            bad.append(f"{spec.name}: K = {k}, want ranks ({r0}, {r1})")
    criterion(4, f"rational K-theory on the {len(RATIONAL)}-spec battery", bad)


def test_c05_torsion_orders():
    bad, checked = [], 0
    for spec in BATTERY:
        _, m = roots_of_unity_in_M(spec)
        for P in battery_primes(spec, TORSION_NORM_BOUND):
            if not mu_injective_mod(spec, P):
                continue
            f = f_order(spec, P)
            g = oracle_f(spec, P)
            checked += 1
            if f != g:
                bad.append(f"{spec.name} N={P.norm}: f {f} != {g}")
            if (P.norm**f - 1) % m:
                bad.append(f"{spec.name} N={P.norm}: o not integral")
    criterion(5, f"f against generator search ({checked} primes, N <= {TORSION_NORM_BOUND})", bad)


def test_c06_roots_of_unity():
    t = time.perf_counter()
    bad = []
    for spec in BATTERY:
        m = oracle_m(spec)
        rec = recover_roots_from_profile(build_profile(spec, PROFILE_BOUND))
        if set(rec.admissible) != {m}:
            bad.append(f"{spec.name}: {sorted(rec.admissible)} != {{{m}}}")
    criterion(6, f"roots of unity recovered at bound {PROFILE_BOUND}", bad, time.perf_counter() - t, T_ROOTS)


def test_c07_degree_and_splitting():
    bad = []
    for spec in BATTERY:
        F = spec.field
        prof = build_profile(spec, PROFILE_BOUND)
        if degree_estimate(prof) != F.degree:
            bad.append(f"{spec.name}: degree {degree_estimate(prof)}")
        sn = splitting_numbers(prof)
        if not sn.counts:
            bad.append(f"{spec.name}: no primes above the threshold")
        for p, g in sn.counts.items():
            direct = len(split_type(F, p))
            ref = 1 if F.is_rational else 1 + (oracles.legendre(oracles.discriminant(F.d), p) == 1)
            if not g == direct == ref:
                bad.append(f"{spec.name} p={p}: {g} vs split_type {direct} vs symbol {ref}")
    criterion(7, f"degree and splitting numbers at bound {PROFILE_BOUND}", bad)


def test_c08_density():
    t = time.perf_counter()
    bad, worst = [], Fraction(0)
    for spec in GALOIS:
        c = ray_class_group(spec).order
        if spec.field.is_rational:
            c_ref = oracles.rational_class_number(*rational_args(spec))
            if c != c_ref:
                bad.append(f"{spec.name}: #C {c} != {c_ref}")
        exp = Fraction(1, spec.field.degree * c)
        if exp != expected_density(spec):
            bad.append(f"{spec.name}: expected density")
        est = density_estimate(kronecker_set(spec, DENSITY_BOUND).primes, DENSITY_BOUND, exp)
        worst = max(worst, est.deviation)
        if est.deviation > DENSITY_TOL:
            bad.append(f"{spec.name}: {float(est.value):.4f} vs {float(exp):.4f}")
    title = f"Kronecker density at {DENSITY_BOUND}, tol {float(DENSITY_TOL)} (worst {float(worst):.4f})"
    criterion(8, title, bad, time.perf_counter() - t, T_DENSITY)


def test_c09_boundary():
    bad = []
    spec = quad(2, 1, ("w1",))
    left = boundary_rational_ktheory(spec, "LEFT")
    right = boundary_rational_ktheory(spec, "RIGHT")
    if left.descriptor != ZERO or left.witness != AlgInt(1, -1):
        bad.append(f"LEFT {left.descriptor} witness {left.witness}")
    if right.descriptor != EXT_G:
        bad.append(f"RIGHT {right.descriptor}")
    criterion(9, "boundary classifiers for d=2 with one real place", bad)


def test_c10_cartan():
    bad, checked = [], 0
    for spec in BATTERY:
        c = ray_class_group(spec).order
        for P in battery_primes(spec, 200):
            f = oracle_f(spec, P)
            q = P.norm**f - 1
            G = cartan_quotient(spec, P)
            checked += 1
            want = FgAbGroup((q,) * (c // f))
            if G != want or G.order != q ** (c // f):
                bad.append(f"{spec.name} N={P.norm}: {G} != {want}")
    v = cartan_compare(rat(4), rat(3), 10**3)
    if v.verdict == MATCH:
        bad.append("(4) vs (3) not separated")
    for spec in BATTERY:
        if cartan_compare(spec, spec, 10**3).verdict != MATCH:
            bad.append(f"{spec.name} vs itself")
    criterion(10, f"Cartan quotients ({checked} primes) and comparisons", bad)


def test_c11_properties():
    bad = []
    rng = random.Random(20240611)
    for i in range(SNF_SAMPLES):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = [[rng.randint(-30, 30) for _ in range(c)] for _ in range(r)]
        U, S, V = smith_normal_form(A)
        diag = [S[k][k] for k in range(min(r, c))]
        off = any(S[a][b] for a in range(r) for b in range(c) if a != b)
        nz = [x for x in diag if x]
        chain = all(y % x == 0 for x, y in zip(nz, nz[1:])) and diag[: len(nz)] == nz and min(diag) >= 0
        if matmul(matmul(U, A), V) != S or abs(det(U)) != 1 or abs(det(V)) != 1 or off or not chain:
            bad.append(f"SNF sample {i}: {A}")
    for D, d, want in ((-23, -23, 3), (-4, -1, 1)):
        got, ref = class_number(FieldSpec.quadratic(d)), len(oracles.reduced_forms_negative(D))
        if not got == ref == want:
            bad.append(f"h({D}) = {got}, forms {ref}, want {want}")
    got, ref = narrow_class_number(FieldSpec.quadratic(3)), oracles.form_class_number_positive(12)
    if not got == ref == 2:
        bad.append(f"h+(12) = {got}, forms {ref}")
    criterion(11, f"SNF on {SNF_SAMPLES} random matrices and class-number oracles", bad)


if __name__ == "__main__":
    import sys

    fails = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                fails += 1
    sys.exit(1 if fails else 0)
