"""Brute-force reference computations, independent of the package internals.

Nothing here uses SNF, HNF, reduction of forms or the class-group tables:
residues are plain pairs of integers mod n, subgroups are closures, and
generators are found by searching norm equations.
"""

from math import gcd, isqrt


# ---------------------------------------------------------------------------
# Q: coset closure on (+-1) x (Z/m0)*


def closure(gens, mul, one):
    H = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = mul(h, g)
                if x not in H:
                    H.add(x)
                    nxt.append(x)
        frontier = nxt
    return H


def rational_units(m0, inf):
    signs = (1, -1) if inf else (1,)
    return [(s, a % m0 if m0 > 1 else 0) for s in signs for a in range(max(m0, 1)) if gcd(a, m0) == 1]


def _rmul(m0):
    return lambda u, v: (u[0] * v[0], (u[1] * v[1]) % m0 if m0 > 1 else 0)


def rational_subgroup(m0, inf, gamma, full):
    """Gamma [Z*]_m inside (Z/m)* as a set of (sign, residue) pairs."""
    units = rational_units(m0, inf)
    one = (1, 1 % m0 if m0 > 1 else 0)
    minus = (-1 if inf else 1, (-1) % m0 if m0 > 1 else 0)
    gens = list(units) if full else [(s if inf else 1, r % m0 if m0 > 1 else 0) for s, r in gamma]
    return closure(gens + [minus], _rmul(m0), one), units


def rational_class_number(m0, inf, gamma=(), full=False):
    H, units = rational_subgroup(m0, inf, gamma, full)
    return len(units) // len(H)


def rational_f(m0, inf, gamma, full, p):
    H, _ = rational_subgroup(m0, inf, gamma, full)
    x, k = (1, p % m0 if m0 > 1 else 0), 1
    mul = _rmul(m0)
    while x not in H:
        x = mul(x, (1, p % m0 if m0 > 1 else 0))
        k += 1
    return k


def rational_minus_one_in_M(m0, inf, gamma=(), full=False):
    if full:
        return not inf
    one = (1, 1 % m0 if m0 > 1 else 0)
    G = closure([(s if inf else 1, r % m0 if m0 > 1 else 0) for s, r in gamma], _rmul(m0), one)
    return (-1 if inf else 1, (-1) % m0 if m0 > 1 else 0) in G


def rational_k_formula(m0, inf, gamma=(), full=False):
    """(rank K0, rank K1) of the rational case: c = #C copies of
    Z^3 (when -1 lies in M) or of Z (+) Z."""
    c = rational_class_number(m0, inf, gamma, full)
    if rational_minus_one_in_M(m0, inf, gamma, full):
        return 3 * c, 0
    return c, c


# ---------------------------------------------------------------------------
# quadratic orders: x = a + b w, w^2 = t w - n


def order_constants(d):
    return (1, (1 - d) // 4) if d % 4 == 1 else (0, -d)


def qmul(d, u, v):
    t, n = order_constants(d)
    a, b = u
    c, e = v
    return (a * c - n * b * e, a * e + b * c + t * b * e)


def qnorm(d, u):
    t, n = order_constants(d)
    a, b = u
    return a * a + t * a * b + n * b * b


def unit_residue_count(d, n):
    """#(R/nR)* by listing residues a + b w mod n with norm prime to n."""
    return sum(1 for a in range(n) for b in range(n) if gcd(qnorm(d, (a, b)), n) == 1)


def discriminant(d):
    return d if d % 4 == 1 else 4 * d


def legendre(D, p):
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


def reduced_forms_negative(D):
    """Reduced primitive positive definite forms of discriminant D < 0."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                out.append((a, b, c))
        a += 1
    return out


def _reduced_indefinite(D, a, b):
    """0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b, exactly."""
    A = 2 * abs(a)
    return 0 < b and b * b < D and (A + b) ** 2 > D and (A - b <= 0 or (A - b) ** 2 < D)


def _rho(D, f):
    a, b, c = f
    s = isqrt(D)
    C = 2 * abs(c)
    b2 = s - (s + b) % C  # largest value <= sqrt D congruent to -b mod 2|c|
    return (c, b2, (b2 * b2 - D) // (4 * c))


def form_class_number_positive(D):
    """h+(D) for D > 0 non-square: reduced primitive indefinite forms fall
    into cycles under the reduction operator, one cycle per class."""
    s = isqrt(D)
    reduced = set()
    for b in range(1, s + 1):
        if (b * b - D) % 4:
            continue
        ac = (b * b - D) // 4
        for a in range(1, (s + b) // 2 + 1):
            for sa in (a, -a):
                if ac % sa or not _reduced_indefinite(D, sa, b):
                    continue
                c = ac // sa
                if gcd(gcd(a, b), abs(c)) == 1:
                    reduced.add((sa, b, c))
    seen, cycles = set(), 0
    for f in sorted(reduced):
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            if g not in reduced:
                raise AssertionError(f"reduction left the reduced set at {g}")
            seen.add(g)
            g = _rho(D, g)
    return cycles


# ---------------------------------------------------------------------------
# f by searching generators


def _hensel_root(d, p, k, r):
    """Lift a root r of w^2 - t w + n mod p to mod p^k (p odd or simple root)."""
    t, n = order_constants(d)
    pk = p
    for _ in range(1, k):
        pk *= p
        fr = r * r - t * r + n
        dfr = 2 * r - t
        r = (r - fr * pow(dfr, -1, pk)) % pk
    return r % (p**k)


def generators_of_norm(d, N, box):
    """Elements a + b w with |norm| = N and |b| <= box."""
    t, n = order_constants(d)
    out = []
    for b in range(-box, box + 1):
        # a^2 + t b a + n b^2 - s N = 0
        for s in (1, -1):
            disc = t * t * b * b - 4 * (n * b * b - s * N)
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc:
                continue
            for num in (-t * b + r, -t * b - r):
                if num % 2 == 0:
                    out.append((num // 2, b))
    return out


def in_prime_power(d, prime, k, x):
    """x in P^k for P = (p, w - r) split, (p) inert, or the ramified prime."""
    p, kind, r = prime
    a, b = x
    if kind == "inert":
        return a % p**k == 0 and b % p**k == 0
    if kind == "ramified":
        return qnorm(d, x) % p**k == 0
    rk = _hensel_root(d, p, k, r)
    return (a + b * rk) % p**k == 0


def quadratic_subgroup_closure(d, m0, places, units):
    """[R*]_m inside (signs at places) x (R/m0)*, for rational integer m0."""

    def emb_sign(u, w):
        t, n = order_constants(d)
        a, b = u
        # a + b w with w = (t +- sqrt(t^2 - 4n))/2
        Dd = t * t - 4 * n
        s = 1 if w == "w0" else -1
        # sign of 2a + b t + s b sqrt(Dd)
        lin = 2 * a + b * t
        rad = s * b
        if rad == 0:
            return 1 if lin > 0 else -1
        if lin >= 0 and rad >= 0:
            return 1
        if lin <= 0 and rad <= 0:
            return -1
        big = lin * lin - rad * rad * Dd
        if lin > 0:
            return 1 if big > 0 else -1
        return -1 if big > 0 else 1

    def key(u):
        return (tuple(emb_sign(u, w) for w in places), (u[0] % m0, u[1] % m0) if m0 > 1 else (0, 0))

    def mul(x, y):
        sg = tuple(i * j for i, j in zip(x[0], y[0]))
        if m0 == 1:
            return (sg, (0, 0))
        a, b = qmul(d, x[1], y[1])
        return (sg, (a % m0, b % m0))

    one = key((1, 0))
    return closure([key(u) for u in units], mul, one), key


def quadratic_f(d, m0, places, units, prime, norm, fmax, box):
    """Least k <= fmax such that P^k has a generator x with [x]_m in [R*]_m
    (Gamma trivial), found by norm search."""
    H, key = quadratic_subgroup_closure(d, m0, places, units)
    for k in range(1, fmax + 1):
        for x in generators_of_norm(d, norm**k, box(norm**k)):
            if in_prime_power(d, prime, k, x) and key(x) in H:
                return k
    return None


# ---------------------------------------------------------------------------
# units by search


def pell_minimal(D):
    """Least u > 0 with t^2 - D u^2 = 4 s for some t > 0 and s = +-1,
    returned as (t, u, s); s = -1 is tried first."""
    u = 0
    while True:
        u += 1
        for s in (-1, 1):
            t2 = D * u * u + 4 * s
            t = isqrt(t2) if t2 > 0 else 0
            if t > 0 and t * t == t2:
                return t, u, s


def _from_tu(d, t, u):
    # (t + u sqrt D)/2 in the basis 1, w
    if d % 4 == 1:
        return ((t - u) // 2, u)
    return (t // 2, u)


def quadratic_units(d):
    """Generators of R*: a root of unity of maximal order (and the
    fundamental unit for d > 0), found by norm-one search."""
    if d < 0:
        box = 2
        order = {(-1, 0): 2}
        for a in range(-box, box + 1):
            for b in range(-box, box + 1):
                if qnorm(d, (a, b)) != 1 or (a, b) == (1, 0):
                    continue
                x, k = (a, b), 1
                while x != (1, 0):
                    x, k = qmul(d, x, (a, b)), k + 1
                order[(a, b)] = k
        best = max(order, key=lambda u: (order[u], u))
        return [best]
    t, u, _ = pell_minimal(discriminant(d))
    return [(-1, 0), _from_tu(d, t, u)]


def totally_positive_trace(d):
    """t of the totally positive fundamental unit (t + u sqrt D)/2."""
    t, _, s = pell_minimal(discriminant(d))
    # the square of a norm -1 unit has trace t^2 + 2
    return t if s == 1 else t * t + 2


def generator_box(d):
    """|b| bound for one generator of each principal ideal of norm N."""
    if d < 0:
        return lambda N: isqrt(4 * N // (-discriminant(d))) + 2
    D = discriminant(d)
    t, u, _ = pell_minimal(D)
    eps = (t + u * D**0.5) / 2
    # some generator x has sqrt N / eps <= |x|, |x'| <= sqrt N * eps
    return lambda N: int(2 * (N**0.5) * eps / D**0.5) + 2
