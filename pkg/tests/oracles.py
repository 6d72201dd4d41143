"""Independent brute-force oracles used by the test suite.

Everything in here is deliberately naive: straight enumeration, no pruning,
no shared code with the library internals beyond data types.  Slow is fine;
wrong is not.
"""

from fractions import Fraction
from itertools import combinations, permutations, product

from troplin.diffcon import Constraint, DifferenceSystem
from troplin.semiring import INF, is_finite


def brute_tdet(rows):
    """Tropical determinant by full permutation expansion."""
    k = len(rows)
    best = INF
    for perm in permutations(range(k)):
        acc = Fraction(0)
        ok = True
        for r in range(k):
            v = rows[r][perm[r]]
            if not is_finite(v):
                ok = False
                break
            acc += v
        if ok and (best is INF or acc < best):
            best = acc
    return best


def brute_member(p, point):
    """Membership straight from the definition: for every (m+1)-subset T the
    min of point_i + p_{T - i} over i in T is infinite or attained twice."""
    for t in combinations(range(1, p.n + 1), p.m + 1):
        terms = []
        for i in t:
            rest = tuple(x for x in t if x != i)
            terms.append(point[i - 1] + p.entry(rest))
        finite = [x for x in terms if is_finite(x)]
        if finite and sum(1 for x in finite if x == min(finite)) < 2:
            return False
    return True


def brute_circuit_supports(matroid):
    """All minimal dependent subsets, by raw enumeration."""
    n, m = matroid.n, matroid.m

    def independent(subset):
        return any(set(subset) <= set(b) for b in matroid.bases)

    circuits = set()
    for size in range(1, m + 2):
        for sub in combinations(range(1, n + 1), size):
            if independent(sub):
                continue
            if any(set(c) < set(sub) for c in circuits):
                continue
            circuits.add(sub)
    return circuits


# ---------------------------------------------------------------------------
# linear inequalities over Q: Fourier-Motzkin with strictness


def _rows_from_system(system: DifferenceSystem):
    k = system.num_vars
    rows = []
    for c in system.constraints:
        coeffs = [Fraction(0)] * k
        coeffs[c.left - 1] += 1
        coeffs[c.right - 1] -= 1
        rows.append((tuple(coeffs), Fraction(c.bound), c.strict))
    for left, right, c in system.equalities:
        for lo, hi, bound in ((left, right, Fraction(c)), (right, left, -Fraction(c))):
            coeffs = [Fraction(0)] * k
            coeffs[lo - 1] += 1
            coeffs[hi - 1] -= 1
            rows.append((tuple(coeffs), bound, False))
    return k, rows


def _strongest(rows):
    # keep, per coefficient vector, only the binding constraint
    best = {}
    for coeffs, bound, strict in rows:
        prev = best.get(coeffs)
        if prev is None or (bound, not strict) < (prev[0], not prev[1]):
            best[coeffs] = (bound, strict)
    return [(c, b, s) for c, (b, s) in best.items()]


def fm_feasible_rows(k, rows):
    """Feasibility of { x : coeffs . x <= bound (or <)} by eliminating
    variables one at a time."""
    for var in range(k):
        pos, neg, rest = [], [], []
        for row in rows:
            cv = row[0][var]
            (pos if cv > 0 else neg if cv < 0 else rest).append(row)
        new_rows = rest
        for pc, pb, ps in pos:
            for nc, nb, ns in neg:
                a, b = pc[var], -nc[var]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                new_rows.append((coeffs, b * pb + a * nb, ps or ns))
        rows = _strongest(new_rows)
    for coeffs, bound, strict in rows:
        assert not any(coeffs)
        if bound < 0 or (strict and bound == 0):
            return False
    return True


def fm_feasible(system: DifferenceSystem) -> bool:
    return fm_feasible_rows(*_rows_from_system(system))


def recession_01_bounded(system: DifferenceSystem) -> bool:
    """Boundedness (mod the all-ones line) of a feasible difference region.

    The recession cone of a difference system is cut out by the homogeneous
    constraints, and such a cone contains a non-constant vector iff it
    contains a non-constant 0/1 vector (threshold the values).  So testing
    all 0/1 vectors is exact.
    """
    k = system.num_vars
    for bits in product((0, 1), repeat=k):
        if all(b == bits[0] for b in bits):
            continue
        ok = all(bits[c.left - 1] - bits[c.right - 1] <= 0
                 for c in system.constraints)
        ok = ok and all(bits[l - 1] == bits[r - 1] for l, r, _ in system.equalities)
        if ok:
            return False
    return True


def random_system(rng, max_vars=4, max_cons=8) -> DifferenceSystem:
    """Seeded random difference system with mixed strictness and the
    occasional equality; used for solver-vs-oracle comparisons."""
    k = rng.randint(1, max_vars)
    cons = []
    for _ in range(rng.randint(0, max_cons)):
        left = rng.randint(1, k)
        right = rng.randint(1, k)
        if left == right:
            continue
        bound = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        cons.append(Constraint(left, right, bound, strict=bool(rng.getrandbits(1))))
    eqs = []
    if k >= 2:
        for _ in range(rng.randint(0, 2)):
            a = rng.randint(1, k)
            b = rng.randint(1, k)
            if a != b:
                eqs.append((a, b, Fraction(rng.randint(-2, 2))))
    return DifferenceSystem(k, tuple(cons), tuple(eqs))


# ---------------------------------------------------------------------------
# lattice points and hull edges


def lattice_simplex_counts(s, r):
    """(all, interior) lattice points of the dilate s * standard (r-1)-simplex,
    counted by enumerating barycentric coordinates."""
    total = interior = 0
    for point in product(range(s + 1), repeat=r):
        if sum(point) != s:
            continue
        total += 1
        if all(x >= 1 for x in point):
            interior += 1
    return total, interior


def hull_edges(points):
    """Index pairs {i, j} forming edges of conv(points), exact arithmetic.

    [v_i, v_j] is an edge iff some linear functional c is tied on v_i, v_j
    and strictly smaller on every other vertex; that is a homogeneous strict
    feasibility problem in c, decided by Fourier-Motzkin.
    """
    dim = len(points[0])
    edges = set()
    for i, j in combinations(range(len(points)), 2):
        vi, vj = points[i], points[j]
        rows = []
        d = tuple(Fraction(a - b) for a, b in zip(vi, vj))
        rows.append((d, Fraction(0), False))
        rows.append((tuple(-x for x in d), Fraction(0), False))
        for k, w in enumerate(points):
            if k in (i, j):
                continue
            rows.append((tuple(Fraction(a - b) for a, b in zip(w, vi)),
                         Fraction(0), True))
        if fm_feasible_rows(dim, rows):
            edges.add(frozenset((i, j)))
    return edges
