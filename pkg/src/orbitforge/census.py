"""Orbit counting: finite-field censuses, local counts, real counts.

Three independent counting routes live here.  finite_census enumerates
actual operators over F_p and partitions them into orbits under the full
(also enumerated) isometry group, so it depends on no closed formula.
orbit_count_local evaluates the closed-form count at a good odd prime
from the factorization type of the invariant polynomial.  orbit_count_real
evaluates the archimedean count, which only applies when the relevant
polynomial has the maximal number of real roots.

numpy appears in this module only, for the bulk mod-p linear algebra of
the enumeration censuses.  Everything is integer arithmetic throughout;
floats never enter.
"""

from fractions import Fraction
from math import comb
from multiprocessing import get_context

import numpy as np

from .arith import is_prime, rng_for
from .errors import (BadPrime, BudgetExceeded, EvenPrime, EvenQ,
                     MaximalRankHypothesisFails, NonSeparableModP)
from .matrix import Mat
from .orbits import (ADJOINT, STANDARD, SYM2, _check_rep, _check_tensor_rep,
                     _validate_charpoly, construct_representative)
from .poly import (Poly, count_real_roots, discriminant, fp_count_factors,
                   fp_from_poly)

DEFAULT_BUDGET = 2 ** 31


def so_order(n, q):
    """Order of the special orthogonal group of the split form in 2n+1
    variables over the field with q elements: q^(n^2) * prod(q^(2i) - 1).

    q must be an odd prime power; the censuses cross-check this formula
    against direct group enumeration.
    """
    if n < 1:
        raise ValueError("need n >= 1, got %d" % n)
    if q < 3 or q % 2 == 0:
        raise EvenQ("order formula needs an odd prime power, got %d" % q)
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


def count_factors_fp(f, p):
    """Number of irreducible factors of f mod p, by distinct-degree splitting.

    Raises NonSeparableModP when the reduction is inseparable and BadPrime
    when p kills a denominator or the leading coefficient.
    """
    if p < 2 or not is_prime(p):
        raise BadPrime("%d is not prime" % p)
    try:
        fc = fp_from_poly(f, p)
    except ZeroDivisionError:
        raise BadPrime("coefficient denominator divisible by %d" % p)
    if len(fc) - 1 != f.degree:
        raise BadPrime("leading coefficient vanishes mod %d" % p)
    return fp_count_factors(fc, p)


def _even_part(f):
    """g with f(x) = x * g(x^2), for odd f."""
    return Poly(list(f.c[1::2]))


def _sub_x2(g):
    """g(x^2)."""
    out = []
    for a in g.c:
        out.append(a)
        out.append(Fraction(0))
    return Poly(out[:-1])


def orbit_count_local(f, p, rep):
    """Orbit count over the p-adic field at a good odd prime.

    Good means p does not divide 2 disc(f) (nor any coefficient
    denominator); otherwise BadPrime.  With m + 1 irreducible factors of
    f mod p the self-adjoint count is 2^(2m-1) + 2^(m-1), read as 1 when
    m = 0.  For skew-adjoint operators, writing f = x g(x^2), m instead
    counts the factors of g mod p that stay irreducible under x -> x^2,
    and the count is 2^(m-1), again 1 when m = 0.
    """
    _check_tensor_rep(rep)
    _validate_charpoly(f, rep)
    if p == 2:
        raise BadPrime("p = 2 is never a good prime here")
    if not is_prime(p):
        raise BadPrime("%d is not prime" % p)
    d = discriminant(f)
    if d.numerator % p == 0:
        raise BadPrime("%d divides the discriminant" % p)
    try:
        fp_from_poly(f, p)
    except ZeroDivisionError:
        raise BadPrime("coefficient denominator divisible by %d" % p)
    if rep == SYM2:
        m = count_factors_fp(f, p) - 1
        return 1 if m == 0 else (1 << (2 * m - 1)) + (1 << (m - 1))
    g = _even_part(f)
    m = 2 * count_factors_fp(g, p) - count_factors_fp(_sub_x2(g), p)
    return 1 if m == 0 else 1 << (m - 1)


def orbit_count_real(f, rep):
    """Orbit count over the reals, with its fiber table, as (total, fibers).

    Self-adjoint case: needs f totally real (2n+1 real roots), else
    MaximalRankHypothesisFails.  The count is C(2n+1, n) and the fiber
    table maps each k = n mod 2 to C(2n+1, k).  Skew case: writing
    f = x g(x^2), needs g totally real with all roots negative; the count
    is C(n, floor(n/2)) and the fibers are C(n, k) for k = 0..n.  Root
    counts come from Sturm chains, so the precondition check is exact.
    """
    _check_tensor_rep(rep)
    _validate_charpoly(f, rep)
    deg = f.degree
    nn = (deg - 1) // 2
    if rep == SYM2:
        if count_real_roots(f) != deg:
            raise MaximalRankHypothesisFails(
                "%d of %d roots are real" % (count_real_roots(f), deg))
        fibers = {k: comb(deg, k) for k in range(nn % 2, deg + 1, 2)}
        return comb(deg, nn), fibers
    g = _even_part(f)
    if count_real_roots(g) != nn or count_real_roots(g, None, 0) != nn:
        raise MaximalRankHypothesisFails(
            "need all %d roots of the even part real and negative" % nn)
    fibers = {k: comb(nn, k) for k in range(nn + 1)}
    return comb(nn, nn // 2), fibers


# ---------------------------------------------------------------------------
# mod-p matrix utilities


def _gram_np(d):
    return np.fliplr(np.eye(d, dtype=np.int64))


def _fp_det(rows, p):
    d = len(rows)
    a = [[int(x) % p for x in row] for row in rows]
    det = 1
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = (-det) % p
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, d):
            if a[r][col]:
                c = a[r][col] * inv % p
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def _fp_inv_mat(rows, p):
    d = len(rows)
    a = [[int(x) % p for x in row] + [int(i == j) for j in range(d)]
         for i, row in enumerate(rows)]
    for col in range(d):
        piv = next(r for r in range(col, d) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for r in range(d):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[col])]
    return np.array([row[d:] for row in a], dtype=np.int64)


def _digits_array(count, width, p):
    """(count, width) array: row i holds the base-p digits of i, most
    significant first, so consecutive leading digits give contiguous rows."""
    idx = np.arange(count, dtype=np.int64)[:, None]
    powers = p ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (idx // powers) % p


# ---------------------------------------------------------------------------
# the three-dimensional group, fully enumerated


def _so3_elements(p):
    """Every proper isometry of the split three-dimensional form over F_p,
    as an (N, 3, 3) array.

    Columns are chosen left to right so each satisfies its pairing
    conditions against the previous ones (first column isotropic, second
    a unit vector orthogonal to it, third pairing to 1 with the first);
    the determinant filter then keeps the proper half.
    """
    vecs = _digits_array(p ** 3, 3, p)
    qv = (2 * vecs[:, 0] * vecs[:, 2] + vecs[:, 1] ** 2) % p
    nonzero = np.any(vecs != 0, axis=1)
    iso = vecs[(qv == 0) & nonzero]
    unit = vecs[qv == 1]
    out = []
    for g1 in iso:
        b1 = vecs @ g1[::-1] % p
        for g2 in unit[unit @ g1[::-1] % p == 0]:
            b2 = vecs @ g2[::-1] % p
            for g3 in vecs[(qv == 0) & (b1 == 1) & (b2 == 0)]:
                m = np.stack([g1, g2, g3], axis=1)
                if _fp_det(m.tolist(), p) == 1:
                    out.append(m)
    return np.stack(out)


# ---------------------------------------------------------------------------
# element enumeration per representation, dimension three


_SYM2_FREE3 = ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0))
_ADJ_FREE3 = ((0, 0), (0, 1), (1, 0))


def _free_positions3(rep):
    return _SYM2_FREE3 if rep == SYM2 else _ADJ_FREE3


def _ops3_from_digits(digits, rep, p):
    """Assemble 3x3 operators from free-entry digit rows.

    A self-adjoint operator equals its reflection across the anti-diagonal;
    a skew-adjoint one is minus that reflection, which kills the
    anti-diagonal entries.
    """
    m = len(digits)
    T = np.zeros((m, 3, 3), dtype=np.int64)
    for k, (i, j) in enumerate(_free_positions3(rep)):
        T[:, i, j] = digits[:, k]
        if i + j != 2:
            mirror = digits[:, k] if rep == SYM2 else (p - digits[:, k]) % p
            T[:, 2 - j, 2 - i] = mirror
    return T


def _encode_ops(T, positions, p):
    k = np.zeros(len(T), dtype=np.int64)
    for (i, j) in positions:
        k = k * p + T[:, i, j]
    return k


def _charpoly3(T, p):
    """Coefficients (c0, c1, c2) of det(xI - T) = x^3 + c2 x^2 + c1 x + c0,
    vectorized mod p."""
    inv2 = pow(2, -1, p)
    tr = (T[:, 0, 0] + T[:, 1, 1] + T[:, 2, 2]) % p
    tr2 = np.einsum("nij,nji->n", T, T) % p
    e2 = (tr * tr - tr2) % p * inv2 % p
    det = (T[:, 0, 0] * (T[:, 1, 1] * T[:, 2, 2] - T[:, 1, 2] * T[:, 2, 1])
           - T[:, 0, 1] * (T[:, 1, 0] * T[:, 2, 2] - T[:, 1, 2] * T[:, 2, 0])
           + T[:, 0, 2] * (T[:, 1, 0] * T[:, 2, 1] - T[:, 1, 1] * T[:, 2, 0])) % p
    return (-det) % p, e2, (-tr) % p


def _cubic_disc(c0, c1, c2, p):
    """disc(x^3 + c2 x^2 + c1 x + c0) mod p, vectorized."""
    return (18 * c2 * c1 * c0 - 4 * c2 ** 3 * c0 + c2 ** 2 * c1 ** 2
            - 4 * c1 ** 3 - 27 * c0 ** 2) % p


def _canon_ops_range(p, rep, lo, hi):
    """Canonical orbit keys for the operators with enumeration index in
    [lo, hi): the minimum encoded value over the whole conjugation group.

    Because the minimum runs over every group element, equal keys mean
    equal orbits exactly; no generating-set closure argument is needed.
    """
    width = len(_free_positions3(rep))
    digits = _digits_array(p ** width, width, p)[lo:hi]
    T = _ops3_from_digits(digits, rep, p)
    G = _so3_elements(p)
    pos = _free_positions3(rep)
    canon = _encode_ops(T, pos, p)
    for g in G:
        gi = _fp_inv_mat(g.tolist(), p)
        C = np.matmul(np.matmul(g, T), gi) % p
        canon = np.minimum(canon, _encode_ops(C, pos, p))
    return canon


def _canon_vecs_range(p, lo, hi):
    """Canonical orbit keys for vectors with index in [lo, hi)."""
    V = _digits_array(p ** 3, 3, p)[lo:hi]
    G = _so3_elements(p)

    def enc(M):
        return (M[:, 0] * p + M[:, 1]) * p + M[:, 2]

    canon = enc(V)
    for g in G:
        canon = np.minimum(canon, enc(V @ g.T % p))
    return canon


def _census3_worker(args):
    p, rep, lo, hi = args
    if rep == STANDARD:
        return _canon_vecs_range(p, lo, hi)
    return _canon_ops_range(p, rep, lo, hi)


def _partitioned_canon(p, rep, jobs):
    """Canonical keys for the whole element space, split by leading digit.

    The per-element canonical key does not depend on the partition, so any
    job count merges to the identical report; jobs > 1 just fans the slices
    out to worker processes.
    """
    width = 3 if rep == STANDARD else len(_free_positions3(rep))
    total = p ** width
    block = p ** (width - 1)
    jobs = max(1, min(int(jobs), p))
    cuts = [round(i * p / jobs) * block for i in range(jobs + 1)]
    tasks = [(p, rep, cuts[i], cuts[i + 1]) for i in range(jobs)
             if cuts[i] < cuts[i + 1]]
    if len(tasks) <= 1:
        parts = [_census3_worker(t) for t in tasks]
    else:
        with get_context("fork").Pool(processes=len(tasks)) as pool:
            parts = pool.map(_census3_worker, tasks)
    canon = np.concatenate(parts)
    assert len(canon) == total
    return canon


# ---------------------------------------------------------------------------
# census report structure


class CensusRow:
    """One invariant-polynomial class (or vector label) of a census.

    key is the ascending coefficient tuple of the monic polynomial mod p
    for the two tensor representations, or the integer label q(v)/2 mod p
    for vectors.  complete says whether orbit_sizes lists every orbit of
    the class; orbit-generation rows sample a single orbit and leave
    operator_count unset.  stabilizer_orders aligns with orbit_sizes and
    holds None where no independent stabilizer measurement was made.
    """

    __slots__ = ("key", "separable", "operator_count", "orbit_sizes",
                 "stabilizer_orders", "complete")

    def __init__(self, key, separable, operator_count, orbit_sizes,
                 stabilizer_orders, complete):
        self.key = key
        self.separable = separable
        self.operator_count = operator_count
        self.orbit_sizes = tuple(orbit_sizes)
        self.stabilizer_orders = tuple(stabilizer_orders)
        self.complete = complete

    @property
    def orbit_count(self):
        return len(self.orbit_sizes) if self.complete else None

    def _tup(self):
        return (self.key, self.separable, self.operator_count,
                self.orbit_sizes, self.stabilizer_orders, self.complete)

    def __eq__(self, other):
        return isinstance(other, CensusRow) and self._tup() == other._tup()

    def __repr__(self):
        return "CensusRow(key=%r, separable=%r, ops=%r, orbits=%r, stabs=%r)" % (
            self.key, self.separable, self.operator_count, self.orbit_sizes,
            self.stabilizer_orders)


class FiniteCensusReport:
    """Census output: per-class rows plus the global accounting.

    mode is "full" when the element space was enumerated exhaustively and
    "orbit-sample" when rows were generated from explicit polynomials by
    orbit closure.  group_order is the directly enumerated group size in
    dimension three and None in dimension five, where the group is never
    listed.
    """

    __slots__ = ("p", "n", "rep", "mode", "group_order", "space_size", "rows")

    def __init__(self, p, n, rep, mode, group_order, space_size, rows):
        self.p = p
        self.n = n
        self.rep = rep
        self.mode = mode
        self.group_order = group_order
        self.space_size = space_size
        self.rows = list(rows)

    def row(self, key):
        for r in self.rows:
            if r.key == key:
                return r
        raise KeyError(key)

    def __eq__(self, other):
        return (isinstance(other, FiniteCensusReport)
                and (self.p, self.n, self.rep, self.mode, self.group_order,
                     self.space_size) == (other.p, other.n, other.rep,
                                          other.mode, other.group_order,
                                          other.space_size)
                and self.rows == other.rows)

    def __repr__(self):
        return "FiniteCensusReport(p=%d, n=%d, rep=%r, rows=%d)" % (
            self.p, self.n, self.rep, len(self.rows))


def charpoly_key(f, p):
    """Ascending coefficient tuple of monic f mod p, for row lookup."""
    try:
        fc = fp_from_poly(f, p)
    except ZeroDivisionError:
        raise BadPrime("coefficient denominator divisible by %d" % p)
    if len(fc) - 1 != f.degree:
        raise BadPrime("leading coefficient vanishes mod %d" % p)
    return tuple(fc)


# ---------------------------------------------------------------------------
# dimension three censuses


def _census3(p, rep, polys, jobs):
    G_order = len(_so3_elements(p))
    canon = _partitioned_canon(p, rep, jobs)
    rows = []
    if rep == STANDARD:
        V = _digits_array(p ** 3, 3, p)
        qv = (2 * V[:, 0] * V[:, 2] + V[:, 1] ** 2) % p
        labels = qv * pow(2, -1, p) % p
        for d in range(p):
            mask = labels == d
            sizes = np.unique(canon[mask], return_counts=True)[1]
            sizes = sorted(int(s) for s in sizes)
            stabs = []
            for s in sizes:
                assert G_order % s == 0
                stabs.append(G_order // s)
            rows.append(CensusRow(d, None, int(mask.sum()), sizes, stabs, True))
    else:
        width = len(_free_positions3(rep))
        digits = _digits_array(p ** width, width, p)
        T = _ops3_from_digits(digits, rep, p)
        c0, c1, c2 = _charpoly3(T, p)
        cp = (c2 * p + c1) * p + c0
        wanted = None
        if polys is not None:
            wanted = set()
            for f in polys:
                k = charpoly_key(f, p)
                if len(k) != 4:
                    raise ValueError("need monic cubics for a dimension-three census")
                wanted.add((k[2] * p + k[1]) * p + k[0])
        for key in np.unique(cp):
            if wanted is not None and int(key) not in wanted:
                continue
            mask = cp == key
            kc0 = int(key) % p
            kc1 = (int(key) // p) % p
            kc2 = int(key) // (p * p)
            sep = _cubic_disc(kc0, kc1, kc2, p) != 0
            sizes = np.unique(canon[mask], return_counts=True)[1]
            sizes = sorted(int(s) for s in sizes)
            stabs = []
            for s in sizes:
                assert G_order % s == 0
                stabs.append(G_order // s)
            row = CensusRow((kc0, kc1, kc2, 1), bool(sep), int(mask.sum()),
                            sizes, stabs, True)
            assert sum(row.orbit_sizes) == row.operator_count
            rows.append(row)
    space = p ** (3 if rep == STANDARD else len(_free_positions3(rep)))
    report = FiniteCensusReport(p, 1, rep, "full", G_order, space, rows)
    if polys is None:
        assert sum(r.operator_count for r in report.rows) == space
    return report


# ---------------------------------------------------------------------------
# dimension five: generators, orbit closure, direct stabilizers


def _so5_generators(p):
    """A generating set for the proper isometries of the split form in
    dimension five, every element verified against the form.

    Unipotent maps x -> x + B(x,v) u - B(x,u) v - (q(v)/2) B(x,u) u for
    isotropic basis vectors u and random v orthogonal to u, plus one
    hyperbolic scaling by a non-square (which the unipotents alone never
    reach).
    """
    rng = rng_for("so5-generators")
    J = _gram_np(5)
    inv2 = pow(2, -1, p)
    eye = np.eye(5, dtype=np.int64)
    gens = []
    seen = set()
    for ui in (0, 1, 3, 4):
        u = eye[ui]
        got = 0
        while got < 4:
            v = np.array([rng.randrange(p) for _ in range(5)], dtype=np.int64)
            if int(u @ J @ v) % p != 0:
                continue
            qv2 = int(v @ J @ v) * inv2 % p
            E = (eye + np.outer(u, J @ v) - np.outer(v, J @ u)
                 - qv2 * np.outer(u, J @ u)) % p
            key = E.tobytes()
            if np.array_equal(E, eye) or key in seen:
                continue
            assert np.array_equal(E.T @ J @ E % p, J)
            assert _fp_det(E.tolist(), p) == 1
            seen.add(key)
            gens.append(E)
            got += 1
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    h = eye.copy()
    h[0, 0] = c
    h[4, 4] = pow(c, -1, p)
    assert np.array_equal(h.T @ J @ h % p, J)
    assert _fp_det(h.tolist(), p) == 1
    gens.append(h)
    return gens


_SKEW_FREE5 = tuple((i, j) for i in range(5) for j in range(5) if i + j < 4)
_SELF_FREE5 = tuple((i, j) for i in range(5) for j in range(5) if i + j <= 4)


def _skew5_from_digits(digits, p):
    T = np.zeros((len(digits), 5, 5), dtype=np.int64)
    for k, (i, j) in enumerate(_SKEW_FREE5):
        T[:, i, j] = digits[:, k]
        T[:, 4 - j, 4 - i] = (p - digits[:, k]) % p
    return T


def _encode_skew5(C, p):
    k = np.zeros(len(C), dtype=np.int64)
    for (i, j) in _SKEW_FREE5:
        k = k * p + C[:, i, j]
    return k


def _charpoly5_skew(T, p):
    """(e4, e2) with det(xI - T) = x^5 + e2 x^3 + e4 x for skew-adjoint T.

    The odd-power traces and the determinant vanish identically, so the
    two Newton steps that remain divide only by 2 and by 4; p = 3 is safe.
    """
    T2 = np.matmul(T, T) % p
    p2 = np.einsum("nii->n", T2) % p
    p4 = np.einsum("nii->n", np.matmul(T2, T2) % p) % p
    e2 = (-p2) % p * pow(2, -1, p) % p
    e4 = (-(p4 + e2 * p2)) % p * pow(4, -1, p) % p
    return e4, e2


def _charpoly5_exact(T, p):
    """Full mod-p characteristic polynomial via an exact rational lift."""
    m = Mat([[Fraction(int(x)) for x in row] for row in T])
    return tuple(int(a) % p for a in m.charpoly().c)


def _conj_batch(gens, ginvs, F, p):
    return [np.matmul(np.matmul(g, F), gi) % p
            for g, gi in zip(gens, ginvs)]


def _orbit_closure_skew5(start_idx, visited, digits_pow, gens, ginvs, p):
    """BFS orbit of one skew operator, marking visited by encoded index."""
    frontier_idx = np.array([start_idx], dtype=np.int64)
    visited[start_idx] = True
    size = 0
    while len(frontier_idx):
        size += len(frontier_idx)
        dg = (frontier_idx[:, None] // digits_pow) % p
        F = _skew5_from_digits(dg, p)
        nxt = []
        for C in _conj_batch(gens, ginvs, F, p):
            idx = _encode_skew5(C, p)
            idx = np.unique(idx)
            fresh = idx[~visited[idx]]
            visited[fresh] = True
            nxt.append(fresh)
        frontier_idx = np.concatenate(nxt) if nxt else frontier_idx[:0]
        frontier_idx = np.unique(frontier_idx)
    return size


def _orbit_closure_bytes(T0, gens, ginvs, p, budget=10 ** 6):
    """BFS orbit of one operator, keyed by matrix bytes (no global index)."""
    seen = {T0.tobytes()}
    frontier = T0[None]
    size = 1
    while len(frontier):
        allc = np.concatenate(_conj_batch(gens, ginvs, frontier, p))
        flat = allc.reshape(len(allc), -1)
        uniq = np.unique(flat, axis=0).reshape(-1, 5, 5)
        fresh = []
        for M in uniq:
            key = M.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(M)
        size += len(fresh)
        if size > budget:
            raise BudgetExceeded("orbit closure passed %d elements" % budget)
        frontier = np.stack(fresh) if fresh else frontier[:0]
    return size


def _stab_order5(T, p):
    """Stabilizer order of a separable 5x5 operator, measured directly.

    The commutant of an operator with squarefree characteristic polynomial
    is the polynomial algebra it generates, so running over all p^5
    coefficient vectors and keeping the isometries of determinant one is
    an exhaustive count, independent of any group-order formula.
    """
    J = _gram_np(5)
    pows = [np.eye(5, dtype=np.int64)]
    for _ in range(4):
        pows.append(pows[-1] @ T % p)
    P = np.stack(pows)
    coeffs = _digits_array(p ** 5, 5, p)
    cands = np.tensordot(coeffs, P, axes=(1, 0)) % p
    E = np.matmul(np.matmul(cands.transpose(0, 2, 1), J), cands) % p
    good = cands[np.all(E == J, axis=(1, 2))]
    return sum(1 for g in good if _fp_det(g.tolist(), p) == 1)


def _find_selfadj5(f, p, fc):
    """A self-adjoint operator over F_p with characteristic polynomial fc.

    First tries reducing the exact rational representative; if a
    denominator dies mod p, falls back to seeded random search filtered by
    the cheap trace conditions before the exact characteristic polynomial.
    """
    try:
        orep = construct_representative(f, SYM2)
        T = np.array([[int(Fraction(x).numerator)
                       * pow(Fraction(x).denominator, -1, p) % p
                       for x in row] for row in orep.op.rows], dtype=np.int64)
        if _charpoly5_exact(T, p) == tuple(fc):
            return T
    except (ValueError, ZeroDivisionError):
        pass
    rng = rng_for("census5-search")
    want_e1 = (-fc[4]) % p
    want_tr2 = (fc[4] * fc[4] - 2 * fc[3]) % p
    for _ in range(500000):
        T = np.zeros((5, 5), dtype=np.int64)
        for (i, j) in _SELF_FREE5:
            v = rng.randrange(p)
            T[i, j] = v
            if i + j < 4:
                T[4 - j, 4 - i] = v
        if int(np.trace(T)) % p != want_e1:
            continue
        if int(np.einsum("ij,ji->", T, T)) % p != want_tr2:
            continue
        if _charpoly5_exact(T, p) == tuple(fc):
            return T
    raise BudgetExceeded("no operator with the requested polynomial found")


def _census5_adjoint(p, polys):
    """Full census of skew-adjoint operators in dimension five (p^10 of
    them), with orbit closure under a generating set and directly measured
    stabilizers on separable classes."""
    gens = _so5_generators(p)
    ginvs = [_fp_inv_mat(g.tolist(), p) for g in gens]
    count = p ** len(_SKEW_FREE5)
    digits = _digits_array(count, len(_SKEW_FREE5), p)
    T = _skew5_from_digits(digits, p)
    e4, e2 = _charpoly5_skew(T, p)
    cp = e2 * p + e4
    digits_pow = p ** np.arange(len(_SKEW_FREE5) - 1, -1, -1, dtype=np.int64)
    wanted = None
    if polys is not None:
        wanted = set()
        for f in polys:
            k = charpoly_key(f, p)
            if len(k) != 6 or k[0] != 0 or k[2] != 0 or k[4] != 0:
                raise ValueError("skew census rows need odd monic quintics")
            wanted.add(k[3] * p + k[1])
    visited = np.zeros(count, dtype=bool)
    rows = []
    for key in np.unique(cp):
        in_class = np.flatnonzero(cp == key)
        ke4 = int(key) % p
        ke2 = int(key) // p
        fbar = [0, ke4, 0, ke2, 0, 1]
        try:
            fp_count_factors(fbar, p)
            sep = True
        except NonSeparableModP:
            sep = False
        if wanted is not None and int(key) not in wanted:
            visited[in_class] = True
            continue
        sizes = []
        stabs = []
        for idx in in_class:
            if visited[idx]:
                continue
            s = _orbit_closure_skew5(int(idx), visited, digits_pow,
                                     gens, ginvs, p)
            sizes.append(s)
            if sep:
                dg = (np.array([idx]) [:, None] // digits_pow) % p
                stabs.append(_stab_order5(_skew5_from_digits(dg, p)[0], p))
            else:
                stabs.append(None)
        order = np.argsort(sizes, kind="stable")
        sizes = [sizes[i] for i in order]
        stabs = [stabs[i] for i in order]
        row = CensusRow((0, ke4, 0, ke2, 0, 1), sep, len(in_class),
                        sizes, stabs, True)
        assert sum(row.orbit_sizes) == row.operator_count
        rows.append(row)
    report = FiniteCensusReport(p, 2, ADJOINT, "full", None, count, rows)
    if polys is None:
        assert sum(r.operator_count for r in report.rows) == count
    return report


def _census5_sym2(p, polys):
    """Orbit-sample census for self-adjoint operators in dimension five:
    one orbit per requested polynomial, closed under the generating set,
    with a directly measured stabilizer."""
    if polys is None:
        raise BudgetExceeded(
            "enumerating p^15 self-adjoint operators is out of budget; "
            "pass explicit polynomials for orbit generation")
    gens = _so5_generators(p)
    ginvs = [_fp_inv_mat(g.tolist(), p) for g in gens]
    rows = []
    for f in polys:
        fc = charpoly_key(f, p)
        if len(fc) != 6:
            raise ValueError("dimension-five rows need monic quintics")
        fp_count_factors(list(fc), p)
        T0 = _find_selfadj5(f, p, fc)
        size = _orbit_closure_bytes(T0, gens, ginvs, p)
        stab = _stab_order5(T0, p)
        rows.append(CensusRow(tuple(fc), True, None, [size], [stab], False))
    return FiniteCensusReport(p, 2, SYM2, "orbit-sample", None,
                              p ** len(_SELF_FREE5), rows)


def _census5_standard(p):
    """Full vector census in dimension five by orbit closure (p^5 vectors)."""
    gens = _so5_generators(p)
    V = _digits_array(p ** 5, 5, p)
    J = _gram_np(5)
    qv = np.einsum("ni,ij,nj->n", V, J, V) % p
    labels = qv * pow(2, -1, p) % p
    enc_pow = p ** np.arange(4, -1, -1, dtype=np.int64)
    visited = np.zeros(p ** 5, dtype=bool)
    sizes_by_label = {d: [] for d in range(p)}
    for start in range(p ** 5):
        if visited[start]:
            continue
        visited[start] = True
        frontier = V[start][None]
        size = 1
        while len(frontier):
            nxt = []
            for g in gens:
                W = frontier @ g.T % p
                idx = np.unique(W @ enc_pow)
                fresh = idx[~visited[idx]]
                visited[fresh] = True
                nxt.append(fresh)
            idx = np.unique(np.concatenate(nxt))
            size += len(idx)
            frontier = (idx[:, None] // enc_pow) % p if len(idx) else frontier[:0]
        sizes_by_label[int(labels[start])].append(size)
    rows = []
    for d in range(p):
        sizes = sorted(sizes_by_label[d])
        rows.append(CensusRow(d, None, sum(sizes), sizes,
                              [None] * len(sizes), True))
    report = FiniteCensusReport(p, 2, STANDARD, "full", None, p ** 5, rows)
    assert sum(r.operator_count for r in report.rows) == p ** 5
    return report


# ---------------------------------------------------------------------------
# entry point


def finite_census(p, n, rep, polys=None, jobs=1, budget=DEFAULT_BUDGET):
    """Census of the representation space over F_p with orbit partition.

    Dimension three (n = 1) is a full enumeration: every operator (or
    vector), the whole isometry group, and exact orbits from canonical
    minima over the group, partitionable across jobs by leading digit.
    Dimension five (n = 2) runs at p = 3 only: skew-adjoint and vector
    spaces are still enumerated in full with orbits closed under a
    verified generating set, while the self-adjoint space is sampled one
    orbit per requested polynomial.  polys, when given, restricts rows.

    Raises EvenPrime at p = 2, BadPrime for composite p, BudgetExceeded
    when the estimated conjugation work passes `budget`.
    """
    _check_rep(rep)
    if p == 2:
        raise EvenPrime("census needs an odd prime")
    if not is_prime(p):
        raise BadPrime("%d is not prime" % p)
    if n == 1:
        width = 3 if rep == STANDARD else len(_free_positions3(rep))
        if p ** width * so_order(1, p) > budget:
            raise BudgetExceeded("about %d conjugations needed"
                                 % (p ** width * so_order(1, p)))
        return _census3(p, rep, polys, jobs)
    if n == 2:
        if p != 3:
            raise BudgetExceeded("dimension five runs at p = 3 only")
        if rep == STANDARD:
            return _census5_standard(p)
        if rep == ADJOINT:
            return _census5_adjoint(p, polys)
        return _census5_sym2(p, polys)
    raise BudgetExceeded("no census mode for n = %d" % n)
