"""Operator orbits on a split odd orthogonal space.

The objects here are self-adjoint and skew-adjoint operators T on the
standard space W of dimension 2n+1 with separable characteristic
polynomial f.  Each such operator carries a hidden unit alpha of
L = Q[x]/(f) that pins down its rational orbit: pulling the form on W
back along lambda -> lambda(T)w for a cyclic vector w gives the twisted
pairing <lambda, mu>_alpha on L.  Construction of the distinguished
representative, recovery of alpha, the kernel test, and orbit comparison
all live here.
"""

from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .arith import is_rational_square, rng_for, squarefree_part
from .errors import (DimensionMismatch, IsotropicSearchFailed, NoCyclicVector,
                     NonSeparable, NonUnit, NormNotSquare, NotMonic,
                     NotOddPolynomial, NotSplit, NotTauFixed, RingMismatch,
                     WrongDegree, WrongDimension, ZeroDiscriminant)
from .etale import (EtaleAlgebra, EtaleElement, apply_tau, is_square,
                    is_tau_fixed, skew_data, solve_tau_norm)
from .matrix import Mat, solve
from .poly import Poly, is_separable
from .quadform import (QuadSpace, find_isotropic_vector,
                       hyperbolic_completion, is_split_odd, standard_gram)

STANDARD = "standard"
ADJOINT = "adjoint"
SYM2 = "sym2"

_ALL_REPS = (STANDARD, ADJOINT, SYM2)

ZERO_LABEL = "zero"
NULL_LABEL = "null-nonzero"


def _check_rep(rep):
    if rep not in _ALL_REPS:
        raise ValueError("unknown representation tag %r" % (rep,))


def _check_tensor_rep(rep):
    _check_rep(rep)
    if rep == STANDARD:
        raise ValueError("operation applies to the adjoint and symmetric-square"
                         " representations only")


class StandardSpace:
    """The split orthogonal space of dimension 2n+1 with anti-diagonal Gram.

    Basis order e_1..e_n, u, f_n..f_1, so the Gram matrix is the
    anti-diagonal matrix of ones and det = (-1)^n.
    """

    __slots__ = ("n", "quad")

    def __init__(self, n):
        if n < 1:
            raise WrongDimension("need n >= 1, got %s" % (n,))
        self.n = n
        self.quad = QuadSpace(standard_gram(n))

    @property
    def dim(self):
        return 2 * self.n + 1

    @property
    def gram(self):
        return self.quad.gram

    def bilinear(self, v, w):
        return self.quad.bilinear(v, w)

    def __eq__(self, other):
        if not isinstance(other, StandardSpace):
            return NotImplemented
        return self.n == other.n

    def __hash__(self):
        return hash(("StandardSpace", self.n))

    def __repr__(self):
        return "StandardSpace(n=%d)" % self.n


def standard_space(n):
    return StandardSpace(n)


def adjoint_op(t, space):
    """The adjoint T* with <Tv, w> = <v, T*w>.

    Equals gram^-1 T^t gram; for the anti-diagonal Gram of ones this is
    reflection of the matrix around the anti-diagonal.
    """
    d = space.dim
    if not t.is_square or t.nrows != d:
        raise DimensionMismatch("operator must be %d x %d" % (d, d))
    g = space.gram
    return g.inv() * t.transpose() * g


def _validate_charpoly(f, rep):
    if f.degree < 3 or f.degree % 2 == 0:
        raise WrongDegree("need odd degree >= 3, got %s" % f.degree)
    if not f.is_monic():
        raise NotMonic("characteristic polynomial must be monic")
    if not is_separable(f):
        raise NonSeparable("polynomial %s has a repeated root" % f.pretty())
    if rep == ADJOINT:
        if any(f[k] != 0 for k in range(0, f.degree + 1, 2)):
            raise NotOddPolynomial(
                "skew operators need f(-x) = -f(x); got %s" % f.pretty())


def _pairing_gram(alg, alpha, rep):
    """Gram of <lambda, mu>_alpha on the power basis 1, beta, ..., beta^2n.

    Sym2 entry (i,j) is the top coefficient of alpha*beta^(i+j); the skew
    pairing multiplies by (-1)^n (-1)^j since tau(beta^j) = (-beta)^j.
    """
    d = alg.deg
    n = (d - 1) // 2
    beta = alg.beta()
    tops = []
    cur = alpha
    for _ in range(2 * d - 1):
        tops.append(cur.top_coeff())
        cur = cur * beta
    sign_n = -1 if n % 2 else 1
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            v = tops[i + j]
            if rep == ADJOINT:
                v = v * sign_n * (-1 if j % 2 else 1)
            row.append(v)
        rows.append(row)
    return Mat(rows)


class OrbitRepresentative:
    """An operator on the standard space, self- or skew-adjoint per rep.

    Checks on construction that the operator has the claimed adjointness
    and that its characteristic polynomial is exactly f.
    """

    __slots__ = ("space", "rep", "op", "f")

    def __init__(self, space, rep, op, f):
        _check_tensor_rep(rep)
        d = space.dim
        if not op.is_square or op.nrows != d:
            raise DimensionMismatch("operator must be %d x %d" % (d, d))
        if f.degree != d or not f.is_monic():
            raise WrongDegree("charpoly must be monic of degree %d" % d)
        star = adjoint_op(op, space)
        if rep == SYM2 and star != op:
            raise ValueError("operator is not self-adjoint")
        if rep == ADJOINT and star != -op:
            raise ValueError("operator is not skew-adjoint")
        if op.charpoly() != f:
            raise ValueError("operator does not have charpoly %s" % f.pretty())
        self.space = space
        self.rep = rep
        self.op = op
        self.f = f

    @property
    def n(self):
        return self.space.n

    def conjugate(self, g):
        """g T g^-1 for g in the orthogonal group of the space."""
        return OrbitRepresentative(self.space, self.rep,
                                   g * self.op * g.inv(), self.f)

    def __repr__(self):
        return "OrbitRepresentative(%s, f=%s)" % (self.rep, self.f.pretty())


def construct_representative(f, rep):
    """The distinguished orbit representative with charpoly f.

    Realizes multiplication by beta on L = Q[x]/(f): the pairing Gram on
    the power basis has the isotropic subspace span{1, ..., beta^(n-1)},
    which a hyperbolic completion turns into an isometry with the
    standard space; the companion matrix conjugates along it.
    """
    _check_tensor_rep(rep)
    _validate_charpoly(f, rep)
    d = f.degree
    n = (d - 1) // 2
    alg = EtaleAlgebra(f)
    base = QuadSpace(_pairing_gram(alg, alg.one(), rep))
    m_cols = []
    for i in range(n):
        col = [Fraction(0)] * d
        col[i] = Fraction(1)
        m_cols.append(tuple(col))
    u = hyperbolic_completion(base, m_cols)
    comp = Mat.companion(f)
    op = u.inv() * comp * u
    return OrbitRepresentative(standard_space(n), rep, op, f)


def _coerce_alpha(alg, alpha):
    if isinstance(alpha, EtaleElement):
        if alpha.alg != alg:
            raise RingMismatch("alpha lives in %r, expected %r"
                               % (alpha.alg, alg))
        return alpha
    return alg.const(Fraction(alpha))


def gram_alpha(f, alpha, rep):
    """The twisted quadratic space (L, <lambda,mu>_alpha) over Q.

    Sym2 wants N(alpha) a rational square; the skew case wants alpha
    tau-fixed with square norm.  Both keep det class (-1)^n.
    """
    _check_tensor_rep(rep)
    _validate_charpoly(f, rep)
    alg = EtaleAlgebra(f)
    alpha = _coerce_alpha(alg, alpha)
    if not alpha.is_unit():
        raise NonUnit("alpha must be a unit of L")
    if rep == ADJOINT and not is_tau_fixed(alpha):
        raise NotTauFixed("alpha must satisfy tau(alpha) = alpha")
    if not is_rational_square(alpha.norm()):
        raise NormNotSquare("N(alpha) = %s is not a rational square"
                            % alpha.norm())
    return QuadSpace(_pairing_gram(alg, alpha, rep))


def in_kernel_gamma(f, alpha, rep):
    """Whether the class of alpha gives a rational orbit with charpoly f.

    The twisted space splits exactly when the class dies in the
    cohomology of the full orthogonal group, so this is a split test.
    """
    return is_split_odd(gram_alpha(f, alpha, rep))


def _cyclic_candidates(d, tag):
    for i in range(d):
        col = [Fraction(0)] * d
        col[i] = Fraction(1)
        yield tuple(col)
    yield tuple(Fraction(1) for _ in range(d))
    rng = rng_for(tag)
    for _ in range(120):
        yield tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))


def _alpha_from_vector(orep, alg, base_gram, w):
    """alpha with top(alpha nu) matching <nu(T)w, w>, or None if w is not cyclic.

    Returns the pulled-back Gram too so the caller can cross-check it
    against the twisted pairing.
    """
    d = orep.space.dim
    op = orep.op
    pows = [w]
    for _ in range(d - 1):
        pows.append(op.apply(pows[-1]))
    kr = Mat.from_cols(pows)
    if kr.det() == 0:
        return None
    quad = orep.space.quad
    b = [quad.bilinear(pows[j], w) for j in range(d)]
    if orep.rep == ADJOINT and orep.n % 2:
        b = [-v for v in b]
    coeffs = solve(base_gram, b)
    alpha = alg.element(coeffs)
    pulled = Mat([[quad.bilinear(pows[i], pows[j]) for j in range(d)]
                  for i in range(d)])
    return alpha, pulled


def recover_alpha(orep):
    """The unit of L = Q[x]/(f) carried by the operator.

    Searches for a cyclic vector w, reads off b_j = <T^j w, w>, and
    solves the base pairing for alpha; the pulled-back Gram is checked
    against gram_alpha exactly.  Well-defined up to c*tau(c) (skew) or
    squares (symmetric); among cyclic vectors we prefer one whose alpha
    is not provably a non-square, so the distinguished construction
    round-trips to a trivial class.
    """
    f = orep.f
    if not is_separable(f):
        raise NonSeparable("charpoly %s is not separable" % f.pretty())
    alg = EtaleAlgebra(f)
    base_gram = _pairing_gram(alg, alg.one(), SYM2)
    first = None
    tested = 0
    for w in _cyclic_candidates(orep.space.dim, "cyclic:%s" % (f.c,)):
        got = _alpha_from_vector(orep, alg, base_gram, w)
        if got is None:
            continue
        alpha, pulled = got
        if not alpha.is_unit():
            raise NoCyclicVector("pulled-back pairing degenerate at a cyclic"
                                 " vector; charpoly %s" % f.pretty())
        twisted = _pairing_gram(alg, alpha, orep.rep)
        assert pulled == twisted, "pulled-back form disagrees with pairing"
        if orep.rep == ADJOINT and not is_tau_fixed(alpha):
            raise NotTauFixed("recovered alpha fails tau-symmetry")
        if first is None:
            first = alpha
        if tested < 8:
            tested += 1
            if is_square(alpha).is_false():
                continue
        return alpha
    if first is not None:
        return first
    raise NoCyclicVector("no cyclic vector found for %s" % f.pretty())


class OrbitComparison:
    """Outcome of an orbit-equality test.

    status 'equal' (with a witness element when available), 'distinct'
    (with the reason: differing charpoly or a local/real certificate),
    or 'unknown' when the bounded search was exhausted.
    """

    __slots__ = ("status", "witness", "reason")

    def __init__(self, status, witness=None, reason=None):
        self.status = status
        self.witness = witness
        self.reason = reason

    @property
    def is_equal(self):
        return self.status == "equal"

    @property
    def is_distinct(self):
        return self.status == "distinct"

    def __repr__(self):
        if self.reason:
            return "OrbitComparison(%s: %s)" % (self.status, self.reason)
        return "OrbitComparison(%s)" % self.status


def same_orbit(o1, o2, precision=40):
    """Decide whether two operators lie in one rational orbit.

    Differing characteristic polynomials settle it at once.  Otherwise
    the recovered units multiply to a class that must be trivial: a
    square for the symmetric pairing, a twisted norm c*tau(c) for the
    skew one.  Certificates from the square / norm-equation tests are
    passed through; Unknown is an honest answer, never a guess.
    """
    if o1.rep != o2.rep:
        raise RingMismatch("cannot compare %s against %s" % (o1.rep, o2.rep))
    if o1.space.dim != o2.space.dim:
        raise DimensionMismatch("operators act on different spaces")
    if o1.f != o2.f:
        return OrbitComparison(
            "distinct",
            reason="charpoly %s != %s" % (o1.f.pretty(), o2.f.pretty()))
    a1 = recover_alpha(o1)
    a2 = recover_alpha(o2)
    prod = a1 * a2
    if o1.rep == SYM2:
        dec = is_square(prod, precision=precision)
        if dec.is_true():
            return OrbitComparison("equal", witness=dec.witness)
        if dec.is_false():
            return OrbitComparison("distinct", reason=dec.certificate)
        return OrbitComparison("unknown",
                               reason="square test inconclusive")
    sk = skew_data(EtaleAlgebra(o1.f))
    out = solve_tau_norm(sk, prod, precision=precision)
    if out.status == "solved":
        return OrbitComparison("equal", witness=out.witness)
    if out.status == "obstructed":
        return OrbitComparison("distinct", reason=out.certificate)
    return OrbitComparison("unknown", reason="norm equation search exhausted")


def classify_vector(w, space):
    """Orbit label of a vector of the standard space.

    Nonzero vectors are equivalent exactly when their labels agree: the
    zero vector, the null cone minus the origin, and one orbit per
    nonzero value.  The value is normalized so a hyperbolic combination
    e_1 + d f_1 gets label d.
    """
    if len(w) != space.dim:
        raise DimensionMismatch("vector length %d, space dimension %d"
                                % (len(w), space.dim))
    w = tuple(Fraction(x) for x in w)
    if all(x == 0 for x in w):
        return ZERO_LABEL
    val = space.quad.q(w) / 2
    if val == 0:
        return NULL_LABEL
    return val


class StabilizerInfo:
    """Structural description of a point stabilizer.

    kind 'orthogonal' (vector with nonzero label: SO of the even-dim
    complement), 'torus' (skew operator: norm-one units of E over K,
    dimension n), or 'two-torsion' (self-adjoint operator: the norm-one
    2-torsion of L*, order 2^2n).
    """

    __slots__ = ("rep", "kind", "order", "dimension", "detail")

    def __init__(self, rep, kind, order=None, dimension=None, detail=None):
        self.rep = rep
        self.kind = kind
        self.order = order
        self.dimension = dimension
        self.detail = dict(detail or {})

    def __repr__(self):
        bits = ["%s" % self.kind]
        if self.order is not None:
            bits.append("order %s" % self.order)
        if self.dimension is not None:
            bits.append("dim %s" % self.dimension)
        return "StabilizerInfo(%s)" % ", ".join(bits)


def stabilizer_info(arg, rep, n=None):
    """Describe the stabilizer of an orbit representative.

    Standard takes the vector label d (nonzero); the other two take the
    characteristic polynomial.
    """
    _check_rep(rep)
    if rep == STANDARD:
        d = Fraction(arg)
        if d == 0:
            raise ZeroDiscriminant("stabilizer description needs a nonzero"
                                   " vector label")
        detail = {"disc_class": squarefree_part(d)}
        if n is not None:
            detail["space_dim"] = 2 * n
        return StabilizerInfo(rep, "orthogonal", detail=detail)
    f = arg
    _validate_charpoly(f, rep)
    nn = (f.degree - 1) // 2
    if rep == SYM2:
        return StabilizerInfo(rep, "two-torsion", order=2 ** (2 * nn),
                              dimension=0, detail={"algebra": f})
    sk = skew_data(EtaleAlgebra(f))
    return StabilizerInfo(rep, "torus", dimension=nn,
                          detail={"K": sk.g, "E": sk.E.f})


def _primitive_int(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        return None
    v = tuple(x // g for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return None


def _isotropic_plane(space, tag):
    """Two independent isotropic vectors pairing to zero, by integer search.

    Primitively normalized vectors are equal exactly when proportional,
    so any two distinct hits that are orthogonal span a totally isotropic
    plane.  The Gram is cleared to integers so the scan stays cheap.
    """
    d = space.dim
    den = 1
    for i in range(d):
        for j in range(d):
            den = lcm(den, space.gram[i, j].denominator)
    g_int = [[int(space.gram[i, j] * den) for j in range(d)]
             for i in range(d)]

    def qint(v):
        tot = 0
        for i in range(d):
            if v[i]:
                row = g_int[i]
                tot += v[i] * sum(row[j] * v[j] for j in range(d))
        return tot

    def bint(v, w):
        tot = 0
        for i in range(d):
            if v[i]:
                row = g_int[i]
                tot += v[i] * sum(row[j] * w[j] for j in range(d))
        return tot

    found = []
    seen = set()

    def consider(v):
        v = _primitive_int(v)
        if v is None or v in seen:
            return None
        seen.add(v)
        if qint(v) != 0:
            return None
        for u in found:
            if bint(u, v) == 0:
                return u, v
        found.append(v)
        return None

    for v in product(range(-3, 4), repeat=d):
        got = consider(v)
        if got:
            return got
    rng = rng_for(tag)
    for height in (6, 12, 25):
        for _ in range(30000):
            v = tuple(rng.randint(-height, height) for _ in range(d))
            got = consider(v)
            if got:
                return got
    raise IsotropicSearchFailed("no totally isotropic plane found within the"
                                " search budget")


def representative_from_alpha(f, alpha, rep):
    """An operator realizing the orbit of a kernel class alpha.

    Needs the twisted space to be split; the maximal isotropic subspace
    is found by search, implemented for dimensions 3 and 5.
    Multiplication by beta is (skew-)self-adjoint for the twisted
    pairing as well, so the hyperbolic change of basis transports it to
    the standard space.
    """
    tw = gram_alpha(f, alpha, rep)
    if not is_split_odd(tw):
        raise NotSplit("the twisted space of alpha is not split; the class"
                       " is not in the kernel")
    if tw.dim == 3:
        m_cols = [find_isotropic_vector(tw)]
    elif tw.dim == 5:
        u1, u2 = _isotropic_plane(tw, "isoplane:%s" % (f.c,))
        m_cols = [tuple(Fraction(x) for x in u1),
                  tuple(Fraction(x) for x in u2)]
    else:
        raise IsotropicSearchFailed("isotropic subspace search implemented"
                                    " for dimensions 3 and 5 only")
    u = hyperbolic_completion(tw, m_cols)
    comp = Mat.companion(f)
    op = u.inv() * comp * u
    return OrbitRepresentative(standard_space((tw.dim - 1) // 2), rep, op, f)
