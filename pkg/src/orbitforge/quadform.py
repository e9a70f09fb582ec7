"""Quadratic spaces over Q: diagonalization, local invariants, isometry.

Classification uses the complete invariant set over Q: dimension,
signature, discriminant square class, and the Hasse symbol at every
place (finite support). The split test for odd dimension and the
constructive hyperbolic completion feed the orbit machinery.
"""

import math
from fractions import Fraction

from .arith import factorize, is_rational_square, legendre, squarefree_part, valuation
from .errors import (
    Degenerate,
    IsotropicSearchFailed,
    NonSquareComplement,
    NotIsotropic,
    WrongDimension,
    ZeroArgument,
)
from .matrix import Mat, kernel, solve

INF = "inf"


class QuadSpace:
    """A nondegenerate symmetric bilinear form on Q^dim."""

    __slots__ = ("gram",)

    def __init__(self, gram):
        if not isinstance(gram, Mat):
            gram = Mat(gram)
        if not gram.is_square():
            raise Degenerate("Gram matrix must be square")
        if gram.transpose() != gram:
            raise Degenerate("Gram matrix must be symmetric")
        if gram.det() == 0:
            raise Degenerate("Gram matrix is singular")
        self.gram = gram

    @property
    def dim(self):
        return self.gram.nrows

    def bilinear(self, v, w):
        return sum(x * y for x, y in zip(self.gram.apply(w), v))

    def q(self, v):
        """The quadratic value <v, v>."""
        return self.bilinear(v, v)

    def __eq__(self, other):
        if isinstance(other, QuadSpace):
            return self.gram == other.gram
        return NotImplemented

    def __repr__(self):
        return "QuadSpace(%r)" % (self.gram,)


def standard_gram(n):
    """Anti-diagonal ones in dimension 2n+1 (the split space)."""
    if n < 1:
        raise WrongDimension("need n >= 1")
    d = 2 * n + 1
    return Mat([[1 if i + j == d - 1 else 0 for j in range(d)] for i in range(d)])


def diagonalize(space):
    """(D, U) with U^T * gram * U = diag(D), all D entries nonzero."""
    g = [list(r) for r in space.gram.rows]
    n = len(g)
    u = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(dst, src, t):
        # column_dst += t * column_src, mirrored on rows, tracked in u
        for i in range(n):
            g[i][dst] += t * g[i][src]
        for j in range(n):
            g[dst][j] += t * g[src][j]
        for i in range(n):
            u[i][dst] += t * u[i][src]

    def col_swap(a, b):
        for i in range(n):
            g[i][a], g[i][b] = g[i][b], g[i][a]
        g[a], g[b] = g[b], g[a]
        for i in range(n):
            u[i][a], u[i][b] = u[i][b], u[i][a]

    for k in range(n):
        if g[k][k] == 0:
            piv = next((j for j in range(k + 1, n) if g[j][j] != 0), None)
            if piv is not None:
                col_swap(k, piv)
            else:
                # all remaining diagonal entries vanish; use an off-diagonal
                pair = next(
                    (
                        (i, j)
                        for i in range(k, n)
                        for j in range(i + 1, n)
                        if g[i][j] != 0
                    ),
                    None,
                )
                if pair is None:
                    raise Degenerate("form is degenerate")
                i, j = pair
                col_op(i, j, 1)  # now g[i][i] = 2*g[i][j] != 0
                if i != k:
                    col_swap(k, i)
        d = g[k][k]
        for j in range(k + 1, n):
            if g[k][j] != 0:
                col_op(j, k, -g[k][j] / d)
    dvals = [g[i][i] for i in range(n)]
    return dvals, Mat(u)


def hilbert_symbol(a, b, place):
    """The Hilbert symbol (a, b) at 'inf' or at a prime p."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ZeroArgument("Hilbert symbol needs nonzero arguments")
    if place == INF or place == math.inf:
        return -1 if a < 0 and b < 0 else 1
    p = place
    alpha, beta = valuation(a, p) % 2, valuation(b, p) % 2
    u = a / Fraction(p) ** valuation(a, p)
    v = b / Fraction(p) ** valuation(b, p)
    if p == 2:
        un = u.numerator * u.denominator % 8
        vn = v.numerator * v.denominator % 8
        eps_u, eps_v = (un - 1) // 2 % 2, (vn - 1) // 2 % 2
        om_u, om_v = (un * un - 1) // 8 % 2, (vn * vn - 1) // 8 % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    un = u.numerator * pow(u.denominator, -1, p) % p
    vn = v.numerator * pow(v.denominator, -1, p) % p
    out = 1
    if alpha and beta and (p - 1) // 2 % 2:
        out = -out
    if beta:
        out *= legendre(un, p)
    if alpha:
        out *= legendre(vn, p)
    return out


class FormInvariants:
    """Complete isometry invariants of a rational quadratic space.

    hasse support is stored as the set of places where the symbol is -1;
    everywhere else it is +1.
    """

    __slots__ = ("dim", "disc_class", "signature", "hasse_minus")

    def __init__(self, dim, disc_class, signature, hasse_minus):
        self.dim = dim
        self.disc_class = disc_class
        self.signature = signature
        self.hasse_minus = frozenset(hasse_minus)

    def hasse_at(self, place):
        return -1 if place in self.hasse_minus else 1

    def __eq__(self, other):
        if isinstance(other, FormInvariants):
            return (
                self.dim == other.dim
                and self.disc_class == other.disc_class
                and self.signature == other.signature
                and self.hasse_minus == other.hasse_minus
            )
        return NotImplemented

    def __repr__(self):
        return "FormInvariants(dim=%d, disc=%d, signature=%r, hasse_minus=%r)" % (
            self.dim,
            self.disc_class,
            self.signature,
            sorted(self.hasse_minus, key=str),
        )


def invariants(space):
    """Signature, discriminant class, and Hasse symbols of the space."""
    dvals, _ = diagonalize(space)
    pos = sum(1 for d in dvals if d > 0)
    sig = (pos, len(dvals) - pos)
    disc = squarefree_part(space.gram.det())
    relevant = {2}
    for d in dvals:
        s = squarefree_part(d)
        for q in factorize(abs(s)):
            relevant.add(q)
    places = [INF] + sorted(relevant)
    minus = set()
    prod = 1
    for v in places:
        h = 1
        for i in range(len(dvals)):
            for j in range(i + 1, len(dvals)):
                h *= hilbert_symbol(dvals[i], dvals[j], v)
        if h == -1:
            minus.add(v)
            prod = -prod
    assert prod == 1, "Hilbert product formula violated (internal bug)"
    return FormInvariants(space.dim, disc, sig, minus)


def is_isometric(s1, s2):
    """Complete over Q: equal dim, signature, disc class, Hasse symbols."""
    return invariants(s1) == invariants(s2)


def is_split_odd(space):
    """Whether an odd-dim space is isometric to the standard split one."""
    if space.dim % 2 == 0 or space.dim < 3:
        raise WrongDimension("split test needs odd dimension >= 3")
    n = (space.dim - 1) // 2
    return invariants(space) == invariants(QuadSpace(standard_gram(n)))


def hyperbolic_completion(space, m_cols):
    """Isometry U (columns) with U^T * gram * U = standard_gram(n).

    m_cols: basis of an n-dimensional totally isotropic subspace of the
    (2n+1)-dim space; the m_i become the first n basis vectors. Raises
    NotIsotropic / WrongDimension on bad input, NonSquareComplement when
    the 1-dim complement scalar is not a rational square (i.e. the space
    is not split with the standard determinant class).
    """
    d = space.dim
    if d % 2 == 0 or d < 3:
        raise WrongDimension("need odd dimension >= 3")
    n = (d - 1) // 2
    if len(m_cols) != n:
        raise WrongDimension("need exactly n isotropic basis vectors")
    ms = [tuple(Fraction(x) for x in v) for v in m_cols]
    for i in range(n):
        for j in range(i, n):
            if space.bilinear(ms[i], ms[j]) != 0:
                raise NotIsotropic("<m_%d, m_%d> != 0" % (i, j))
    if len(kernel(Mat.from_cols(ms).transpose() * space.gram)) != d - n:
        raise WrongDimension("isotropic vectors are not independent")
    ys = []
    for i in range(n):
        rows = [space.gram.apply(m) for m in ms]
        rhs = [Fraction(int(j == i)) for j in range(n)]
        for y in ys:
            rows.append(space.gram.apply(y))
            rhs.append(Fraction(0))
        yi = solve(Mat(rows), rhs)
        # isotropize: subtract (q(y)/2) m_i, which keeps all pairings
        c = space.q(yi) / 2
        yi = tuple(a - c * b for a, b in zip(yi, ms[i]))
        ys.append(yi)
    pair_rows = [space.gram.apply(v) for v in ms + ys]
    zs = kernel(Mat(pair_rows))
    assert len(zs) == 1
    z = zs[0]
    c = space.q(z)
    if not is_rational_square(c):
        raise NonSquareComplement(
            "complement scalar %s is not a rational square" % c
        )
    r = Fraction(math.isqrt(c.numerator), math.isqrt(c.denominator))
    z = tuple(a / r for a in z)
    u = Mat.from_cols(ms + [z] + list(reversed(ys)))
    assert u.transpose() * space.gram * u == standard_gram(n)
    return u


def find_isotropic_vector(space):
    """A nonzero v with q(v) = 0, by bounded search (dim 3 focus).

    Diagonalizes, clears square parts, and scans |x|, |y| up to a bound
    derived from the coefficient product, solving for the last coordinate.
    Raises IsotropicSearchFailed when the budget is exhausted (in
    particular for anisotropic forms).
    """
    dvals, u = diagonalize(space)
    if space.dim != 3:
        # cheap general cases: a pair d_i, d_j with -d_i/d_j square
        for i in range(space.dim):
            for j in range(space.dim):
                if i != j and is_rational_square(-dvals[i] / dvals[j]):
                    t = -dvals[i] / dvals[j]
                    r = Fraction(math.isqrt(t.numerator), math.isqrt(t.denominator))
                    v = [Fraction(0)] * space.dim
                    v[i], v[j] = Fraction(1), r
                    return u.apply(tuple(v))
        raise IsotropicSearchFailed("bounded isotropic search is dim-3 only")
    s = [squarefree_part(d) for d in dvals]
    scale = [
        Fraction(
            math.isqrt((dvals[i] / s[i]).numerator),
            math.isqrt((dvals[i] / s[i]).denominator),
        )
        for i in range(3)
    ]
    if s[0] > 0 and s[1] > 0 and s[2] > 0 or s[0] < 0 and s[1] < 0 and s[2] < 0:
        raise IsotropicSearchFailed("definite form has no isotropic vector")
    # signs of the coordinates are irrelevant for a diagonal form, so a
    # nonnegative scan suffices; the bound is double the Cassels-style
    # sqrt(|s0 s1 s2|) estimate for the least solution of a split conic
    bound = 2 * math.isqrt(abs(s[0] * s[1] * s[2])) + 2
    for x in range(bound + 1):
        for y in range(bound + 1):
            if x == 0 and y == 0:
                continue
            val = Fraction(-(s[0] * x * x + s[1] * y * y), s[2])
            if val < 0:
                continue
            if is_rational_square(val):
                zc = Fraction(math.isqrt(val.numerator), math.isqrt(val.denominator))
                v = (Fraction(x) / scale[0], Fraction(y) / scale[1], zc / scale[2])
                return u.apply(v)
    raise IsotropicSearchFailed("no isotropic vector of height <= %d found" % bound)
