"""Dense univariate polynomials, exact over Q plus mod-p utilities.

Poly holds an ascending tuple of Fractions. Resultants run fraction-free
on integer-cleared inputs (subresultant pseudo-remainder sequence) so the
intermediate coefficients stay integral. Real-root work is Sturm-based and
fully exact: isolating intervals have rational endpoints and signs of one
polynomial at a root of another are decided by interval refinement, never
by floating point.
"""

import math
from fractions import Fraction

from .errors import NonSeparableModP, NotMonic, ZeroInput
from .arith import rng_for


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, a):
        return cls([a])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def monomial(cls, k, a=1):
        return cls([0] * k + [a])

    @classmethod
    def from_roots(cls, roots):
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lc(self):
        if not self.c:
            return Fraction(0)
        return self.c[-1]

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def __getitem__(self, k):
        if 0 <= k < len(self.c):
            return self.c[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        n = max(len(self.c), len(other.c))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([a * Fraction(other) for a in self.c])
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.c) - len(other.c) + 1, 0)
        r = list(self.c)
        d, lb = other.degree, other.lc()
        while len(r) - 1 >= d and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            t = r[-1] / lb
            q[k] = t
            for i, b in enumerate(other.c):
                r[i + k] -= t * b
            r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        out = Fraction(0) if not isinstance(x, Poly) else Poly()
        for a in reversed(self.c):
            out = out * x + a
        return out

    def compose(self, other):
        out = Poly()
        for a in reversed(self.c):
            out = out * other + Poly.const(a)
        return out

    def derivative(self):
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def monic(self):
        if self.is_zero():
            raise ZeroInput("zero polynomial has no monic normalization")
        lb = self.lc()
        return Poly([a / lb for a in self.c])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def integer_cleared(self):
        """(F, c) with F integer-coefficient and F = c * self, c > 0."""
        c = 1
        for a in self.c:
            c = c * a.denominator // math.gcd(c, a.denominator)
        return Poly([a * c for a in self.c]), c

    def pretty(self, var="x"):
        if not self.c:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self[k]
            if a == 0:
                continue
            if k == 0:
                term = str(a)
            else:
                xa = var if k == 1 else "%s^%d" % (var, k)
                if a == 1:
                    term = xa
                elif a == -1:
                    term = "-" + xa
                else:
                    term = "%s*%s" % (a, xa)
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return "Poly(%s)" % (self.pretty(),)


# ---------------------------------------------------------------------------
# resultant / discriminant (fraction-free subresultant PRS)


def _int_coeffs(f):
    return [a.numerator for a in f.c]


def _content(c):
    g = 0
    for a in c:
        g = math.gcd(g, abs(a))
    return g or 1


def _deg(c):
    return len(c) - 1


def _prem(A, B):
    """Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B, integer lists."""
    dB, lb = _deg(B), B[-1]
    R = A[:]
    e = _deg(A) - dB + 1
    while R and _deg(R) >= dB:
        lr = R[-1]
        R = [lb * x for x in R]
        k = _deg(R) - dB
        for i, b in enumerate(B):
            R[i + k] -= lr * b
        while R and R[-1] == 0:
            R.pop()
        e -= 1
    if e > 0:
        m = lb**e
        R = [m * x for x in R]
    return R


def _int_resultant(A, B):
    """Resultant of two nonzero integer-coefficient lists."""
    if _deg(A) == 0:
        return A[0] ** _deg(B)
    if _deg(B) == 0:
        return B[0] ** _deg(A)
    s = 1
    if _deg(A) < _deg(B):
        if _deg(A) % 2 == 1 and _deg(B) % 2 == 1:
            s = -s
        A, B = B, A
    ca, cb = _content(A), _content(B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    t = ca ** _deg(B) * cb ** _deg(A)
    g = h = 1
    while _deg(B) > 0:
        dA, dB = _deg(A), _deg(B)
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        div = g * h**delta
        A = B
        B = [x // div for x in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)
    q = _deg(A)
    h = B[0] ** q // h ** (q - 1) if q > 1 else B[0]
    return s * t * h


def resultant(f, g):
    """Res(f, g) over Q; 0 when either argument is 0 or they share a root."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    F, cf = f.integer_cleared()
    G, cg = g.integer_cleared()
    r = _int_resultant(_int_coeffs(F), _int_coeffs(G))
    return Fraction(r) / (Fraction(cf) ** g.degree * Fraction(cg) ** f.degree)


def discriminant(f):
    """disc(f) for monic f of degree >= 1."""
    if not f.is_monic():
        raise NotMonic("discriminant requires a monic polynomial")
    d = f.degree
    if d == 1:
        return Fraction(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


def is_separable(f):
    return f.degree >= 1 and f.gcd(f.derivative()).degree == 0


# ---------------------------------------------------------------------------
# Sturm chains and exact real-root isolation


def sturm_chain(f):
    """Sturm sequence of the squarefree part of f."""
    fs = f if is_separable(f) else f // f.gcd(f.derivative())
    chain = [fs, fs.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _sign_at(p, x):
    """Sign of p at x, where x is a Fraction or +-math.inf."""
    if p.is_zero():
        return 0
    if x == math.inf:
        return 1 if p.lc() > 0 else -1
    if x == -math.inf:
        s = 1 if p.lc() > 0 else -1
        return s if p.degree % 2 == 0 else -s
    v = p(x)
    return (v > 0) - (v < 0)


def _variations(chain, x):
    signs = [s for s in (_sign_at(p, x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f, lo=None, hi=None, chain=None):
    """Distinct real roots of f in the half-open interval (lo, hi].

    None endpoints mean -infinity / +infinity.
    """
    if f.degree <= 0:
        return 0
    if chain is None:
        chain = sturm_chain(f)
    a = -math.inf if lo is None else Fraction(lo)
    b = math.inf if hi is None else Fraction(hi)
    return _variations(chain, a) - _variations(chain, b)


def root_bound(f):
    """A positive rational B with every real root of f in [-B, B] (Cauchy)."""
    lb = abs(f.lc())
    m = max((abs(a) for a in f.c[:-1]), default=Fraction(0))
    return 1 + m / lb


def isolate_real_roots(f):
    """Disjoint rational intervals (lo, hi], one distinct real root each."""
    if f.degree <= 0:
        return []
    chain = sturm_chain(f)
    B = root_bound(f)
    total = count_real_roots(f, -B, B, chain)
    out = []
    stack = [(-B, B, total)]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        kl = count_real_roots(f, lo, mid, chain)
        stack.append((lo, mid, kl))
        stack.append((mid, hi, k - kl))
    out.sort()
    return out


def refine_interval(f, interval, times=1):
    """Halve an isolating interval of f, keeping the root inside."""
    lo, hi = interval
    chain = sturm_chain(f)
    for _ in range(times):
        mid = (lo + hi) / 2
        if count_real_roots(f, lo, mid, chain) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def sign_at_root(g, f, interval):
    """Exact sign of g at the unique root of f inside (lo, hi].

    Returns -1, 0, or 1. Decided by shrinking the interval until g has
    no root inside it, unless g shares the root with f (gcd check).
    """
    lo, hi = interval
    h = f.gcd(g)
    if h.degree >= 1 and count_real_roots(h, lo, hi) > 0:
        return 0
    gchain = sturm_chain(g)
    fchain = sturm_chain(f)
    while count_real_roots(g, lo, hi, gchain) > 0:
        mid = (lo + hi) / 2
        if count_real_roots(f, lo, mid, fchain) == 1:
            lo, hi = lo, mid
        else:
            lo, hi = mid, hi
    v = g(hi)
    return (v > 0) - (v < 0)


# ---------------------------------------------------------------------------
# polynomials over F_p (ascending int lists, p an odd prime)


def fp_normalize(c, p):
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def fp_from_poly(f, p):
    """Reduce a rational Poly mod p; denominators must be prime to p."""
    out = []
    for a in f.c:
        if a.denominator % p == 0:
            raise ZeroDivisionError("denominator divisible by %d" % p)
        out.append(a.numerator * pow(a.denominator, -1, p) % p)
    return fp_normalize(out, p)


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return fp_normalize(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p
    )


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return fp_normalize(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p
    )


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_normalize(out, p)


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("mod-p division by zero polynomial")
    a = a[:]
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        t = a[-1] * inv % p
        k = len(a) - len(b)
        if t:
            q[k] = t
            for i, y in enumerate(b):
                a[i + k] = (a[i + k] - t * y) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_gcd(a, b, p):
    a, b = fp_normalize(a, p), fp_normalize(b, p)
    while b:
        a, b = b, fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def fp_powmod(base, e, f, p):
    out, b = [1], fp_mod(base, f, p)
    while e:
        if e & 1:
            out = fp_mod(fp_mul(out, b, p), f, p)
        b = fp_mod(fp_mul(b, b, p), f, p)
        e >>= 1
    return out


def fp_derivative(a, p):
    return fp_normalize([i * x for i, x in enumerate(a)][1:], p)


def fp_is_separable(f, p):
    f = fp_normalize(f, p)
    return len(f) >= 2 and len(fp_gcd(f, fp_derivative(f, p), p)) == 1


def fp_eval(a, x, p):
    out = 0
    for c in reversed(a):
        out = (out * x + c) % p
    return out


def fp_factor_degrees(f, p):
    """Multiset of degrees of the irreducible factors of squarefree f mod p.

    Distinct-degree splitting only; no equal-degree factorization.
    Raises NonSeparableModP when f is not separable mod p.
    """
    f = fp_normalize(f, p)
    if not fp_is_separable(f, p):
        raise NonSeparableModP("polynomial not separable mod %d" % p)
    inv = pow(f[-1], -1, p)
    f = [x * inv % p for x in f]
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 > 0:
        d += 1
        if 2 * d > len(f) - 1:
            out.append(len(f) - 1)
            break
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(fp_sub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.extend([d] * ((len(g) - 1) // d))
            f, r = fp_divmod(f, g, p)
            assert not r
            h = fp_mod(h, f, p)
    return sorted(out)


def fp_count_factors(f, p):
    """Number of irreducible factors of squarefree f mod p."""
    return len(fp_factor_degrees(f, p))


def fp_is_irreducible(f, p):
    f = fp_normalize(f, p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if not fp_is_separable(f, p):
        return False
    return fp_factor_degrees(f, p) == [n]


def fp_invmod(a, f, p):
    """Inverse of a modulo (f, p) by extended Euclid; None if not a unit."""
    r0, r1 = fp_normalize(f, p), fp_mod(a, f, p)
    s0, s1 = [], [1]
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
    if len(r0) != 1:
        return None
    inv = pow(r0[0], -1, p)
    return fp_normalize([x * inv for x in s0], p)


def fpx_sqrt(a, h, p, rng):
    """Square root of a in the field F_p[x]/(h), h irreducible; None if
    a is a non-residue. Tonelli-Shanks with field arithmetic."""
    a = fp_mod(a, h, p)
    if not a:
        return []
    d = len(h) - 1
    q = p**d
    e = fp_powmod(a, (q - 1) // 2, h, p)
    if e != [1]:
        return None
    if q % 4 == 3:
        return fp_powmod(a, (q + 1) // 4, h, p)
    qq, s = q - 1, 0
    while qq % 2 == 0:
        qq //= 2
        s += 1
    while True:
        z = fp_normalize([rng.randrange(p) for _ in range(d)], p)
        if z and fp_powmod(z, (q - 1) // 2, h, p) != [1]:
            break
    m, c = s, fp_powmod(z, qq, h, p)
    t = fp_powmod(a, qq, h, p)
    r = fp_powmod(a, (qq + 1) // 2, h, p)
    while t != [1]:
        t2, i = t, 0
        while t2 != [1]:
            t2 = fp_mod(fp_mul(t2, t2, p), h, p)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = fp_mod(fp_mul(b, b, p), h, p)
        m = i
        c = fp_mod(fp_mul(b, b, p), h, p)
        t = fp_mod(fp_mul(t, c, p), h, p)
        r = fp_mod(fp_mul(r, b, p), h, p)
    return r


def _fp_equal_degree_split(f, d, p, rng):
    """One Cantor-Zassenhaus split of f (product of degree-d irreducibles)."""
    n = len(f) - 1
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = fp_normalize(a, p)
        if len(a) - 1 < 1:
            continue
        g = fp_gcd(a, f, p)
        if len(g) - 1 >= 1:
            return g
        b = fp_powmod(a, (p**d - 1) // 2, f, p)
        g = fp_gcd(fp_sub(b, [1], p), f, p)
        if 1 <= len(g) - 1 < n:
            return g


def fp_factor(f, p, tag="fp_factor"):
    """Full factorization of squarefree f mod p into monic irreducibles.

    Returns a list of coefficient lists, sorted by (degree, coeffs).
    """
    f = fp_normalize(f, p)
    if not fp_is_separable(f, p):
        raise NonSeparableModP("polynomial not separable mod %d" % p)
    inv = pow(f[-1], -1, p)
    f = [x * inv % p for x in f]
    rng = rng_for("%s:%d:%s" % (tag, p, tuple(f)))
    pieces = []
    h = [0, 1]
    d = 0
    work = f
    while len(work) - 1 > 0:
        d += 1
        if 2 * d > len(work) - 1:
            pieces.append((len(work) - 1, work))
            break
        h = fp_powmod(h, p, work, p)
        g = fp_gcd(fp_sub(h, [0, 1], p), work, p)
        if len(g) > 1:
            pieces.append((d, g))
            work, r = fp_divmod(work, g, p)
            assert not r
            h = fp_mod(h, work, p)
    out = []
    for d, piece in pieces:
        stack = [piece]
        while stack:
            q = stack.pop()
            if len(q) - 1 == d:
                out.append(q)
                continue
            g = _fp_equal_degree_split(q, d, p, rng)
            stack.append(g)
            stack.append(fp_divmod(q, g, p)[0])
    return sorted(out, key=lambda q: (len(q), q))
