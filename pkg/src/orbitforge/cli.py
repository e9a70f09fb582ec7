"""Command-line front end.

One subcommand per operation family: construct, classify, kernel,
same-orbit, descend, pencil-check, census, local-count, real-count,
lattice-verify, bqf (reduce | classgroup | census), stab-info.

Exit codes: 0 on success, 1 on a domain failure (bad polynomial, bad
prime, obstructed class, ...), 2 on a usage failure (unparsable input,
unknown flags).  With --json each run prints exactly one object
{"schema": "1", "command": ..., "inputs": ..., "result": ..., "checks":
...} with a fixed key order and rationals rendered as "p/q" strings, so
identical invocations produce identical bytes.  ORBITFORGE_SEED pins
every randomized search.
"""

import argparse
import json
import sys
from fractions import Fraction
from math import gcd

from .bqf import BQForm, bqf_class_group, bqf_orbit_census, bqf_reduce
from .census import (count_factors_fp, finite_census, orbit_count_local,
                     orbit_count_real)
from .descent import (INFINITY, HyperCurve, descent_class, kernel_check,
                      pencil_discriminant_check)
from .errors import DomainError, NotSplit, ParseError, UsageError
from .etale import EtaleAlgebra, EtaleElement
from .lattices import IdealPair, ideal_from_gens, unit_ideal, verify_pair
from .matrix import Mat
from .orbits import (ADJOINT, STANDARD, SYM2, adjoint_op, classify_vector,
                     construct_representative, in_kernel_gamma,
                     representative_from_alpha, same_orbit, standard_space,
                     stabilizer_info)
from .poly import Poly


# ---------------------------------------------------------------------------
# input parsing


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.i = 0

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        return self.text[self.i] if self.i < len(self.text) else ""

    def fail(self, msg):
        raise ParseError("%s at position %d in %r"
                         % (msg, self.i, self.text))

    def take_uint(self):
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if self.i == start:
            self.fail("expected an integer")
        return int(self.text[start:self.i])

    def take_rational(self):
        num = self.take_uint()
        if self.peek() == "/":
            self.i += 1
            den = self.take_uint()
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def take_word(self):
        start = self.i
        while self.peek().isalpha():
            self.i += 1
        return self.text[start:self.i]


def _parse_coeff_list(text):
    sc = _Scanner(text)
    sc.skip_ws()
    if sc.peek() != "[":
        sc.fail("expected '['")
    sc.i += 1
    coeffs = []
    while True:
        sc.skip_ws()
        sign = 1
        if sc.peek() == "-":
            sign = -1
            sc.i += 1
            sc.skip_ws()
        if not sc.peek().isdigit():
            sc.fail("expected a coefficient")
        coeffs.append(sign * sc.take_rational())
        sc.skip_ws()
        if sc.peek() == ",":
            sc.i += 1
            continue
        if sc.peek() == "]":
            sc.i += 1
            break
        sc.fail("expected ',' or ']'")
    sc.skip_ws()
    if sc.peek():
        sc.fail("trailing input")
    return coeffs


def parse_poly(text, var="x"):
    """Polynomial from "c*x^k + ..." terms or an ascending "[c0,c1,...]"
    coefficient list.  Raises ParseError with the offending position."""
    sc = _Scanner(text)
    sc.skip_ws()
    if not sc.peek():
        sc.fail("empty polynomial")
    if sc.peek() == "[":
        return Poly(_parse_coeff_list(text))
    terms = {}
    first = True
    while True:
        sc.skip_ws()
        ch = sc.peek()
        if not ch:
            break
        sign = 1
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            sc.i += 1
            sc.skip_ws()
        elif not first:
            sc.fail("expected '+' or '-'")
        coeff = Fraction(1)
        have_coeff = False
        if sc.peek().isdigit():
            coeff = sc.take_rational()
            have_coeff = True
            sc.skip_ws()
            if sc.peek() == "*":
                sc.i += 1
                sc.skip_ws()
        exp = 0
        if sc.peek().isalpha():
            word = sc.take_word()
            if word != var:
                sc.fail("unknown variable %r" % word)
            exp = 1
            sc.skip_ws()
            if sc.peek() == "^":
                sc.i += 1
                sc.skip_ws()
                if not sc.peek().isdigit():
                    sc.fail("expected an integer exponent")
                exp = sc.take_uint()
        elif not have_coeff:
            sc.fail("expected a term")
        terms[exp] = terms.get(exp, Fraction(0)) + sign * coeff
        first = False
    if not terms:
        sc.fail("empty polynomial")
    top = max(terms)
    return Poly([terms.get(k, Fraction(0)) for k in range(top + 1)])


def parse_fraction(text):
    sc = _Scanner(text)
    sc.skip_ws()
    sign = 1
    if sc.peek() == "-":
        sign = -1
        sc.i += 1
        sc.skip_ws()
    if not sc.peek().isdigit():
        sc.fail("expected a rational number")
    val = sc.take_rational()
    sc.skip_ws()
    if sc.peek():
        sc.fail("trailing input")
    return sign * val


def _rational_roots(f):
    """All rational roots of a monic polynomial with rational coefficients."""
    den = 1
    for a in f.c:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in f.c]
    roots = []
    work = ints
    if work[0] == 0:
        roots.append(Fraction(0))
        k = 1
        while work[k] == 0:
            k += 1
        work = work[k:]
    c0, lead = abs(work[0]), abs(work[-1])
    nums = [d for d in range(1, c0 + 1) if c0 % d == 0]
    dens = [d for d in range(1, lead + 1) if lead % d == 0]
    for p in nums:
        for q in dens:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and f(cand) == 0:
                    roots.append(cand)
    return roots


def parse_alpha(text, alg):
    """An algebra element from a rational, a polynomial in b (or beta), a
    bracketed coordinate list, or "crt:v1,v2,..." listing the value at
    each rational root (the modulus must then split over Q)."""
    s = text.strip()
    if s.startswith("crt:"):
        vals = [parse_fraction(part) for part in s[4:].split(",")]
        roots = _rational_roots(alg.f)
        if len(roots) != alg.deg:
            raise NotSplit("component values need a modulus that splits"
                           " over Q; found %d rational roots of degree %d"
                           % (len(roots), alg.deg))
        if len(vals) != alg.deg:
            raise ParseError("expected %d component values, got %d"
                             % (alg.deg, len(vals)))
        total = alg.zero()
        for val, ri in zip(vals, sorted(roots)):
            num = alg.one()
            den = Fraction(1)
            for rj in sorted(roots):
                if rj == ri:
                    continue
                num = num * (alg.beta() - alg.const(rj))
                den *= ri - rj
            total = total + num * alg.const(val / den)
        return total
    if s.startswith("["):
        coeffs = _parse_coeff_list(s)
        return alg.from_poly(Poly(coeffs))
    return alg.from_poly(parse_poly(s.replace("beta", "b"), var="b"))


def _parse_vector(text):
    return tuple(parse_fraction(part) for part in text.split(","))


def _parse_point(text):
    s = text.strip().lower()
    if s in ("inf", "infinity", "o"):
        return INFINITY
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("expected 'x,y' or 'inf', got %r" % text)
    return (parse_fraction(parts[0]), parse_fraction(parts[1]))


# ---------------------------------------------------------------------------
# output rendering


def _render(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Poly):
        return x.pretty()
    if isinstance(x, EtaleElement):
        return x.lift().pretty("b")
    if isinstance(x, Mat):
        return [[str(v) for v in row] for row in x.rows]
    if isinstance(x, dict):
        return {str(k): _render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_render(v) for v in x]
    return str(x)


def _emit(args, command, inputs, result, checks, human):
    if getattr(args, "json", False):
        obj = {"schema": "1", "command": command,
               "inputs": _render(inputs), "result": _render(result),
               "checks": _render(checks)}
        print(json.dumps(obj))
    else:
        for line in human:
            print(line)
    return 0


def _fmt(x):
    r = _render(x)
    if isinstance(r, list):
        return json.dumps(r)
    return str(r)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_construct(args):
    f = parse_poly(args.poly)
    orep = construct_representative(f, args.rep)
    star = adjoint_op(orep.op, orep.space)
    adj_ok = star == orep.op if args.rep == SYM2 else star == -orep.op
    checks = {"charpoly_matches": orep.op.charpoly() == f,
              "adjointness": adj_ok}
    result = {"n": orep.n, "dim": orep.space.dim, "operator": orep.op}
    human = ["n = %d, dim = %d" % (orep.n, orep.space.dim)]
    human += ["operator rows:"]
    human += ["  " + " ".join(str(v) for v in row) for row in orep.op.rows]
    human += ["charpoly check: %s, adjointness check: %s"
              % (checks["charpoly_matches"], adj_ok)]
    return _emit(args, "construct",
                 {"rep": args.rep, "poly": f}, result, checks, human)


def _cmd_classify(args):
    w = _parse_vector(args.vector)
    if len(w) % 2 == 0 or len(w) < 3:
        raise ParseError("vector length must be odd and at least 3")
    space = standard_space((len(w) - 1) // 2)
    label = classify_vector(w, space)
    result = {"label": label if isinstance(label, str) else str(label)}
    return _emit(args, "classify", {"vector": list(w)}, result, {},
                 ["label: %s" % result["label"]])


def _cmd_kernel(args):
    f = parse_poly(args.poly)
    alg = EtaleAlgebra(f)
    alpha = parse_alpha(args.alpha, alg)
    verdict = in_kernel_gamma(f, alpha, args.rep)
    checks = {"norm": alpha.norm(), "is_unit": alpha.is_unit()}
    return _emit(args, "kernel",
                 {"rep": args.rep, "poly": f, "alpha": alpha},
                 {"in_kernel": verdict}, checks,
                 ["in kernel: %s" % verdict])


def _cmd_same_orbit(args):
    f = parse_poly(args.poly)
    alg = EtaleAlgebra(f)
    a1 = parse_alpha(args.alpha, alg)
    a2 = parse_alpha(args.alpha2, alg)
    o1 = representative_from_alpha(f, a1, args.rep)
    o2 = representative_from_alpha(f, a2, args.rep)
    cmp = same_orbit(o1, o2)
    result = {"status": cmp.status, "witness": cmp.witness,
              "reason": cmp.reason}
    human = ["status: %s" % cmp.status]
    if cmp.witness is not None:
        human.append("witness: %s" % _fmt(cmp.witness))
    if cmp.reason:
        human.append("reason: %s" % cmp.reason)
    return _emit(args, "same-orbit",
                 {"rep": args.rep, "poly": f, "alpha": a1, "alpha2": a2},
                 result, {}, human)


def _cmd_descend(args):
    f = parse_poly(args.poly)
    d = parse_fraction(args.d)
    curve = HyperCurve(f, d)
    pt = _parse_point(args.point)
    alpha = descent_class(curve, pt)
    in_ker = kernel_check(curve, pt)
    result = {"alpha": alpha,
              "alpha_coords": [str(c) for c in alpha.c],
              "norm": alpha.norm()}
    checks = {"in_kernel": in_ker}
    human = ["class: %s" % _fmt(alpha), "norm: %s" % alpha.norm(),
             "in kernel: %s" % in_ker]
    return _emit(args, "descend",
                 {"poly": f, "d": d,
                  "point": "inf" if pt is INFINITY else list(pt)},
                 result, checks, human)


def _cmd_pencil_check(args):
    f = parse_poly(args.poly)
    alg = EtaleAlgebra(f)
    alpha = parse_alpha(args.alpha, alg)
    d = parse_fraction(args.d)
    c, ok = pencil_discriminant_check(f, alpha, d)
    result = {"match": ok, "proportionality": c}
    return _emit(args, "pencil-check",
                 {"poly": f, "alpha": alpha, "d": d}, result, {},
                 ["match: %s (constant %s)" % (ok, c)])


def _census_row_payload(row):
    key = list(str(v) for v in row.key) if isinstance(row.key, tuple) \
        else str(row.key)
    return {"key": key, "separable": row.separable,
            "operator_count": row.operator_count,
            "orbit_sizes": list(row.orbit_sizes),
            "stabilizer_orders": None if row.stabilizer_orders is None
            else list(row.stabilizer_orders),
            "orbit_count": row.orbit_count,
            "complete": row.complete}


def _cmd_census(args):
    polys = None
    if args.poly:
        polys = [parse_poly(t) for t in args.poly]
    rep = finite_census(args.p, args.n, args.rep, polys=polys,
                        jobs=args.jobs)
    result = {"p": rep.p, "n": rep.n, "rep": rep.rep, "mode": rep.mode,
              "group_order": rep.group_order, "space_size": rep.space_size,
              "rows": [_census_row_payload(r) for r in rep.rows]}
    human = ["p = %d, n = %d, rep = %s, mode = %s" % (rep.p, rep.n,
                                                      rep.rep, rep.mode),
             "group order: %s, space size: %d" % (rep.group_order,
                                                  rep.space_size)]
    for r in rep.rows:
        human.append("  key %s  separable=%s  operators=%s  sizes=%s"
                     "  stabilizers=%s"
                     % (r.key, r.separable, r.operator_count,
                        tuple(r.orbit_sizes),
                        None if r.stabilizer_orders is None
                        else tuple(r.stabilizer_orders)))
    return _emit(args, "census",
                 {"p": args.p, "n": args.n, "rep": args.rep,
                  "jobs": args.jobs,
                  "polys": polys},
                 result, {}, human)


def _cmd_local_count(args):
    f = parse_poly(args.poly)
    count = orbit_count_local(f, args.p, args.rep)
    checks = {"factors_mod_p": count_factors_fp(f, args.p)}
    return _emit(args, "local-count",
                 {"rep": args.rep, "poly": f, "p": args.p},
                 {"count": count}, checks,
                 ["count: %d" % count])


def _cmd_real_count(args):
    f = parse_poly(args.poly)
    total, fibers = orbit_count_real(f, args.rep)
    fib = {str(k): fibers[k] for k in sorted(fibers)}
    return _emit(args, "real-count",
                 {"rep": args.rep, "poly": f},
                 {"count": total, "fibers": fib}, {},
                 ["count: %d" % total, "fibers: %s" % fib])


def _cmd_lattice_verify(args):
    f = parse_poly(args.poly)
    alg = EtaleAlgebra(f)
    alpha = parse_alpha(args.alpha, alg)
    if args.ideal:
        gens = [parse_alpha(part, alg) for part in args.ideal.split(";")]
        ideal = ideal_from_gens(alg, gens)
    else:
        ideal = unit_ideal(alg)
    n = (f.degree - 1) // 2
    chk = verify_pair(IdealPair(ideal, alpha, args.rep), n)
    result = {"valid": chk.valid, "reason": chk.reason,
              "gram": chk.gram, "operator": chk.operator}
    human = ["valid: %s" % chk.valid]
    if chk.reason:
        human.append("reason: %s" % chk.reason)
    if chk.gram is not None:
        human.append("gram: %s" % _fmt(chk.gram))
        human.append("operator: %s" % _fmt(chk.operator))
    return _emit(args, "lattice-verify",
                 {"rep": args.rep, "poly": f, "alpha": alpha,
                  "ideal": args.ideal}, result, {}, human)


def _parse_form(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError("expected 'a,b,c', got %r" % text)
    vals = []
    for part in parts:
        v = parse_fraction(part)
        if v.denominator != 1:
            raise ParseError("form coefficients must be integers")
        vals.append(v.numerator)
    return BQForm(*vals)


def _cmd_bqf_reduce(args):
    F = _parse_form(args.form)
    out = bqf_reduce(F)
    result = {"form": list(out.as_tuple()), "disc": out.disc,
              "content": out.content}
    checks = {"disc_preserved": out.disc == F.disc,
              "content_preserved": out.content == F.content}
    return _emit(args, "bqf-reduce", {"form": list(F.as_tuple())},
                 result, checks,
                 ["reduced: (%d, %d, %d)" % out.as_tuple(),
                  "disc: %d, content: %d" % (out.disc, out.content)])


def _cmd_bqf_classgroup(args):
    g = bqf_class_group(args.d)
    result = {"d": g.d, "h": g.h,
              "forms": [list(F.as_tuple()) for F in g.forms],
              "table": [list(row) for row in g.table]}
    human = ["d = %d, h = %d" % (g.d, g.h)]
    human += ["  %s" % (F.as_tuple(),) for F in g.forms]
    return _emit(args, "bqf-classgroup", {"d": args.d}, result, {}, human)


def _cmd_bqf_census(args):
    rep = bqf_orbit_census(args.d, args.bound)
    result = {"d": rep.d, "bound": rep.bound,
              "orbit_count": rep.orbit_count,
              "class_number": rep.class_number,
              "agreement": rep.agreement,
              "witnesses": [list(_render(w)) for w in rep.witnesses]}
    human = ["orbits in box: %d, class number: %d, agreement: %s"
             % (rep.orbit_count, rep.class_number, rep.agreement)]
    for w in rep.witnesses:
        human.append("  witness: %s" % (w,))
    return _emit(args, "bqf-census", {"d": args.d, "bound": args.bound},
                 result, {}, human)


def _cmd_stab_info(args):
    if args.rep == STANDARD:
        if args.label is None:
            raise ParseError("standard stabilizers need --label")
        info = stabilizer_info(parse_fraction(args.label), STANDARD,
                               n=args.n)
        inputs = {"rep": args.rep, "label": args.label, "n": args.n}
    else:
        if args.poly is None:
            raise ParseError("operator stabilizers need --poly")
        f = parse_poly(args.poly)
        info = stabilizer_info(f, args.rep)
        inputs = {"rep": args.rep, "poly": f}
    result = {"kind": info.kind, "order": info.order,
              "dimension": info.dimension, "detail": info.detail}
    human = ["kind: %s" % info.kind]
    if info.order is not None:
        human.append("order: %s" % info.order)
    if info.dimension is not None:
        human.append("dimension: %s" % info.dimension)
    for k, v in info.detail.items():
        human.append("%s: %s" % (k, _fmt(v)))
    return _emit(args, "stab-info", inputs, result, {}, human)


# ---------------------------------------------------------------------------
# parser assembly


def _add_json(sp):
    sp.add_argument("--json", action="store_true",
                    help="print one JSON object instead of text")


def _parser():
    p = argparse.ArgumentParser(
        prog="orbit",
        description="Exact-arithmetic orbit computations for the odd split"
                    " orthogonal group: representatives, classification,"
                    " descent, censuses, and integral structures.")
    sub = p.add_subparsers(dest="cmd", required=True, metavar="command")

    sp = sub.add_parser("construct",
                        help="distinguished operator with a given charpoly")
    sp.add_argument("--rep", choices=[SYM2, ADJOINT], required=True)
    sp.add_argument("--poly", required=True,
                    help="monic polynomial, e.g. \"x^3 - 2\" or [c0,...]")
    _add_json(sp)
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("classify", help="orbit label of a vector")
    sp.add_argument("--vector", required=True, help="comma separated")
    _add_json(sp)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("kernel",
                        help="does a unit class give a rational orbit")
    sp.add_argument("--rep", choices=[SYM2, ADJOINT], default=SYM2)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--alpha", required=True,
                    help="rational, poly in b, [coords], or crt:v1,...")
    _add_json(sp)
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("same-orbit",
                        help="compare the orbits of two unit classes")
    sp.add_argument("--rep", choices=[SYM2, ADJOINT], default=SYM2)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--alpha2", default="1")
    _add_json(sp)
    sp.set_defaults(func=_cmd_same_orbit)

    sp = sub.add_parser("descend",
                        help="square class of a point on d y^2 = f(x)")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--point", required=True, help="'x,y' or 'inf'")
    sp.add_argument("--d", default="1", help="twist (default 1)")
    _add_json(sp)
    sp.set_defaults(func=_cmd_descend)

    sp = sub.add_parser("pencil-check",
                        help="pencil discriminant proportionality test")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--d", default="1")
    _add_json(sp)
    sp.set_defaults(func=_cmd_pencil_check)

    sp = sub.add_parser("census",
                        help="orbit census over a small prime field")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--rep", choices=[STANDARD, SYM2, ADJOINT],
                    required=True)
    sp.add_argument("--poly", action="append",
                    help="restrict to this charpoly (repeatable)")
    sp.add_argument("--jobs", type=int, default=1)
    _add_json(sp)
    sp.set_defaults(func=_cmd_census)

    sp = sub.add_parser("local-count",
                        help="orbit count over the p-adics at a good prime")
    sp.add_argument("--rep", choices=[SYM2, ADJOINT], required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=int, required=True)
    _add_json(sp)
    sp.set_defaults(func=_cmd_local_count)

    sp = sub.add_parser("real-count",
                        help="orbit count over the reals with fiber table")
    sp.add_argument("--rep", choices=[SYM2, ADJOINT], required=True)
    sp.add_argument("--poly", required=True)
    _add_json(sp)
    sp.set_defaults(func=_cmd_real_count)

    sp = sub.add_parser("lattice-verify",
                        help="check an (ideal, alpha) pair for integrality")
    sp.add_argument("--rep", choices=[SYM2, ADJOINT], required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--ideal", default=None,
                    help="semicolon separated generators (default: 1)")
    _add_json(sp)
    sp.set_defaults(func=_cmd_lattice_verify)

    sp = sub.add_parser("bqf", help="binary quadratic form tools")
    bsub = sp.add_subparsers(dest="bqfcmd", required=True,
                             metavar="subcommand")
    bp = bsub.add_parser("reduce", help="canonical reduced form")
    bp.add_argument("--form", required=True, help="a,b,c")
    _add_json(bp)
    bp.set_defaults(func=_cmd_bqf_reduce)
    bp = bsub.add_parser("classgroup",
                         help="reduced forms and composition table")
    bp.add_argument("--d", type=int, required=True)
    _add_json(bp)
    bp.set_defaults(func=_cmd_bqf_classgroup)
    bp = bsub.add_parser("census",
                         help="component count of the generator graph")
    bp.add_argument("--d", type=int, required=True)
    bp.add_argument("--bound", type=int, default=50)
    _add_json(bp)
    bp.set_defaults(func=_cmd_bqf_census)

    sp = sub.add_parser("stab-info",
                        help="structure of an orbit stabilizer")
    sp.add_argument("--rep", choices=[STANDARD, SYM2, ADJOINT],
                    required=True)
    sp.add_argument("--poly", default=None)
    sp.add_argument("--label", default=None)
    sp.add_argument("--n", type=int, default=None)
    _add_json(sp)
    sp.set_defaults(func=_cmd_stab_info)

    return p


def run(argv=None):
    """Dispatch one invocation; returns the exit code, never raises."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2
    except DomainError as e:
        print("error: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
