"""Command-line front end.

Exit codes: 0 success, 1 an identity failed (or a verdict contradicts the
command), 2 usage or parse error.
"""

import argparse
import itertools
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .bracket import six_term_jacobi, homlie_jacobi
from .derivation import canonical_generator, delta_of, monomial_window, with_divisor
from .errors import HomWittError
from .extension import (
    b1,
    b2,
    build_extension,
    check_cocycle_conditions,
    qwitt_algebra,
    recurrence_defect,
    triviality_check,
    virasoro_algebra,
    virasoro_cocycle_data,
)
from .families import (
    KINDS,
    FamilyParams,
    basis_coefficient,
    context_bracket,
    family_bracket,
    family_context,
    family_twist,
    integer_eigenvectors,
)
from .homlie import CENTRAL, HomLieElement
from .laurent import LaurentPoly, parse_laurent
from .scalars import DEFAULT_PARAMS, parse_scalar, subs
from .twist import MonomialEndo

__all__ = ["main", "build_parser", "run"]


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------


def _int_list(text, what):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


def parse_matrix(text):
    rows = [_int_list(r, "--matrix") for r in text.split(";")]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise UsageError(f"--matrix: expected a square matrix like '1,1;0,1', got {text!r}")
    return tuple(tuple(r) for r in rows)


def parse_range(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise UsageError(f"--range: expected a..b, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise UsageError(f"--range: empty range {text!r}")
    return a, b


def _index(text, nvars):
    vals = _int_list(text, "--entry")
    if len(vals) != nvars:
        raise UsageError(f"--entry: index {text!r} needs {nvars} components")
    return tuple(vals)


def family_from_args(args):
    if not args.family:
        raise UsageError("--family is required")
    p = DEFAULT_PARAMS
    kw = dict(kind=args.family, s=args.s, k=args.k, params=p)
    if args.alpha is not None:
        kw["alpha"] = parse_scalar(args.alpha, p)
    if args.Q is not None:
        kw["Q"] = parse_scalar(args.Q, p)
    if args.family == "multivariate":
        if args.matrix is None or args.G is None:
            raise UsageError("the multivariate family needs --matrix and --G")
        kw["S"] = parse_matrix(args.matrix)
        kw["G"] = tuple(_int_list(args.G, "--G"))
        if args.scales is not None:
            kw["scales"] = tuple(parse_scalar(x, p) for x in args.scales.split(","))
    try:
        return FamilyParams(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def evaluation_point(args):
    point = {}
    if getattr(args, "at_q", None) is not None:
        point["q"] = Fraction(args.at_q)
    for item in getattr(args, "at", None) or []:
        name, _, value = item.partition("=")
        if not value:
            raise UsageError(f"--at: expected name=value, got {item!r}")
        point[name.strip()] = Fraction(value.strip())
    return point


def _show(c, point):
    return str(subs(c, point) if point else c)


# -- formatting ------------------------------------------------------------


def _name(idx, letter="d"):
    if idx is CENTRAL:
        return "c"
    inner = ",".join(str(x) for x in idx)
    return f"{letter}_{inner}" if len(idx) == 1 else f"{letter}_({inner})"


def element_text(x, point, letter="d"):
    if x.is_zero:
        return "0"
    return " + ".join(f"({_show(c, point)})*{_name(i, letter)}" for i, c in x.items())


def element_json(x, point):
    return [
        {"index": "c" if i is CENTRAL else list(i), "coeff": _show(c, point)} for i, c in x.items()
    ]


_POW = re.compile(r"\^(-?\d+)")


def _latex_poly(s):
    return _POW.sub(r"^{\1}", s).replace("*", " ")


def scalar_latex(text):
    if "/" in text:
        num, den = text.rsplit("/", 1)
        num, den = num.strip("()"), den.strip("()")
        return rf"\frac{{{_latex_poly(num)}}}{{{_latex_poly(den)}}}"
    return _latex_poly(text)


def element_latex(x, point, letter="d"):
    if x.is_zero:
        return "0"
    parts = []
    for i, c in x.items():
        name = "c" if i is CENTRAL else f"{letter}_{{{','.join(str(v) for v in i)}}}"
        parts.append(rf"\left({scalar_latex(_show(c, point))}\right) {name}")
    return " + ".join(parts)


def _emit(out, fmt, payload, text_lines, latex_lines=None):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "latex":
        out.write("\n".join(latex_lines if latex_lines is not None else text_lines) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


# -- commands --------------------------------------------------------------


def cmd_table(args, out):
    p = family_from_args(args)
    a, b = parse_range(args.range)
    point = evaluation_point(args)
    idx = list(itertools.product(range(a, b + 1), repeat=p.nvars))
    entries, text, latex = [], [], [r"\begin{align*}"]
    for left in idx:
        for right in idx:
            r = family_bracket(p, left, right)
            entries.append({"left": list(left), "right": list(right), "result": element_json(r, point)})
            text.append(f"[{_name(left)}, {_name(right)}] = {element_text(r, point)}")
            ltx_l = ",".join(map(str, left))
            ltx_r = ",".join(map(str, right))
            latex.append(rf"[d_{{{ltx_l}}}, d_{{{ltx_r}}}] &= {element_latex(r, point)} \\")
    latex.append(r"\end{align*}")
    payload = {"family": p.kind, "params": p.describe(), "entries": entries}
    if point:
        payload["at"] = {k: str(v) for k, v in sorted(point.items())}
    _emit(out, args.format, payload, text, latex)
    return 0


def cmd_bracket(args, out):
    p = family_from_args(args)
    point = evaluation_point(args)
    left, right = (_index(e, p.nvars) for e in args.entry)
    r = family_bracket(p, left, right)
    payload = {"family": p.kind, "params": p.describe(), "left": list(left), "right": list(right),
               "result": element_json(r, point)}
    _emit(out, args.format, payload, [f"[{_name(left)}, {_name(right)}] = {element_text(r, point)}"],
          [rf"[d_{{{','.join(map(str, left))}}}, d_{{{','.join(map(str, right))}}}] = {element_latex(r, point)}"])
    return 0


def _triples(p, window):
    idx = list(itertools.product(range(-window, window + 1), repeat=p.nvars))
    return itertools.combinations(idx, 3)


def cmd_verify(args, out):
    p = family_from_args(args)
    ctx = family_context(p)
    n = p.nvars
    bad = []
    if args.identity == "jacobi":
        for t in _triples(p, args.window):
            coeffs = [basis_coefficient(i, n, p.params) for i in t]
            d = six_term_jacobi(ctx, *coeffs)
            if not d.is_zero:
                bad.append({"triple": [list(i) for i in t], "defect": str(d)})
    elif args.identity == "homlie":
        try:
            twist = family_twist(ctx)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        br = lambda i, j: family_bracket(p, i, j)  # noqa: E731
        for t in _triples(p, args.window):
            d = homlie_jacobi(br, twist, *(HomLieElement.basis(i, 1, p.params) for i in t))
            if d:
                bad.append({"triple": [list(i) for i in t], "defect": element_json(d, {})})
    else:
        idx = list(itertools.product(range(-args.window, args.window + 1), repeat=n))
        for i in idx:
            for j in idx:
                if family_bracket(p, i, j) != context_bracket(ctx, i, j):
                    bad.append({"pair": [list(i), list(j)]})
    report = {"identity": args.identity, "family": p.kind, "params": p.describe(),
              "window": args.window, "violations": bad}
    text = [f"{args.identity}: {'ok' if not bad else f'{len(bad)} violations'} "
            f"({p.kind}, window {args.window})"]
    if bad:
        text.append(json.dumps(bad, indent=2))
    _emit(out, args.format, report, text)
    return 1 if bad else 0


def _endo(text, what):
    try:
        return MonomialEndo.parse(text)
    except HomWittError as exc:
        raise UsageError(f"{what}: {exc}") from None


def twists_from_args(args):
    """``(sigma, tau)`` from ``--sigma``/``--tau`` or ``--sigma-scale``/``--sigma-matrix``."""
    if args.sigma_matrix is not None:
        if args.sigma is not None:
            raise UsageError("give either --sigma or --sigma-matrix, not both")
        S = parse_matrix(args.sigma_matrix)
        n = len(S)
        names = args.sigma_scale.split(",") if args.sigma_scale else [f"q{i + 1}" for i in range(n)]
        if len(names) != n:
            raise UsageError(f"--sigma-scale: expected {n} entries")
        sigma = MonomialEndo([parse_scalar(x, DEFAULT_PARAMS) for x in names], S)
        if args.tau is not None:
            raise UsageError("--tau is only supported for one variable")
        return sigma, MonomialEndo.identity(n)
    if args.sigma is None:
        raise UsageError("--sigma (or --sigma-matrix) is required")
    sigma = _endo(args.sigma, "--sigma")
    tau = _endo(args.tau, "--tau") if args.tau else MonomialEndo.identity()
    return sigma, tau


def _derivation(args):
    sigma, tau = twists_from_args(args)
    if args.divisor is None:
        return sigma, tau, canonical_generator(sigma, tau, args.window)
    g = parse_laurent(args.divisor, sigma.nvars)
    prescale = parse_scalar(args.prescale, DEFAULT_PARAMS)
    return sigma, tau, with_divisor(sigma, tau, g, prescale, max(args.window, 8))


def _images(e):
    return [str(e.image(i)) for i in range(e.nvars)]


def cmd_generator(args, out):
    sigma, tau, d = _derivation(args)
    rows = [(r, d(LaurentPoly.monomial(r))) for r in monomial_window(d.nvars, args.window)]
    payload = {"sigma": _images(sigma), "tau": _images(tau), "divisor": d.divisor.to_json_terms(),
               "prescale": str(d.prescale),
               "action": [{"exp": list(r), "value": v.to_json_terms()} for r, v in rows]}
    text = [f"sigma: {sigma.describe()}", f"tau: {tau.describe()}", f"g = {d.divisor}"]
    if d.prescale != 1:
        text.append(f"prescale = {d.prescale}")
    text += [f"Delta({LaurentPoly.monomial(r)}) = {v}" for r, v in rows]
    _emit(out, args.format, payload, text)
    return 0


def cmd_delta(args, out):
    sigma, _, d = _derivation(args)
    delta = delta_of(d)
    payload = {"sigma": _images(sigma), "divisor": d.divisor.to_json_terms(),
               "delta": delta.to_json_terms()}
    _emit(out, args.format, payload, [f"g = {d.divisor}", f"delta = {delta}"])
    return 0


def cmd_eigensearch(args, out):
    S = parse_matrix(args.matrix)
    basis = integer_eigenvectors(S)
    deltas = []
    if len(S) <= 4:
        for G in basis:
            p = FamilyParams("multivariate", S=S, G=G)
            deltas.append(str(family_context(p).delta))
    payload = {"matrix": [list(r) for r in S], "basis": [list(g) for g in basis], "delta": deltas}
    if basis:
        text = ["integer solutions of S^T G = G, lattice basis:"]
        text += [f"  G = {tuple(g)}" + (f"   delta = {d}" if deltas else "") for g, d in
                 itertools.zip_longest(basis, deltas)]
    else:
        text = ["integer solutions of S^T G = G: only G = 0 (empty basis)"]
    _emit(out, args.format, payload, text)
    return 0


def cmd_virasoro(args, out):
    point = evaluation_point(args)
    if args.verify:
        base = qwitt_algebra()
        cocycle = virasoro_cocycle_data()
        rep = check_cocycle_conditions(base, cocycle, args.window)
        checks = {"cocycle": rep.passed}
        if rep.passed:
            ext = build_extension(base, cocycle, args.window)
            checks["skew"] = not ext.skew_violations(args.window)
            checks["jacobi"] = not ext.jacobi_violations(args.window)
            checks["twist homomorphism"] = not ext.homomorphism_violations(args.window)
        checks["recurrence b1"] = all(not recurrence_defect(b1, n) for n in range(-args.window, args.window + 1))
        checks["recurrence b2"] = all(not recurrence_defect(b2, n) for n in range(-args.window, args.window + 1))
        verdict = triviality_check(base, cocycle, args.window)
        checks["nontrivial"] = not verdict.is_trivial
        ok = all(checks.values())
        payload = {"window": args.window, "checks": checks}
        if not verdict.is_trivial:
            payload["contradiction"] = [[list(m), list(n)] for m, n in verdict.pair]
        text = [f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items()]
        if not rep.passed:
            text.append(rep.summary())
        _emit(out, args.format, payload, text)
        return 0 if ok else 1
    if not args.entry:
        raise UsageError("virasoro needs --entry m n or --verify")
    m, n = (_index(e, 1) for e in args.entry)
    alg = virasoro_algebra()
    r = alg.bracket(alg.basis(m), alg.basis(n))
    payload = {"left": list(m), "right": list(n), "result": element_json(r, point)}
    if point:
        payload["at"] = {k: str(v) for k, v in sorted(point.items())}
    central = _show(r.coeff(CENTRAL), point)
    text = [f"[L_{m[0]}, L_{n[0]}] = {element_text(r, point, 'L')}", f"central coefficient: {central}"]
    _emit(out, args.format, payload, text, [rf"[L_{{{m[0]}}}, L_{{{n[0]}}}] = {element_latex(r, point, 'L')}"])
    return 0


# -- parser ----------------------------------------------------------------


def _add_family_flags(sp):
    sp.add_argument("--family", choices=KINDS)
    sp.add_argument("--s", type=int, default=1, help="exponent in sigma(t) = q t^s")
    sp.add_argument("--k", type=int, default=0, help="shift k of the divisor")
    sp.add_argument("--alpha", help="nonzero scalar alpha (expression)")
    sp.add_argument("--Q", help="nonzero scalar Q (expression)")
    sp.add_argument("--matrix", help="exponent matrix rows, e.g. '1,1;0,1'")
    sp.add_argument("--G", help="divisor exponent vector, e.g. '0,1'")
    sp.add_argument("--scales", help="comma-separated scales of sigma(z_i) (default q1,q2,...)")


def _add_eval_flags(sp):
    sp.add_argument("--at-q", dest="at_q", help="evaluate at this rational value of q")
    sp.add_argument("--at", action="append", metavar="NAME=VALUE", help="evaluate a parameter")


def _add_format(sp):
    sp.add_argument("--format", choices=("text", "json", "latex"), default="text")


def build_parser():
    ap = argparse.ArgumentParser(prog="homwitt", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"homwitt {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("table", help="structure constants of a family on an index range")
    _add_family_flags(sp)
    _add_eval_flags(sp)
    _add_format(sp)
    sp.add_argument("--range", default="-2..2", help="index range a..b")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("bracket", help="one bracket [d_m, d_n] of a family")
    _add_family_flags(sp)
    _add_eval_flags(sp)
    _add_format(sp)
    sp.add_argument("--entry", nargs=2, required=True, metavar=("M", "N"),
                    help="indices; comma-separated for several variables")
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("verify", help="check an identity on a window")
    sp.add_argument("identity", choices=("jacobi", "homlie", "oracle"))
    _add_family_flags(sp)
    _add_format(sp)
    sp.add_argument("--window", type=int, default=4)
    sp.set_defaults(func=cmd_verify)

    for verb, helptext in (
        ("generator", "a (sigma, tau)-derivation and its action on monomials"),
        ("delta", "twist defect delta = sigma(g)/g"),
    ):
        sp = sub.add_parser(verb, help=helptext)
        sp.add_argument("--sigma", help="image of t, e.g. 'q*t^2'")
        sp.add_argument("--tau", help="image of t under tau (default t)")
        sp.add_argument("--sigma-scale", dest="sigma_scale", help="scales of sigma(z_i), e.g. 'q1,q2'")
        sp.add_argument("--sigma-matrix", dest="sigma_matrix", help="exponent rows of sigma(z_i)")
        sp.add_argument("--divisor", help="explicit divisor g (default: the canonical generator)")
        sp.add_argument("--prescale", default="1", help="scalar factor in front of (tau-sigma)/g")
        sp.add_argument("--window", type=int, default=4)
        _add_format(sp)
        sp.set_defaults(func=cmd_generator if verb == "generator" else cmd_delta)

    sp = sub.add_parser("eigensearch", help="integer solutions of S^T G = G")
    sp.add_argument("--matrix", required=True)
    _add_format(sp)
    sp.set_defaults(func=cmd_eigensearch)

    sp = sub.add_parser("virasoro", help="the q-deformed Virasoro extension")
    sp.add_argument("--entry", nargs=2, metavar=("M", "N"))
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--window", type=int, default=6)
    _add_eval_flags(sp)
    _add_format(sp)
    sp.set_defaults(func=cmd_virasoro)
    return ap


_NEGATIVE = re.compile(r"^-\d")


def _shield_negatives(argv):
    # argparse reads "-2..2" or "-1,0" as an option; a leading space hides the
    # dash and every value parser here ignores surrounding whitespace
    return [" " + a if _NEGATIVE.match(a) else a for a in argv]


def run(argv, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(_shield_negatives(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, HomWittError, ValueError, KeyError, ZeroDivisionError) as exc:
        err.write(f"homwitt {args.command}: error: {exc}\n")
        return 2


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
