"""Command-line front end.

Example::

    charp --p 2 --base v --vars x,y sing-locus "x^2+v*y^2" --r 1

Exit status: 0 on success, 1 when the request hits a mathematical obstruction
(e.g. rank deficiency, unit ideal), 2 on malformed or inconsistent input.
Positional polynomial arguments of the form ``@path`` are read from a UTF-8
file (generators separated by newlines or ``;``).  ``CHARP_OUTPUT`` sets the
default output format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass
from typing import List, Optional

from . import diffops, groebner, jacobian, orderloci
from .errors import CharpError, InputError, MathError, NoMinorsWarning
from .groebner import Ideal
from .parsing import (
    format_multi_index,
    format_poly,
    parse_ideal,
    parse_multi_index,
    parse_point,
    parse_poly,
)
from .polyring import ORDERS, RingContext, p_power_decompose, ring_new

FORMATS = ("text", "json")


@dataclass(frozen=True)
class SessionConfig:
    p: int
    base_params: tuple
    variables: tuple
    monomial_order: str = "grevlex"
    output_format: str = "text"

    def ring(self) -> RingContext:
        return ring_new(self.p, self.base_params, self.variables, self.monomial_order)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _names(text: str) -> tuple:
    return tuple(s.strip() for s in text.split(",") if s.strip()) if text else ()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="charp", description=__doc__.split("\n\n")[0])
    parser.add_argument("--p", type=int, required=True, help="characteristic (a prime)")
    parser.add_argument("--base", default="", help="comma-separated base parameters v1,...,vm")
    parser.add_argument("--vars", default="", help="comma-separated geometric variables")
    parser.add_argument("--order", choices=ORDERS, default="grevlex", help="monomial order")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default: $CHARP_OUTPUT or text)")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for saturation")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def prime_opts(sp):
        sp.add_argument("--point", help="rational point, e.g. x=0,y=(v+1)/v")
        sp.add_argument("--prime-gens", help="prime ideal generators, ';'-separated")
        sp.add_argument("--assert-prime", action="store_true",
                        help="trust that --prime-gens generate a prime ideal")

    sp = sub.add_parser("sing-locus", help="singular-locus ideal J + r x r Jacobian minors")
    sp.add_argument("gens", nargs="+")
    sp.add_argument("--r", type=int, required=True, help="height of J at the primes of interest")

    sp = sub.add_parser("regular", help="extended Jacobian criterion at a prime")
    sp.add_argument("gens", nargs="+")
    sp.add_argument("--r", type=int, required=True)
    prime_opts(sp)

    sp = sub.add_parser("order", help="order of a polynomial or ideal at a prime")
    sp.add_argument("gens", nargs="+")
    prime_opts(sp)

    sp = sub.add_parser("stratify", help="order loci for N = 1..Nmax")
    sp.add_argument("gens", nargs="+")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--reduce", action="store_true", help="interreduce each level")

    sp = sub.add_parser("hasse", help="apply D^beta to a polynomial")
    sp.add_argument("poly")
    sp.add_argument("--beta", required=True, help="multi-index, e.g. v:1,x:2")

    sp = sub.add_parser("saturate", help="differential saturation of order n")
    sp.add_argument("gens", nargs="+")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--reduce", action="store_true")

    sp = sub.add_parser("groebner", help="reduced Groebner basis over F_p(v)")
    sp.add_argument("gens", nargs="+")
    sp.add_argument("--order", dest="gb_order", choices=ORDERS, default=None)

    sp = sub.add_parser("refit", help="p-basis adapted to parameters z_1..z_d at a prime")
    sp.add_argument("params", nargs="+")
    sp.add_argument("--r", type=int, default=None,
                    help="also describe the quotient by z_1..z_r")
    prime_opts(sp)

    sp = sub.add_parser("decompose-p", help="f = sum g_alpha^p B^alpha")
    sp.add_argument("poly")
    return parser


def _expand(arg: str) -> str:
    if arg.startswith("@"):
        path = arg[1:]
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return arg


def _gens(args_list: List[str], ring) -> list:
    gens = []
    for arg in args_list:
        gens.extend(parse_ideal(_expand(arg), ring))
    return gens


def _prime(args, ring):
    if args.point and args.prime_gens:
        raise InputError("give either --point or --prime-gens, not both")
    if args.point:
        return jacobian.RationalPoint(ring, parse_point(args.point, ring))
    if args.prime_gens:
        gens = parse_ideal(_expand(args.prime_gens), ring)
        return jacobian.PrimeGenerators(Ideal(ring, tuple(gens)), asserted_prime=args.assert_prime)
    raise InputError("a prime is required: use --point or --prime-gens")


def _beta_record(beta, ring) -> str:
    return format_multi_index(beta, ring)


def _order_value(v):
    return "inf" if v == orderloci.INFINITY else v


def _run(args, ring):
    """Dispatch; returns (inputs_echo, result, provenance, text_lines)."""
    cmd = args.command
    fp = format_poly

    if cmd == "sing-locus":
        gens = _gens(args.gens, ring)
        M = jacobian.extended_jacobian(gens)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NoMinorsWarning)
            ideal = jacobian.singular_locus(gens, args.r)
        no_minors = any(issubclass(w.category, NoMinorsWarning) for w in caught)
        out = [fp(g) for g in ideal.generators]
        result = {
            "generators": out,
            "no_minors": no_minors,
            "jacobian": {"columns": [b.name for b in M.columns],
                         "rows": [[fp(a) for a in row] for row in M.rows]},
        }
        return {"gens": [fp(g) for g in gens], "r": args.r}, result, None, out

    if cmd == "regular":
        gens = _gens(args.gens, ring)
        P = _prime(args, ring)
        rep = jacobian.regularity_test(gens, P, args.r)
        rec = rep.as_record()
        lines = [f"regular: {str(rep.regular).lower()}", f"rank: {rep.rank_mod_P}", f"r: {rep.r}"]
        if rep.witness:
            lines.append(f"witness: rows {list(rep.witness[0])} cols {list(rep.witness[1])}")
        return ({"gens": [fp(g) for g in gens], "prime": _prime_echo(args), "r": args.r},
                rec, None, lines)

    if cmd == "order":
        gens = _gens(args.gens, ring)
        P = _prime(args, ring)
        if len(gens) == 1:
            value = orderloci.order_at(gens[0], P)
        else:
            value = orderloci.ideal_order_at(Ideal(ring, tuple(gens)), P)
        value = _order_value(value)
        return ({"gens": [fp(g) for g in gens], "prime": _prime_echo(args)},
                {"order": value}, None, [str(value)])

    if cmd in ("stratify", "saturate"):
        gens = _gens(args.gens, ring)
        ideal = Ideal(ring, tuple(gens))
        if cmd == "stratify":
            levels = orderloci.stratify(ideal, args.nmax, threads=args.threads)
            echo = {"gens": [fp(g) for g in ideal.generators], "nmax": args.nmax}
        else:
            levels = [(args.n, orderloci.diff_saturate(ideal, args.n, threads=args.threads))]
            echo = {"gens": [fp(g) for g in ideal.generators], "n": args.n}
        records, lines = [], []
        for N, sat in levels:
            if args.reduce:
                gb = groebner.buchberger(Ideal(ring, sat.generators), ring.order)
                gens_out = [fp(g) for g in gb.polynomials()]
                prov = []
            else:
                gens_out = [fp(g) for g in sat.generators]
                prov = [{"gen_index": i, "beta": _beta_record(b, ring)} for i, b in sat.provenance]
            records.append({"N": N, "generators": gens_out, "provenance": prov})
            label = f"N={N}" if cmd == "stratify" else f"n={N}"
            lines.append(f"{label}: " + "; ".join(gens_out))
        if cmd == "stratify":
            result = {"levels": records}
        else:
            result = {"generators": records[0]["generators"]}
        provenance = [{"N": r["N"], "provenance": r["provenance"]} for r in records]
        if cmd == "saturate":
            provenance = records[0]["provenance"]
            lines = records[0]["generators"]
        return echo, result, provenance, lines

    if cmd == "hasse":
        f = parse_poly(_expand(args.poly), ring)
        beta = parse_multi_index(args.beta, ring)
        value = fp(diffops.hasse(f, beta))
        return ({"poly": fp(f), "beta": _beta_record(beta, ring)},
                {"value": value}, None, [value])

    if cmd == "groebner":
        gens = _gens(args.gens, ring)
        tag = args.gb_order or ring.order
        gb = groebner.buchberger(Ideal(ring, tuple(gens)), tag)
        out = [fp(g) for g in gb.polynomials()]
        return ({"gens": [fp(g) for g in gens], "order": tag},
                {"basis": out, "order": tag}, None, out)

    if cmd == "refit":
        params = _gens(args.params, ring)
        P = _prime(args, ring)
        echo = {"params": [fp(z) for z in params], "prime": _prime_echo(args)}
        if args.r is None:
            fit = jacobian.refit_p_basis(params, P)
        else:
            echo["r"] = args.r
            qb = jacobian.quotient_p_basis(params, args.r, P)
            fit = qb.refit
        result = {
            "removed": [b.name for b in fit.removed],
            "kept": [b.name for b in fit.kept],
            "localizer": fp(fit.localizer),
        }
        lines = [f"removed: {', '.join(result['removed'])}",
                 f"kept: {', '.join(result['kept'])}",
                 f"localizer: {result['localizer']}"]
        if args.r is not None:
            result["quotient_basis"] = {
                "base_elements": [b.name for b in qb.base_elements],
                "parameter_classes": [fp(z) for z in qb.parameter_classes],
                "ideal": [fp(z) for z in qb.ideal.generators],
            }
            lines.append("quotient basis: " + ", ".join(
                result["quotient_basis"]["base_elements"]
                + [f"[{z}]" for z in result["quotient_basis"]["parameter_classes"]]))
        return echo, result, None, lines

    if cmd == "decompose-p":
        f = parse_poly(_expand(args.poly), ring)
        parts = p_power_decompose(f)
        comps = [{"index": format_multi_index(a, ring), "root": fp(g)} for a, g in parts.items()]
        lines = [f"({c['root']})^{ring.p} * [{c['index'] or '1'}]" for c in comps]
        return {"poly": fp(f)}, {"components": comps}, None, lines

    raise InputError(f"unknown command {cmd!r}")


def _prime_echo(args):
    if getattr(args, "point", None):
        return {"point": args.point}
    return {"prime_gens": args.prime_gens, "asserted_prime": bool(args.assert_prime)}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or os.environ.get("CHARP_OUTPUT") or "text"
    if fmt not in FORMATS:
        print(f"charp: error: unknown output format {fmt!r}", file=sys.stderr)
        return 2
    try:
        if args.threads < 1:
            raise InputError("--threads must be positive")
        config = SessionConfig(args.p, _names(args.base), _names(args.vars), args.order, fmt)
        ring = config.ring()
        echo, result, provenance, lines = _run(args, ring)
    except CharpError as exc:
        code = 1 if isinstance(exc, MathError) else 2
        if fmt == "json":
            print(json.dumps({"command": args.command,
                              "error": {"type": type(exc).__name__, "message": str(exc)}},
                             indent=2))
        else:
            print(f"charp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    if fmt == "json":
        echo = {"p": config.p, "base": list(config.base_params),
                "vars": list(config.variables), **echo}
        payload = {"command": args.command, "inputs_echo": echo,
                   "result": result, "provenance": provenance}
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(str(s) for s in lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
