"""Command-line front end.

Exit codes: 0 success, 1 parse/usage errors, 2 contract violations
(inconsistent obstruction oracle, malformed A-infinity table).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .deformation import AInfinityData, AInfinityOracle, dualize_products, lift_obstructions
from .errors import ContractViolation, NCDeformError, ParseError
from .models import (
    DegenerationData,
    GrassmannSpec,
    contraction_numerics,
    grassmann_ainfinity,
    grassmann_counts,
    grassmann_presentation,
    trivial_extension_re,
)
from .rewriting import Presentation, abelianize, complete, dims_report, normal_form, quotient_dims
from .textformat import format_poly, parse_poly

ENV_MAX_DEGREE = "NCDEFORM_MAX_DEGREE"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ncdeform", description="Noncommutative deformation algebra toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def bounded(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--max-degree", type=int, default=None, help=f"degree bound (default: ${ENV_MAX_DEGREE})")
        return sp

    sp = bounded("nf", "normal form of a polynomial")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--poly", required=True)

    sp = bounded("gb", "completed basis")
    sp.add_argument("--pres", required=True)

    sp = bounded("dims", "graded quotient dimensions")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("abelianize", help="add all commutators (1-pointed only)")
    sp.add_argument("--pres", required=True)

    sp = sub.add_parser("deform", help="presentation from A-infinity products")
    sp.add_argument("--ainf", required=True)

    sp = bounded("lift", "presentation by obstruction lifting, with two-path agreement report")
    sp.add_argument("--ainf", required=True)

    sp = sub.add_parser("grassmann", help="NC deformations of a linear subspace")
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--counts", dest="what", action="store_const", const="counts")
    g.add_argument("--pres", dest="what", action="store_const", const="pres")
    g.add_argument("--ainf", dest="what", action="store_const", const="ainf")

    sp = sub.add_parser("contraction", help="contraction algebra numerics")
    sp.add_argument("--data", required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("re", help="trivial extension R_e")
    sp.add_argument("r", type=int)
    return p


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _bound(args) -> int:
    if args.max_degree is not None:
        n = args.max_degree
    else:
        env = os.environ.get(ENV_MAX_DEGREE)
        if env is None:
            raise _UsageError("--max-degree is required (or set NCDEFORM_MAX_DEGREE)")
        try:
            n = int(env)
        except ValueError:
            raise _UsageError(f"{ENV_MAX_DEGREE}={env!r} is not an integer") from None
    if n < 1:
        raise _UsageError("--max-degree must be >= 1")
    return n


def _sourced(path, fn, *a):
    try:
        return fn(*a)
    except ParseError as exc:
        if exc.source is None:
            exc.source = path
        raise


def _load_pres(path: str) -> Presentation:
    return _sourced(path, Presentation.from_text, _read(path))


def _matrix(M) -> str:
    return "[" + ",".join("[" + ",".join(map(str, row)) + "]" for row in M) + "]"


def format_dims(report: dict) -> str:
    totals = [sum(map(sum, e["dims"])) for e in report["degrees"]]
    lines = ["degrees [" + ",".join(map(str, totals)) + "]"]
    for e in report["degrees"]:
        lines.append(f"d={e['d']} {_matrix(e['dims'])}")
    if report["finite"]:
        lines.append(f"total {report['total']} (finite)")
    else:
        lines.append(f"total {report['total']} (inconclusive up to degree {len(totals) - 1})")
    return "\n".join(lines)


def _cmd_nf(args, out):
    pres = _load_pres(args.pres)
    n = _bound(args)
    f = _sourced("--poly", parse_poly, args.poly, pres.signature, 1)
    gb = complete(pres, max(n, pres.max_relation_degree()))
    print(format_poly(normal_form(f, gb)), file=out)


def _cmd_gb(args, out):
    pres = _load_pres(args.pres)
    n = _bound(args)
    gb = complete(pres, n)
    print(f"# {len(gb)} elements, complete up to degree {gb.complete_up_to}", file=out)
    for f in gb.elements:
        print(format_poly(f), file=out)


def _cmd_dims(args, out):
    pres = _load_pres(args.pres)
    report = dims_report(pres, _bound(args))
    if args.json:
        print(json.dumps(report), file=out)
    else:
        print(format_dims(report), file=out)


def _cmd_abelianize(args, out):
    out.write(abelianize(_load_pres(args.pres)).to_text())


def _load_ainf(path) -> AInfinityData:
    return _sourced(path, AInfinityData.from_json, _read(path))


def _cmd_deform(args, out):
    out.write(dualize_products(_load_ainf(args.ainf)).to_text())


def _cmd_lift(args, out):
    a = _load_ainf(args.ainf)
    n = _bound(args)
    if n < 2:
        raise _UsageError("lift needs --max-degree >= 2")
    lifted = lift_obstructions(a.dims, AInfinityOracle(a), n)
    one_shot = dualize_products(a)
    da = quotient_dims(lifted, n)
    db = quotient_dims(one_shot, n)
    out.write(lifted.to_text())
    agree = da == db
    totals = [sum(map(sum, M)) for M in da]
    print(f"# two-path agreement up to degree {n}: {'yes' if agree else 'no'}", file=out)
    print("# degrees [" + ",".join(map(str, totals)) + "]", file=out)


def _cmd_grassmann(args, out):
    spec = GrassmannSpec(args.m, args.n)
    what = args.what or "counts"
    if what == "counts":
        t1, t2, rk = grassmann_counts(spec)
        print(f"t1={t1} t2={t2} rank={rk}", file=out)
    elif what == "pres":
        out.write(grassmann_presentation(spec).to_text())
    else:
        print(json.dumps(grassmann_ainfinity(spec).to_json(), indent=2), file=out)


def _cmd_contraction(args, out):
    data = _sourced(args.data, DegenerationData.from_json, _read(args.data))
    res = contraction_numerics(data)
    if args.json:
        print(json.dumps({
            "m": list(res.m),
            "n_d": {str(d): c for d, c in res.n_d.items()},
            "dim_R": res.dim_R,
            "bimodule_dims": [list(row) for row in res.bimodule_dims],
        }), file=out)
        return
    nd = " ".join(f"n_{d}={c}" for d, c in res.n_d.items())
    print(f"dim R = {res.dim_R}; {nd}", file=out)
    print("m = (" + ",".join(map(str, res.m)) + ")", file=out)
    print("bimodule dims " + _matrix(res.bimodule_dims), file=out)


def _cmd_re(args, out):
    out.write(trivial_extension_re(args.r).to_text())


_COMMANDS = {
    "nf": _cmd_nf,
    "gb": _cmd_gb,
    "dims": _cmd_dims,
    "abelianize": _cmd_abelianize,
    "deform": _cmd_deform,
    "lift": _cmd_lift,
    "grassmann": _cmd_grassmann,
    "contraction": _cmd_contraction,
    "re": _cmd_re,
}


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=err)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        _COMMANDS[args.command](args, out)
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=err)
        return 2
    except ParseError as exc:
        prefix = f"{exc.source}: " if exc.source else ""
        print(f"parse error: {prefix}{exc}", file=err)
        return 1
    except (_UsageError, NCDeformError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
