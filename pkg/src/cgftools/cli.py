"""Command-line interface: ``cgftools <subcommand> ...``.

Exit status is 0 on success, 2 when the answer is mathematically negative
(not a CGF, not a polynomial, negative coefficients) and 1 on usage or
internal errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import asymptotics, families, monoids, stats
from .cgf_core import (
    CycloForm,
    NotCgf,
    NotNonnegative,
    NotPolynomial,
    RationalForm,
    cgf_check,
    coeff_via_partitions,
    cyclo_to_rational,
    necessary_conditions,
    rational_to_poly,
)
from .polyring import IntPoly, poly_profile

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_spec(s: str, partition: bool = False) -> IntPoly | RationalForm | families.Partition:
    """``"a,b/c,d"`` is a rational form, ``"1,1,3"`` a coefficient list (or a partition)."""
    s = s.strip()
    if partition:
        return families.Partition.parse(s)
    if "/" in s:
        return RationalForm.parse(s)
    return IntPoly.parse(s)


def _num(x: Any) -> Any:
    """Render rationals as ``"p/q"`` and floats with 12 significant digits."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return stats.format_rat(x)
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, complex):
        return {"re": _num(x.real), "im": _num(x.imag)}
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _text(x: Any) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, Fraction):
        return stats.format_rat(x)
    return str(x)


def _emit_table(header: Sequence[str], rows: list[Sequence], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_text(v) for v in r])
    elif fmt == "bfile":
        if len(header) != 2:
            raise UsageError("bfile output needs exactly two columns")
        for n, v in rows:
            out.write(f"{n} {_text(v)}\n")
    elif fmt == "text":
        for r in rows:
            out.write(" ".join(_text(v) for v in r) + "\n")
    else:
        out.write(json.dumps([dict(zip(header, _num(list(r)))) for r in rows]) + "\n")


def _emit_obj(obj: dict, fmt: str, out) -> None:
    if fmt == "text":
        for k, v in obj.items():
            out.write(f"{k}: {json.dumps(_num(v)) if not isinstance(v, str) else v}\n")
    elif fmt == "json":
        out.write(json.dumps(_num(obj)) + "\n")
    else:
        raise UsageError(f"format {fmt!r} is not available for this command")


def _input_form(args) -> RationalForm:
    """Resolve --poly / --ratform / --cyclo into a rational form (checking CGF-ness)."""
    if getattr(args, "ratform", None):
        rf = RationalForm.parse(args.ratform)
        rational_to_poly(rf)
        return rf
    if getattr(args, "poly", None):
        return cyclo_to_rational(cgf_check(IntPoly.parse(args.poly)))
    if getattr(args, "cyclo", None):
        return cyclo_to_rational(CycloForm(indices=tuple(_ints(args.cyclo))))
    raise UsageError("one of --poly, --ratform, --cyclo is required")


def _ints(s: str) -> list[int]:
    try:
        return [int(t) for t in s.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {s!r}") from None


def _add_input(p: argparse.ArgumentParser, cyclo: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="coefficients low to high, e.g. 1,1,3,4")
    g.add_argument("--ratform", help="q-integer quotient, e.g. 6,5,5,4/3,2,2,1")
    if cyclo:
        g.add_argument("--cyclo", help="cyclotomic indices, e.g. 4,5,5,6")


def cmd_check(args, out) -> int:
    if args.poly:
        p = IntPoly.parse(args.poly)
        cf = cgf_check(p)
        rf = cyclo_to_rational(cf)
        obj = {"cgf": True, **cf.to_json(), "ratform": rf.to_text(), "pretty": cf.pretty()}
    else:
        rf = RationalForm.parse(args.ratform)
        p = rational_to_poly(rf)
        obj = {"cgf": True, "coeffs": list(p.coeffs), "indices": list(cgf_check(p).indices)}
    _emit_obj(obj, args.format, out)
    return EXIT_OK


def cmd_forms(args, out) -> int:
    rf = _input_form(args)
    p = rational_to_poly(rf)
    cf = cgf_check(p)
    prof = poly_profile(p)
    obj = {
        "coeffs": list(p.coeffs),
        "cyclo": cf.to_json(),
        "ratform": rf.reduced().to_json(),
        "profile": {k: getattr(prof, k) for k in prof.__dataclass_fields__},
        "necessary": necessary_conditions(rf).to_json(),
    }
    _emit_obj(obj, args.format, out)
    return EXIT_OK


def cmd_coeffs(args, out) -> int:
    rf = _input_form(args)
    if args.k is not None:
        _emit_obj({"k": args.k, "coeff": coeff_via_partitions(rf, args.k)}, args.format, out)
        return EXIT_OK
    p = rational_to_poly(rf)
    rows = list(enumerate(p.coeffs))
    _emit_table(("k", "coeff"), rows, args.format, out)
    return EXIT_OK


def cmd_cumulants(args, out) -> int:
    rf = _input_form(args)
    rows = [(d, k, float(k)) for d, k in enumerate(stats.cumulants(rf, args.max_d).entries, 1)]
    _emit_table(("d", "exact", "float"), rows, args.format, out)
    return EXIT_OK


def cmd_moments(args, out) -> int:
    rf = _input_form(args)
    fn = stats.central_moment if args.central else stats.moment
    rows = [(d, fn(rf, d), float(fn(rf, d))) for d in range(1, args.max_d + 1)]
    _emit_table(("d", "exact", "float"), rows, args.format, out)
    return EXIT_OK


def cmd_charfun(args, out) -> int:
    rf = _input_form(args)
    rows = []
    for t in (float(x) for x in args.t.split(",")):
        if args.method == "sinc":
            v = stats.charfun_sinc(rf, t)
        else:
            v = stats.charfun_eval(rational_to_poly(rf), t, standardized=args.standardized)
        rows.append((t, v.real, v.imag, abs(v), math.exp(-t * t / 2)))
    _emit_table(("t", "re", "im", "abs", "normal_re"), rows, args.format, out)
    return EXIT_OK


def cmd_diagnose(args, out) -> int:
    rf = _input_form(args)
    _emit_obj(asymptotics.diaconis_diagnostics(rf).to_json(), args.format, out)
    return EXIT_OK


_SCAN_FAMILIES = {
    "qbinomial": lambda *p: families.qbinomial(*p),
    "qbinomial2k": lambda k: families.qbinomial(2 * k, k),
    "qfactorial": lambda n: families.qfactorial(n),
    "qcatalan": lambda n: families.qcatalan(n),
    "macmahon": lambda *p: families.macmahon_box(*p),
}


def cmd_scan(args, out) -> int:
    points = []
    if args.family:
        if args.family not in _SCAN_FAMILIES:
            raise UsageError(f"unknown scan family {args.family!r}; choose from {sorted(_SCAN_FAMILIES)}")
        for i, grp in enumerate(args.grid.split(";")):
            params = _ints(grp)
            points.append((params[0] if len(params) == 1 else i + 1, _SCAN_FAMILIES[args.family](*params)))
    for spec in args.point or ():
        n, _, form = spec.partition("=")
        points.append((int(n), RationalForm.parse(form)))
    seq = asymptotics.MultisetSeq(args.family or "custom", tuple(points))
    res = asymptotics.normality_scan(seq, args.ratio_max, args.quartic_min)
    if args.format == "csv":
        out.write(res.to_csv())
    else:
        _emit_obj(res.to_json(), args.format, out)
    return EXIT_OK


def cmd_family(args, out) -> int:
    if args.name == "macmahon":
        rf = families.macmahon_box(*_ints(args.params))
    elif args.name == "hook":
        rf = families.hook_cgf(families.Partition.parse(args.params))
    else:
        rf = families.family(args.name, *_ints(args.params))
    p = rational_to_poly(rf)
    _emit_obj({"ratform": rf.to_json(), "coeffs": list(p.coeffs), "total": sum(p.coeffs)}, args.format, out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    if args.kind == "syt_maj":
        p = families.bruteforce_oracle("syt_maj", families.Partition.parse(args.params))
    else:
        p = families.bruteforce_oracle(args.kind, *_ints(args.params))
    _emit_obj({"coeffs": list(p.coeffs), "total": sum(p.coeffs)}, args.format, out)
    return EXIT_OK


def _degrees(args) -> range:
    lo = args.min_degree if args.min_degree is not None else 1
    if lo < 1 or args.max_degree < lo:
        raise UsageError("need 1 <= min-degree <= max-degree")
    return range(lo, args.max_degree + 1)


def _enum_output(args, out, fetch) -> int:
    cls = monoids.MonoidClass.parse(args.cls)
    cat = monoids.catalog(args.max_degree, args.threads)
    degs = _degrees(args)
    if args.format in ("bfile", "csv", "text"):
        _emit_table(("n", "count"), [(n, len(fetch(cat, cls, n))) for n in degs], args.format, out)
    else:
        rows = [{"degree": n, "count": len(fetch(cat, cls, n)),
                 **({"elements": [list(e) for e in fetch(cat, cls, n)]} if args.list else {})} for n in degs]
        out.write(json.dumps({"class": cls.value, "degrees": rows}) + "\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    return _enum_output(args, out, lambda cat, cls, n: cat.elements(cls, n))


def cmd_generators(args, out) -> int:
    return _enum_output(args, out, lambda cat, cls, n: cat.generators(cls, n))


def cmd_conjecture(args, out) -> int:
    rep = monoids.conjecture_scan(args.which, args.max_degree, args.threads)
    if args.which == "nongale_count" and args.format in ("bfile", "csv", "text"):
        _emit_table(("n", "nongale"), sorted(rep.per_degree.items()), args.format, out)
    else:
        _emit_obj({**rep.to_json(), "holds": rep.holds}, args.format, out)
    return EXIT_OK if rep.holds else EXIT_NEGATIVE


def cmd_graphpath(args, out) -> int:
    path = monoids.cgf_graph_path(_ints(args.denom), _ints(args.start), _ints(args.end))
    _emit_obj({"length": len(path) - 1, "path": [list(s) for s in path]}, args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cgftools", description="Exact cyclotomic generating function toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str, fmt: str = "json") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=("json", "csv", "bfile", "text"), default=fmt)
        return p

    p = add("check", cmd_check, "test CGF-ness and return the other canonical form")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly")
    g.add_argument("--ratform")

    _add_input(add("forms", cmd_forms, "all canonical forms and coefficient profile"))

    p = add("coeffs", cmd_coeffs, "coefficients (all, or one via the partition formula)")
    _add_input(p)
    p.add_argument("--k", type=int)

    p = add("cumulants", cmd_cumulants, "exact cumulants")
    _add_input(p)
    p.add_argument("--max-d", type=int, default=4)

    p = add("moments", cmd_moments, "exact raw or central moments")
    _add_input(p)
    p.add_argument("--max-d", type=int, default=4)
    p.add_argument("--central", action="store_true")

    p = add("charfun", cmd_charfun, "characteristic function values")
    _add_input(p)
    p.add_argument("--t", required=True, help="comma-separated evaluation points")
    p.add_argument("--method", choices=("direct", "sinc"), default="direct")
    p.add_argument("--standardized", action="store_true")

    _add_input(add("diagnose", cmd_diagnose, "normality diagnostics for one CGF"))

    p = add("scan", cmd_scan, "heuristic normality scan over a family grid")
    p.add_argument("--family")
    p.add_argument("--grid", default="", help="parameter groups separated by ';', e.g. 2,2,2;4,4,4")
    p.add_argument("--point", action="append", help="N=ratform, repeatable")
    p.add_argument("--ratio-max", type=float, default=0.95)
    p.add_argument("--quartic-min", type=float, default=10.0)

    p = add("family", cmd_family, "named family as rational form and polynomial")
    p.add_argument("name", choices=sorted(families._FAMILIES) + ["macmahon", "hook"])
    p.add_argument("params", help="comma-separated parameters (a partition for 'hook')")

    p = add("oracle", cmd_oracle, "brute-force enumeration oracle")
    p.add_argument("kind", choices=("plane_partitions", "syt_maj", "box_partitions"))
    p.add_argument("params")

    for name, fn, what in (("enumerate", cmd_enumerate, "monoid elements"), ("generators", cmd_generators, "monoid generators")):
        p = add(name, fn, f"count or list {what} by degree")
        p.add_argument("--class", dest="cls", required=True, choices=[c.value for c in monoids.MonoidClass])
        p.add_argument("--max-degree", type=int, required=True)
        p.add_argument("--min-degree", type=int)
        p.add_argument("--list", action="store_true", help="include element lists in JSON output")
        p.add_argument("--threads", type=int, default=1)

    p = add("conjecture", cmd_conjecture, "exhaustive conjecture scan")
    p.add_argument("which", choices=("majorization", "uni_prime_factor", "nongale_count"))
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)

    p = add("graphpath", cmd_graphpath, "verified path in the fixed-denominator CGF graph")
    p.add_argument("--denom", required=True)
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="end", required=True)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR
    try:
        return args.func(args, out)
    except NotCgf as e:
        obj = {"cgf": False, "reason": e.reason}
        if e.residue is not None:
            obj["residue"] = list(e.residue.coeffs)
        out.write(json.dumps(obj) + "\n")
        return EXIT_NEGATIVE
    except NotPolynomial as e:
        out.write(json.dumps({"cgf": False, "reason": e.reason, "witness": e.witness}) + "\n")
        return EXIT_NEGATIVE
    except NotNonnegative as e:
        out.write(json.dumps({"cgf": False, "reason": e.reason, "coeffs": list(e.poly.coeffs)}) + "\n")
        return EXIT_NEGATIVE
    except (UsageError, ValueError) as e:
        err.write(f"cgftools: error: {e}\n")
        ap.print_usage(err)
        return EXIT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


def capture(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and return ``(exit_code, stdout)``; used by golden tests."""
    buf, errbuf = io.StringIO(), io.StringIO()
    code = run(argv, buf, errbuf)
    return code, buf.getvalue()
