"""Command-line entry point: ``fewform <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import as_fraction
from .certification import INCONCLUSIVE, FormSet, check_theorem, homography_free, membership
from .counting import (
    CSV_HEADER,
    area_AF,
    asymptotic_table,
    c_constant,
    g_set,
    r_count,
    theta_d,
)
from .diophantine import fewnomial_lower_bound, thresholds
from .errors import DomainError, FewformError, ParseError
from .forms import (
    BinaryForm,
    MonicPolynomial,
    discriminant,
    evaluate,
    family_from_json,
    form_from_json,
    lambda_gap,
)
from .homography import Affine, NonAffine, apply
from .isomorphy import DEFAULT_DENOM_CAP, DEFAULT_PRECISION, automorphism_group, isomorphisms, w_constant
from .replay import verify_paper

_COEFF_LIST = re.compile(r"^\s*-?\d+(/\d+)?(\s*,\s*-?\d+(/\d+)?)*\s*$")


class UsageError(DomainError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input

def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None


def _read_spec(value: str, what: str):
    """Inline JSON, a path to a JSON file, or a bare comma-separated coefficient list."""
    s = value.strip()
    if s.startswith("{") or s.startswith("["):
        return _load_json(s, f"inline {what}")
    if _COEFF_LIST.match(s):
        return {"coeffs": [c.strip() for c in s.split(",")]}
    p = Path(value)
    if not p.is_file():
        raise DomainError(f"{what} {value!r} is neither JSON, a coefficient list nor a file")
    return _load_json(p.read_text(encoding="utf-8"), str(p))


def _form(value: str) -> BinaryForm:
    obj = _read_spec(value, "form")
    return form_from_json({"coeffs": obj} if isinstance(obj, list) else obj)


def _forms(value: str) -> list[BinaryForm]:
    obj = _read_spec(value, "form set")
    if isinstance(obj, dict) and "forms" in obj:
        obj = obj["forms"]
    if not isinstance(obj, list):
        raise DomainError("a form set is a JSON list of forms (or {\"forms\": [...]})")
    return [form_from_json({"coeffs": o} if isinstance(o, list) else o) for o in obj]


def _population(args):
    """A fewnomial family from --family, or the single --form."""
    if getattr(args, "family", None):
        return family_from_json(_read_spec(args.family, "family"))
    if getattr(args, "form", None):
        return [_form(args.form)]
    raise UsageError("one of --family or --form is required")


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("FEWFORM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"FEWFORM_THREADS={env!r} is not an integer") from None
    return 1


# ---------------------------------------------------------------------------
# output

def _num(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.12g}")
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _num(obj)


def _emit(args, payload: dict, text: str | None = None):
    if args.json or text is None:
        print(json.dumps(_clean(payload), sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


# ---------------------------------------------------------------------------
# subcommands

def cmd_disc(args):
    F = _form(args.form)
    d = discriminant(F)
    _emit(args, {"discriminant": d}, str(d))


def cmd_eval(args):
    F = _form(args.form)
    v = evaluate(F, as_fraction(args.x), as_fraction(args.y))
    _emit(args, {"value": v}, str(v))


def cmd_lambda(args):
    F = _form(args.form)
    plus, minus = lambda_gap(F, "plus"), lambda_gap(F, "minus")
    _emit(args, {"lambda_plus": plus, "lambda_minus": minus}, f"Lambda+ = {plus}\nLambda- = {minus}")


def cmd_apply(args):
    obj = _read_spec(args.poly, "polynomial")
    f = MonicPolynomial.normalized(form_from_json(obj).coeffs)
    if args.s is None:
        h = Affine(as_fraction(args.q), as_fraction(args.r))
    else:
        h = NonAffine(as_fraction(args.q), as_fraction(args.r), as_fraction(args.s))
    g = apply(h, f)
    _emit(args, {"coeffs": [str(c) for c in g.coeffs], "poly": str(g)}, str(g))


def _cert_json(c):
    return {"gamma": [[str(x) for x in row] for row in c.gamma.rows()], "nu": str(c.nu)}


def cmd_isom(args):
    F, G = _form(args.form), _form(args.form2)
    certs = isomorphisms(
        F, G, allow_scalar=args.allow_scalar, precision_bits=args.precision_bits, denom_cap=args.denom_cap
    )
    lines = [f"{c.gamma}  nu={c.nu}" for c in certs] or ["no isomorphism"]
    _emit(args, {"isomorphisms": [_cert_json(c) for c in certs]}, "\n".join(lines))


def cmd_aut(args):
    F = _form(args.form)
    grp = automorphism_group(F, args.precision_bits, args.denom_cap)
    payload = {
        "group": grp.label(),
        "order": grp.order,
        "generators": [[[str(x) for x in row] for row in g.rows()] for g in grp.generators],
    }
    text = f"Aut(F) = {grp.label()}, order {grp.order}\n" + "\n".join(str(g) for g in grp.generators)
    _emit(args, payload, text)


def cmd_wf(args):
    F = _form(args.form)
    grp = automorphism_group(F, args.precision_bits, args.denom_cap)
    w = w_constant(F, grp)
    _emit(args, {"group": grp.label(), "W_F": w}, f"W_F = {w} ({grp.label()})")


def cmd_certify(args):
    S = FormSet(_forms(args.set))
    if args.theorem in ("486", "527") and not args.search:
        cert = check_theorem(S, args.theorem)
    else:
        cert = homography_free(
            S,
            budget=args.budget,
            theorem=args.theorem,
            precision_bits=args.precision_bits,
            denom_cap=args.denom_cap,
            threads=_threads(args),
        )
    text = f"{cert.verdict} via {cert.route}"
    if cert.reason:
        text += f": {cert.reason}"
    if cert.witness:
        text += "\n" + json.dumps(cert.witness, sort_keys=True)
    _emit(args, cert.to_json(), text)
    return 2 if cert.verdict == INCONCLUSIVE else 0


def cmd_member(args):
    F = _form(args.form)
    ok, clause = membership(F, args.set)
    _emit(args, {"member": ok, "set": args.set, "clause": clause}, f"{'yes' if ok else 'no'}: {clause}")


def _count_rows(args, reports):
    if args.json:
        print(json.dumps(_clean([{
            "N": r.N,
            "count": r.count,
            "predicted": r.predicted,
            "ratio": r.ratio,
            "error_exponent": r.error_exponent,
            "truncated": r.truncated,
        } for r in reports]), sort_keys=True))
        return
    print(CSV_HEADER)
    for r in reports:
        print(r.csv_row())


def cmd_count(args):
    pop = _population(args)
    d = args.d if args.d is not None else min(F.degree for F in pop) if isinstance(pop, list) else pop.degrees()[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        reports = [r_count(pop, d, N, cap=args.cap) for N in args.N]
    _count_rows(args, reports)


def cmd_gset(args):
    pop = _population(args)
    d = args.d if args.d is not None else min(F.degree for F in pop) if isinstance(pop, list) else pop.degrees()[0]
    triples = g_set(pop, d, args.m, cap=args.cap)
    print(json.dumps(
        {"m": args.m, "count": len(triples),
         "triples": [{"x": t.x, "y": t.y, "form": t.form_id, "m": t.m} for t in triples]},
        sort_keys=True,
    ))


def cmd_area(args):
    F = _form(args.form)
    a = area_AF(F, args.tol)
    _emit(args, {"A_F": a}, _fmt(a))


def cmd_cf(args):
    F = _form(args.form)
    grp = automorphism_group(F, args.precision_bits, args.denom_cap)
    c = c_constant(F, grp, args.tol)
    _emit(args, {"C_F": c, "group": grp.label()}, f"C_F = {_fmt(c)} ({grp.label()})")


def cmd_table(args):
    pop = _population(args)
    d = args.d if args.d is not None else min(F.degree for F in pop) if isinstance(pop, list) else pop.degrees()[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        reports = asymptotic_table(pop, d, args.N, eps=args.eps, cap=args.cap, tol=args.tol)
    _count_rows(args, reports)


def cmd_theta(args):
    v = theta_d(args.d)
    _emit(args, {"d": args.d, "theta": v}, _fmt(v))


def cmd_bound(args):
    F = _form(args.form)
    r = args.r if args.r is not None else F.degree
    b = fewnomial_lower_bound(F, r, args.x, args.y)
    payload = {
        "exponent": b.exponent,
        "log_lower": b.log_lower,
        "log_anchored": b.log_anchored,
        "log_value": b.log_value,
        "holds": b.holds,
    }
    _emit(args, payload)


def cmd_thresholds(args):
    t = thresholds(args.eps, args.r, args.lam, args.m, args.theta)
    payload = {"eta": t.eta, "mu_max": t.mu_max, "M": t.M, "eta_float": float(t.eta), "mu_max_float": float(t.mu_max)}
    _emit(args, payload)


def cmd_verify(args):
    report = verify_paper()
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.table())
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION, help="root-finding precision")
    common.add_argument("--denom-cap", type=int, default=DEFAULT_DENOM_CAP, help="largest denominator when rationalizing")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: $FEWFORM_THREADS or 1)")

    p = _Parser(prog="fewform", description="Exact tools for binary forms and binary fewnomials.")
    p.add_argument("--version", action="version", version=f"fewform {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(fn=fn)
        return sp

    form_help = "form as inline JSON, a JSON file, or comma-separated coefficients a0,...,ad"

    sp = add("disc", cmd_disc, "discriminant of a form")
    sp.add_argument("--form", required=True, help=form_help)

    sp = add("eval", cmd_eval, "evaluate F(x, y)")
    sp.add_argument("--form", required=True, help=form_help)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)

    sp = add("lambda", cmd_lambda, "zero-run lengths Lambda+ and Lambda-")
    sp.add_argument("--form", required=True, help=form_help)

    sp = add("apply-homography", cmd_apply, "image of a monic polynomial under h_{q,r} or h_{q,r,s}")
    sp.add_argument("--poly", required=True, help="polynomial coefficients, highest degree first (normalized to monic)")
    sp.add_argument("--q", required=True)
    sp.add_argument("--r", required=True)
    sp.add_argument("--s", default=None, help="omit for the affine map t -> qt + r")

    sp = add("isom", cmd_isom, "rational gamma with F o gamma = G (or nu G with --allow-scalar)")
    sp.add_argument("--form", required=True, help=form_help)
    sp.add_argument("--form2", required=True, help=form_help)
    sp.add_argument("--allow-scalar", action="store_true")

    sp = add("aut", cmd_aut, "rational automorphism group")
    sp.add_argument("--form", required=True, help=form_help)

    sp = add("wf", cmd_wf, "automorphism weight W_F")
    sp.add_argument("--form", required=True, help=form_help)

    sp = add("certify", cmd_certify, "certify that a set of forms is homography-free")
    sp.add_argument("--set", required=True, help="JSON list of forms, inline or a file")
    sp.add_argument("--theorem", choices=["486", "527", "auto"], default="auto")
    sp.add_argument("--search", action="store_true", help="fall back to root search when the theorem does not apply")
    sp.add_argument("--budget", type=int, default=None, help="maximum number of pairs to search")

    sp = add("member", cmd_member, "membership in one of the families U1, U2, V1, V2")
    sp.add_argument("--form", required=True, help=form_help)
    sp.add_argument("--set", required=True, choices=["U1", "U2", "V1", "V2"])

    def population(sp):
        sp.add_argument("--family", help="fewnomial family JSON {\"r\": r, \"blocks\": {k: [[a0,...,ar], ...]}}")
        sp.add_argument("--form", help=form_help)
        sp.add_argument("--d", type=int, default=None, help="least degree (default: smallest present)")
        sp.add_argument("--cap", type=int, default=None, help="box cap for unbounded regions")

    sp = add("count", cmd_count, "number of represented integers in [-N, N] (CSV)")
    population(sp)
    sp.add_argument("--N", type=int, nargs="+", required=True)

    sp = add("gset", cmd_gset, "all (x, y, F) with F(x, y) = m (JSON)")
    population(sp)
    sp.add_argument("--m", type=int, required=True)

    sp = add("area", cmd_area, "area A_F of |F(x, y)| <= 1")
    sp.add_argument("--form", required=True, help=form_help)
    sp.add_argument("--tol", type=float, default=1e-8)

    sp = add("cf", cmd_cf, "main-term constant C_F = A_F W_F")
    sp.add_argument("--form", required=True, help=form_help)
    sp.add_argument("--tol", type=float, default=1e-8)

    sp = add("table", cmd_table, "observed counts against C N^(2/d) (CSV)")
    population(sp)
    sp.add_argument("--N", type=int, nargs="+", required=True)
    sp.add_argument("--eps", type=float, default=0.0)
    sp.add_argument("--tol", type=float, default=1e-8)

    sp = add("theta", cmd_theta, "error exponent theta_d")
    sp.add_argument("--d", type=int, required=True)

    sp = add("bound", cmd_bound, "lower bound exponent for |F(x, y)| (JSON)")
    sp.add_argument("--form", required=True, help=form_help)
    sp.add_argument("--r", type=int, default=None, help="number of fewnomial steps (default: degree)")
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--y", type=int, required=True)

    sp = add("thresholds", cmd_thresholds, "eta, mu bound and degree cut (JSON)")
    sp.add_argument("--eps", required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--lam", required=True)
    sp.add_argument("--m", type=int, default=None, help="|m| or N for the degree cut")
    sp.add_argument("--theta", default=None)

    add("verify-paper", cmd_verify, "replay the built-in exact identities")
    return p


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        status = args.fn(args)
        return int(status or 0)
    except FewformError as exc:
        if want_json:
            print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}, sort_keys=True))
        else:
            print(f"fewform: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_status
    except ZeroDivisionError as exc:
        if want_json:
            print(json.dumps({"error": {"code": "domain_error", "message": str(exc)}}, sort_keys=True))
        else:
            print(f"fewform: domain_error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()


__all__ = ["run", "main", "build_parser"]
