"""Command-line driver: expand genus series, run verification suites.

Three subcommands:

* ``expand``: print the q-expansion table of a model/operator pair.
* ``verify``: run check suites (anomaly, rigidity, vanishing, jacobi,
  zeros) and emit a machine-readable JSON report; exit status 0 iff
  every selected check passes.
* ``theta``: evaluate a theta function numerically, or print its formal
  q-expansion in the canonical text form.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .builtin_models import builtin
from .errors import EllgenusError
from .genus import genus_point, genus_qseries
from .model import LoopDirac, SpincStack, WittenStack, validate_model
from .modelfile import load_model
from .theta import (ALL_KINDS, ThetaArg, theta_numeric, theta_qexp)
from .verify import (TAU_SAMPLES, anomaly_n, check_modular_weight,
                     check_quasi_periodicity, check_rigidity,
                     check_vanishing, count_zeros, default_t_samples)


def parse_complex(text):
    t = text.strip().replace(" ", "")
    t = t.replace("i", "j")
    if t in ("j", "+j"):
        t = "1j"
    if t == "-j":
        t = "-1j"
    return complex(t)


def parse_matrix(text):
    rows = text.split(";")
    if len(rows) != 2:
        raise EllgenusError("matrix wants 'a,b;c,d'")
    (a, b), (c, d) = [[int(x) for x in row.split(",")] for row in rows]
    return ((a, b), (c, d))


def get_model(name):
    if name.startswith("builtin:"):
        return builtin(name[len("builtin:"):])
    return load_model(name)


def get_spec(args):
    op = args.op
    beta = Fraction(args.beta) if getattr(args, "beta", None) else None
    A = parse_matrix(args.A) if getattr(args, "A", None) else None
    if op == "witten":
        return WittenStack()
    if op in ("r1", "r2", "r3"):
        return LoopDirac(twist=op)
    if op in ("f1", "f2", "f3"):
        return SpincStack(j=int(op[1]), beta=beta,
                          A=A if beta is not None else None)
    raise EllgenusError("unknown operator %r (use witten, r1..r3, f1..f3)"
                        % op)


def format_genus_table(gs):
    lines = []
    for e, c in gs.coefficients():
        r = c.reduce()
        if r.den:
            lines.append("q^(%s): [rational in z] (%s) / %s" % (
                e, r.num.render(lambda p: p.render()), dict(r.den)))
            continue
        lz = r.num
        degrees = sorted({lz.coeffs[k].max_degree() if lz.coeffs else 0
                          for k in lz.coeffs} | {0})
        by_deg = {}
        for k, p in lz.coeffs.items():
            for d in range(0, p.alg.D + 1, 2):
                part = p.grade_part(d)
                if part:
                    by_deg.setdefault(d, {})[k] = part
        if not by_deg:
            lines.append("q^(%s): 0" % e)
            continue
        for d in sorted(by_deg):
            from .laurent import LaurentZ
            piece = LaurentZ(by_deg[d], prune=False)
            lines.append("q^(%s) [deg %d]: %s" % (
                e, d, piece.render(lambda p: p.render())))
    t = gs.series.trunc_exponent()
    if t is not None:
        lines.append("O(q^(%s))" % min(t, gs.qmax + 1))
    return "\n".join(lines)


def cmd_expand(args):
    model = get_model(args.model)
    spec = get_spec(args)
    diag = validate_model(model, spec)
    for lvl, code, msg in diag:
        print("%s [%s]: %s" % (lvl, code, msg), file=sys.stderr)
    if not diag.ok:
        return 2
    gs = genus_qseries(model, spec, Fraction(args.trunc))
    text = format_genus_table(gs)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _jacobi_suite(model, spec, args, report):
    tol = args.tol
    tsamp = default_t_samples(args.samples)
    ok = True
    try:
        qp = check_quasi_periodicity(model, spec, t_samples=tsamp, tol=tol)
        report["quasi_periodicity"] = qp.to_dict()
        ok = ok and qp.ok
    except EllgenusError as exc:
        report["quasi_periodicity"] = {"error": str(exc)}
        ok = False
    mats = [parse_matrix(args.A)] if args.A else \
        [((1, 1), (0, 1)), ((0, -1), (1, 0)), ((1, 0), (1, 1))]
    for A in mats:
        mw = check_modular_weight(model, spec, A, t_samples=tsamp, tol=tol)
        report.setdefault("modular", []).append(mw.to_dict())
        ok = ok and mw.ok
    return ok


def _zeros_suite(model, spec, args, report):
    rep = anomaly_n(model, spec)
    if not rep.consistent:
        report["zeros"] = {"skipped": "inconsistent anomaly"}
        return True
    tau = 1j
    f = lambda t: genus_point(model, spec, t, tau).constant_term()
    probes = [0.31 + 0.21j, 0.73 + 1.13j]
    if all(abs(f(t)) < 1e-8 for t in probes):
        report["zeros"] = {"skipped": "identically zero character"}
        return True
    corner = 0.11 + 0.077j - 1 - tau
    count = count_zeros(f, corner, 2.0, 2 * tau, tol=0.1)
    expected = 4 * int(rep.n)
    report["zeros"] = {"count": count, "expected": expected,
                       "cell": "(2Z)^2", "ok": count == expected}
    return count == expected


def cmd_verify(args):
    model = get_model(args.model)
    spec = get_spec(args)
    diag = validate_model(model, spec)
    report = {
        "tool": "ellgenus",
        "version": __version__,
        "model": model.name,
        "operator": repr(spec),
        "trunc": str(args.trunc),
        "tol": args.tol,
        "samples": args.samples,
        "seed": args.seed,
        "diagnostics": [list(e) for e in diag],
        "checks": {},
    }
    ok = diag.ok
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    for suite in suites:
        checks = report["checks"]
        if suite == "anomaly":
            rep = anomaly_n(model, spec)
            checks["anomaly"] = rep.to_dict()
            ok = ok and rep.consistent
        elif suite == "rigidity":
            rv = check_rigidity(model, spec, qmax=Fraction(args.trunc),
                                tol=args.tol)
            checks["rigidity"] = rv.to_dict()
            ok = ok and rv.constant
        elif suite == "vanishing":
            vr = check_vanishing(model, spec, qmax=Fraction(args.trunc))
            checks["vanishing"] = vr.to_dict()
            ok = ok and vr.ok
        elif suite == "jacobi":
            ok = _jacobi_suite(model, spec, args, checks) and ok
        elif suite == "zeros":
            ok = _zeros_suite(model, spec, args, checks) and ok
        else:
            raise EllgenusError("unknown suite %r" % suite)
    report["ok"] = ok
    text = json.dumps(report, indent=2, default=str)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


def cmd_theta(args):
    kind = args.kind
    if kind not in ALL_KINDS:
        raise EllgenusError("unknown kind %r (have %s)"
                            % (kind, ", ".join(ALL_KINDS)))
    if args.formal:
        from .cohomology import NilAlgebra
        alg = NilAlgebra((), 0)
        ts = theta_qexp(kind, ThetaArg(args.weight, alg.zero(), 0),
                        Fraction(args.trunc), alg)
        print("scalar: %r" % ts.scalar)
        print(ts.series.render(
            coeff_str=lambda lz: lz.render(lambda p: str(p.constant_term()))))
        return 0
    v = parse_complex(args.v)
    tau = parse_complex(args.tau)
    val = theta_numeric(kind, v, tau)
    print("%.15g %+.15gi" % (val.real, val.imag))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ellgenus",
        description="equivariant elliptic genus engine: q-expansions and "
                    "rigidity/vanishing/Jacobi-form verification from "
                    "fixed-point data")
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("expand", help="print a genus q-expansion table")
    pe.add_argument("--model", required=True,
                    help="builtin:<name> or a model file path")
    pe.add_argument("--op", required=True,
                    help="witten | r1 r2 r3 | f1 f2 f3")
    pe.add_argument("--trunc", default="2")
    pe.add_argument("--beta", default=None)
    pe.add_argument("--A", default=None)
    pe.add_argument("--mode", default="exact", choices=("exact", "numeric"))
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=cmd_expand)

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--model", required=True)
    pv.add_argument("--op", required=True)
    pv.add_argument("--suite", default="anomaly,rigidity,vanishing")
    pv.add_argument("--trunc", default="2")
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.add_argument("--samples", type=int, default=4)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--beta", default=None)
    pv.add_argument("--A", default=None)
    pv.add_argument("--out", default=None)
    pv.set_defaults(func=cmd_verify)

    pt = sub.add_parser("theta", help="theta function values/expansions")
    pt.add_argument("--kind", required=True)
    pt.add_argument("--v", default="0")
    pt.add_argument("--tau", default="i")
    pt.add_argument("--formal", action="store_true")
    pt.add_argument("--weight", type=int, default=0)
    pt.add_argument("--trunc", default="10")
    pt.set_defaults(func=cmd_theta)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EllgenusError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
